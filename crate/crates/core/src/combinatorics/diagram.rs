use petgraph::unionfind::UnionFind;

use super::Matching;
use crate::error::{Error, Result};

/// The circles of the closed 1-manifold `W(upper) lower`.
///
/// Each circle is the cyclic sequence of endpoints visited by alternately
/// following a lower arc and an upper arc, starting at its smallest endpoint
/// and leaving along the lower arc. Circles are indexed by increasing
/// smallest endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedDiagram {
    circles: Vec<Vec<usize>>,
    endpoint_to_circle: Vec<usize>,
}

impl ClosedDiagram {
    pub fn circles(&self) -> &[Vec<usize>] {
        &self.circles
    }

    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    /// Index of the circle through the 1-based endpoint `p`.
    pub fn circle_of(&self, p: usize) -> usize {
        self.endpoint_to_circle[p - 1]
    }

    /// Circles as sorted endpoint sets, for order-insensitive comparison.
    pub fn partition(&self) -> Vec<Vec<usize>> {
        self.circles
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.sort_unstable();
                c
            })
            .collect()
    }
}

/// Glues `lower` to the reflection of `upper` along their endpoints.
pub fn glue(lower: &Matching, upper: &Matching) -> Result<ClosedDiagram> {
    if lower.n() != upper.n() {
        return Err(Error::SizeMismatch { left: lower.n(), right: upper.n() });
    }
    let points = lower.points();
    let mut uf = UnionFind::<usize>::new(points);
    for m in [lower, upper] {
        for &(i, j) in m.pairs() {
            uf.union(i - 1, j - 1);
        }
    }

    let mut endpoint_to_circle = vec![usize::MAX; points];
    let mut root_to_circle = vec![usize::MAX; points];
    let mut circles = Vec::new();
    for p in 1..=points {
        let root = uf.find(p - 1);
        if root_to_circle[root] != usize::MAX {
            continue;
        }
        let id = circles.len();
        root_to_circle[root] = id;
        let mut cycle = Vec::new();
        let mut q = p;
        loop {
            cycle.push(q);
            let r = lower.partner(q);
            cycle.push(r);
            q = upper.partner(r);
            if q == p {
                break;
            }
        }
        for &q in &cycle {
            endpoint_to_circle[q - 1] = id;
        }
        circles.push(cycle);
    }
    Ok(ClosedDiagram { circles, endpoint_to_circle })
}

/// `n` minus the number of circles of the glued diagram.
pub fn distance(a: &Matching, b: &Matching) -> Result<usize> {
    Ok(a.n() - glue(a, b)?.circle_count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::enumerate_matchings;

    fn m(pairs: &[(usize, usize)]) -> Matching {
        Matching::new(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn n2_examples() {
        let a = m(&[(1, 2), (3, 4)]);
        let b = m(&[(1, 4), (2, 3)]);
        let d = glue(&a, &b).unwrap();
        assert_eq!(d.circle_count(), 1);
        assert_eq!(d.circles()[0], vec![1, 2, 3, 4]);
        let d = glue(&a, &a).unwrap();
        assert_eq!(d.partition(), vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(distance(&a, &b).unwrap(), 1);
        assert_eq!(distance(&a, &a).unwrap(), 0);
    }

    #[test]
    fn self_gluing_gives_one_circle_per_arc() {
        for n in 1..=5 {
            for a in enumerate_matchings(n) {
                assert_eq!(glue(&a, &a).unwrap().circle_count(), n);
            }
        }
    }

    #[test]
    fn gluing_is_symmetric_and_circles_alternate() {
        for n in 1..=4 {
            let all = enumerate_matchings(n);
            for a in &all {
                for b in &all {
                    let ab = glue(a, b).unwrap();
                    let ba = glue(b, a).unwrap();
                    let mut p1 = ab.partition();
                    let mut p2 = ba.partition();
                    p1.sort();
                    p2.sort();
                    assert_eq!(p1, p2);
                    assert!((1..=n).contains(&ab.circle_count()));
                    for c in ab.circles() {
                        assert_eq!(c.len() % 2, 0);
                        for p in c {
                            assert_eq!(ab.circle_of(*p), ab.circle_of(c[0]));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn size_mismatch() {
        let a = m(&[(1, 2)]);
        let b = m(&[(1, 2), (3, 4)]);
        assert_eq!(glue(&a, &b), Err(Error::SizeMismatch { left: 1, right: 2 }));
    }
}
