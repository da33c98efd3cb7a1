use petgraph::unionfind::UnionFind;

use super::Matching;

/// Graph on the arcs of a matching. Two arcs are joined when some `b -> a`
/// is obtained from `a` by erasing them and reconnecting their endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingGraph {
    /// Arcs of the matching, in its pair order.
    pub vertices: Vec<(usize, usize)>,
    /// Vertex index pairs `(y, z)` with `y < z`.
    pub edges: Vec<(usize, usize)>,
    /// One vertex per connected component: the one with the smallest left endpoint.
    pub marks: Vec<usize>,
}

impl MatchingGraph {
    pub fn component_count(&self) -> usize {
        self.marks.len()
    }

    pub fn is_forest(&self) -> bool {
        let mut uf = UnionFind::<usize>::new(self.vertices.len());
        self.edges.iter().all(|&(y, z)| uf.union(y, z))
    }
}

pub fn matching_graph(a: &Matching) -> MatchingGraph {
    let vertices = a.pairs().to_vec();
    let mut edges = Vec::new();
    for (y, &(i, l)) in vertices.iter().enumerate() {
        for (z, &(j, k)) in vertices.iter().enumerate() {
            // (j,k) nested inside (i,l); unnesting must stay crossingless
            if i < j && k < l && a.rewire([(i, l), (j, k)], [(i, j), (k, l)]).is_some() {
                edges.push((y.min(z), y.max(z)));
            }
        }
    }
    edges.sort_unstable();

    let mut uf = UnionFind::<usize>::new(vertices.len());
    for &(y, z) in &edges {
        uf.union(y, z);
    }
    let mut seen_roots = Vec::new();
    let mut marks = Vec::new();
    for v in 0..vertices.len() {
        let root = uf.find(v);
        if !seen_roots.contains(&root) {
            seen_roots.push(root);
            marks.push(v);
        }
    }
    MatchingGraph { vertices, edges, marks }
}

/// Number of outermost arcs, those not nested inside any other arc.
pub fn bottom_arc_count(a: &Matching) -> usize {
    a.pairs()
        .iter()
        .filter(|&&(i, j)| !a.pairs().iter().any(|&(k, l)| k < i && j < l))
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{arrow_targets, binomial, enumerate_matchings};

    fn m(pairs: &[(usize, usize)]) -> Matching {
        Matching::new(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn small_graphs() {
        let g = matching_graph(&m(&[(1, 2), (3, 4)]));
        assert!(g.edges.is_empty());
        assert_eq!(g.component_count(), 2);

        let g = matching_graph(&m(&[(1, 4), (2, 3)]));
        assert_eq!(g.edges, vec![(0, 1)]);
        assert_eq!(g.marks, vec![0]);

        let g = matching_graph(&m(&[(1, 6), (2, 5), (3, 4)]));
        assert_eq!(g.edges, vec![(0, 1), (1, 2)]);
        assert_eq!(g.component_count(), 1);
    }

    #[test]
    fn edges_come_from_incoming_arrows() {
        for n in 1..=4 {
            let all = enumerate_matchings(n);
            for a in &all {
                let g = matching_graph(a);
                let incoming = all.iter().filter(|b| arrow_targets(b).contains(a)).count();
                assert_eq!(g.edges.len(), incoming);
            }
        }
    }

    #[test]
    fn forest_with_bottom_arc_components() {
        for n in 1..=6 {
            for a in enumerate_matchings(n) {
                let g = matching_graph(&a);
                assert!(g.is_forest());
                assert_eq!(g.component_count(), bottom_arc_count(&a));
                assert_eq!(g.edges.len() + g.marks.len(), n);
            }
        }
    }

    #[test]
    fn bottom_arcs() {
        assert_eq!(bottom_arc_count(&m(&[(1, 2), (3, 4)])), 2);
        assert_eq!(bottom_arc_count(&m(&[(1, 4), (2, 3)])), 1);
        let sum: u128 = enumerate_matchings(2).iter().map(|a| 1u128 << bottom_arc_count(a)).sum();
        assert_eq!(sum, 6);
        for n in 1..=6 {
            let sum: u128 = enumerate_matchings(n).iter().map(|a| 1u128 << bottom_arc_count(a)).sum();
            assert_eq!(sum, binomial(2 * n, n));
        }
    }
}
