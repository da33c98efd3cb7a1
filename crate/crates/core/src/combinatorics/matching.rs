use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A crossingless perfect matching of the points `1..=2n`.
///
/// Arcs are stored as `(i, j)` with `i < j`, sorted by left endpoint. The
/// derived order compares these sorted pair lists lexicographically, which is
/// the canonical order used everywhere in the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
    partner: Vec<usize>,
}

impl Matching {
    /// Builds a matching from 1-based pairs in any order and orientation.
    pub fn new<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut pairs: Vec<(usize, usize)> = pairs
            .into_iter()
            .map(|(i, j)| if i < j { (i, j) } else { (j, i) })
            .collect();
        pairs.sort_unstable();
        let points = 2 * pairs.len();
        let mut partner = vec![0usize; points];
        for &(i, j) in &pairs {
            if i == j {
                return Err(Error::InvalidMatching(format!("point {i} paired with itself")));
            }
            if i == 0 || j > points {
                return Err(Error::InvalidMatching(format!(
                    "pair ({i},{j}) outside 1..={points}"
                )));
            }
            for p in [i, j] {
                if partner[p - 1] != 0 {
                    return Err(Error::InvalidMatching(format!("point {p} occurs twice")));
                }
            }
            if (i + j) % 2 == 0 {
                return Err(Error::InvalidMatching(format!(
                    "pair ({i},{j}) has endpoints of equal parity"
                )));
            }
            partner[i - 1] = j;
            partner[j - 1] = i;
        }
        if let Some((&(i, k), &(j, l))) = first_crossing(&pairs) {
            return Err(Error::InvalidMatching(format!("pairs ({i},{k}) and ({j},{l}) cross")));
        }
        Ok(Matching { pairs, partner })
    }

    /// The matching of zero points.
    pub fn empty() -> Self {
        Matching { pairs: Vec::new(), partner: Vec::new() }
    }

    /// Number of arcs.
    pub fn n(&self) -> usize {
        self.pairs.len()
    }

    /// Number of endpoints, `2n`.
    pub fn points(&self) -> usize {
        self.partner.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Partner of the 1-based point `p`.
    pub fn partner(&self, p: usize) -> usize {
        self.partner[p - 1]
    }

    pub fn contains_pair(&self, i: usize, j: usize) -> bool {
        i >= 1 && i <= self.points() && self.partner(i) == j
    }

    /// Replaces the arcs `old` with `new`, returning `None` if the result
    /// crosses. Used for arrow moves and flat-tangle composition.
    pub(crate) fn rewire(
        &self,
        old: [(usize, usize); 2],
        new: [(usize, usize); 2],
    ) -> Option<Matching> {
        let pairs = self
            .pairs
            .iter()
            .copied()
            .filter(|p| !old.contains(p))
            .chain(new.iter().map(|&(i, j)| if i < j { (i, j) } else { (j, i) }));
        Matching::new(pairs).ok()
    }
}

fn first_crossing(pairs: &[(usize, usize)]) -> Option<(&(usize, usize), &(usize, usize))> {
    for (x, p) in pairs.iter().enumerate() {
        for q in &pairs[x + 1..] {
            // p.0 < q.0 by sorting
            if q.0 < p.1 && p.1 < q.1 {
                return Some((p, q));
            }
        }
    }
    None
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (i, j)) in self.pairs.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "({i},{j})")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Matching {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let arrays: Vec<[usize; 2]> = self.pairs.iter().map(|&(i, j)| [i, j]).collect();
        arrays.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matching {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let arrays = Vec::<[usize; 2]>::deserialize(deserializer)?;
        Matching::new(arrays.into_iter().map(|[i, j]| (i, j))).map_err(serde::de::Error::custom)
    }
}

/// All crossingless matchings of `2n` points in canonical order.
///
/// `n = 0` yields the single empty matching.
pub fn enumerate_matchings(n: usize) -> Vec<Matching> {
    let mut out: Vec<Matching> = arcs_on(1, 2 * n)
        .into_iter()
        .map(|pairs| Matching::new(pairs).expect("generated matching is valid"))
        .collect();
    out.sort();
    out
}

// Point `lo` pairs with some `j` of opposite parity; the points strictly
// between are matched among themselves and the rest independently.
fn arcs_on(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
    if lo > hi {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for j in (lo + 1..=hi).step_by(2) {
        let outer = arcs_on(j + 1, hi);
        for inner in arcs_on(lo + 1, j - 1) {
            for rest in &outer {
                let mut pairs = Vec::with_capacity(1 + inner.len() + rest.len());
                pairs.push((lo, j));
                pairs.extend_from_slice(&inner);
                pairs.extend_from_slice(rest);
                out.push(pairs);
            }
        }
    }
    out
}

/// The n-th Catalan number.
pub fn catalan(n: usize) -> u128 {
    binomial(2 * n, n) / (n as u128 + 1)
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(usize, usize)]) -> Matching {
        Matching::new(pairs.iter().copied()).unwrap()
    }

    // Every perfect pairing of 1..=2n, crossing or not.
    fn all_pairings(points: &[usize]) -> Vec<Vec<(usize, usize)>> {
        if points.is_empty() {
            return vec![vec![]];
        }
        let first = points[0];
        let mut out = Vec::new();
        for k in 1..points.len() {
            let rest: Vec<usize> = points[1..]
                .iter()
                .enumerate()
                .filter(|&(idx, _)| idx != k - 1)
                .map(|(_, &p)| p)
                .collect();
            for mut tail in all_pairings(&rest) {
                tail.push((first, points[k]));
                out.push(tail);
            }
        }
        out
    }

    fn crossingless(pairs: &[(usize, usize)]) -> bool {
        pairs.iter().all(|&(i, k)| pairs.iter().all(|&(j, l)| !(i < j && j < k && k < l)))
    }

    #[test]
    fn n2_order_matches_figure() {
        assert_eq!(enumerate_matchings(2), vec![m(&[(1, 2), (3, 4)]), m(&[(1, 4), (2, 3)])]);
    }

    #[test]
    fn n1_and_n0() {
        assert_eq!(enumerate_matchings(1), vec![m(&[(1, 2)])]);
        assert_eq!(enumerate_matchings(0), vec![Matching::empty()]);
    }

    #[test]
    fn brute_force_filter_agrees() {
        for n in 1..=4 {
            let points: Vec<usize> = (1..=2 * n).collect();
            let pairings = all_pairings(&points);
            assert_eq!(pairings.len() as u128, (1..=n).map(|k| 2 * k as u128 - 1).product());
            let mut expected: Vec<Matching> = pairings
                .into_iter()
                .filter(|p| crossingless(p))
                .map(|p| Matching::new(p).unwrap())
                .collect();
            expected.sort();
            assert_eq!(enumerate_matchings(n), expected, "n = {n}");
        }
        assert_eq!(enumerate_matchings(3).len(), 5);
    }

    #[test]
    fn catalan_counts() {
        let expected = [1u128, 1, 2, 5, 14, 42, 132];
        for (n, &c) in expected.iter().enumerate() {
            assert_eq!(catalan(n), c);
            assert_eq!(enumerate_matchings(n).len() as u128, c);
        }
    }

    #[test]
    fn rejects_bad_pairings() {
        assert!(Matching::new([(1, 3), (2, 4)]).is_err());
        assert!(Matching::new([(1, 2), (2, 3)]).is_err());
        assert!(Matching::new([(1, 5), (2, 3)]).is_err());
        assert!(Matching::new([(1, 1)]).is_err());
    }

    #[test]
    fn serde_shape() {
        let a = m(&[(3, 4), (2, 1)]);
        assert_eq!(serde_json::to_string(&a).unwrap(), "[[1,2],[3,4]]");
        let back: Matching = serde_json::from_str("[[1,4],[2,3]]").unwrap();
        assert_eq!(back, m(&[(1, 4), (2, 3)]));
        assert!(serde_json::from_str::<Matching>("[[1,3],[2,4]]").is_err());
    }
}
