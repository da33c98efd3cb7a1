use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported ground set `[1, 2n]`.
pub const MAX_POINTS: usize = 32;

/// A subset of `[1, 2n]`, stored as a bit set (bit `i - 1` for element `i`).
///
/// Ordered by cardinality, then lexicographically on the sorted elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Result<Self> {
        let mut bits = 0u32;
        for i in elements {
            if i == 0 || i > MAX_POINTS {
                return Err(Error::OutOfRange { index: i, max: MAX_POINTS });
            }
            bits |= 1 << (i - 1);
        }
        Ok(Subset(bits))
    }

    /// The interval `[lo, hi]`; empty when `lo > hi`.
    pub fn interval(lo: usize, hi: usize) -> Self {
        Subset((lo.max(1)..=hi).fold(0, |acc, i| acc | 1 << (i - 1)))
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1 << (i - 1))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=MAX_POINTS).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn elements(self) -> Vec<usize> {
        (1..=MAX_POINTS).filter(|&i| self.contains(i)).collect()
    }

    /// Largest element, if any.
    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 32 - self.0.leading_zeros() as usize)
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Sum of the elements.
    pub fn weight(self) -> usize {
        self.elements().iter().sum()
    }

    /// `|I ∩ [1,m]| <= m/2` for every `m`.
    pub fn is_admissible(self) -> bool {
        self.first_violation().is_none()
    }

    /// Smallest `m` with `|I ∩ [1,m]| > m/2`.
    pub fn first_violation(self) -> Option<usize> {
        let mut count = 0;
        for m in 1..=MAX_POINTS {
            if self.contains(m) {
                count += 1;
            }
            if 2 * count > m {
                return Some(m);
            }
        }
        None
    }

    /// All subsets of `[1, points]` of size `k`, in lexicographic order.
    pub fn of_size(points: usize, k: usize) -> Vec<Subset> {
        let mut out: Vec<Subset> = (0u64..1 << points)
            .map(|b| Subset(b as u32))
            .filter(|s| s.len() == k)
            .collect();
        out.sort();
        out
    }

    /// All subsets of `self`.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let current = next?;
            next = if current == full { None } else { Some((current.wrapping_sub(full)) & full) };
            Some(Subset(current))
        })
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            // the lowest element in exactly one of the sets decides
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & diff & diff.wrapping_neg() != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.elements().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let elements = Vec::<usize>::deserialize(deserializer)?;
        Subset::from_elements(elements).map_err(serde::de::Error::custom)
    }
}

/// A subset `I ⊆ [1,2n]` with `|I ∩ [1,m]| <= m/2` for all `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct AdmissibleSubset(Subset);

impl AdmissibleSubset {
    pub fn subset(self) -> Subset {
        self.0
    }

    pub fn elements(self) -> Vec<usize> {
        self.0.elements()
    }
}

impl TryFrom<Subset> for AdmissibleSubset {
    type Error = Error;

    fn try_from(s: Subset) -> Result<Self> {
        if s.is_admissible() {
            Ok(AdmissibleSubset(s))
        } else {
            Err(Error::InvalidSubset(format!("{s:?} is not admissible")))
        }
    }
}

/// All admissible subsets of `[1,2n]`, ordered by cardinality then
/// lexicographically.
pub fn admissible_subsets(n: usize) -> Vec<AdmissibleSubset> {
    assert!(2 * n <= MAX_POINTS, "n = {n} too large for subset enumeration");
    let mut out: Vec<AdmissibleSubset> = (0u64..1 << (2 * n))
        .map(|b| Subset(b as u32))
        .filter(|s| s.is_admissible())
        .map(AdmissibleSubset)
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binomial;

    fn s(e: &[usize]) -> Subset {
        Subset::from_elements(e.iter().copied()).unwrap()
    }

    #[test]
    fn small_cases() {
        let one: Vec<Subset> = admissible_subsets(1).into_iter().map(|a| a.subset()).collect();
        assert_eq!(one, vec![s(&[]), s(&[2])]);
        let two: Vec<Subset> = admissible_subsets(2).into_iter().map(|a| a.subset()).collect();
        assert_eq!(two, vec![s(&[]), s(&[2]), s(&[3]), s(&[4]), s(&[2, 4]), s(&[3, 4])]);
        assert_eq!(admissible_subsets(3).len(), 20);
    }

    #[test]
    fn counts_are_central_binomials() {
        for n in 1..=6 {
            assert_eq!(admissible_subsets(n).len() as u128, binomial(2 * n, n));
        }
    }

    #[test]
    fn violation_is_odd_with_excess_one() {
        for bits in 0u32..1 << 8 {
            let j = Subset::from_bits(bits);
            if let Some(m) = j.first_violation() {
                assert_eq!(m % 2, 1);
                assert_eq!(j.intersection(Subset::interval(1, m)).len(), m.div_ceil(2));
            }
        }
    }

    #[test]
    fn order_is_cardinality_then_lexicographic() {
        for x in 0u32..64 {
            for y in 0u32..64 {
                let (a, b) = (Subset::from_bits(x), Subset::from_bits(y));
                let expected = a.len().cmp(&b.len()).then(a.elements().cmp(&b.elements()));
                assert_eq!(a.cmp(&b), expected, "{a:?} {b:?}");
            }
        }
    }

    #[test]
    fn subset_iteration() {
        let all: Vec<Subset> = s(&[1, 3, 4]).subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|x| x.is_subset_of(s(&[1, 3, 4]))));
        assert_eq!(Subset::EMPTY.subsets().count(), 1);
        assert_eq!(s(&[2, 5]).max(), Some(5));
        assert_eq!(Subset::EMPTY.max(), None);
        assert_eq!(Subset::interval(3, 2), Subset::EMPTY);
    }
}
