use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Permutation;
use crate::combinatorics::Subset;

/// Element of `Z[X_1, ..., X_2n] / (X_i^2)`: an integer combination of
/// square-free monomials `X_I`.
#[derive(Clone, PartialEq, Eq)]
pub struct SquareFreePoly {
    n: usize,
    terms: BTreeMap<Subset, i64>,
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    subset: Subset,
    coeff: i64,
}

impl SquareFreePoly {
    pub fn zero(n: usize) -> Self {
        SquareFreePoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, Subset::EMPTY)
    }

    pub fn monomial(n: usize, subset: Subset) -> Self {
        let mut p = Self::zero(n);
        p.add_term(subset, 1);
        p
    }

    /// The variable `X_i`.
    pub fn var(n: usize, i: usize) -> Self {
        Self::monomial(n, Subset::singleton(i))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Subset, i64)> + '_ {
        self.terms.iter().map(|(&s, &c)| (s, c))
    }

    pub fn coefficient(&self, subset: Subset) -> i64 {
        self.terms.get(&subset).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, subset: Subset, c: i64) {
        debug_assert!(subset.max().is_none_or(|m| m <= 2 * self.n));
        if c == 0 {
            return;
        }
        match self.terms.entry(subset) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &SquareFreePoly) -> SquareFreePoly {
        let mut out = self.clone();
        for (s, c) in other.terms() {
            out.add_term(s, c);
        }
        out
    }

    pub fn sub(&self, other: &SquareFreePoly) -> SquareFreePoly {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> SquareFreePoly {
        let mut out = Self::zero(self.n);
        for (s, d) in self.terms() {
            out.add_term(s, c * d);
        }
        out
    }

    /// Product with `X_i^2 = 0` applied.
    pub fn mul(&self, other: &SquareFreePoly) -> SquareFreePoly {
        let mut out = Self::zero(self.n);
        for (s, c) in self.terms() {
            for (t, d) in other.terms() {
                if s.is_disjoint(t) {
                    out.add_term(s.union(t), c * d);
                }
            }
        }
        out
    }

    /// Cardinalities `|I|` occurring in the support.
    pub fn cardinalities(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|s| s.len()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// `X_I ↦ X_{σ(I)}`.
    pub fn permute(&self, sigma: &Permutation) -> SquareFreePoly {
        let mut out = Self::zero(self.n);
        for (s, c) in self.terms() {
            out.add_term(sigma.apply_subset(s), c);
        }
        out
    }

    /// Coefficients in the monomial basis `{X_I : |I| = d}`, ordered
    /// lexicographically. Terms of other cardinalities are ignored.
    pub fn coefficients_in_degree(&self, d: usize) -> Vec<i64> {
        Subset::of_size(2 * self.n, d).into_iter().map(|s| self.coefficient(s)).collect()
    }
}

/// `e_k(I)`: the sum of `X_J` over `J ⊆ I`, `|J| = k`.
pub fn elem_sym(k: usize, subset: Subset, n: usize) -> SquareFreePoly {
    let mut p = SquareFreePoly::zero(n);
    for j in subset.subsets() {
        if j.len() == k {
            p.add_term(j, 1);
        }
    }
    p
}

impl fmt::Debug for SquareFreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (s, c)) in self.terms().enumerate() {
            match (k, c < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if c.unsigned_abs() != 1 || s.is_empty() {
                write!(f, "{}", c.unsigned_abs())?;
            }
            for i in s.elements() {
                write!(f, "X{i}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for SquareFreePoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let records: Vec<TermRecord> = self.terms().map(|(subset, coeff)| TermRecord { subset, coeff }).collect();
        records.serialize(serializer)
    }
}

impl SquareFreePoly {
    /// Parses the JSON term list, given the number of strands.
    pub fn from_json(n: usize, value: serde_json::Value) -> serde_json::Result<Self> {
        let records: Vec<TermRecord> = serde_json::from_value(value)?;
        let mut p = SquareFreePoly::zero(n);
        for r in records {
            p.add_term(r.subset, r.coeff);
        }
        Ok(p)
    }
}
