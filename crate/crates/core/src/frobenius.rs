//! The Frobenius algebra `A = Z[X]/(X^2)` with trace `tr(1) = 0`,
//! `tr(X) = 1`, and its tensor powers.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Basis element of `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    One,
    X,
}

impl Label {
    pub fn degree(self) -> usize {
        match self {
            Label::One => 0,
            Label::X => 2,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Label::One => '1',
            Label::X => 'X',
        }
    }

    pub fn from_symbol(c: char) -> Option<Label> {
        match c {
            '1' => Some(Label::One),
            'X' => Some(Label::X),
            _ => None,
        }
    }
}

/// Label words as strings over `{"1", "X"}`.
pub fn word_to_string(word: &[Label]) -> String {
    word.iter().map(|l| l.symbol()).collect()
}

pub fn word_from_str(s: &str) -> Option<Vec<Label>> {
    s.chars().map(Label::from_symbol).collect()
}

/// Product in `A`; `None` stands for zero.
pub fn merge_labels(x: Label, y: Label) -> Option<Label> {
    match (x, y) {
        (Label::One, l) | (l, Label::One) => Some(l),
        (Label::X, Label::X) => None,
    }
}

/// Coproduct terms, each with coefficient one.
pub fn split_label(x: Label) -> &'static [(Label, Label)] {
    match x {
        Label::One => &[(Label::One, Label::X), (Label::X, Label::One)],
        Label::X => &[(Label::X, Label::X)],
    }
}

pub fn trace(x: Label) -> i64 {
    match x {
        Label::One => 0,
        Label::X => 1,
    }
}

/// An element of `A^{⊗k}`: integer combination of label words of length `k`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TensorElement {
    arity: usize,
    terms: BTreeMap<Vec<Label>, i64>,
}

impl TensorElement {
    pub fn zero(arity: usize) -> Self {
        TensorElement { arity, terms: BTreeMap::new() }
    }

    pub fn scalar(c: i64) -> Self {
        let mut t = TensorElement::zero(0);
        t.add_term(Vec::new(), c);
        t
    }

    pub fn basis(word: Vec<Label>) -> Self {
        let mut t = TensorElement::zero(word.len());
        t.add_term(word, 1);
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Label], i64)> {
        self.terms.iter().map(|(w, &c)| (w.as_slice(), c))
    }

    pub fn coefficient(&self, word: &[Label]) -> i64 {
        self.terms.get(word).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, word: Vec<Label>, c: i64) {
        assert_eq!(word.len(), self.arity, "word length must match arity");
        if c == 0 {
            return;
        }
        match self.terms.entry(word) {
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

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.to_vec(), c);
        }
        out
    }

    pub fn scale(&self, c: i64) -> TensorElement {
        let mut out = TensorElement::zero(self.arity);
        for (w, d) in self.terms() {
            out.add_term(w.to_vec(), c * d);
        }
        out
    }

    pub fn tensor(&self, other: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(self.arity + other.arity);
        for (u, c) in self.terms() {
            for (v, d) in other.terms() {
                out.add_term([u, v].concat(), c * d);
            }
        }
        out
    }

    /// Sum of label degrees, if every term has the same one.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|w| w.iter().map(|l| l.degree()).sum::<usize>());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Multiplies factors `pos` and `pos + 1` together.
    pub fn merge_at(&self, pos: usize) -> TensorElement {
        assert!(pos + 1 < self.arity);
        let mut out = TensorElement::zero(self.arity - 1);
        for (w, c) in self.terms() {
            if let Some(l) = merge_labels(w[pos], w[pos + 1]) {
                let mut v = w.to_vec();
                v.remove(pos + 1);
                v[pos] = l;
                out.add_term(v, c);
            }
        }
        out
    }

    /// Applies the coproduct to factor `pos`.
    pub fn split_at(&self, pos: usize) -> TensorElement {
        assert!(pos < self.arity);
        let mut out = TensorElement::zero(self.arity + 1);
        for (w, c) in self.terms() {
            for &(l, r) in split_label(w[pos]) {
                let mut v = w.to_vec();
                v[pos] = l;
                v.insert(pos + 1, r);
                out.add_term(v, c);
            }
        }
        out
    }

    /// Applies the trace to factor `pos`.
    pub fn trace_at(&self, pos: usize) -> TensorElement {
        assert!(pos < self.arity);
        let mut out = TensorElement::zero(self.arity - 1);
        for (w, c) in self.terms() {
            let t = trace(w[pos]);
            if t != 0 {
                let mut v = w.to_vec();
                v.remove(pos);
                out.add_term(v, c * t);
            }
        }
        out
    }

    /// Swaps factors `pos` and `pos + 1`.
    pub fn swap_at(&self, pos: usize) -> TensorElement {
        let mut out = TensorElement::zero(self.arity);
        for (w, c) in self.terms() {
            let mut v = w.to_vec();
            v.swap(pos, pos + 1);
            out.add_term(v, c);
        }
        out
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{}", if w.is_empty() { "()".to_string() } else { word_to_string(w) })?;
        }
        Ok(())
    }
}

/// `merge(x, y)` as an element of `A`.
pub fn merge(x: Label, y: Label) -> TensorElement {
    let mut t = TensorElement::zero(1);
    if let Some(l) = merge_labels(x, y) {
        t.add_term(vec![l], 1);
    }
    t
}

/// `Δ(x)` as an element of `A ⊗ A`.
pub fn split(x: Label) -> TensorElement {
    let mut t = TensorElement::zero(2);
    for &(l, r) in split_label(x) {
        t.add_term(vec![l, r], 1);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use Label::{One, X};

    const LABELS: [Label; 2] = [One, X];

    fn w(s: &str) -> Vec<Label> {
        word_from_str(s).unwrap()
    }

    #[test]
    fn products() {
        assert_eq!(merge(One, X), TensorElement::basis(vec![X]));
        assert!(merge(X, X).is_zero());
        assert_eq!(merge(One, One), TensorElement::basis(vec![One]));
    }

    #[test]
    fn coproducts() {
        let d1 = split(One);
        assert_eq!(d1.coefficient(&w("1X")), 1);
        assert_eq!(d1.coefficient(&w("X1")), 1);
        assert_eq!(d1.terms().count(), 2);
        assert_eq!(split(X), TensorElement::basis(w("XX")));
        // (tr ⊗ id) ∘ Δ = id
        for l in LABELS {
            assert_eq!(split(l).trace_at(0), TensorElement::basis(vec![l]));
            assert_eq!(split(l).trace_at(1), TensorElement::basis(vec![l]));
        }
    }

    #[test]
    fn trace_values() {
        assert_eq!(trace(One), 0);
        assert_eq!(trace(X), 1);
        let v = TensorElement::basis(vec![X]).scale(2).add(&TensorElement::basis(vec![One]).scale(3));
        assert_eq!(v.trace_at(0), TensorElement::scalar(2));
    }

    #[test]
    fn associative_commutative_coassociative() {
        for x in LABELS {
            for y in LABELS {
                assert_eq!(merge(x, y), merge(y, x));
                for z in LABELS {
                    let xyz = TensorElement::basis(vec![x, y, z]);
                    assert_eq!(xyz.merge_at(0).merge_at(0), xyz.merge_at(1).merge_at(0));
                }
            }
            let d = split(x);
            assert_eq!(d, d.swap_at(0));
            assert_eq!(d.split_at(0), d.split_at(1));
        }
    }

    #[test]
    fn frobenius_compatibility() {
        for x in LABELS {
            for y in LABELS {
                let xy = TensorElement::basis(vec![x, y]);
                let middle = xy.merge_at(0).split_at(0);
                // (m ⊗ id)(id ⊗ Δ)
                let left = xy.split_at(1).merge_at(0);
                // (id ⊗ m)(Δ ⊗ id)
                let right = xy.split_at(0).merge_at(1);
                assert_eq!(left, middle);
                assert_eq!(right, middle);
            }
        }
    }

    #[test]
    fn degree_bookkeeping() {
        for x in LABELS {
            for y in LABELS {
                let m = merge(x, y);
                if let Some(d) = m.degree() {
                    assert_eq!(d, x.degree() + y.degree());
                }
            }
            assert_eq!(split(x).degree(), Some(x.degree() + 2));
        }
    }

    #[test]
    fn cancellation_drops_zero_terms() {
        let mut t = TensorElement::zero(1);
        t.add_term(vec![X], 2);
        t.add_term(vec![X], -2);
        assert!(t.is_zero());
    }
}
