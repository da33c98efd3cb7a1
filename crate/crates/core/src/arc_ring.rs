//! The arc ring `H^n`: a free abelian group with one block `_bH_a = F(W(b)a)`
//! per pair of crossingless matchings, multiplied by contraction
//! cobordisms.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Range;

use num_bigint::BigInt;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize};

use crate::cobordism::{self, BlockRef, Tangle};
use crate::combinatorics::{enumerate_matchings, glue, total_order, Matching};
use crate::error::{Error, Result};
use crate::frobenius::{word_to_string, Label};
use crate::linalg::Lattice;

/// Largest `n` for which rings are built.
pub const MAX_N: usize = 5;

/// A labeled diagram `(row, col, labels)`: circles are those of the block's
/// canonical diagram, in order of smallest endpoint, followed by the free
/// circle when the block has one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisVector {
    pub row: Matching,
    pub col: Matching,
    #[serde(with = "label_word")]
    pub labels: Vec<Label>,
}

mod label_word {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::frobenius::{word_from_str, word_to_string, Label};

    pub fn serialize<S: Serializer>(word: &[Label], s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&word_to_string(word))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Label>, D::Error> {
        let s = String::deserialize(d)?;
        word_from_str(&s).ok_or_else(|| serde::de::Error::custom(format!("bad label word {s:?}")))
    }
}

impl BasisVector {
    pub fn new(row: Matching, col: Matching, labels: Vec<Label>) -> Self {
        BasisVector { row, col, labels }
    }

    pub fn n(&self) -> usize {
        self.row.n()
    }

    pub fn x_count(&self) -> usize {
        self.labels.iter().filter(|&&l| l == Label::X).count()
    }

    /// `2·#X + n − #circles`.
    pub fn degree(&self) -> usize {
        2 * self.x_count() + self.n() - self.labels.len()
    }

    pub(crate) fn block_ref(&self, tangle: Tangle) -> BlockRef<'_> {
        BlockRef { top: &self.row, bottom: &self.col, tangle, labels: &self.labels }
    }
}

impl fmt::Debug for BasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}<-{}:{}", self.row, self.col, word_to_string(&self.labels))
    }
}

/// All label words of a given length, lexicographic with `1 < X`.
pub fn label_words(len: usize) -> Vec<Vec<Label>> {
    (0u64..1 << len)
        .map(|bits| {
            (0..len).map(|k| if bits >> (len - 1 - k) & 1 == 1 { Label::X } else { Label::One }).collect()
        })
        .collect()
}

/// Integer combination of basis vectors, of `H^n` or of a bimodule over it.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<BasisVector, i64>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn basis(v: BasisVector) -> Self {
        let mut e = Element::zero();
        e.add_term(v, 1);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisVector, i64)> {
        self.terms.iter().map(|(v, &c)| (v, c))
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, v: &BasisVector) -> i64 {
        self.terms.get(v).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, v: BasisVector, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(v) {
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

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (v, c) in other.terms() {
            out.add_term(v.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> Element {
        let mut out = Element::zero();
        for (v, d) in self.terms() {
            out.add_term(v.clone(), c * d);
        }
        out
    }

    /// Distinct degrees of the terms, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(BasisVector::degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Whether every term lies in a block `_aH_a`.
    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().all(|v| v.row == v.col)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(v, c)| format!("{c}*{v:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize)]
struct TermRecord<'a> {
    row: &'a Matching,
    col: &'a Matching,
    labels: String,
    coeff: i64,
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (v, coeff) in self.terms() {
            seq.serialize_element(&TermRecord { row: &v.row, col: &v.col, labels: word_to_string(&v.labels), coeff })?;
        }
        seq.end()
    }
}

/// Product of two basis vectors whose tangles are stacked `upper` over `lower`.
pub(crate) fn compose_basis(
    upper: &BasisVector,
    upper_tangle: Tangle,
    lower: &BasisVector,
    lower_tangle: Tangle,
    arc_order: Option<&[usize]>,
) -> Result<Element> {
    if upper.n() != lower.n() {
        return Err(Error::SizeMismatch { left: upper.n(), right: lower.n() });
    }
    if upper.col != lower.row {
        return Ok(Element::zero());
    }
    let terms = cobordism::contract(&upper.block_ref(upper_tangle), &lower.block_ref(lower_tangle), arc_order)?;
    let mut out = Element::zero();
    for (word, c) in terms {
        out.add_term(BasisVector::new(upper.row.clone(), lower.col.clone(), word), c);
    }
    Ok(out)
}

pub(crate) fn compose(
    upper: &Element,
    upper_tangle: Tangle,
    lower: &Element,
    lower_tangle: Tangle,
    arc_order: Option<&[usize]>,
) -> Result<Element> {
    let mut out = Element::zero();
    for (x, c) in upper.terms() {
        for (y, d) in lower.terms() {
            if x.col == y.row || x.n() != y.n() {
                for (v, e) in compose_basis(x, upper_tangle, y, lower_tangle, arc_order)?.terms {
                    out.add_term(v, c * d * e);
                }
            }
        }
    }
    Ok(out)
}

/// Number of circles of `glue(col, row)`.
pub fn block_circles(row: &Matching, col: &Matching) -> Result<usize> {
    Ok(glue(col, row)?.circle_count())
}

/// `H^n` with a fixed basis order.
#[derive(Clone, Debug)]
pub struct ArcRing {
    n: usize,
    order: Vec<Matching>,
    basis: Vec<BasisVector>,
    index: HashMap<BasisVector, usize>,
    blocks: HashMap<(Matching, Matching), Range<usize>>,
}

impl PartialEq for ArcRing {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.order == other.order && self.basis == other.basis
    }
}

/// Builds `H^n` with blocks ordered by the default total order.
pub fn build_ring(n: usize) -> Result<ArcRing> {
    if n > MAX_N {
        return Err(Error::Capacity { n, limit: MAX_N });
    }
    ArcRing::with_order(n, total_order(n)?)
}

impl ArcRing {
    /// Builds `H^n` with blocks `(b, a)` ordered by `order` on `b`, then on `a`.
    pub fn with_order(n: usize, order: Vec<Matching>) -> Result<ArcRing> {
        if n > MAX_N {
            return Err(Error::Capacity { n, limit: MAX_N });
        }
        let mut sorted = order.clone();
        sorted.sort();
        if sorted != enumerate_matchings(n) {
            return Err(Error::Invariant(format!("block order is not a permutation of the matchings of n = {n}")));
        }
        let mut basis = Vec::new();
        let mut blocks = HashMap::new();
        for b in &order {
            for a in &order {
                let start = basis.len();
                for word in label_words(block_circles(b, a)?) {
                    basis.push(BasisVector::new(b.clone(), a.clone(), word));
                }
                blocks.insert((b.clone(), a.clone()), start..basis.len());
            }
        }
        Ok(Self::from_parts(n, order, basis, blocks))
    }

    fn from_parts(
        n: usize,
        order: Vec<Matching>,
        basis: Vec<BasisVector>,
        blocks: HashMap<(Matching, Matching), Range<usize>>,
    ) -> ArcRing {
        let index = basis.iter().enumerate().map(|(k, v)| (v.clone(), k)).collect();
        ArcRing { n, order, basis, index, blocks }
    }

    /// Rebuilds a ring from a stored basis, checking it against a fresh build.
    pub fn from_basis(n: usize, order: Vec<Matching>, basis: Vec<BasisVector>) -> Result<ArcRing> {
        let fresh = ArcRing::with_order(n, order)?;
        if fresh.basis != basis {
            return Err(Error::Cache("stored basis differs from the rebuilt one".into()));
        }
        Ok(fresh)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> &[Matching] {
        &self.order
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, v: &BasisVector) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Basis of the block `_bH_a`.
    pub fn block(&self, b: &Matching, a: &Matching) -> &[BasisVector] {
        self.blocks.get(&(b.clone(), a.clone())).map_or(&[], |r| &self.basis[r.clone()])
    }

    /// Indices of the basis vectors whose row is `b`.
    fn block_range_from(&self, b: &Matching) -> Range<usize> {
        let first = self.blocks[&(b.clone(), self.order[0].clone())].start;
        let last = self.blocks[&(b.clone(), self.order[self.order.len() - 1].clone())].end;
        first..last
    }

    pub fn block_dimension(&self, b: &Matching, a: &Matching) -> usize {
        self.block(b, a).len()
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        compose(x, Tangle::Identity, y, Tangle::Identity, None)
    }

    /// Product with the middle arcs contracted in the given order.
    pub fn multiply_with_arc_order(&self, x: &Element, y: &Element, arc_order: &[usize]) -> Result<Element> {
        compose(x, Tangle::Identity, y, Tangle::Identity, Some(arc_order))
    }

    pub fn multiply_basis(&self, x: &BasisVector, y: &BasisVector) -> Result<Element> {
        compose_basis(x, Tangle::Identity, y, Tangle::Identity, None)
    }

    /// `1_a`: all circles of `glue(a, a)` labeled `1`.
    pub fn idempotent(&self, a: &Matching) -> Element {
        Element::basis(BasisVector::new(a.clone(), a.clone(), vec![Label::One; a.n()]))
    }

    /// `_b1_a`: all circles of `glue(a, b)` labeled `1`.
    pub fn block_one(&self, b: &Matching, a: &Matching) -> Result<Element> {
        let c = block_circles(b, a)?;
        Ok(Element::basis(BasisVector::new(b.clone(), a.clone(), vec![Label::One; c])))
    }

    /// `Σ_a 1_a`.
    pub fn unit(&self) -> Element {
        self.order.iter().fold(Element::zero(), |acc, a| acc.add(&self.idempotent(a)))
    }

    /// Coordinates in the basis order.
    pub fn coordinates(&self, e: &Element) -> Result<Vec<i64>> {
        let mut v = vec![0; self.dimension()];
        for (b, c) in e.terms() {
            let k = self.index_of(b).ok_or_else(|| Error::NotInSpan(format!("{b:?} is not a basis vector of H^{}", self.n)))?;
            v[k] = c;
        }
        Ok(v)
    }

    pub fn from_coordinates(&self, v: &[i64]) -> Element {
        let mut e = Element::zero();
        for (k, &c) in v.iter().enumerate() {
            e.add_term(self.basis[k].clone(), c);
        }
        e
    }

    /// Rank of `H^n / [H^n, H^n]`, the span of all `xy − yx` over basis pairs.
    pub fn commutator_quotient_rank(&self) -> Result<usize> {
        let mut lattice = Lattice::new(self.dimension());
        for (i, x) in self.basis.iter().enumerate() {
            for y in &self.basis[i + 1..] {
                if x.col != y.row && y.col != x.row {
                    continue;
                }
                let bx = Element::basis(x.clone());
                let by = Element::basis(y.clone());
                let c = self.multiply(&bx, &by)?.sub(&self.multiply(&by, &bx)?);
                if !c.is_zero() {
                    lattice.insert(self.coordinates(&c)?.into_iter().map(BigInt::from).collect());
                }
            }
        }
        Ok(self.dimension() - lattice.rank())
    }

    /// Multiplication table: for each nonzero product of basis vectors,
    /// `(i, j, k, coefficient)` with `basis[i]·basis[j] = Σ coefficient·basis[k]`.
    pub fn multiplication_table(&self) -> Result<Vec<(usize, usize, usize, i64)>> {
        let mut rows = Vec::new();
        for (i, x) in self.basis.iter().enumerate() {
            for (j, y) in self.basis.iter().enumerate() {
                if x.col != y.row {
                    continue;
                }
                let p = self.multiply_basis(x, y)?;
                for (v, c) in p.terms() {
                    rows.push((i, j, self.index[v], c));
                }
            }
        }
        Ok(rows)
    }
}

/// Structural checks on a built ring.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RingReport {
    pub n: usize,
    pub dimension: usize,
    pub exhaustive: bool,
    pub associative: bool,
    pub unit_law: bool,
    pub graded: bool,
    pub arc_order_independent: bool,
    pub checked_triples: usize,
    pub commutator_quotient_rank: usize,
    pub expected_commutator_quotient_rank: usize,
    pub counterexample: Option<String>,
    pub pass: bool,
}

/// Associativity, unit law, grading and surgery-order independence.
/// Triples are exhaustive for `n ≤ 2`; otherwise `samples` random composable
/// triples are drawn from `rng`.
pub fn verify_ring<R: rand::Rng>(ring: &ArcRing, samples: usize, rng: &mut R) -> Result<RingReport> {
    use rand::seq::SliceRandom;

    let n = ring.n();
    let basis = ring.basis();
    let exhaustive = n <= 2;
    let triples: Vec<[usize; 3]> = if exhaustive {
        let d = basis.len();
        (0..d * d * d).map(|t| [t / (d * d), t / d % d, t % d]).collect()
    } else {
        let follow = |from: usize, rng: &mut R| {
            let next = ring.block_range_from(&basis[from].col);
            rng.gen_range(next)
        };
        (0..samples)
            .map(|_| {
                let x = rng.gen_range(0..basis.len());
                let y = follow(x, rng);
                [x, y, follow(y, rng)]
            })
            .collect()
    };

    let mut counterexample = None;
    let (mut associative, mut graded, mut arc_order_independent) = (true, true, true);
    let mut fail = |flag: &mut bool, msg: String| {
        *flag = false;
        counterexample.get_or_insert(msg);
    };
    let element = |k: usize| Element::basis(basis[k].clone());
    for &[i, j, k] in &triples {
        let (x, y, z) = (element(i), element(j), element(k));
        let xy = ring.multiply(&x, &y)?;
        let left = ring.multiply(&xy, &z)?;
        let right = ring.multiply(&x, &ring.multiply(&y, &z)?)?;
        if left != right {
            fail(&mut associative, format!("(xy)z ≠ x(yz) for basis vectors {i}, {j}, {k}"));
        }
        let expected = basis[i].degree() + basis[j].degree() + basis[k].degree();
        if left.degrees().iter().any(|&d| d != expected) || xy.degrees().iter().any(|&d| d != expected - basis[k].degree()) {
            fail(&mut graded, format!("degree not additive on basis vectors {i}, {j}, {k}"));
        }
        if !exhaustive || k == 0 {
            let mut order: Vec<usize> = (0..n).collect();
            order.reverse();
            if !exhaustive {
                order.shuffle(rng);
            }
            if ring.multiply_with_arc_order(&x, &y, &order)? != xy {
                fail(&mut arc_order_independent, format!("surgery order {order:?} changes the product of {i}, {j}"));
            }
        }
    }

    let unit = ring.unit();
    let mut unit_law = true;
    for (k, v) in basis.iter().enumerate() {
        let x = Element::basis(v.clone());
        if ring.multiply(&unit, &x)? != x || ring.multiply(&x, &unit)? != x {
            fail(&mut unit_law, format!("unit law fails on basis vector {k}"));
        }
    }

    let commutator_quotient_rank = ring.commutator_quotient_rank()?;
    let expected_commutator_quotient_rank = crate::combinatorics::binomial(2 * n, n) as usize;
    let pass = associative
        && unit_law
        && graded
        && arc_order_independent
        && commutator_quotient_rank == expected_commutator_quotient_rank;
    Ok(RingReport {
        n,
        dimension: basis.len(),
        exhaustive,
        associative,
        unit_law,
        graded,
        arc_order_independent,
        checked_triples: triples.len(),
        commutator_quotient_rank,
        expected_commutator_quotient_rank,
        counterexample,
        pass,
    })
}
