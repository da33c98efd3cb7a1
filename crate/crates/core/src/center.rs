//! The center `Z(H^n)`, computed as an equalizer over the diagonal blocks,
//! the central elements `X_i`, the map from `R/R_1` onto the center, and the
//! induced permutation action.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::arc_ring::{ArcRing, BasisVector, Element};
use crate::combinatorics::{admissible_subsets, Matching, Subset};
use crate::error::{Error, Result};
use crate::frobenius::Label;
use crate::linalg::{kernel_basis, lattice_equal, solve_in_row_span, IntMatrix, Lattice};
use crate::presentations::{ideal_r1, quotient_graded_ranks, reduce_to_admissible, Permutation, SquareFreePoly};

/// Lattice basis of `Z(H^n)`, homogeneous elements grouped by degree.
#[derive(Clone, Debug)]
pub struct CenterBasis {
    pub n: usize,
    /// `by_degree[k]` spans the degree-`2k` part.
    pub by_degree: Vec<Vec<Element>>,
}

impl CenterBasis {
    pub fn elements(&self) -> impl Iterator<Item = &Element> {
        self.by_degree.iter().flatten()
    }

    pub fn rank(&self) -> usize {
        self.by_degree.iter().map(Vec::len).sum()
    }

    /// Ranks in degrees `0, 2, ..., 2n`.
    pub fn graded_ranks(&self) -> Vec<usize> {
        self.by_degree.iter().map(Vec::len).collect()
    }
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Invariant(format!("coefficient {x} exceeds 64 bits")))
}

/// Diagonal basis vectors with `k` labels `X`, in ring order.
fn diagonal_unknowns(ring: &ArcRing, k: usize) -> Vec<BasisVector> {
    ring.basis().iter().filter(|v| v.row == v.col && v.x_count() == k).cloned().collect()
}

/// Solves `z_a · _a1_b = _a1_b · z_b` for all `a ≠ b`, degree by degree.
pub fn center_basis(ring: &ArcRing) -> Result<CenterBasis> {
    let n = ring.n();
    let mut ones: HashMap<(&Matching, &Matching), Element> = HashMap::new();
    for a in ring.order() {
        for b in ring.order() {
            if a != b {
                ones.insert((a, b), ring.block_one(a, b)?);
            }
        }
    }
    let mut by_degree = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let unknowns = diagonal_unknowns(ring, k);
        let mut rows: BTreeMap<BasisVector, Vec<(usize, i64)>> = BTreeMap::new();
        for (j, u) in unknowns.iter().enumerate() {
            let a = &u.row;
            let bu = Element::basis(u.clone());
            for b in ring.order().iter().filter(|b| *b != a) {
                for (t, c) in ring.multiply(&bu, &ones[&(a, b)])?.terms() {
                    rows.entry(t.clone()).or_default().push((j, c));
                }
                for (t, c) in ring.multiply(&ones[&(b, a)], &bu)?.terms() {
                    rows.entry(t.clone()).or_default().push((j, -c));
                }
            }
        }
        let mut lattice = Lattice::new(unknowns.len());
        for entries in rows.values() {
            let mut v = vec![BigInt::default(); unknowns.len()];
            for &(j, c) in entries {
                v[j] += c;
            }
            lattice.insert(v);
        }
        let kernel = kernel_basis(&lattice.basis());
        let mut elements = Vec::with_capacity(kernel.rows());
        for r in 0..kernel.rows() {
            let mut z = Element::zero();
            for (j, x) in kernel.row(r).iter().enumerate() {
                z.add_term(unknowns[j].clone(), to_i64(x)?);
            }
            elements.push(z);
        }
        by_degree.push(elements);
    }
    Ok(CenterBasis { n, by_degree })
}

/// `X_i = (-1)^i Σ_a` (X on the circle of `glue(a, a)` through endpoint `i`).
pub fn central_x(ring: &ArcRing, i: usize) -> Result<Element> {
    let n = ring.n();
    if i == 0 || i > 2 * n {
        return Err(Error::OutOfRange { index: i, max: 2 * n });
    }
    let sign = if i.is_multiple_of(2) { 1 } else { -1 };
    let mut x = Element::zero();
    for a in ring.order() {
        let d = crate::combinatorics::glue(a, a)?;
        let mut labels = vec![Label::One; n];
        labels[d.circle_of(i)] = Label::X;
        x.add_term(BasisVector::new(a.clone(), a.clone(), labels), sign);
    }
    Ok(x)
}

/// Whether `z` commutes with every basis vector.
pub fn is_central(ring: &ArcRing, z: &Element) -> Result<bool> {
    for v in ring.basis() {
        let v = Element::basis(v.clone());
        if ring.multiply(z, &v)? != ring.multiply(&v, z)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Coordinates of the center lattice in a fixed order of diagonal basis
/// vectors, independent of the ring's block order.
pub fn center_lattice_matrix(center: &CenterBasis) -> IntMatrix {
    let n = center.n;
    let all_keys: Vec<BasisVector> = crate::combinatorics::enumerate_matchings(n)
        .into_iter()
        .flat_map(|a| {
            crate::arc_ring::label_words(n).into_iter().map(move |w| BasisVector::new(a.clone(), a.clone(), w))
        })
        .collect();
    let rows: Vec<Vec<i64>> = center.elements().map(|z| all_keys.iter().map(|k| z.coefficient(k)).collect()).collect();
    IntMatrix::from_rows_with_cols(&rows, all_keys.len())
}

/// Whether the center lattice is the same for rings built with each of the
/// given block orders.
pub fn total_order_independence(n: usize, orders: &[Vec<Matching>]) -> Result<bool> {
    let mut reference: Option<IntMatrix> = None;
    for order in orders {
        let ring = ArcRing::with_order(n, order.clone())?;
        let m = center_lattice_matrix(&center_basis(&ring)?).transpose();
        match &reference {
            None => reference = Some(m),
            Some(r) if !lattice_equal(r, &m) => return Ok(false),
            Some(_) => {}
        }
    }
    Ok(true)
}

/// Matrix of `R/R_1 → Z(H^n)` in degree `2k`: row `I` holds the center
/// coordinates of the image of `X_I`, for admissible `I` with `|I| = k`.
#[derive(Clone, Debug)]
pub struct PresentationMap {
    pub n: usize,
    pub admissible: Vec<Vec<Subset>>,
    pub matrices: Vec<IntMatrix>,
}

/// Outcome of checking `R/R_1 ≅ Z(H^n)`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IsoReport {
    pub n: usize,
    pub generators_central: bool,
    pub squares_vanish: bool,
    pub elementary_vanish: bool,
    pub center_graded_ranks: Vec<usize>,
    pub quotient_graded_ranks: Vec<usize>,
    pub ranks_match: bool,
    pub degree_preserving: bool,
    pub unimodular: bool,
    pub multiplicative: bool,
    pub checked_products: usize,
    pub counterexample: Option<String>,
    pub pass: bool,
}

/// The center together with the central `X_i` and all their products.
pub struct CenterPresentation<'r> {
    ring: &'r ArcRing,
    center: CenterBasis,
    generators: Vec<Element>,
    monomials: HashMap<Subset, Element>,
    diagonal: Vec<BasisVector>,
    admissible: Vec<Subset>,
    admissible_images: IntMatrix,
}

impl<'r> CenterPresentation<'r> {
    pub fn new(ring: &'r ArcRing) -> Result<Self> {
        let n = ring.n();
        let center = center_basis(ring)?;
        let generators: Vec<Element> = (1..=2 * n).map(|i| central_x(ring, i)).collect::<Result<_>>()?;
        // X_I = X_{I \ max} · X_max, increasing indices left to right
        let mut monomials: HashMap<Subset, Element> = HashMap::new();
        let mut subsets: Vec<Subset> = (0u64..1 << (2 * n)).map(|b| Subset::from_bits(b as u32)).collect();
        subsets.sort();
        for s in subsets {
            let value = match s.max() {
                None => ring.unit(),
                Some(m) => {
                    let rest = s.difference(Subset::singleton(m));
                    ring.multiply(&monomials[&rest], &generators[m - 1])?
                }
            };
            monomials.insert(s, value);
        }
        let diagonal: Vec<BasisVector> = ring.basis().iter().filter(|v| v.row == v.col).cloned().collect();
        let admissible: Vec<Subset> = admissible_subsets(n).into_iter().map(|a| a.subset()).collect();
        let rows: Vec<Vec<i64>> =
            admissible.iter().map(|s| diagonal.iter().map(|v| monomials[s].coefficient(v)).collect()).collect();
        let admissible_images = IntMatrix::from_rows_with_cols(&rows, diagonal.len());
        Ok(CenterPresentation { ring, center, generators, monomials, diagonal, admissible, admissible_images })
    }

    pub fn center(&self) -> &CenterBasis {
        &self.center
    }

    /// The central element `X_i`.
    pub fn generator(&self, i: usize) -> &Element {
        &self.generators[i - 1]
    }

    /// `Π_{i ∈ I} X_i`.
    pub fn monomial(&self, s: Subset) -> &Element {
        &self.monomials[&s]
    }

    /// Evaluates a square-free polynomial at the central `X_i`.
    pub fn image(&self, p: &SquareFreePoly) -> Element {
        p.terms().fold(Element::zero(), |acc, (s, c)| acc.add(&self.monomials[&s].scale(c)))
    }

    fn diagonal_vector(&self, z: &Element) -> Result<Vec<BigInt>> {
        if !z.is_diagonal() {
            return Err(Error::NotInSpan("element has off-diagonal terms".into()));
        }
        Ok(self.diagonal.iter().map(|v| BigInt::from(z.coefficient(v))).collect())
    }

    /// Writes a central element as a combination of admissible monomials.
    pub fn preimage(&self, z: &Element) -> Result<SquareFreePoly> {
        let v = self.diagonal_vector(z)?;
        let x = solve_in_row_span(&self.admissible_images, &v)
            .ok_or_else(|| Error::NotInSpan(format!("{z:?} is not an integer combination of admissible monomials")))?;
        let mut p = SquareFreePoly::zero(self.ring.n());
        for (s, c) in self.admissible.iter().zip(&x) {
            p.add_term(*s, to_i64(c)?);
        }
        Ok(p)
    }

    /// `σ · z`, induced by `X_i ↦ X_{σ(i)}`.
    pub fn act(&self, sigma: &Permutation, z: &Element) -> Result<Element> {
        if sigma.size() != 2 * self.ring.n() {
            return Err(Error::InvalidPermutation(format!("expected a permutation of 1..={}", 2 * self.ring.n())));
        }
        let p = self.preimage(z)?;
        Ok(self.image(&reduce_to_admissible(&p.permute(sigma))))
    }

    /// Matrix of `R/R_1 → Z(H^n)` in admissible and center-basis coordinates.
    pub fn presentation_map(&self) -> Result<PresentationMap> {
        let n = self.ring.n();
        let mut admissible = vec![Vec::new(); n + 1];
        let mut matrices = Vec::with_capacity(n + 1);
        for (k, basis) in self.center.by_degree.iter().enumerate() {
            let rows: Vec<Vec<BigInt>> =
                basis.iter().map(|z| self.diagonal_vector(z)).collect::<Result<_>>()?;
            let basis_matrix = IntMatrix::from_rows_with_cols(&rows, self.diagonal.len());
            let mut coords = Vec::new();
            for &s in self.admissible.iter().filter(|s| s.len() == k) {
                admissible[k].push(s);
                let v = self.diagonal_vector(&self.monomials[&s])?;
                let x = solve_in_row_span(&basis_matrix, &v)
                    .ok_or_else(|| Error::NotInSpan(format!("X_{s:?} is not in the center lattice")))?;
                coords.push(x);
            }
            matrices.push(IntMatrix::from_rows_with_cols(&coords, basis.len()));
        }
        Ok(PresentationMap { n, admissible, matrices })
    }

    /// Checks relations, ranks, unimodularity and multiplicativity.
    pub fn verify(&self) -> Result<IsoReport> {
        let n = self.ring.n();
        let mut counterexample = None;

        let mut generators_central = true;
        for (k, x) in self.generators.iter().enumerate() {
            if !is_central(self.ring, x)? {
                generators_central = false;
                counterexample.get_or_insert_with(|| format!("X_{} is not central", k + 1));
            }
        }
        let mut squares_vanish = true;
        for (k, x) in self.generators.iter().enumerate() {
            if !self.ring.multiply(x, x)?.is_zero() {
                squares_vanish = false;
                counterexample.get_or_insert_with(|| format!("X_{}^2 != 0", k + 1));
            }
        }
        let mut elementary_vanish = true;
        for k in 1..=2 * n {
            let e = Subset::of_size(2 * n, k).into_iter().fold(Element::zero(), |acc, s| acc.add(&self.monomials[&s]));
            if !e.is_zero() {
                elementary_vanish = false;
                counterexample.get_or_insert_with(|| format!("e_{k}(X_1..X_{}) != 0", 2 * n));
            }
        }

        let center_graded_ranks = self.center.graded_ranks();
        let quotient = quotient_graded_ranks(&ideal_r1(n)?)?;
        // the quotient ranks are indexed by |I|; the center by half-degree
        let ranks_match = quotient.len() >= center_graded_ranks.len()
            && quotient[..center_graded_ranks.len()] == center_graded_ranks[..]
            && quotient[center_graded_ranks.len()..].iter().all(|&r| r == 0);
        if !ranks_match {
            counterexample.get_or_insert_with(|| format!("graded ranks {center_graded_ranks:?} vs {quotient:?}"));
        }

        let degree_preserving = self
            .admissible
            .iter()
            .all(|s| self.monomials[s].degrees().iter().all(|&d| d == 2 * s.len()));

        let mut unimodular = ranks_match;
        match self.presentation_map() {
            Ok(map) => {
                for (k, m) in map.matrices.iter().enumerate() {
                    if m.rows() != m.cols() || !m.determinant().abs().is_one() {
                        unimodular = false;
                        counterexample.get_or_insert_with(|| format!("presentation map in degree {} is not unimodular", 2 * k));
                    }
                }
            }
            Err(e) => {
                unimodular = false;
                counterexample.get_or_insert_with(|| e.to_string());
            }
        }

        let mut multiplicative = true;
        let mut checked_products = 0;
        for i in 1..=2 * n {
            for &s in &self.admissible {
                let lhs = self.ring.multiply(&self.generators[i - 1], &self.monomials[&s])?;
                let poly = SquareFreePoly::var(n, i).mul(&SquareFreePoly::monomial(n, s));
                let rhs = self.image(&reduce_to_admissible(&poly));
                checked_products += 1;
                if lhs != rhs {
                    multiplicative = false;
                    counterexample.get_or_insert_with(|| format!("X_{i} · X_{s:?} disagrees with its normal form"));
                }
            }
        }

        let pass = generators_central
            && squares_vanish
            && elementary_vanish
            && ranks_match
            && degree_preserving
            && unimodular
            && multiplicative;
        Ok(IsoReport {
            n,
            generators_central,
            squares_vanish,
            elementary_vanish,
            center_graded_ranks,
            quotient_graded_ranks: quotient,
            ranks_match,
            degree_preserving,
            unimodular,
            multiplicative,
            checked_products,
            counterexample,
            pass,
        })
    }
}

/// Builds the presentation and runs every check.
pub fn verify_presentation_iso(ring: &ArcRing) -> Result<IsoReport> {
    CenterPresentation::new(ring)?.verify()
}

/// Checks on the permutation action of `S_{2n}` on `Z(H^n)`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SymmetricReport {
    pub n: usize,
    pub r1_stable: bool,
    pub degree_preserving: bool,
    pub lattice_preserving: bool,
    pub action_property: bool,
    pub involutions: bool,
    pub braid_relations: bool,
    pub far_commutation: bool,
    pub checked_pairs: usize,
    pub counterexample: Option<String>,
    pub pass: bool,
}

/// Verifies the action on the center basis. Adjacent transpositions are
/// checked exhaustively; `σ(τz) = (στ)z` on `samples` random pairs.
pub fn verify_symmetric_action<R: rand::Rng>(ring: &ArcRing, samples: usize, rng: &mut R) -> Result<SymmetricReport> {
    let n = ring.n();
    let size = 2 * n;
    let pres = CenterPresentation::new(ring)?;
    let mut counterexample = None;
    let mut fail = |flag: &mut bool, msg: String| {
        *flag = false;
        counterexample.get_or_insert(msg);
    };

    let r1 = ideal_r1(n)?;
    let mut r1_stable = true;
    let adjacent: Vec<Permutation> = (1..size).map(|i| Permutation::adjacent(size, i)).collect::<Result<_>>()?;
    for (i, s) in adjacent.iter().enumerate() {
        for g in crate::presentations::r1_generators(n) {
            if !r1.contains(&g.permute(s)) {
                fail(&mut r1_stable, format!("s_{} moves {g:?} out of R_1", i + 1));
            }
        }
    }

    let basis: Vec<(usize, &Element)> =
        pres.center().by_degree.iter().enumerate().flat_map(|(k, b)| b.iter().map(move |z| (k, z))).collect();
    let act = |s: &Permutation, z: &Element| pres.act(s, z);
    let (mut degree_preserving, mut lattice_preserving, mut involutions) = (true, true, true);
    let (mut braid_relations, mut far_commutation) = (true, true);
    let mut checked_pairs = 0;
    for &(k, z) in &basis {
        for (i, s) in adjacent.iter().enumerate() {
            let sz = act(s, z)?;
            checked_pairs += 1;
            if sz.degrees().iter().any(|&d| d != 2 * k) {
                fail(&mut degree_preserving, format!("s_{} changes the degree of {z:?}", i + 1));
            }
            if !is_central(ring, &sz)? {
                fail(&mut lattice_preserving, format!("s_{} maps {z:?} outside the center", i + 1));
            }
            if act(s, &sz)? != *z {
                fail(&mut involutions, format!("s_{}^2 ≠ 1 on {z:?}", i + 1));
            }
            if let Some(t) = adjacent.get(i + 1) {
                let lhs = act(s, &act(t, &sz)?)?;
                let rhs = act(t, &act(s, &act(t, z)?)?)?;
                if lhs != rhs {
                    fail(&mut braid_relations, format!("braid relation fails for s_{} on {z:?}", i + 1));
                }
            }
            for (j, t) in adjacent.iter().enumerate().skip(i + 2) {
                if act(s, &act(t, z)?)? != act(t, &sz)? {
                    fail(&mut far_commutation, format!("s_{} and s_{} do not commute on {z:?}", i + 1, j + 1));
                }
            }
        }
    }

    let mut action_property = true;
    for _ in 0..samples {
        let s = Permutation::random(size, rng);
        let t = Permutation::random(size, rng);
        let (_, z) = basis[rng.gen_range(0..basis.len())];
        if act(&s, &act(&t, z)?)? != act(&s.compose(&t), z)? {
            fail(&mut action_property, format!("σ(τz) ≠ (στ)z for σ = {:?}, τ = {:?}", s.images(), t.images()));
        }
        checked_pairs += 1;
    }

    let pass = r1_stable && degree_preserving && lattice_preserving && action_property && involutions && braid_relations && far_commutation;
    Ok(SymmetricReport {
        n,
        r1_stable,
        degree_preserving,
        lattice_preserving,
        action_property,
        involutions,
        braid_relations,
        far_commutation,
        checked_pairs,
        counterexample,
        pass,
    })
}
