//! The bimodule `F(U_i)` of the flat tangle `U_i`, the saddle maps
//! `α: F(U_i) → H^n` and `β: H^n → F(U_i)`, and the null-homotopy of
//! `l_{X_i} − r_{X_{i+1}}` and `l_{X_{i+1}} − r_{X_i}` on the complex
//! `0 → F(U_i) → H^n → 0`.

use std::collections::HashMap;

use serde::Serialize;

use crate::arc_ring::{block_circles, compose, label_words, ArcRing, BasisVector, Element};
use crate::center::central_x;
use crate::cobordism::{self, apply_tangle, Tangle};
use crate::combinatorics::Matching;
use crate::error::{Error, Result};

/// A matching stacked under `U_i`, and how many closed circles that made.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatComposite {
    pub result: Matching,
    pub closed_circles: usize,
}

pub fn compose_ui(i: usize, a: &Matching) -> Result<FlatComposite> {
    let (result, free) = apply_tangle(Tangle::Cup(i), a)?;
    Ok(FlatComposite { result, closed_circles: usize::from(free) })
}

/// `F(U_i)` with basis `(b, a, labels)` over the circles of
/// `glue(U_i ∘ a, b)`, followed by the free circle when there is one.
#[derive(Clone, Debug)]
pub struct UiBimodule {
    n: usize,
    i: usize,
    basis: Vec<BasisVector>,
    index: HashMap<BasisVector, usize>,
}

impl UiBimodule {
    pub fn new(ring: &ArcRing, i: usize) -> Result<Self> {
        let n = ring.n();
        if i == 0 || i >= 2 * n {
            return Err(Error::OutOfRange { index: i, max: (2 * n).saturating_sub(1) });
        }
        let mut basis = Vec::new();
        for b in ring.order() {
            for a in ring.order() {
                let circles = cobordism::circle_count(b, a, Tangle::Cup(i))?;
                for word in label_words(circles) {
                    basis.push(BasisVector::new(b.clone(), a.clone(), word));
                }
            }
        }
        let index = basis.iter().enumerate().map(|(k, v)| (v.clone(), k)).collect();
        Ok(UiBimodule { n, i, basis, index })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &BasisVector) -> bool {
        self.index.contains_key(v)
    }

    fn tangle(&self) -> Tangle {
        Tangle::Cup(self.i)
    }

    /// `x · m` for `x ∈ H^n`.
    pub fn left(&self, x: &Element, m: &Element) -> Result<Element> {
        compose(x, Tangle::Identity, m, self.tangle(), None)
    }

    /// `m · y` for `y ∈ H^n`.
    pub fn right(&self, m: &Element, y: &Element) -> Result<Element> {
        compose(m, self.tangle(), y, Tangle::Identity, None)
    }

    /// `α`: the saddle turning the cap and cup of `U_i` into vertical strands.
    pub fn alpha(&self, m: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (v, c) in m.terms() {
            for (word, d) in cobordism::unzip(&v.block_ref(self.tangle()))? {
                out.add_term(BasisVector::new(v.row.clone(), v.col.clone(), word), c * d);
            }
        }
        Ok(out)
    }

    /// `β`: the saddle turning strands `i, i+1` into the cap and cup of `U_i`.
    pub fn beta(&self, h: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (v, c) in h.terms() {
            for (word, d) in cobordism::zip(&v.block_ref(Tangle::Identity), self.i)? {
                out.add_term(BasisVector::new(v.row.clone(), v.col.clone(), word), c * d);
            }
        }
        Ok(out)
    }
}

/// Result of the null-homotopy check for one endomorphism `l_{X_p} − r_{X_q}`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HomotopyCheck {
    pub endomorphism: String,
    pub chain_map: bool,
    /// `s` with `φ = α∘(sβ)` on `H^n` and `φ = (sβ)∘α` on `F(U_i)`, if any.
    pub sign: Option<i64>,
    pub checked_vectors: usize,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HomotopyReport {
    pub n: usize,
    pub i: usize,
    pub bimodule_dimension: usize,
    pub checks: Vec<HomotopyCheck>,
    pub pass: bool,
}

fn check_endomorphism(ring: &ArcRing, module: &UiBimodule, p: usize, q: usize) -> Result<HomotopyCheck> {
    let (xp, xq) = (central_x(ring, p)?, central_x(ring, q)?);
    let on_ring = |h: &Element| -> Result<Element> { Ok(ring.multiply(&xp, h)?.sub(&ring.multiply(h, &xq)?)) };
    let on_module = |m: &Element| -> Result<Element> { Ok(module.left(&xp, m)?.sub(&module.right(m, &xq)?)) };

    let mut counterexample = None;
    let mut chain_map = true;
    let mut module_images = Vec::with_capacity(module.dimension());
    for v in module.basis() {
        let m = Element::basis(v.clone());
        let alpha_m = module.alpha(&m)?;
        let phi_m = on_module(&m)?;
        if module.alpha(&phi_m)? != on_ring(&alpha_m)? {
            chain_map = false;
            counterexample.get_or_insert_with(|| format!("α∘φ ≠ φ∘α on {v:?}"));
        }
        module_images.push((phi_m, module.beta(&alpha_m)?));
    }
    let mut ring_images = Vec::with_capacity(ring.dimension());
    for v in ring.basis() {
        let h = Element::basis(v.clone());
        ring_images.push((on_ring(&h)?, module.alpha(&module.beta(&h)?)?));
    }

    let sign = [1, -1].into_iter().find(|&s| {
        ring_images.iter().all(|(phi, ab)| *phi == ab.scale(s)) && module_images.iter().all(|(phi, ba)| *phi == ba.scale(s))
    });
    if sign.is_none() {
        counterexample.get_or_insert_with(|| "no sign s makes φ = s(αβ + βα)".to_string());
    }
    Ok(HomotopyCheck {
        endomorphism: format!("l_X{p} - r_X{q}"),
        chain_map,
        sign,
        checked_vectors: module.dimension() + ring.dimension(),
        counterexample,
    })
}

/// Checks that `l_{X_i} − r_{X_{i+1}}` and `l_{X_{i+1}} − r_{X_i}` are chain
/// maps homotopic to zero via `±β`.
pub fn verify_null_homotopy(ring: &ArcRing, i: usize) -> Result<HomotopyReport> {
    let module = UiBimodule::new(ring, i)?;
    let checks = vec![check_endomorphism(ring, &module, i, i + 1)?, check_endomorphism(ring, &module, i + 1, i)?];
    let pass = checks.iter().all(|c| c.chain_map && c.sign.is_some());
    Ok(HomotopyReport { n: ring.n(), i, bimodule_dimension: module.dimension(), checks, pass })
}

/// Dimension of `F(U_i)` from circle counts alone.
pub fn bimodule_dimension(ring: &ArcRing, i: usize) -> Result<usize> {
    let mut total = 0;
    for b in ring.order() {
        for a in ring.order() {
            let composite = compose_ui(i, a)?;
            total += 1 << (block_circles(b, &composite.result)? + composite.closed_circles);
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arc_ring::build_ring;
    use crate::combinatorics::enumerate_matchings;
    use crate::frobenius::Label::{One, X};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(pairs: &[(usize, usize)]) -> Matching {
        Matching::new(pairs.iter().copied()).unwrap()
    }

    fn basis_of(vs: &[BasisVector]) -> Vec<Element> {
        vs.iter().cloned().map(Element::basis).collect()
    }

    #[test]
    fn flat_composites() {
        let a = m(&[(1, 2), (3, 4)]);
        assert_eq!(compose_ui(1, &a).unwrap(), FlatComposite { result: a.clone(), closed_circles: 1 });
        assert_eq!(compose_ui(2, &a).unwrap(), FlatComposite { result: m(&[(1, 4), (2, 3)]), closed_circles: 0 });
        for n in 1..=3 {
            for a in enumerate_matchings(n) {
                for i in 1..2 * n {
                    let c = compose_ui(i, &a).unwrap();
                    assert!(c.result.contains_pair(i, i + 1));
                    assert!(c.closed_circles <= 1);
                }
            }
        }
        assert!(compose_ui(4, &a).is_err());
    }

    #[test]
    fn n1_saddles() {
        let ring = build_ring(1).unwrap();
        let module = UiBimodule::new(&ring, 1).unwrap();
        assert_eq!(module.dimension(), 4);
        let a = m(&[(1, 2)]);
        // through circle then free circle; α merges them
        let v = |w: Vec<_>| Element::basis(BasisVector::new(a.clone(), a.clone(), w));
        assert_eq!(module.alpha(&v(vec![One, X])).unwrap(), v(vec![X]));
        assert_eq!(module.alpha(&v(vec![X, X])).unwrap(), Element::zero());
        let split = module.beta(&v(vec![One])).unwrap();
        assert_eq!(split, v(vec![One, X]).add(&v(vec![X, One])));
        assert_eq!(module.alpha(&split).unwrap(), v(vec![X]).scale(2));
    }

    #[test]
    fn dimensions_agree() {
        for n in 1..=3 {
            let ring = build_ring(n).unwrap();
            for i in 1..2 * n {
                assert_eq!(UiBimodule::new(&ring, i).unwrap().dimension(), bimodule_dimension(&ring, i).unwrap());
            }
        }
    }

    #[test]
    fn bimodule_axioms_and_maps() {
        for n in 1..=2 {
            let ring = build_ring(n).unwrap();
            let unit = ring.unit();
            let rb = basis_of(ring.basis());
            for i in 1..2 * n {
                let module = UiBimodule::new(&ring, i).unwrap();
                for mv in basis_of(module.basis()) {
                    assert_eq!(module.left(&unit, &mv).unwrap(), mv);
                    assert_eq!(module.right(&mv, &unit).unwrap(), mv);
                    let am = module.alpha(&mv).unwrap();
                    assert_eq!(am.degrees().len().max(1), 1);
                    for x in &rb {
                        let xm = module.left(x, &mv).unwrap();
                        assert_eq!(module.alpha(&xm).unwrap(), ring.multiply(x, &am).unwrap());
                        for y in &rb {
                            let lhs = module.right(&xm, y).unwrap();
                            assert_eq!(lhs, module.left(x, &module.right(&mv, y).unwrap()).unwrap());
                        }
                        let my = module.right(&mv, x).unwrap();
                        assert_eq!(module.alpha(&my).unwrap(), ring.multiply(&am, x).unwrap());
                    }
                }
                for h in &rb {
                    let bh = module.beta(h).unwrap();
                    for t in bh.terms() {
                        assert!(module.contains(t.0));
                        assert_eq!(t.0.degree(), h.terms().next().unwrap().0.degree() + 1);
                    }
                    for x in &rb {
                        assert_eq!(module.beta(&ring.multiply(x, h).unwrap()).unwrap(), module.left(x, &bh).unwrap());
                        assert_eq!(module.beta(&ring.multiply(h, x).unwrap()).unwrap(), module.right(&bh, x).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn associativity_sampled_n3() {
        let ring = build_ring(3).unwrap();
        let module = UiBimodule::new(&ring, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..300 {
            let mv = &module.basis()[rng.gen_range(0..module.dimension())];
            let xs: Vec<&BasisVector> = ring.basis().iter().filter(|x| x.col == mv.row).collect();
            let ys: Vec<&BasisVector> = ring.basis().iter().filter(|y| y.row == mv.col).collect();
            let x = Element::basis(xs[rng.gen_range(0..xs.len())].clone());
            let y = Element::basis(ys[rng.gen_range(0..ys.len())].clone());
            let mv = Element::basis(mv.clone());
            let lhs = module.right(&module.left(&x, &mv).unwrap(), &y).unwrap();
            assert_eq!(lhs, module.left(&x, &module.right(&mv, &y).unwrap()).unwrap());
        }
    }

    #[test]
    fn null_homotopy_small() {
        for n in 1..=2 {
            let ring = build_ring(n).unwrap();
            for i in 1..2 * n {
                let report = verify_null_homotopy(&ring, i).unwrap();
                assert!(report.pass, "{report:?}");
            }
        }
        let ring = build_ring(1).unwrap();
        let report = verify_null_homotopy(&ring, 1).unwrap();
        assert_eq!(report.checks[0].sign, Some(-1));
        assert_eq!(report.checks[1].sign, Some(1));
    }

    #[test]
    fn endomorphism_on_the_unit() {
        let ring = build_ring(2).unwrap();
        let unit = ring.unit();
        for i in 1..4 {
            let (xi, xj) = (central_x(&ring, i).unwrap(), central_x(&ring, i + 1).unwrap());
            let phi = ring.multiply(&xi, &unit).unwrap().sub(&ring.multiply(&unit, &xj).unwrap());
            assert_eq!(phi, xi.sub(&xj));
        }
    }
}
