//! Square-free polynomial arithmetic in `Z[X_1..X_2n]/(X_i^2)`, the two
//! ideals presenting the cohomology of the `(n,n)` Springer variety, their
//! graded quotient ranks, and the admissible normal form.
//!
//! Both ideals contain every `X_i^2`, so all work happens in the square-free
//! quotient, which has a monomial basis `X_I`, `I ⊆ [1,2n]`.

mod permutation;
mod poly;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

pub use permutation::Permutation;
pub use poly::{elem_sym, SquareFreePoly};

use crate::combinatorics::{Subset, MAX_POINTS};
use crate::error::{Error, Result};
use crate::linalg::{smith, IntMatrix, Lattice};

/// Monomials `X_I` with `|I| = d`, in lexicographic order, with their positions.
struct MonomialBasis {
    monomials: Vec<Subset>,
    position: HashMap<Subset, usize>,
}

impl MonomialBasis {
    fn new(n: usize, d: usize) -> Self {
        let monomials = Subset::of_size(2 * n, d);
        let position = monomials.iter().enumerate().map(|(k, &s)| (s, k)).collect();
        MonomialBasis { monomials, position }
    }

    fn vector(&self, p: &SquareFreePoly) -> Vec<BigInt> {
        let mut v = vec![BigInt::default(); self.monomials.len()];
        for (s, c) in p.terms() {
            v[self.position[&s]] += c;
        }
        v
    }
}

/// Degree-by-degree integer span of a homogeneous ideal in the square-free
/// ring. Degree `d` holds the span of the ideal inside `{X_I : |I| = d}`.
#[derive(Clone, Debug)]
pub struct GradedIdealSpan {
    n: usize,
    degrees: Vec<Lattice>,
}

impl GradedIdealSpan {
    /// Closes homogeneous generators under multiplication by each `X_i`.
    pub fn generated_by(n: usize, generators: &[SquareFreePoly]) -> Result<Self> {
        if 2 * n > MAX_POINTS {
            return Err(Error::Capacity { n, limit: MAX_POINTS / 2 });
        }
        let bases: Vec<MonomialBasis> = (0..=2 * n).map(|d| MonomialBasis::new(n, d)).collect();
        let mut by_degree: Vec<Vec<&SquareFreePoly>> = vec![Vec::new(); 2 * n + 1];
        for g in generators {
            match g.cardinalities().as_slice() {
                [] => {}
                [d] => by_degree[*d].push(g),
                _ => return Err(Error::Invariant(format!("generator {g:?} is not homogeneous"))),
            }
        }
        let mut degrees: Vec<Lattice> = Vec::with_capacity(2 * n + 1);
        for d in 0..=2 * n {
            let mut lattice = Lattice::new(bases[d].monomials.len());
            for g in &by_degree[d] {
                lattice.insert(bases[d].vector(g));
            }
            if d > 0 {
                let below = degrees[d - 1].basis();
                for r in 0..below.rows() {
                    for i in 1..=2 * n {
                        let mut v = vec![BigInt::default(); bases[d].monomials.len()];
                        for (k, c) in below.row(r).iter().enumerate() {
                            let s = bases[d - 1].monomials[k];
                            if !s.contains(i) {
                                v[bases[d].position[&s.union(Subset::singleton(i))]] += c;
                            }
                        }
                        lattice.insert(v);
                    }
                }
            }
            degrees.push(lattice);
        }
        Ok(GradedIdealSpan { n, degrees })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self, d: usize) -> usize {
        self.degrees[d].rank()
    }

    /// Matrix whose columns span degree `d`, in the monomial basis.
    pub fn matrix(&self, d: usize) -> IntMatrix {
        self.degrees[d].basis().transpose()
    }

    pub fn contains(&self, p: &SquareFreePoly) -> bool {
        (0..=2 * self.n).all(|d| {
            let component: Vec<BigInt> = p.coefficients_in_degree(d).into_iter().map(BigInt::from).collect();
            self.degrees[d].contains(&component)
        })
    }
}

/// Generators `e_k([1,2n])`, `k ∈ [1,2n]`.
pub fn r1_generators(n: usize) -> Vec<SquareFreePoly> {
    let all = Subset::interval(1, 2 * n);
    (1..=2 * n).map(|k| elem_sym(k, all, n)).collect()
}

/// Generators `e_k(I)` with `k + |I| = 2n + 1`, and `X_I` with `|I| = n + 1`.
pub fn r2_generators(n: usize) -> Vec<SquareFreePoly> {
    let mut gens = Vec::new();
    for k in 1..=n {
        for i in Subset::of_size(2 * n, 2 * n + 1 - k) {
            gens.push(elem_sym(k, i, n));
        }
    }
    for i in Subset::of_size(2 * n, n + 1) {
        gens.push(SquareFreePoly::monomial(n, i));
    }
    gens
}

pub fn ideal_r1(n: usize) -> Result<GradedIdealSpan> {
    GradedIdealSpan::generated_by(n, &r1_generators(n))
}

pub fn ideal_r2(n: usize) -> Result<GradedIdealSpan> {
    GradedIdealSpan::generated_by(n, &r2_generators(n))
}

/// Degreewise equality of two ideal spans.
pub fn ideals_equal(a: &GradedIdealSpan, b: &GradedIdealSpan) -> bool {
    a.n == b.n && (0..=2 * a.n).all(|d| crate::linalg::lattice_equal(&a.matrix(d), &b.matrix(d)))
}

/// Rank of each graded piece of the quotient, indexed by `|I|`. Fails with
/// [`Error::Torsion`] if some piece has torsion.
pub fn quotient_graded_ranks(ideal: &GradedIdealSpan) -> Result<Vec<usize>> {
    let n = ideal.n;
    (0..=2 * n)
        .map(|d| {
            let basis = ideal.degrees[d].basis();
            if basis.rows() > 0 {
                let factors = smith(&basis).invariant_factors();
                if factors.iter().any(|f| !f.is_one()) {
                    return Err(Error::Torsion { degree: d, factors: factors.iter().map(ToString::to_string).collect() });
                }
            }
            Ok(binomial_usize(2 * n, d) - basis.rows())
        })
        .collect()
}

fn binomial_usize(n: usize, k: usize) -> usize {
    crate::combinatorics::binomial(n, k).to_usize().expect("binomial fits in usize")
}

/// Rewrites `p` modulo `R_1` into a combination of admissible monomials.
pub fn reduce_to_admissible(p: &SquareFreePoly) -> SquareFreePoly {
    let mut memo = HashMap::new();
    let mut out = SquareFreePoly::zero(p.n());
    for (s, c) in p.terms() {
        out = out.add(&reduce_monomial(p.n(), s, &mut memo).scale(c));
    }
    out
}

fn reduce_monomial(n: usize, j: Subset, memo: &mut HashMap<Subset, SquareFreePoly>) -> SquareFreePoly {
    if let Some(p) = memo.get(&j) {
        return p.clone();
    }
    let result = match j.first_violation() {
        None => SquareFreePoly::monomial(n, j),
        Some(m) => {
            // e_{r+1}(S ∪ T) lies in R_1, so X_S = -Σ X_K over the other
            // (r+1)-subsets K of S ∪ T; every such K has a larger index sum
            let head = j.intersection(Subset::interval(1, m));
            let tail_range = Subset::interval(m + 1, 2 * n);
            let tail = j.intersection(tail_range);
            let mut out = SquareFreePoly::zero(n);
            for k in head.union(tail_range).subsets() {
                if k.len() == head.len() && k != head && k.is_disjoint(tail) {
                    out = out.sub(&reduce_monomial(n, k.union(tail), memo));
                }
            }
            out
        }
    };
    memo.insert(j, result.clone());
    result
}

/// `e_k([1,2n-k+1]) - Σ_{i<k} (-1)^i e_i([2n-k+2,2n]) e_{k-i}([1,2n])`,
/// computed in the square-free ring.
pub fn reduction_identity_defect(n: usize, k: usize) -> SquareFreePoly {
    let head = Subset::interval(1, 2 * n + 1 - k);
    let tail = Subset::interval(2 * n + 2 - k, 2 * n);
    alternating_defect(n, k, head, tail)
}

/// `X_{[1,n+1]} - Σ_{i<n} (-1)^i e_i([n+2,2n]) e_{n+1-i}([1,2n])`.
pub fn top_monomial_identity_defect(n: usize) -> SquareFreePoly {
    alternating_defect(n, n + 1, Subset::interval(1, n + 1), Subset::interval(n + 2, 2 * n))
}

fn alternating_defect(n: usize, k: usize, head: Subset, tail: Subset) -> SquareFreePoly {
    let all = Subset::interval(1, 2 * n);
    let mut rhs = SquareFreePoly::zero(n);
    for i in 0..k.min(tail.len() + 1) {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        rhs = rhs.add(&elem_sym(i, tail, n).mul(&elem_sym(k - i, all, n)).scale(sign));
    }
    elem_sym(k, head, n).sub(&rhs)
}

/// The checks on the two presentations for one `n`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SpringerReport {
    pub n: usize,
    pub quotient_graded_ranks: Vec<usize>,
    pub admissible_counts: Vec<usize>,
    pub ranks_match: bool,
    pub torsion_free: bool,
    pub ideals_equal: bool,
    pub reduction_identities_vanish: bool,
    pub top_monomial_identity_vanishes: bool,
    pub pass: bool,
}

pub fn verify_springer(n: usize) -> Result<SpringerReport> {
    let r1 = ideal_r1(n)?;
    let r2 = ideal_r2(n)?;
    let (quotient_graded_ranks, torsion_free) = match quotient_graded_ranks(&r1) {
        Ok(ranks) => (ranks, true),
        Err(Error::Torsion { .. }) => (Vec::new(), false),
        Err(e) => return Err(e),
    };
    let mut admissible_counts = vec![0; 2 * n + 1];
    for s in crate::combinatorics::admissible_subsets(n) {
        admissible_counts[s.subset().len()] += 1;
    }
    let ranks_match = quotient_graded_ranks == admissible_counts;
    let ideals_equal = ideals_equal(&r1, &r2);
    let reduction_identities_vanish = (1..=2 * n).all(|k| reduction_identity_defect(n, k).is_zero());
    let top_monomial_identity_vanishes = top_monomial_identity_defect(n).is_zero();
    Ok(SpringerReport {
        n,
        quotient_graded_ranks,
        admissible_counts,
        ranks_match,
        torsion_free,
        ideals_equal,
        reduction_identities_vanish,
        top_monomial_identity_vanishes,
        pass: ranks_match && torsion_free && ideals_equal && reduction_identities_vanish && top_monomial_identity_vanishes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{admissible_subsets, binomial};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn s(e: &[usize]) -> Subset {
        Subset::from_elements(e.iter().copied()).unwrap()
    }

    fn admissible_by_size(n: usize) -> Vec<usize> {
        let mut counts = vec![0; 2 * n + 1];
        for a in admissible_subsets(n) {
            counts[a.subset().len()] += 1;
        }
        counts
    }

    #[test]
    fn elementary_symmetric_examples() {
        let e1 = elem_sym(1, s(&[1, 2]), 1);
        assert_eq!(e1, SquareFreePoly::var(1, 1).add(&SquareFreePoly::var(1, 2)));
        let e2 = elem_sym(2, Subset::interval(1, 4), 2);
        assert_eq!(e2.terms().count(), 6);
        assert!(e2.terms().all(|(m, c)| m.len() == 2 && c == 1));
        assert_eq!(elem_sym(0, s(&[2, 3]), 2), SquareFreePoly::one(2));
        assert!(elem_sym(3, s(&[2, 3]), 2).is_zero());
    }

    #[test]
    fn square_free_products() {
        let x1 = SquareFreePoly::var(2, 1);
        let x2 = SquareFreePoly::var(2, 2);
        assert!(x1.mul(&x1).is_zero());
        assert_eq!(x1.mul(&x2), SquareFreePoly::monomial(2, s(&[1, 2])));
        let e1 = elem_sym(1, Subset::interval(1, 4), 2);
        // e_1^2 = 2 e_2 once squares vanish
        assert_eq!(e1.mul(&e1), elem_sym(2, Subset::interval(1, 4), 2).scale(2));
        assert_eq!(format!("{:?}", x1.sub(&x2.scale(3))), "X1 - 3X2");
    }

    #[test]
    fn r1_small_degrees() {
        let r1 = ideal_r1(1).unwrap();
        assert_eq!(r1.rank(0), 0);
        assert_eq!(r1.rank(1), 1);
        assert!(r1.contains(&elem_sym(1, s(&[1, 2]), 1)));
        assert!(r1.contains(&SquareFreePoly::monomial(1, s(&[1, 2]))));
        assert!(!r1.contains(&SquareFreePoly::var(1, 1)));
        assert_eq!(quotient_graded_ranks(&r1).unwrap(), vec![1, 1, 0]);
    }

    #[test]
    fn graded_ranks_match_admissible_counts() {
        assert_eq!(quotient_graded_ranks(&ideal_r1(2).unwrap()).unwrap(), vec![1, 3, 2, 0, 0]);
        for n in 1..=4 {
            let ranks = quotient_graded_ranks(&ideal_r1(n).unwrap()).unwrap();
            assert_eq!(ranks, admissible_by_size(n));
            assert_eq!(ranks.iter().sum::<usize>() as u128, binomial(2 * n, n));
        }
    }

    #[test]
    fn springer_reports() {
        for n in 1..=3 {
            let report = verify_springer(n).unwrap();
            assert!(report.pass, "{report:?}");
        }
        assert_eq!(verify_springer(2).unwrap().admissible_counts, vec![1, 3, 2, 0, 0]);
    }

    #[test]
    fn the_two_ideals_agree() {
        for n in 1..=3 {
            assert!(ideals_equal(&ideal_r1(n).unwrap(), &ideal_r2(n).unwrap()), "n = {n}");
        }
    }

    #[test]
    fn reduction_identities_hold_exactly() {
        for n in 1..=4 {
            for k in 1..=2 * n {
                assert!(reduction_identity_defect(n, k).is_zero(), "n = {n}, k = {k}");
            }
            assert!(top_monomial_identity_defect(n).is_zero());
        }
    }

    #[test]
    fn torsion_is_reported() {
        let n = 1;
        let doubled = GradedIdealSpan::generated_by(n, &[SquareFreePoly::var(n, 1).scale(2)]).unwrap();
        assert!(matches!(quotient_graded_ranks(&doubled), Err(Error::Torsion { degree: 1, .. })));
        let mixed = SquareFreePoly::one(n).add(&SquareFreePoly::var(n, 1));
        assert!(GradedIdealSpan::generated_by(n, &[mixed]).is_err());
    }

    #[test]
    fn admissible_reduction() {
        assert_eq!(reduce_to_admissible(&SquareFreePoly::var(1, 1)), SquareFreePoly::var(1, 2).scale(-1));
        let x24 = SquareFreePoly::monomial(2, s(&[2, 4]));
        assert_eq!(reduce_to_admissible(&x24), x24);
        for n in 1..=3 {
            let r1 = ideal_r1(n).unwrap();
            for bits in 0u32..1 << (2 * n) {
                let p = SquareFreePoly::monomial(n, Subset::from_bits(bits));
                let r = reduce_to_admissible(&p);
                assert!(r.terms().all(|(m, _)| m.is_admissible()));
                assert!(r1.contains(&p.sub(&r)));
                assert_eq!(reduce_to_admissible(&r), r);
            }
        }
    }

    #[test]
    fn ideals_are_permutation_stable() {
        for n in 1..=3 {
            let r1 = ideal_r1(n).unwrap();
            for i in 1..2 * n {
                let sigma = Permutation::adjacent(2 * n, i).unwrap();
                for g in r1_generators(n) {
                    assert!(r1.contains(&g.permute(&sigma)));
                }
            }
        }
    }

    #[test]
    fn permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let p = Permutation::random(6, &mut rng);
            let q = Permutation::random(6, &mut rng);
            assert_eq!(p.compose(&p.inverse()), Permutation::identity(6));
            let x = SquareFreePoly::monomial(3, s(&[1, 4]));
            assert_eq!(x.permute(&q).permute(&p), x.permute(&p.compose(&q)));
        }
        assert!(Permutation::from_images(vec![1, 1]).is_err());
        assert!(serde_json::from_str::<Permutation>("[2,1,3]").is_ok());
        assert!(serde_json::from_str::<Permutation>("[2,2]").is_err());
    }

    #[test]
    fn polynomial_json_round_trip() {
        let p = SquareFreePoly::monomial(2, s(&[1, 3])).sub(&SquareFreePoly::var(2, 2).scale(4));
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"[{"subset":[2],"coeff":-4},{"subset":[1,3],"coeff":1}]"#);
        assert_eq!(SquareFreePoly::from_json(2, serde_json::from_str(&json).unwrap()).unwrap(), p);
    }
}
