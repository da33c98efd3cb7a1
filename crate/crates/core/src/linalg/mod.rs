//! Exact integer linear algebra over arbitrary-precision integers: Hermite
//! and Smith normal forms, kernel lattices, ranks, lattice equality and
//! membership.

mod lattice;
mod matrix;
mod normal_form;

pub use lattice::Lattice;
pub use matrix::IntMatrix;
pub use normal_form::{
    hermite, kernel_basis, lattice_equal, rank, row_lattice_basis, smith, solve_in_row_span, Hermite, Smith,
};

use num_bigint::BigInt;

/// Converts machine integers to a `BigInt` vector.
pub fn big_vec<T: Into<BigInt> + Copy>(v: &[T]) -> Vec<BigInt> {
    v.iter().map(|&x| x.into()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Signed, Zero};
    use proptest::prelude::*;

    fn mat(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    fn is_unimodular(m: &IntMatrix) -> bool {
        m.determinant().abs().is_one()
    }

    #[test]
    fn smith_examples() {
        let s = smith(&mat(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.d, mat(&[vec![1, 0], vec![0, 6]]));
        assert_eq!(&(&s.u * &mat(&[vec![2, 0], vec![0, 3]])) * &s.v, s.d);
        assert!(smith(&IntMatrix::zeros(2, 3)).d.is_zero());
        assert_eq!(smith(&IntMatrix::identity(3)).d, IntMatrix::identity(3));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&mat(&[vec![1, 1]])), mat(&[vec![1, -1]]));
        assert_eq!(kernel_basis(&mat(&[vec![2, 4]])), mat(&[vec![2, -1]]));
        assert_eq!(kernel_basis(&mat(&[vec![2, 1], vec![1, 1]])).rows(), 0);
    }

    #[test]
    fn lattice_equality_examples() {
        let a = mat(&[vec![1, 3], vec![0, 5]]);
        assert!(lattice_equal(&a, &a));
        assert!(!lattice_equal(&mat(&[vec![1], vec![0]]), &mat(&[vec![2], vec![0]])));
        assert!(lattice_equal(&a, &mat(&[vec![3, 1], vec![5, 0]])));
        // same column span, different generators
        assert!(lattice_equal(&mat(&[vec![2, 3]]), &mat(&[vec![1]])));
    }

    #[test]
    fn hermite_shape() {
        let m = mat(&[vec![4, 6, 2], vec![2, 3, 1], vec![0, 2, 8]]);
        let h = hermite(&m);
        assert_eq!(&h.u * &m, h.h);
        assert!(is_unimodular(&h.u));
        assert_eq!(h.rank(), 2);
        assert_eq!(h.pivots, vec![0, 1]);
        assert!(h.h.row(2).iter().all(Zero::is_zero));
    }

    #[test]
    fn determinants() {
        assert_eq!(mat(&[vec![2, 1], vec![7, 4]]).determinant(), BigInt::from(1));
        assert_eq!(mat(&[vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 9]]).determinant(), BigInt::from(-3));
        assert_eq!(mat(&[vec![1, 2], vec![2, 4]]).determinant(), BigInt::zero());
    }

    #[test]
    fn incremental_lattice_matches_hermite() {
        let gens = [vec![6, 4, 2], vec![3, 5, 7], vec![9, 9, 9], vec![0, 2, 4]];
        let mut lat = Lattice::new(3);
        for g in &gens {
            lat.insert(big_vec(g));
        }
        let m = mat(&gens);
        assert_eq!(row_lattice_basis(&lat.basis()), row_lattice_basis(&m));
        assert!(lat.contains(&big_vec(&[9, 9, 9])));
        assert!(!lat.contains(&big_vec(&[1, 0, 0])));
        assert!(!lat.insert(big_vec(&[3, 1, -1])));
    }

    #[test]
    fn solving() {
        let basis = mat(&[vec![2, 0, 1], vec![0, 3, 1]]);
        let x = solve_in_row_span(&basis, &big_vec(&[4, -3, 1])).unwrap();
        assert_eq!(x, big_vec(&[2, -1]));
        assert!(solve_in_row_span(&basis, &big_vec(&[1, 0, 0])).is_none());
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..5, 1usize..5)
            .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..7, c), r))
    }

    proptest! {
        #[test]
        fn smith_is_a_valid_factorization(rows in small_matrix()) {
            let m = mat(&rows);
            let s = smith(&m);
            prop_assert_eq!(&(&s.u * &m) * &s.v, s.d.clone());
            prop_assert!(is_unimodular(&s.u) && is_unimodular(&s.v));
            let f = s.invariant_factors();
            for k in 0..s.d.rows().min(s.d.cols()) {
                for l in 0..s.d.rows().min(s.d.cols()) {
                    if k != l { prop_assert!(s.d.get(k, l).is_zero()); }
                }
            }
            for w in f.windows(2) {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
            prop_assert!(f.iter().all(|x| x.is_positive()));
            prop_assert_eq!(f.len(), rank(&m));
        }

        #[test]
        fn kernels_are_saturated(rows in small_matrix()) {
            let m = mat(&rows);
            let k = kernel_basis(&m);
            prop_assert_eq!(rank(&m) + k.rows(), m.cols());
            for i in 0..k.rows() {
                prop_assert!(m.mul_vec(k.row(i)).iter().all(Zero::is_zero));
            }
            if k.rows() > 0 {
                prop_assert!(smith(&k).invariant_factors().iter().all(One::is_one));
            }
        }

        #[test]
        fn hermite_is_canonical(rows in small_matrix(), seed in 0u64..1000) {
            // a random unimodular row operation does not change the reduced form
            let m = mat(&rows);
            let mut shuffled = m.clone();
            if shuffled.rows() > 1 {
                let (a, b) = ((seed as usize) % shuffled.rows(), (seed as usize / 7) % shuffled.rows());
                if a != b {
                    shuffled.sub_row_multiple(a, b, &BigInt::from(seed as i64 % 5 - 2));
                }
                shuffled.swap_rows(0, shuffled.rows() - 1);
            }
            prop_assert_eq!(row_lattice_basis(&m), row_lattice_basis(&shuffled));
            let mut lat = Lattice::new(m.cols());
            for r in m.row_vectors() {
                lat.insert(r);
            }
            prop_assert_eq!(row_lattice_basis(&lat.basis()), row_lattice_basis(&m));
        }
    }
}
