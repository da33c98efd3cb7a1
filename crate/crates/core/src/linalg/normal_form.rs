use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Row-style Hermite normal form `U·M = H`.
///
/// `H` is in row echelon form: the first `rank` rows are nonzero with
/// positive pivots at strictly increasing columns, entries above a pivot lie
/// in `[0, pivot)`, and the remaining rows are zero. `U` is unimodular.
#[derive(Clone, Debug)]
pub struct Hermite {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub pivots: Vec<usize>,
}

impl Hermite {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Smith normal form `U·M·V = D`, `D` diagonal with `d_1 | d_2 | ...`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries of `D`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Index of the nonzero entry of smallest magnitude in column `c` at rows `from..`.
fn smallest_in_column(h: &IntMatrix, c: usize, from: usize) -> Option<usize> {
    (from..h.rows())
        .filter(|&i| !h.get(i, c).is_zero())
        .min_by(|&x, &y| h.get(x, c).abs().cmp(&h.get(y, c).abs()))
}

pub fn hermite(m: &IntMatrix) -> Hermite {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols() {
        if r == m.rows() {
            break;
        }
        while let Some(p) = smallest_in_column(&h, c, r) {
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut cleared = true;
            for i in r + 1..m.rows() {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = h.get(i, c).div_floor(h.get(r, c));
                h.sub_row_multiple(i, r, &q);
                u.sub_row_multiple(i, r, &q);
                cleared &= h.get(i, c).is_zero();
            }
            if cleared {
                break;
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = h.get(i, c).div_floor(h.get(r, c));
            h.sub_row_multiple(i, r, &q);
            u.sub_row_multiple(i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    Hermite { h, u, pivots }
}

pub fn smith(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = d.get(i, j);
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Smith { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = d.get(i, t).div_floor(d.get(t, t));
                d.sub_row_multiple(i, t, &q);
                u.sub_row_multiple(i, t, &q);
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = d.get(t, j).div_floor(d.get(t, t));
                d.sub_col_multiple(j, t, &q);
                v.sub_col_multiple(j, t, &q);
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = d.get(t, t).clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    d.sub_row_multiple(t, i, &minus_one);
                    u.sub_row_multiple(t, i, &minus_one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Smith { u, d, v }
}

pub fn rank(m: &IntMatrix) -> usize {
    hermite(m).rank()
}

/// Nonzero rows of the Hermite form: the canonical basis of the row lattice.
pub fn row_lattice_basis(m: &IntMatrix) -> IntMatrix {
    let hnf = hermite(m);
    let keep: Vec<usize> = (0..hnf.rank()).collect();
    hnf.h.select_rows(&keep)
}

/// Rows form a basis of the lattice `{v : M v = 0}`, reduced to Hermite form.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let hnf = hermite(&m.transpose());
    let zero_rows: Vec<usize> = (hnf.rank()..m.cols()).collect();
    row_lattice_basis(&hnf.u.select_rows(&zero_rows))
}

/// Whether the column spans of `a` and `b` coincide over the integers.
pub fn lattice_equal(a: &IntMatrix, b: &IntMatrix) -> bool {
    assert_eq!(a.rows(), b.rows(), "column spans live in different spaces");
    row_lattice_basis(&a.transpose()) == row_lattice_basis(&b.transpose())
}

/// Integer coefficients `x` with `x · basis = v`, where `basis` has
/// independent rows; `None` when `v` is not in their integer span.
pub fn solve_in_row_span(basis: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(basis.cols(), v.len());
    let hnf = hermite(basis);
    let mut rest = v.to_vec();
    let mut y = vec![BigInt::zero(); basis.rows()];
    for (r, &c) in hnf.pivots.iter().enumerate() {
        let (q, rem) = rest[c].div_rem(hnf.h.get(r, c));
        if !rem.is_zero() {
            return None;
        }
        for (j, x) in rest.iter_mut().enumerate() {
            *x -= &q * hnf.h.get(r, j);
        }
        y[r] = q;
    }
    if rest.iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some((0..basis.rows()).map(|k| (0..basis.rows()).map(|r| &y[r] * hnf.u.get(r, k)).sum()).collect())
}
