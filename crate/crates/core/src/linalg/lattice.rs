use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Integer row lattice kept in echelon form while vectors are added.
///
/// Useful when a lattice is generated by many more vectors than its rank:
/// only one row per pivot column is ever stored.
#[derive(Clone, Debug)]
pub struct Lattice {
    dim: usize,
    rows: BTreeMap<usize, Vec<BigInt>>,
}

fn leading(v: &[BigInt]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

impl Lattice {
    pub fn new(dim: usize) -> Self {
        Lattice { dim, rows: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a generator; returns whether the lattice grew.
    pub fn insert(&mut self, v: Vec<BigInt>) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v = v;
        let mut grew = false;
        while let Some(c) = leading(&v) {
            let Some(row) = self.rows.get_mut(&c) else {
                if v[c].is_negative() {
                    v.iter_mut().for_each(|x| *x = -std::mem::take(x));
                }
                self.rows.insert(c, v);
                return true;
            };
            let (q, r) = v[c].div_rem(&row[c]);
            if r.is_zero() {
                for (x, y) in v.iter_mut().zip(row.iter()) {
                    *x -= &q * y;
                }
                continue;
            }
            // replace (row, v) by (s·row + t·v, (row_c/g)·v − (v_c/g)·row)
            let e = row[c].extended_gcd(&v[c]);
            let (a, b) = (&row[c] / &e.gcd, &v[c] / &e.gcd);
            let new_row: Vec<BigInt> = row.iter().zip(&v).map(|(y, x)| &e.x * y + &e.y * x).collect();
            let rest: Vec<BigInt> = row.iter().zip(&v).map(|(y, x)| &a * x - &b * y).collect();
            *row = new_row;
            if row[c].is_negative() {
                row.iter_mut().for_each(|x| *x = -std::mem::take(x));
            }
            v = rest;
            grew = true;
        }
        grew
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        while let Some(c) = leading(&v) {
            let Some(row) = self.rows.get(&c) else { return false };
            let (q, r) = v[c].div_rem(&row[c]);
            if !r.is_zero() {
                return false;
            }
            for (x, y) in v.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
        true
    }

    /// Current basis rows, ordered by pivot column.
    pub fn basis(&self) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = self.rows.values().cloned().collect();
        IntMatrix::from_rows_with_cols(&rows, self.dim)
    }
}
