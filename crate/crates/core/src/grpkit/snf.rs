//! Smith normal form over the integers.
//!
//! Pivoting always moves the nonzero entry of least absolute value in the
//! remaining submatrix to the diagonal (first such entry in row-major order),
//! so the transforms are deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::intmat::IntMatrix;

/// `u * a * v == d` with `u`, `v` unimodular and `d` diagonal, nonnegative,
/// and satisfying the divisibility chain. `v_inv` is the inverse of `v`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries, in order.
    pub fn invariants(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).take_while(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariants().len()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    let diag = rows.min(cols);
    'outer: for t in 0..diag {
        loop {
            let Some((pi, pj)) = min_abs_entry(&m, t) else {
                break 'outer;
            };
            m.swap_rows(t, pi);
            u.swap_rows(t, pi);
            m.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let pivot = m[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if m[(i, t)].is_zero() {
                    continue;
                }
                let q = -m[(i, t)].div_floor(&pivot);
                m.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= m[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if m[(t, j)].is_zero() {
                    continue;
                }
                let q = m[(t, j)].div_floor(&pivot);
                let neg_q = -&q;
                m.add_col_multiple(j, t, &neg_q);
                v.add_col_multiple(j, t, &neg_q);
                v_inv.add_row_multiple(t, j, &q);
                clean &= m[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            if let Some(i) = first_non_multiple(&m, t, &pivot) {
                let one = BigInt::from(1);
                m.add_row_multiple(t, i, &one);
                u.add_row_multiple(t, i, &one);
                continue;
            }
            break;
        }
    }
    for i in 0..diag {
        if m[(i, i)].is_negative() {
            m.negate_row(i);
            u.negate_row(i);
        }
    }
    SmithForm { u, d: m, v, v_inv }
}

fn min_abs_entry(m: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..m.rows() {
        for j in t..m.cols() {
            let x = &m[(i, j)];
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Row index of the first entry (row-major) below-right of the pivot that the
/// pivot does not divide.
fn first_non_multiple(m: &IntMatrix, t: usize, pivot: &BigInt) -> Option<usize> {
    for i in t + 1..m.rows() {
        for j in t + 1..m.cols() {
            if !m[(i, j)].is_multiple_of(pivot) {
                return Some(i);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert!(s.u.is_unimodular());
        assert!(s.v.is_unimodular());
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(a.cols()));
        s
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&IntMatrix::identity(2));
        assert_eq!(s.d, IntMatrix::identity(2));
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(2));
    }

    #[test]
    fn two_by_two_example() {
        let s = check(&IntMatrix::from_i64(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.d, IntMatrix::from_i64(&[&[2, 0], &[0, 4]]));
    }

    #[test]
    fn zero_matrix() {
        let s = check(&IntMatrix::zeros(2, 3));
        assert!(s.d.is_zero());
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(3));
    }

    #[test]
    fn rectangular_and_empty() {
        let s = check(&IntMatrix::from_i64(&[&[3, 0, 0]]));
        assert_eq!(s.invariants(), vec![BigInt::from(3)]);
        let s = check(&IntMatrix::zeros(0, 2));
        assert_eq!(s.rank(), 0);
        let s = check(&IntMatrix::from_i64(&[&[4], &[6]]));
        assert_eq!(s.invariants(), vec![BigInt::from(2)]);
    }

    #[test]
    fn divisibility_repair() {
        // diag(2, 3) is not in normal form: invariants are 1, 6.
        let s = check(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.invariants(), vec![BigInt::from(1), BigInt::from(6)]);
    }
}
