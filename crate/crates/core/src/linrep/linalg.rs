//! Dense exact linear algebra over a [`FieldSpec`].

use std::fmt;

use num_traits::Zero;

use super::field::{format_scalar, FieldSpec, Scalar};

/// Dense matrix of field scalars, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::from_integer(1.into());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn from_columns(columns: Vec<Vec<Scalar>>, rows: usize) -> Self {
        let cols = columns.len();
        let mut m = Self::zeros(rows, cols);
        for (j, c) in columns.into_iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged matrix");
            for (i, x) in c.into_iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    /// Matrix times column vector.
    pub fn apply(&self, f: &FieldSpec, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    pub fn mul(&self, f: &FieldSpec, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let cols = (0..other.cols).map(|j| self.apply(f, &other.column(j))).collect();
        Matrix::from_columns(cols, self.rows)
    }

    pub fn rank(&self, f: &FieldSpec) -> usize {
        Echelon::new(f, (0..self.rows).map(|i| self.row(i).to_vec()), self.cols).rank()
    }

    pub fn inverse(&self, f: &FieldSpec) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
                r
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !aug[r][c].is_zero())?;
            aug.swap(c, p);
            let inv = f.inv(&aug[c][c])?;
            for x in aug[c].iter_mut() {
                *x = f.mul(x, &inv);
            }
            for r in 0..n {
                if r != c && !aug[r][c].is_zero() {
                    let k = aug[r][c].clone();
                    let pivot = aug[c].clone();
                    for (x, y) in aug[r].iter_mut().zip(&pivot) {
                        *x = f.sub(x, &f.mul(&k, y));
                    }
                }
            }
        }
        Some(Matrix::from_rows(aug.into_iter().map(|r| r[n..].to_vec()).collect(), n))
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            (0..self.rows).map(|i| self.row(i).iter().map(format_scalar).collect::<Vec<_>>().join(" ")).collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// Reduced row echelon basis of a subspace of `F^ncols`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn empty(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn new(f: &FieldSpec, vectors: impl IntoIterator<Item = Vec<Scalar>>, ncols: usize) -> Self {
        let mut e = Self::empty(ncols);
        for v in vectors {
            e.insert(f, v);
        }
        e
    }

    /// Adds a vector to the span; returns whether the span grew.
    pub fn insert(&mut self, f: &FieldSpec, v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.ncols);
        let mut r = self.reduce(f, &v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = f.inv(&r[p]).expect("nonzero pivot");
        for x in r.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let k = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    *x = f.sub(x, &f.mul(&k, y));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    /// Remainder of `v` after clearing all pivot coordinates.
    pub fn reduce(&self, f: &FieldSpec, v: &[Scalar]) -> Vec<Scalar> {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let k = r[p].clone();
                for (x, y) in r.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x = f.sub(x, &f.mul(&k, y));
                    }
                }
            }
        }
        r
    }

    pub fn contains(&self, f: &FieldSpec, v: &[Scalar]) -> bool {
        self.reduce(f, v).iter().all(Zero::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| self.pivots.binary_search(c).is_err()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> Scalar {
        Scalar::from_integer(x.into())
    }

    #[test]
    fn echelon_is_reduced() {
        let f = FieldSpec::Rationals;
        let e = Echelon::new(&f, vec![vec![q(0), q(2), q(4)], vec![q(1), q(1), q(1)], vec![q(1), q(2), q(3)]], 3);
        assert_eq!(e.rank(), 2);
        assert_eq!(e.pivots(), &[0, 1]);
        assert_eq!(e.rows()[0], vec![q(1), q(0), q(-1)]);
        assert_eq!(e.non_pivots(), vec![2]);
        assert!(e.contains(&f, &[q(2), q(3), q(4)]));
        assert!(!e.contains(&f, &[q(0), q(0), q(1)]));
    }

    #[test]
    fn inverse_round_trip() {
        let f = FieldSpec::Prime(3);
        let m = Matrix::from_rows(vec![vec![q(1), q(1)], vec![q(0), q(1)]], 2);
        let inv = m.inverse(&f).unwrap();
        assert!(m.mul(&f, &inv).is_identity());
        assert_eq!(inv[(0, 1)], q(2));
        let sing = Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(2), q(4)]], 2);
        assert!(sing.inverse(&FieldSpec::Rationals).is_none());
    }
}
