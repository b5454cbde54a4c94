//! Dense integer matrices.
//!
//! Matrices act on column vectors: a map `Z^n -> Z^m` is an `m x n` matrix.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;

use crate::scalar::{self, Overflow, Ring};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, entries: Vec<T>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        Self {
            rows,
            cols,
            data: entries,
        }
    }

    /// Builds a matrix from row vectors of machine integers.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self
    where
        T: From<i64>,
    {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            data.extend(r.iter().map(|&x| T::from(x)));
        }
        Self::from_rows(nrows, ncols, data)
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
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

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, Overflow> {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = scalar::mul(a, b)?;
                    out[(i, j)] = scalar::add(&out[(i, j)], &prod)?;
                }
            }
        }
        Ok(out)
    }

    /// Product; panics on overflow. Use with `BigInt` or small entries.
    pub fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("matrix product overflowed")
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.shape(), rhs.shape());
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(cols: usize, blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            assert_eq!(b.cols, cols);
            data.extend(b.data.iter().cloned());
        }
        Self { rows, cols, data }
    }

    /// Keeps the given columns, in order.
    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, idx.len());
        for (jj, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                m[(i, jj)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(idx.len(), self.cols);
        for (ii, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                m[(ii, j)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Kronecker product `self (x) rhs`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out[(i * rhs.rows + k, j * rhs.cols + l)] = a.clone() * rhs[(k, l)].clone();
                    }
                }
            }
        }
        out
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_big(&self) -> Matrix<BigInt> {
        self.map(Ring::to_big)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] -= q * row[src]`
    pub(crate) fn row_sub_mul(&mut self, dst: usize, src: usize, q: &T) -> Result<(), Overflow> {
        if q.is_zero() {
            return Ok(());
        }
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let v = scalar::sub_mul(&self.data[dst * self.cols + j], q, s)?;
            self.data[dst * self.cols + j] = v;
        }
        Ok(())
    }

    /// `col[dst] -= q * col[src]`
    pub(crate) fn col_sub_mul(&mut self, dst: usize, src: usize, q: &T) -> Result<(), Overflow> {
        if q.is_zero() {
            return Ok(());
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if s.is_zero() {
                continue;
            }
            let v = scalar::sub_mul(&self.data[i * self.cols + dst], q, s)?;
            self.data[i * self.cols + dst] = v;
        }
        Ok(())
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.data[i * self.cols + j].clone();
            self.data[i * self.cols + j] = v;
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Ring> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{:>4}", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = Matrix::<i64>::from_i64_rows(&[vec![1, 2], vec![3, 4]]);
        let b = Matrix::<i64>::from_i64_rows(&[vec![0, 1], vec![1, 0]]);
        let ab = a.mul(&b);
        assert_eq!(ab, Matrix::from_i64_rows(&[vec![2, 1], vec![4, 3]]));
        assert_eq!(a.transpose()[(0, 1)], 3);
        assert_eq!(a.apply(&[1, 1]), vec![3, 7]);
    }

    #[test]
    fn overflow_is_reported() {
        let a = Matrix::<i64>::from_i64_rows(&[vec![i64::MAX]]);
        assert_eq!(a.checked_mul(&a), Err(Overflow));
    }

    #[test]
    fn empty_shapes() {
        let a = Matrix::<i64>::zeros(0, 3);
        let b = Matrix::<i64>::zeros(3, 2);
        assert_eq!(a.mul(&b).shape(), (0, 2));
        assert!(a.is_zero());
    }
}
