//! Minimal dense row-major matrix over any [`Scalar`].
//!
//! Everything in this crate is desk scale (≤ 4096 vertices, ≤ 16384 arcs), so
//! a plain `Vec`-backed dense matrix is the whole story. Numeric
//! eigendecomposition is delegated to nalgebra at the `spectra` boundary.

use crate::scalar::Scalar;
use std::ops::{Index, IndexMut};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
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

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self[(i, j)] != self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)].clone();
                if a.is_zero() {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(orow) {
                    *d = d.clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matvec dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, x)| acc + a.clone() * x.clone())
            })
            .collect()
    }

    /// Entrywise (Schur) product.
    pub fn schur(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() * b.clone())
                .collect(),
        }
    }

    /// Column `j` as an owned vector.
    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }
}

impl Matrix<f64> {
    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Max-entry norm of the difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Max-entry distance from the identity.
    pub fn max_abs_diff_identity(&self) -> f64 {
        assert!(self.is_square());
        let mut m: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let target = if i == j { 1.0 } else { 0.0 };
                m = m.max((self[(i, j)] - target).abs());
            }
        }
        m
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// First-kind Chebyshev polynomial of a square matrix by the three-term
/// recurrence `T_m = 2 X T_{m-1} - T_{m-2}`.
pub fn chebyshev_matrix<T: Scalar>(x: &Matrix<T>, m: usize, two: &T) -> Matrix<T> {
    assert!(x.is_square());
    match m {
        0 => Matrix::identity(x.rows()),
        1 => x.clone(),
        _ => {
            let mut prev = Matrix::identity(x.rows());
            let mut cur = x.clone();
            for _ in 2..=m {
                let next = x.matmul(&cur).scale(two).sub(&prev);
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// First-kind Chebyshev value by the three-term recurrence, in any ring.
///
/// `two` must be the ring's 2; passing it keeps the bound at `Scalar` instead
/// of requiring a `From<u8>` impl for every entry type.
pub fn chebyshev_scalar<T: Scalar>(m: usize, x: &T, two: &T) -> T {
    match m {
        0 => T::one(),
        1 => x.clone(),
        _ => {
            let mut prev = T::one();
            let mut cur = x.clone();
            for _ in 2..=m {
                let next = two.clone() * x.clone() * cur.clone() - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn matmul_identity() {
        let a = Matrix::<i64>::from_rows(vec![vec![1, 2], vec![3, 4]]);
        let i = Matrix::<i64>::identity(2);
        assert_eq!(a.matmul(&i), a);
        assert_eq!(i.matmul(&a), a);
    }

    #[test]
    fn transpose_involution() {
        let a = Matrix::<i64>::from_rows(vec![vec![1, 2, 3], vec![4, 5, 6]]);
        assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn chebyshev_first_values_rational() {
        let half = Rational64::new(1, 2);
        let two = Rational64::from_integer(2);
        // T_0..T_3 at 1/2: 1, 1/2, -1/2, -1
        assert_eq!(chebyshev_scalar(0, &half, &two), Rational64::from_integer(1));
        assert_eq!(chebyshev_scalar(1, &half, &two), half);
        assert_eq!(chebyshev_scalar(2, &half, &two), Rational64::new(-1, 2));
        assert_eq!(chebyshev_scalar(3, &half, &two), Rational64::from_integer(-1));
    }
}
