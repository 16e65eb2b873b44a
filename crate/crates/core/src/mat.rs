//! Small dense row-major matrices over either scalar type.
//!
//! Sizes here are desk scale (n ≤ a few hundred), so the implementation
//! favors clarity and exactness over BLAS-style performance.

use num_complex::Complex64;
use serde::Serialize;

use crate::scalars::Scalar;

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = T::one();
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
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
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

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn to_complex(&self) -> Mat<Complex64> {
        self.map(Scalar::to_complex)
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn adjoint(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).conj())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j).add(rhs.at(i, j)))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j).sub(rhs.at(i, j)))
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a.mul(rhs.at(k, j));
                    let cur = out.at(i, j).add(&t);
                    *out.at_mut(i, j) = cur;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for j in 0..self.cols {
                    acc = acc.add(&self.at(i, j).mul(&v[j]));
                }
                acc
            })
            .collect()
    }

    /// Entrywise (Hadamard) product.
    pub fn hadamard(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j).mul(rhs.at(i, j)))
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square());
        let mut acc = T::zero();
        for i in 0..self.rows {
            acc = acc.add(self.at(i, i));
        }
        acc
    }

    /// Frobenius norm, evaluated in floating point.
    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x.to_complex().norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus, evaluated in floating point.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.to_complex().norm()).fold(0.0, f64::max)
    }
}

/// `⟨x, y⟩ = Σ xᵢ·conj(yᵢ)`, linear in the first argument.
pub fn inner<T: Scalar>(x: &[T], y: &[T]) -> T {
    assert_eq!(x.len(), y.len());
    let mut acc = T::zero();
    for (a, b) in x.iter().zip(y) {
        acc = acc.add(&a.mul(&b.conj()));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ExactScalar;

    #[test]
    fn exact_matmul_and_trace() {
        let a = Mat::from_rows(vec![
            vec![ExactScalar::one(), ExactScalar::sqrt2()],
            vec![ExactScalar::zero(), ExactScalar::from_int(2)],
        ]);
        let sq = a.matmul(&a);
        assert_eq!(*sq.at(0, 1), &ExactScalar::sqrt2() * &ExactScalar::from_int(3));
        assert_eq!(sq.trace(), ExactScalar::from_int(5));
    }

    #[test]
    fn adjoint_conjugates() {
        let m = Mat::from_rows(vec![vec![ExactScalar::i(), ExactScalar::zero()]]);
        let adj = m.adjoint();
        assert_eq!((adj.rows(), adj.cols()), (2, 1));
        assert_eq!(*adj.at(0, 0), -ExactScalar::i());
    }
}
