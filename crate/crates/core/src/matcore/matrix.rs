//! Dense square complex matrices and the Hermitian newtype.
//!
//! Storage is row-major `Vec<Complex64>`. Everything here targets small
//! dense matrices (n up to a few dozen); no attempt is made at blocking
//! or sparsity.

use num_complex::Complex64;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Asymmetry above this (relative to the Frobenius norm) is rejected
/// rather than silently symmetrized.
pub const HERMITIAN_INPUT_TOL: f64 = 1e-10;

/// A dense square matrix over the complex numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Diagonal matrix from real entries.
    pub fn diag(entries: &[f64]) -> Self {
        let mut m = Matrix::zeros(entries.len());
        for (i, &d) in entries.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Diagonal matrix from complex entries.
    pub fn diag_complex(entries: &[Complex64]) -> Self {
        let mut m = Matrix::zeros(entries.len());
        for (i, &d) in entries.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        for r in rows {
            if r.len() != n {
                return Err(Error::NotSquare { rows: n, cols: r.len() });
            }
        }
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Ok(Matrix { n, data })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let complex: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Matrix::from_rows(&complex)
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: other.n });
        }
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: v.len() });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                out[i] += self[(i, j)] * v[j];
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: other.n });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { n: self.n, data })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: other.n });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Matrix { n: self.n, data })
    }

    pub fn scale(&self, c: Complex64) -> Matrix {
        Matrix { n: self.n, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn scale_re(&self, c: f64) -> Matrix {
        self.scale(Complex64::new(c, 0.0))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        Matrix::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max norm of `A - A*`, the Hermitian defect.
    pub fn asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in i..self.n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// True when every entry has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    /// Entrywise (Hadamard) product.
    pub fn hadamard(&self, other: &Matrix) -> Result<Matrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: other.n });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a * b).collect();
        Ok(Matrix { n: self.n, data })
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let mut pivot = col;
            let mut best = a[(col, col)].norm();
            for r in col + 1..n {
                let v = a[(r, col)].norm();
                if v > best {
                    best = v;
                    pivot = r;
                }
            }
            if best == 0.0 {
                return Err(Error::Singular { min_eigenvalue: 0.0 });
            }
            if pivot != col {
                for j in 0..n {
                    let tmp = a[(col, j)];
                    a[(col, j)] = a[(pivot, j)];
                    a[(pivot, j)] = tmp;
                    let tmp = inv[(col, j)];
                    inv[(col, j)] = inv[(pivot, j)];
                    inv[(pivot, j)] = tmp;
                }
            }
            let d = a[(col, col)];
            for j in 0..n {
                a[(col, j)] /= d;
                inv[(col, j)] /= d;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[(r, col)];
                if factor == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    let s = a[(col, j)];
                    a[(r, j)] -= factor * s;
                    let s = inv[(col, j)];
                    inv[(r, j)] -= factor * s;
                }
            }
        }
        Ok(inv)
    }

    /// `self^k` for integer `k >= 0` by repeated squaring.
    pub fn powi(&self, k: u64) -> Matrix {
        let mut result = Matrix::identity(self.n);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base).expect("same dimension");
            }
            base = base.mul(&base).expect("same dimension");
            k >>= 1;
        }
        result
    }

    /// Real parts of the entries, row-major.
    pub fn real_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self[(i, j)].re).collect())
            .collect()
    }

    /// Imaginary parts of the entries, row-major.
    pub fn imag_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self[(i, j)].im).collect())
            .collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// Trace of an ordered product `Tr[M1 M2 ... Mk]`.
///
/// The empty product is rejected; a single factor returns its trace.
pub fn trace_product(matrices: &[&Matrix]) -> Result<Complex64> {
    let first = matrices.first().ok_or(Error::DimensionMismatch { expected: 1, got: 0 })?;
    let mut acc = (*first).clone();
    for m in &matrices[1..] {
        acc = acc.mul(m)?;
    }
    Ok(acc.trace())
}

/// A square matrix with the conjugate-symmetry invariant enforced.
///
/// Construction symmetrizes `(A + A*)/2`, which is bit-exact Hermitian,
/// and rejects inputs whose defect exceeds `1e-10 * ||A||_F`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    inner: Matrix,
}

impl HermitianMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        let scale = m.frobenius_norm();
        let tol = HERMITIAN_INPUT_TOL * scale.max(1.0);
        let asym = m.asymmetry();
        if asym > tol {
            return Err(Error::NotHermitian { asymmetry: asym, tolerance: tol });
        }
        Ok(Self::symmetrize(&m))
    }

    /// `(A + A*)/2` without the defect check. The averaged entries satisfy
    /// `h[i][j] == conj(h[j][i])` exactly and the diagonal is exactly real.
    pub fn symmetrize(m: &Matrix) -> Self {
        let n = m.dim();
        let mut h = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                h[(i, j)] = (m[(i, j)] + m[(j, i)].conj()).scale(0.5);
            }
        }
        HermitianMatrix { inner: h }
    }

    pub fn zeros(n: usize) -> Self {
        HermitianMatrix { inner: Matrix::zeros(n) }
    }

    pub fn identity(n: usize) -> Self {
        HermitianMatrix { inner: Matrix::identity(n) }
    }

    pub fn diag(entries: &[f64]) -> Self {
        HermitianMatrix { inner: Matrix::diag(entries) }
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        HermitianMatrix::new(Matrix::from_real_rows(rows)?)
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        HermitianMatrix::new(Matrix::from_rows(rows)?)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[inline]
    pub fn as_matrix(&self) -> &Matrix {
        &self.inner
    }

    pub fn into_matrix(self) -> Matrix {
        self.inner
    }

    pub fn add(&self, other: &HermitianMatrix) -> Result<HermitianMatrix> {
        Ok(HermitianMatrix { inner: self.inner.add(&other.inner)? })
    }

    pub fn sub(&self, other: &HermitianMatrix) -> Result<HermitianMatrix> {
        Ok(HermitianMatrix { inner: self.inner.sub(&other.inner)? })
    }

    /// Real scaling preserves Hermiticity.
    pub fn scale(&self, c: f64) -> HermitianMatrix {
        HermitianMatrix { inner: self.inner.scale_re(c) }
    }

    pub fn trace(&self) -> f64 {
        self.inner.trace().re
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.frobenius_norm()
    }

    pub fn is_real(&self) -> bool {
        self.inner.is_real()
    }
}

impl Index<(usize, usize)> for HermitianMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.inner[idx]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn product_and_trace() {
        let a = Matrix::diag(&[1.0, 2.0]);
        let b = Matrix::diag(&[3.0, 4.0]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.trace(), c(11.0, 0.0));
        assert_eq!(trace_product(&[&a, &b]).unwrap(), c(11.0, 0.0));
    }

    #[test]
    fn trace_product_identities() {
        let i3 = Matrix::identity(3);
        assert_eq!(trace_product(&[&i3, &i3]).unwrap(), c(3.0, 0.0));
        assert!(trace_product(&[]).is_err());
    }

    #[test]
    fn symmetrization_is_exact() {
        let m = Matrix::from_rows(&[
            vec![c(1.0, 1e-12), c(2.0, 3.0)],
            vec![c(2.0, -3.0 + 1e-12), c(5.0, 0.0)],
        ])
        .unwrap();
        let h = HermitianMatrix::new(m).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(h[(i, j)], h[(j, i)].conj());
            }
        }
        assert_eq!(h[(0, 0)].im, 0.0);
    }

    #[test]
    fn rejects_gross_asymmetry() {
        let m = Matrix::from_real_rows(&[vec![0.0, 1.0], vec![2.0, 0.0]]).unwrap();
        assert!(matches!(HermitianMatrix::new(m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn inverse_recovers_identity() {
        let m = Matrix::from_real_rows(&[
            vec![2.0, 1.0, 0.0],
            vec![1.0, 3.0, 1.0],
            vec![0.0, 1.0, 4.0],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        let prod = m.mul(&inv).unwrap();
        let defect = prod.sub(&Matrix::identity(3)).unwrap().frobenius_norm();
        assert!(defect < 1e-14, "defect {defect}");
    }

    #[test]
    fn powi_matches_repeated_multiplication() {
        let m = Matrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        let p5 = m.powi(5);
        assert_eq!(p5[(0, 1)], c(5.0, 0.0));
        assert_eq!(m.powi(0), Matrix::identity(2));
    }

    #[test]
    fn hadamard_with_ones_is_identity_map() {
        let a = Matrix::from_real_rows(&[vec![1.0, -2.0], vec![3.0, 0.5]]).unwrap();
        let ones = Matrix::from_fn(2, |_, _| c(1.0, 0.0));
        assert_eq!(a.hadamard(&ones).unwrap(), a);
    }
}
