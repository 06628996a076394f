//! Matrix functions built on the spectral decomposition: fractional and
//! complex powers, exp, log, Schatten norms, Householder reflections, and
//! the divided-difference kernel of the exponential.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcore::eig::{eig_hermitian, PsdWitness, SpectralDecomposition};
use crate::matcore::matrix::{HermitianMatrix, Matrix};

/// Fractional power `A^s` of a PSD matrix.
///
/// Eigenvalues at or below the witness's zero threshold are treated as
/// exactly zero with the convention `0^s := 0` for all `s >= 0`, so
/// `frac_power(A, 0)` is the orthogonal projection onto the range of `A`.
/// Negative exponents require a positive definite input.
pub fn frac_power(a: &PsdWitness, s: f64) -> Result<HermitianMatrix> {
    let thr = a.zero_threshold();
    if s < 0.0 && !a.is_positive_definite() {
        return Err(Error::Singular { min_eigenvalue: a.min_eigenvalue() });
    }
    let m = a.decomposition().apply(|l| if l <= thr { 0.0 } else { l.powf(s) });
    Ok(HermitianMatrix::symmetrize(&m))
}

/// Complex power `A^z = sum_k lambda_k^z v_k v_k*` with the principal
/// logarithm; requires positive definite input. The result is not
/// Hermitian in general.
pub fn complex_power(a: &PsdWitness, z: Complex64) -> Result<Matrix> {
    if !a.is_positive_definite() {
        return Err(Error::Singular { min_eigenvalue: a.min_eigenvalue() });
    }
    Ok(a.decomposition().apply_complex(|l| (z * l.ln()).exp()))
}

/// Matrix exponential of a Hermitian matrix. Always positive definite.
pub fn mat_exp(h: &HermitianMatrix) -> PsdWitness {
    let decomposition = eig_hermitian(h);
    let m = decomposition.apply(f64::exp);
    PsdWitness::new(HermitianMatrix::symmetrize(&m)).expect("exp of Hermitian is PD")
}

/// Matrix logarithm of a positive definite matrix.
pub fn mat_log(x: &PsdWitness) -> Result<HermitianMatrix> {
    if !x.is_positive_definite() {
        return Err(Error::Singular { min_eigenvalue: x.min_eigenvalue() });
    }
    let m = x.decomposition().apply(f64::ln);
    Ok(HermitianMatrix::symmetrize(&m))
}

/// Singular values of a square matrix, ascending, via the eigenvalues of
/// the PSD matrix `A* A`.
pub fn singular_values(a: &Matrix) -> Vec<f64> {
    let gram = a.adjoint().mul(a).expect("same dimension");
    let h = HermitianMatrix::symmetrize(&gram);
    let d = eig_hermitian(&h);
    d.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect()
}

/// Schatten p-norm `(Tr[(A*A)^{p/2}])^{1/p}`; `p = inf` gives the largest
/// singular value. Requires `p >= 1`.
pub fn schatten_norm(a: &Matrix, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidExponent(format!("Schatten norm needs p >= 1, got {p}")));
    }
    let sv = singular_values(a);
    if p.is_infinite() {
        return Ok(sv.last().copied().unwrap_or(0.0));
    }
    Ok(sv.iter().map(|s| s.powf(p)).sum::<f64>().powf(1.0 / p))
}

/// Householder reflection swapping two distinct unit vectors:
/// `H = I - 2 ||u - v||^{-2} (u - v)(u - v)^T`.
///
/// `H` is symmetric, orthogonal, involutory, and satisfies `Hu = v`.
pub fn householder(u: &[f64], v: &[f64]) -> Result<HermitianMatrix> {
    let n = u.len();
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: v.len() });
    }
    for (name, w) in [("u", u), ("v", v)] {
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidVector(format!("{name} has norm {norm}, expected 1")));
        }
    }
    let w: Vec<f64> = u.iter().zip(v).map(|(a, b)| a - b).collect();
    let wsq: f64 = w.iter().map(|x| x * x).sum();
    if wsq == 0.0 {
        return Err(Error::InvalidVector("u and v must be distinct".into()));
    }
    let coeff = 2.0 / wsq;
    let mut m = Matrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] -= Complex64::new(coeff * w[i] * w[j], 0.0);
        }
    }
    Ok(HermitianMatrix::symmetrize(&m))
}

/// Switchover width for the divided difference of the exponential.
const DD_TAYLOR_CUTOFF: f64 = 1e-7;

/// Divided difference `(e^a - e^b)/(a - b)`, the exact eigenbasis kernel
/// for the integral of `e^{(1-t)H} K e^{tH}` over t in [0, 1].
///
/// Below `|a - b| = 1e-7` the direct quotient cancels, so the symmetric
/// form `e^{(a+b)/2} * (1 + d^2/24 + d^4/1920 + d^6/322560)` takes over.
pub fn divided_difference_exp(a: f64, b: f64) -> f64 {
    let delta = a - b;
    if delta.abs() > DD_TAYLOR_CUTOFF {
        (a.exp() - b.exp()) / delta
    } else {
        let mid = 0.5 * (a + b);
        let d2 = delta * delta;
        mid.exp() * (1.0 + d2 / 24.0 + d2 * d2 / 1920.0 + d2 * d2 * d2 / 322_560.0)
    }
}

/// Kernel matrix `Phi[i][j] = divided_difference_exp(lambda_i, lambda_j)`
/// for a spectral decomposition.
pub fn divided_difference_kernel(d: &SpectralDecomposition) -> Matrix {
    let n = d.dim();
    Matrix::from_fn(n, |i, j| {
        Complex64::new(divided_difference_exp(d.eigenvalues[i], d.eigenvalues[j]), 0.0)
    })
}
