//! Cyclic Jacobi eigendecomposition for Hermitian matrices.
//!
//! The sweep visits pivots (p, q) in row-major order, p < q, and stops
//! when the off-diagonal Frobenius mass drops below `1e-14 * ||A||_F`.
//! A real-symmetric fast path avoids complex arithmetic when every entry
//! has zero imaginary part. The pivot order is fixed, so the output is
//! deterministic for a given input.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcore::matrix::{HermitianMatrix, Matrix};

/// Off-diagonal mass threshold, relative to the Frobenius norm.
pub const JACOBI_TOL: f64 = 1e-14;

/// Negative eigenvalues above `-1e-12 * ||A||_F` are tolerated as roundoff.
pub const PSD_TOL: f64 = 1e-12;

/// Relative threshold below which an eigenvalue is treated as exactly zero
/// by the spectral functions (range projector, fractional powers).
pub const RANK_TOL: f64 = 1e-12;

const MAX_SWEEPS: usize = 60;

/// Eigenvalues (ascending) with matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    /// Eigenvalues sorted ascending; ties allowed.
    pub eigenvalues: Vec<f64>,
    /// Column k is the unit eigenvector for `eigenvalues[k]`.
    pub eigenvectors: Matrix,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Rebuild `sum_k f(lambda_k) v_k v_k*` for a real-valued spectral map.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> Matrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let mut out = Matrix::zeros(n);
        for k in 0..n {
            let fk = f(self.eigenvalues[k]);
            if fk == 0.0 {
                continue;
            }
            for i in 0..n {
                let scaled = v[(i, k)] * fk;
                for j in 0..n {
                    out[(i, j)] += scaled * v[(j, k)].conj();
                }
            }
        }
        out
    }

    /// Rebuild with a complex-valued spectral map.
    pub fn apply_complex(&self, f: impl Fn(f64) -> Complex64) -> Matrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let mut out = Matrix::zeros(n);
        for k in 0..n {
            let fk = f(self.eigenvalues[k]);
            if fk == Complex64::new(0.0, 0.0) {
                continue;
            }
            for i in 0..n {
                let scaled = v[(i, k)] * fk;
                for j in 0..n {
                    out[(i, j)] += scaled * v[(j, k)].conj();
                }
            }
        }
        out
    }

    /// Largest eigenvalue by absolute value.
    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |acc, &l| acc.max(l.abs()))
    }
}

fn offdiag_mass_complex(a: &Matrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Jacobi on a real symmetric matrix stored densely as f64.
fn jacobi_real(h: &HermitianMatrix) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = h.dim();
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| h[(i, j)].re).collect())
        .collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let scale = h.frobenius_norm();
    if scale == 0.0 {
        return ((0..n).map(|i| a[i][i]).collect(), v);
    }
    let target = JACOBI_TOL * scale;
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off += a[i][j] * a[i][j];
                }
            }
        }
        if off.sqrt() < target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let tau = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let app = a[p][p];
                let aqq = a[q][q];
                a[p][p] = app - t * apq;
                a[q][q] = aqq + t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[p][k] = a[k][p];
                    a[k][q] = s * akp + c * akq;
                    a[q][k] = a[k][q];
                }
                for k in 0..n {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    ((0..n).map(|i| a[i][i]).collect(), v)
}

/// Jacobi on a complex Hermitian matrix.
///
/// The pivot rotation uses the unitary
/// `J[p][p] = c, J[p][q] = s*u, J[q][p] = -s*conj(u), J[q][q] = c`
/// with `u = a[p][q] / |a[p][q]|`, chosen so that `(J* A J)[p][q] = 0`.
fn jacobi_complex(h: &HermitianMatrix) -> (Vec<f64>, Matrix) {
    let n = h.dim();
    let mut a = h.as_matrix().clone();
    let mut v = Matrix::identity(n);
    let scale = h.frobenius_norm();
    if scale == 0.0 {
        return ((0..n).map(|i| a[(i, i)].re).collect(), v);
    }
    let target = JACOBI_TOL * scale;
    for _ in 0..MAX_SWEEPS {
        if offdiag_mass_complex(&a) < target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let u = apq / r;
                let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                a[(p, p)] = Complex64::new(app - t * r, 0.0);
                a[(q, q)] = Complex64::new(aqq + t * r, 0.0);
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                let su = u * s;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c - akq * su.conj();
                    a[(k, q)] = akp * su + akq * c;
                    a[(p, k)] = a[(k, p)].conj();
                    a[(q, k)] = a[(k, q)].conj();
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c - vkq * su.conj();
                    v[(k, q)] = vkp * su + vkq * c;
                }
            }
        }
    }
    ((0..n).map(|i| a[(i, i)].re).collect(), v)
}

/// Eigendecomposition of a Hermitian matrix with eigenvalues ascending.
pub fn eig_hermitian(h: &HermitianMatrix) -> SpectralDecomposition {
    let n = h.dim();
    let (raw_vals, raw_vecs) = if h.is_real() {
        let (vals, vecs) = jacobi_real(h);
        let m = Matrix::from_fn(n, |i, j| Complex64::new(vecs[i][j], 0.0));
        (vals, m)
    } else {
        jacobi_complex(h)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| raw_vals[i].partial_cmp(&raw_vals[j]).expect("finite eigenvalues"));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| raw_vals[k]).collect();
    let eigenvectors = Matrix::from_fn(n, |i, j| raw_vecs[(i, order[j])]);
    SpectralDecomposition { eigenvalues, eigenvectors }
}

/// A Hermitian matrix certified positive semidefinite, with its spectral
/// decomposition cached for the matrix functions built on top of it.
#[derive(Debug, Clone)]
pub struct PsdWitness {
    matrix: HermitianMatrix,
    decomposition: SpectralDecomposition,
    min_eigenvalue: f64,
}

impl PsdWitness {
    /// Certify `h` as PSD. Eigenvalues down to `-1e-12 * ||A||_F` are
    /// accepted as numerical noise; anything lower is rejected.
    pub fn new(h: HermitianMatrix) -> Result<Self> {
        let decomposition = eig_hermitian(&h);
        let min_eigenvalue = decomposition.eigenvalues.first().copied().unwrap_or(0.0);
        let tol = PSD_TOL * h.frobenius_norm().max(1.0);
        if min_eigenvalue < -tol {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue, tolerance: tol });
        }
        Ok(PsdWitness { matrix: h, decomposition, min_eigenvalue })
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn decomposition(&self) -> &SpectralDecomposition {
        &self.decomposition
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.min_eigenvalue
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Eigenvalues at or below `1e-12 * lambda_max` count as zero.
    pub fn zero_threshold(&self) -> f64 {
        let lmax = self.decomposition.eigenvalues.last().copied().unwrap_or(0.0);
        RANK_TOL * lmax.max(0.0)
    }

    /// Number of eigenvalues above the zero threshold.
    pub fn rank(&self) -> usize {
        let thr = self.zero_threshold();
        self.decomposition.eigenvalues.iter().filter(|&&l| l > thr).count()
    }

    /// True when every eigenvalue clears the zero threshold.
    pub fn is_positive_definite(&self) -> bool {
        self.min_eigenvalue > self.zero_threshold()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::SplitMix64;

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    fn reconstruction_residual(h: &HermitianMatrix, d: &SpectralDecomposition) -> f64 {
        let rebuilt = d.apply(|l| l);
        rebuilt.sub(h.as_matrix()).unwrap().frobenius_norm()
    }

    fn orthonormality_defect(d: &SpectralDecomposition) -> f64 {
        let v = &d.eigenvectors;
        let vv = v.adjoint().mul(v).unwrap();
        vv.sub(&Matrix::identity(d.dim())).unwrap().frobenius_norm()
    }

    #[test]
    fn identity_eigenvalues() {
        let d = eig_hermitian(&HermitianMatrix::identity(3));
        assert_eq!(d.eigenvalues, vec![1.0, 1.0, 1.0]);
        assert!(orthonormality_defect(&d) < 1e-14);
    }

    #[test]
    fn tridiagonal_sqrt_spectrum() {
        // [[2, sqrt2, 0], [sqrt2, 2, sqrt2], [0, sqrt2, 2]] has eigenvalues 0, 2, 4.
        let h = HermitianMatrix::from_real_rows(&[
            vec![2.0, SQRT2, 0.0],
            vec![SQRT2, 2.0, SQRT2],
            vec![0.0, SQRT2, 2.0],
        ])
        .unwrap();
        let d = eig_hermitian(&h);
        for (got, want) in d.eigenvalues.iter().zip([0.0, 2.0, 4.0]) {
            assert!((got - want).abs() < 1e-13, "got {got}, want {want}");
        }
        assert!(reconstruction_residual(&h, &d) < 1e-12 * h.frobenius_norm());
    }

    #[test]
    fn random_symmetric_reconstruction() {
        let mut rng = SplitMix64::new(42);
        let h = crate::sampling::random_symmetric(5, &mut rng);
        let d = eig_hermitian(&h);
        let res = reconstruction_residual(&h, &d);
        assert!(res < 1e-12 * h.frobenius_norm(), "residual {res}");
        assert!(orthonormality_defect(&d) < 1e-12);
        for w in d.eigenvalues.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn random_complex_hermitian_reconstruction() {
        for seed in [1u64, 2, 3, 9, 77] {
            let mut rng = SplitMix64::new(seed);
            let h = crate::sampling::random_hermitian(4, &mut rng);
            let d = eig_hermitian(&h);
            let res = reconstruction_residual(&h, &d);
            assert!(res < 1e-12 * h.frobenius_norm(), "seed {seed}: residual {res}");
            assert!(orthonormality_defect(&d) < 1e-12, "seed {seed}");
        }
    }

    #[test]
    fn deterministic_output() {
        let mut rng = SplitMix64::new(7);
        let h = crate::sampling::random_hermitian(6, &mut rng);
        let d1 = eig_hermitian(&h);
        let d2 = eig_hermitian(&h);
        assert_eq!(d1.eigenvalues, d2.eigenvalues);
        assert_eq!(d1.eigenvectors, d2.eigenvectors);
    }

    #[test]
    fn psd_witness_rejects_indefinite() {
        let h = HermitianMatrix::diag(&[1.0, -0.5]);
        assert!(matches!(
            PsdWitness::new(h),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
    }

    #[test]
    fn psd_witness_tolerates_noise_negativity() {
        let h = HermitianMatrix::diag(&[1.0, -1e-14]);
        let w = PsdWitness::new(h).unwrap();
        assert!(w.min_eigenvalue() >= -1e-12);
        assert_eq!(w.rank(), 1);
    }

    #[test]
    fn zero_matrix_decomposes() {
        let d = eig_hermitian(&HermitianMatrix::zeros(3));
        assert_eq!(d.eigenvalues, vec![0.0, 0.0, 0.0]);
    }
}
