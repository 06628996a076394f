//! The profile `M[i][j](s) = (X^s)[i][j] (X^{1-s})[j][i]` in a basis
//! diagonalizing Y. Entrywise nonnegativity of M is the sufficient
//! condition under which the two-sided trace bound holds on the whole
//! exponent square, and the quadratic form it induces rules out two
//! simultaneously negative off-diagonal entries for real 3x3 inputs.

use num_complex::Complex64;

use crate::aho::{aho_lower_check, aho_upper_check, BoundReport};
use crate::error::{Error, Result};
use crate::matcore::{frac_power, Matrix, PsdWitness};

/// Absolute floor for the entrywise sign tests on M(s); compared against
/// `1e-12 * max(1, largest |entry|)`.
pub const M_ENTRY_TOL: f64 = 1e-12;

/// The Hadamard product `X^s . transpose(X^{1-s})` in a designated basis.
///
/// M is Hermitian PSD (Schur product of PSD factors) with real diagonal;
/// off-diagonal entries may be negative or complex.
#[derive(Debug, Clone)]
pub struct HadamardProfile {
    pub s: f64,
    pub matrix: Matrix,
}

impl HadamardProfile {
    /// Sign tolerance scaled to this profile.
    pub fn tolerance(&self) -> f64 {
        M_ENTRY_TOL * self.matrix.max_abs_entry().max(1.0)
    }

    /// Entries failing `re >= -tol` or `|im| <= tol`.
    pub fn sign_violations(&self) -> Vec<(usize, usize, Complex64)> {
        let n = self.matrix.dim();
        let tol = self.tolerance();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let e = self.matrix[(i, j)];
                if e.re < -tol || e.im.abs() > tol {
                    out.push((i, j, e));
                }
            }
        }
        out
    }

    /// True when every entry of M has nonnegative real part and
    /// negligible imaginary part.
    pub fn entrywise_nonnegative(&self) -> bool {
        self.sign_violations().is_empty()
    }
}

fn check_orthonormal(basis: &Matrix) -> Result<()> {
    let n = basis.dim();
    let gram = basis.adjoint().mul(basis)?;
    let deviation = gram.sub(&Matrix::identity(n))?.frobenius_norm();
    if deviation > 1e-12 * (n as f64).sqrt() {
        return Err(Error::NotOrthonormal { deviation });
    }
    Ok(())
}

/// Compute `M[i][j](s) = (X^s)[i][j] (X^{1-s})[j][i]` with X expressed in
/// the given orthonormal basis (columns are the basis vectors).
pub fn m_profile(x: &PsdWitness, basis: &Matrix, s: f64) -> Result<HadamardProfile> {
    if basis.dim() != x.dim() {
        return Err(Error::DimensionMismatch { expected: x.dim(), got: basis.dim() });
    }
    check_orthonormal(basis)?;
    let xs = basis.adjoint().mul(frac_power(x, s)?.as_matrix())?.mul(basis)?;
    let x1s = basis.adjoint().mul(frac_power(x, 1.0 - s)?.as_matrix())?.mul(basis)?;
    let n = x.dim();
    let matrix = Matrix::from_fn(n, |i, j| xs[(i, j)] * x1s[(j, i)]);
    Ok(HadamardProfile { s, matrix })
}

/// An entry of M(s) that breaks the nonnegativity condition.
#[derive(Debug, Clone)]
pub struct MEntryViolation {
    pub s: f64,
    pub i: usize,
    pub j: usize,
    pub value: Complex64,
}

/// One grid point of the sandwich verification.
#[derive(Debug, Clone)]
pub struct SandwichPoint {
    pub s: f64,
    pub t: f64,
    pub lower: BoundReport,
    pub upper: BoundReport,
}

/// Outcome of the entrywise-condition check plus, when the condition
/// holds, the two-sided bound over the requested grid.
#[derive(Debug, Clone)]
pub struct ConlemReport {
    /// True when M(s) was entrywise nonnegative at every s in the grid
    /// (tested in the eigenbasis of Y produced by the Jacobi solver).
    pub condition_holds: bool,
    pub violations: Vec<MEntryViolation>,
    /// Sandwich reports; empty when the condition failed.
    pub sandwich: Vec<SandwichPoint>,
}

impl ConlemReport {
    /// True when the condition held and both bounds held everywhere.
    pub fn all_hold(&self) -> bool {
        self.condition_holds
            && self.sandwich.iter().all(|p| p.lower.holds() && p.upper.holds())
    }
}

/// Test the entrywise condition on M(s) in an eigenbasis of Y for every s
/// in `s_grid`; when it holds everywhere, verify the two-sided bound
/// `Tr[X^{1/2}Y^{1/2}X^{1/2}Y^{1/2}] <= |Tr[X^s Y^t X^{1-s} Y^{1-t}]| <= Tr[XY]`
/// at every (s, t) grid point. When it fails, report the offending
/// entries and assert nothing.
///
/// For degenerate Y eigenvalues the basis is whatever the deterministic
/// Jacobi sweep yields; the condition is tested in that basis only.
pub fn conlem_check(
    x: &PsdWitness,
    y: &PsdWitness,
    s_grid: &[f64],
    t_grid: &[f64],
) -> Result<ConlemReport> {
    let basis = y.decomposition().eigenvectors.clone();
    let mut violations = Vec::new();
    for &s in s_grid {
        let profile = m_profile(x, &basis, s)?;
        for (i, j, value) in profile.sign_violations() {
            violations.push(MEntryViolation { s, i, j, value });
        }
    }
    if !violations.is_empty() {
        return Ok(ConlemReport { condition_holds: false, violations, sandwich: Vec::new() });
    }
    let mut sandwich = Vec::new();
    for &s in s_grid {
        for &t in t_grid {
            let lower = aho_lower_check(x, y, s, t)?;
            let upper = aho_upper_check(x, y, s, t)?;
            sandwich.push(SandwichPoint { s, t, lower, upper });
        }
    }
    Ok(ConlemReport { condition_holds: true, violations, sandwich })
}

/// The quadratic form `sum_{i,j} M[i][j](s) (y_i - y_j)^2` in the natural
/// basis; nonnegative for every real PSD X and 0 < s < 1, and invariant
/// under shifting y by a constant vector.
pub fn oct_quadratic_form(x: &PsdWitness, s: f64, y: &[f64]) -> Result<f64> {
    if y.len() != x.dim() {
        return Err(Error::DimensionMismatch { expected: x.dim(), got: y.len() });
    }
    let profile = m_profile(x, &Matrix::identity(x.dim()), s)?;
    let n = x.dim();
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            let diff = y[i] - y[j];
            q += profile.matrix[(i, j)].re * diff * diff;
        }
    }
    Ok(q)
}

/// Report for the at-most-one-negative property of real 3x3 profiles.
#[derive(Debug, Clone)]
pub struct AtMostOneReport {
    pub holds: bool,
    /// (s, [M12, M13, M23]) for the first grid point with two or more
    /// negative off-diagonal entries.
    pub failure: Option<(f64, [f64; 3])>,
}

/// For a real 3x3 PSD matrix, at most one of M12(s), M13(s), M23(s) can
/// be negative at any 0 < s < 1. Verified across the grid.
pub fn at_most_one_negative(x: &PsdWitness, s_grid: &[f64]) -> Result<AtMostOneReport> {
    if x.dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, got: x.dim() });
    }
    for &s in s_grid {
        let profile = m_profile(x, &Matrix::identity(3), s)?;
        let tol = profile.tolerance();
        let entries = [
            profile.matrix[(0, 1)].re,
            profile.matrix[(0, 2)].re,
            profile.matrix[(1, 2)].re,
        ];
        let negatives = entries.iter().filter(|&&v| v < -tol).count();
        if negatives > 1 {
            return Ok(AtMostOneReport { holds: false, failure: Some((s, entries)) });
        }
    }
    Ok(AtMostOneReport { holds: true, failure: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aho::closed_grid;
    use crate::matcore::{eig_hermitian, HermitianMatrix};
    use crate::sampling::{self, SplitMix64};

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    /// The worked 3x3 example: X = T^2 where T is the tridiagonal matrix
    /// with 2 on the diagonal and sqrt(2) off it; eigenvalues 16, 4, 0.
    fn tridiag_squared() -> PsdWitness {
        let t = HermitianMatrix::from_real_rows(&[
            vec![2.0, SQRT2, 0.0],
            vec![SQRT2, 2.0, SQRT2],
            vec![0.0, SQRT2, 2.0],
        ])
        .unwrap();
        let x = t.as_matrix().mul(t.as_matrix()).unwrap();
        PsdWitness::new(HermitianMatrix::symmetrize(&x)).unwrap()
    }

    fn h_of(s: f64) -> f64 {
        4.0_f64.powf(s - 0.5) + 4.0_f64.powf(0.5 - s)
    }

    #[test]
    fn diagonal_x_gives_diagonal_profile() {
        let x = PsdWitness::new(HermitianMatrix::diag(&[1.0, 2.0, 5.0])).unwrap();
        let p = m_profile(&x, &Matrix::identity(3), 0.4).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    let li = [1.0, 2.0, 5.0][i];
                    assert!((p.matrix[(i, i)].re - li).abs() < 1e-13);
                } else {
                    assert!(p.matrix[(i, j)].norm() < 1e-14);
                }
            }
        }
        assert!(p.entrywise_nonnegative());
    }

    #[test]
    fn tridiagonal_profile_closed_forms() {
        let x = tridiag_squared();
        let id = Matrix::identity(3);
        for k in 0..=20 {
            let s = 0.05 * k as f64;
            let p = m_profile(&x, &id, s).unwrap();
            let h = h_of(s);
            assert!((p.matrix[(0, 2)].re - (2.0 - h)).abs() < 1e-12, "s={s}");
            assert!((p.matrix[(0, 0)].re - (2.0 + h)).abs() < 1e-12, "s={s}");
            assert!((p.matrix[(2, 2)].re - (2.0 + h)).abs() < 1e-12, "s={s}");
            assert!((p.matrix[(0, 1)].re - 2.0).abs() < 1e-12, "s={s}");
        }
        // spot values: M13(1) = -1/2, M11(1) = 4.5, M13(1/2) = 0
        let p1 = m_profile(&x, &id, 1.0).unwrap();
        assert!((p1.matrix[(0, 2)].re + 0.5).abs() < 1e-12);
        assert!((p1.matrix[(0, 0)].re - 4.5).abs() < 1e-12);
        let ph = m_profile(&x, &id, 0.5).unwrap();
        assert!(ph.matrix[(0, 2)].norm() < 1e-12);
    }

    #[test]
    fn profile_is_psd_and_hermitian() {
        let mut rng = SplitMix64::new(200);
        for _ in 0..10 {
            let x = sampling::random_psd_complex(4, &mut rng);
            let p = m_profile(&x, &Matrix::identity(4), 0.3).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    assert!((p.matrix[(i, j)] - p.matrix[(j, i)].conj()).norm() < 1e-14);
                }
                assert!(p.matrix[(i, i)].re >= -1e-12);
            }
            let h = HermitianMatrix::symmetrize(&p.matrix);
            let d = eig_hermitian(&h);
            let scale = p.matrix.frobenius_norm().max(1.0);
            assert!(d.eigenvalues[0] >= -1e-12 * scale, "min eig {}", d.eigenvalues[0]);
        }
    }

    #[test]
    fn m_profile_rejects_skew_basis() {
        let x = PsdWitness::new(HermitianMatrix::identity(2)).unwrap();
        let skew = Matrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(m_profile(&x, &skew, 0.5), Err(Error::NotOrthonormal { .. })));
    }

    #[test]
    fn conlem_identity_pair_trivial() {
        let x = PsdWitness::new(HermitianMatrix::identity(3)).unwrap();
        let rep = conlem_check(&x, &x, &[0.25, 0.5, 0.75], &[0.5, 0.75, 1.0]).unwrap();
        assert!(rep.condition_holds);
        assert!(rep.all_hold());
        for p in &rep.sandwich {
            assert!(p.upper.margin.abs() < 1e-12);
            assert!(p.lower.margin.abs() < 1e-12);
        }
    }

    #[test]
    fn conlem_entrywise_positive_x() {
        // exp of a matrix with nonnegative entries is entrywise positive,
        // and stays so under fractional powers.
        let mut rng = SplitMix64::new(83);
        for _ in 0..5 {
            let mut base = sampling::random_symmetric(3, &mut rng);
            base = HermitianMatrix::new(Matrix::from_fn(3, |i, j| {
                num_complex::Complex64::new(base[(i, j)].re.abs(), 0.0)
            }))
            .unwrap();
            let x = crate::matcore::mat_exp(&base);
            let y = PsdWitness::new(HermitianMatrix::diag(&[
                0.5 + rng.next_f64(),
                0.5 + rng.next_f64(),
                0.5 + rng.next_f64(),
            ]))
            .unwrap();
            let s_grid = closed_grid(0.05, 0.95, 0.15);
            let t_grid = closed_grid(0.5, 1.0, 0.125);
            let rep = conlem_check(&x, &y, &s_grid, &t_grid).unwrap();
            assert!(rep.condition_holds, "violations: {:?}", rep.violations);
            assert!(rep.all_hold());
        }
    }

    #[test]
    fn conlem_two_by_two_condition_always_holds() {
        let mut rng = SplitMix64::new(84);
        for _ in 0..100 {
            let x = sampling::random_psd_complex(2, &mut rng);
            let y = sampling::random_psd_complex(2, &mut rng);
            let s_grid: Vec<f64> = (1..10).map(|k| 0.1 * k as f64).collect();
            let rep = conlem_check(&x, &y, &s_grid, &[0.5, 0.7, 0.9, 1.0]).unwrap();
            assert!(rep.condition_holds, "violations: {:?}", rep.violations);
            assert!(rep.all_hold());
        }
    }

    #[test]
    fn conlem_reports_negative_entries_without_asserting() {
        // the tridiagonal example has M13(s) < 0 away from s = 1/2
        let x = tridiag_squared();
        let y = PsdWitness::new(HermitianMatrix::diag(&[1.0, 0.0, 2.0])).unwrap();
        let rep = conlem_check(&x, &y, &[0.9], &[0.5, 1.0]).unwrap();
        assert!(!rep.condition_holds);
        assert!(!rep.violations.is_empty());
        assert!(rep.sandwich.is_empty());
    }

    #[test]
    fn oct_form_constant_vector_is_zero() {
        let x = tridiag_squared();
        let q = oct_quadratic_form(&x, 0.7, &[3.0, 3.0, 3.0]).unwrap();
        assert_eq!(q, 0.0);
    }

    #[test]
    fn oct_form_tridiagonal_pair_sum() {
        // y = (1, 1, 0) picks out 2(M13 + M23) >= 0
        let x = tridiag_squared();
        let s = 0.9;
        let q = oct_quadratic_form(&x, s, &[1.0, 1.0, 0.0]).unwrap();
        let p = m_profile(&x, &Matrix::identity(3), s).unwrap();
        let expect = 2.0 * (p.matrix[(0, 2)].re + p.matrix[(1, 2)].re);
        assert!((q - expect).abs() < 1e-12 * expect.abs().max(1.0));
        assert!(q >= -1e-12);
    }

    #[test]
    fn oct_form_shift_invariance_and_positivity_seed47() {
        let mut rng = SplitMix64::new(47);
        for _ in 0..20 {
            let x = sampling::random_psd(4, &mut rng);
            let y = sampling::random_vector(4, &mut rng);
            let s = 0.05 + 0.9 * rng.next_f64();
            let q = oct_quadratic_form(&x, s, &y).unwrap();
            let scale = x.matrix().frobenius_norm().max(1.0);
            assert!(q >= -1e-12 * scale, "q = {q}");
            let shifted: Vec<f64> = y.iter().map(|v| v + 2.5).collect();
            let q2 = oct_quadratic_form(&x, s, &shifted).unwrap();
            assert!((q - q2).abs() < 1e-10 * q.abs().max(1.0));
        }
    }

    #[test]
    fn at_most_one_negative_tridiagonal() {
        let x = tridiag_squared();
        let grid: Vec<f64> = (1..=19).map(|k| 0.05 * k as f64).collect();
        let rep = at_most_one_negative(&x, &grid).unwrap();
        assert!(rep.holds);
        // M13 is the one that actually goes negative
        let p = m_profile(&x, &Matrix::identity(3), 0.9).unwrap();
        assert!(p.matrix[(0, 2)].re < 0.0);
        assert!(p.matrix[(0, 1)].re > 0.0);
        assert!(p.matrix[(1, 2)].re > 0.0);
    }

    #[test]
    fn at_most_one_negative_diagonal_matrix() {
        let x = PsdWitness::new(HermitianMatrix::diag(&[1.0, 2.0, 3.0])).unwrap();
        let rep = at_most_one_negative(&x, &[0.25, 0.5, 0.75]).unwrap();
        assert!(rep.holds);
    }
}
