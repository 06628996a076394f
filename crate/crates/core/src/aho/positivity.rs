//! Entrywise-positivity certification: Hamiltonians with nonpositive
//! off-diagonal entries generate semigroups `e^{-sH}` that preserve the
//! positive cone, and the resolvent powers `(I + lambda H)^{-k}` do too.

use crate::error::{Error, Result};
use crate::matcore::{eig_hermitian, HermitianMatrix, Matrix};

/// Off-diagonal entries above `1e-14 * ||H||_F` fail the sign condition.
pub const BD_TOL: f64 = 1e-14;

/// Entrywise tolerance for positivity of semigroup/resolvent entries,
/// relative to the largest entry of the matrix under test.
pub const POSITIVITY_TOL: f64 = 1e-12;

/// Result of the off-diagonal sign check.
#[derive(Debug, Clone)]
pub struct BdCheck {
    pub ok: bool,
    /// Offending entry (i, j, value) when the check fails.
    pub witness: Option<(usize, usize, f64)>,
}

/// True iff every off-diagonal entry of `H` is real and nonpositive up to
/// `1e-14 * ||H||_F`. The witness reports the worst offending entry.
pub fn bd_offdiag_check(h: &HermitianMatrix) -> BdCheck {
    let n = h.dim();
    let tol = BD_TOL * h.frobenius_norm();
    let mut worst: Option<(usize, usize, f64)> = None;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let entry = h[(i, j)];
            let offence = entry.re.max(entry.im.abs());
            if offence > tol {
                let replace = match worst {
                    Some((_, _, w)) => offence > w,
                    None => true,
                };
                if replace {
                    worst = Some((i, j, offence));
                }
            }
        }
    }
    BdCheck { ok: worst.is_none(), witness: worst }
}

/// Entrywise minimum report for `e^{-sH}` over a grid of s values.
#[derive(Debug, Clone)]
pub struct SemigroupReport {
    /// False when the off-diagonal precondition failed; nothing was checked.
    pub applicable: bool,
    pub ok: bool,
    /// Smallest entry encountered across the whole grid.
    pub min_entry: f64,
    /// (s, i, j) where the minimum occurred.
    pub min_at: Option<(f64, usize, usize)>,
}

/// Check that every entry of `e^{-sH}` stays above `-1e-12 * scale` for
/// each s in the grid, where scale is the largest entry of that exponential.
pub fn semigroup_positivity(h: &HermitianMatrix, s_grid: &[f64]) -> SemigroupReport {
    if !bd_offdiag_check(h).ok {
        return SemigroupReport { applicable: false, ok: false, min_entry: 0.0, min_at: None };
    }
    let decomposition = eig_hermitian(h);
    let n = h.dim();
    let mut min_entry = f64::INFINITY;
    let mut min_at = None;
    let mut ok = true;
    for &s in s_grid {
        let e = decomposition.apply(|l| (-s * l).exp());
        let scale = e.max_abs_entry();
        for i in 0..n {
            for j in 0..n {
                let v = e[(i, j)].re;
                if v < min_entry {
                    min_entry = v;
                    min_at = Some((s, i, j));
                }
                if v < -POSITIVITY_TOL * scale.max(1.0) {
                    ok = false;
                }
            }
        }
    }
    SemigroupReport { applicable: true, ok, min_entry, min_at }
}

/// Resolvent positivity report.
#[derive(Debug, Clone)]
pub struct ResolventReport {
    pub applicable: bool,
    /// Entrywise positivity of `(I + lambda H)^{-k}`, k = 1..n_powers.
    pub powers_ok: bool,
    pub min_entry: f64,
    /// Relative Frobenius distance between `(I + (s/n) H)^{-n}` at
    /// `n = 2^16` and `e^{-sH}` with `s = lambda`.
    pub convergence_rel_error: f64,
    pub ok: bool,
}

/// Check entrywise positivity of `(I + lambda H)^{-k}` for k up to
/// `n_powers`, plus convergence of the resolvent limit
/// `(I + (s/n) H)^{-n} -> e^{-sH}` at `n = 2^16`, taking `s = lambda`.
pub fn resolvent_positivity(
    h: &HermitianMatrix,
    lambda: f64,
    n_powers: u32,
) -> Result<ResolventReport> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParams(format!("lambda must be positive, got {lambda}")));
    }
    if !bd_offdiag_check(h).ok {
        return Ok(ResolventReport {
            applicable: false,
            powers_ok: false,
            min_entry: 0.0,
            convergence_rel_error: f64::INFINITY,
            ok: false,
        });
    }
    let n = h.dim();
    let resolvent = Matrix::identity(n)
        .add(&h.as_matrix().scale_re(lambda))?
        .inverse()?;
    let mut power = Matrix::identity(n);
    let mut min_entry = f64::INFINITY;
    let mut powers_ok = true;
    for _ in 0..n_powers {
        power = power.mul(&resolvent)?;
        let scale = power.max_abs_entry();
        for i in 0..n {
            for j in 0..n {
                let v = power[(i, j)].re;
                min_entry = min_entry.min(v);
                if v < -POSITIVITY_TOL * scale.max(1.0) {
                    powers_ok = false;
                }
            }
        }
    }

    // (I + (s/n) H)^{-n} at n = 2^16 by sixteen squarings.
    let steps = 1u64 << 16;
    let small = Matrix::identity(n)
        .add(&h.as_matrix().scale_re(lambda / steps as f64))?
        .inverse()?;
    let mut limit = small;
    for _ in 0..16 {
        limit = limit.mul(&limit)?;
    }
    let semigroup = eig_hermitian(h).apply(|l| (-lambda * l).exp());
    let denom = semigroup.frobenius_norm().max(1e-300);
    let convergence_rel_error = limit.sub(&semigroup)?.frobenius_norm() / denom;
    let ok = powers_ok && convergence_rel_error < 1e-6;
    Ok(ResolventReport { applicable: true, powers_ok, min_entry, convergence_rel_error, ok })
}
