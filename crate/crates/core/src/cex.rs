//! The 3x3 counterexample factory.
//!
//! Start from orthogonal projections `X0 = v v^T` and `Y0 = e3 e3^T` with
//! `X0 Y0 = 0`, where `v = (1,1,0)/sqrt(2)` and `U` is the Householder
//! reflection swapping `e3` and `v`. Perturb: `X = R U diag(a,b,1) U R^T`
//! with a small rotation `R` in the 1-3 plane, and `Y = diag(c,d,1)`.
//! Every power `X^t = R U diag(a^t, b^t, 1) U R^T` is available in
//! factored form, exact even at `a = 1e-19` where a generic eigensolver
//! has no precision left. Suitable parameters violate both trace bounds
//! and the monotonicity of the Golden-Thompson interpolation.

use crate::aho::{self, BoundReport};
use crate::error::{Error, Result};
use crate::matcore::{divided_difference_exp, HermitianMatrix, Matrix, PsdWitness};

/// Below this eigenvalue scale the generic eigensolver path is refused:
/// 64-bit arithmetic cannot resolve the spectrum against the unit mode.
pub const GENERIC_EIG_FLOOR: f64 = 1e-6;

/// Exact 3x3 real matrix arithmetic for the factored construction.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Real3([[f64; 3]; 3]);

impl Real3 {
    fn diag(a: f64, b: f64, c: f64) -> Self {
        Real3([[a, 0.0, 0.0], [0.0, b, 0.0], [0.0, 0.0, c]])
    }

    fn mul(&self, o: &Real3) -> Real3 {
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let mut s = 0.0;
                for k in 0..3 {
                    s += self.0[i][k] * o.0[k][j];
                }
                out[i][j] = s;
            }
        }
        Real3(out)
    }

    fn transpose(&self) -> Real3 {
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = self.0[j][i];
            }
        }
        Real3(out)
    }

    fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    fn hadamard(&self, o: &Real3) -> Real3 {
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = self.0[i][j] * o.0[i][j];
            }
        }
        Real3(out)
    }

    fn to_matrix(self) -> Matrix {
        Matrix::from_real_rows(&self.0.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
            .expect("3x3 rows")
    }
}

/// Parameters of the family: perturbation eigenvalues `a, b > 0`, rotation
/// angle `x`, and the diagonal `Y = diag(c, d, 1)` with `c, d >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CexParams {
    pub a: f64,
    pub b: f64,
    pub x: f64,
    pub c: f64,
    pub d: f64,
}

/// A built instance holding the fixed factors U and R.
#[derive(Debug, Clone)]
pub struct CexInstance {
    params: CexParams,
    u: Real3,
    r: Real3,
}

/// The printed reflection `(1/2) [[1,-1,s2],[-1,1,s2],[s2,s2,0]]`,
/// entered exactly rather than recomputed from its defining vectors.
fn householder_u() -> Real3 {
    let s = std::f64::consts::SQRT_2 / 2.0;
    Real3([[0.5, -0.5, s], [-0.5, 0.5, s], [s, s, 0.0]])
}

fn rotation(x: f64) -> Real3 {
    let (s, c) = x.sin_cos();
    Real3([[c, 0.0, -s], [0.0, 1.0, 0.0], [s, 0.0, c]])
}

/// `v^t` with the convention `0^t := 0` for every `t >= 0` (including 0).
fn diag_power(v: f64, t: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v.powf(t)
    }
}

/// Build an instance after validating the parameter ranges.
pub fn build(params: CexParams) -> Result<CexInstance> {
    if !(params.a > 0.0) || !(params.b > 0.0) {
        return Err(Error::InvalidParams(format!(
            "a and b must be positive, got a = {}, b = {}",
            params.a, params.b
        )));
    }
    if params.c < 0.0 || params.d < 0.0 {
        return Err(Error::InvalidParams(format!(
            "c and d must be nonnegative, got c = {}, d = {}",
            params.c, params.d
        )));
    }
    if !params.x.is_finite() {
        return Err(Error::InvalidParams("rotation angle must be finite".into()));
    }
    Ok(CexInstance { params, u: householder_u(), r: rotation(params.x) })
}

/// Parameters of the first printed example: upper-bound violation.
pub fn example_4_1() -> CexInstance {
    build(CexParams { a: 1e-10, b: 1e-19, x: 1e-5, c: 1e-10, d: 0.0 }).expect("preset is valid")
}

/// Second printed example: same but with a and b swapped; the trace
/// itself goes negative.
pub fn example_4_2() -> CexInstance {
    build(CexParams { a: 1e-19, b: 1e-10, x: 1e-5, c: 1e-10, d: 0.0 }).expect("preset is valid")
}

impl CexInstance {
    pub fn params(&self) -> CexParams {
        self.params
    }

    fn x_power_raw(&self, t: f64) -> Real3 {
        let core = Real3::diag(
            diag_power(self.params.a, t),
            diag_power(self.params.b, t),
            1.0,
        );
        self.r
            .mul(&self.u)
            .mul(&core)
            .mul(&self.u)
            .mul(&self.r.transpose())
    }

    fn y_power_raw(&self, t: f64) -> Real3 {
        Real3::diag(diag_power(self.params.c, t), diag_power(self.params.d, t), 1.0)
    }

    /// `X^t = R U diag(a^t, b^t, 1) U R^T`, computed in factored form.
    pub fn x_power(&self, t: f64) -> Result<HermitianMatrix> {
        if t < 0.0 {
            return Err(Error::InvalidExponent(format!("x_power needs t >= 0, got {t}")));
        }
        Ok(HermitianMatrix::symmetrize(&self.x_power_raw(t).to_matrix()))
    }

    /// X itself.
    pub fn x_matrix(&self) -> HermitianMatrix {
        self.x_power(1.0).expect("t = 1 is valid")
    }

    /// `Y = diag(c, d, 1)`.
    pub fn y_matrix(&self) -> HermitianMatrix {
        HermitianMatrix::diag(&[self.params.c, self.params.d, 1.0])
    }

    /// PSD witnesses through the generic eigensolver; refused when a or b
    /// sits below the precision floor, where the solver would silently
    /// return garbage for the small modes.
    pub fn generic_witnesses(&self) -> Result<(PsdWitness, PsdWitness)> {
        let floor = GENERIC_EIG_FLOOR;
        if self.params.a < floor || self.params.b < floor {
            return Err(Error::PrecisionRegime(format!(
                "a = {}, b = {} below {floor}; use the factored path",
                self.params.a, self.params.b
            )));
        }
        let x = PsdWitness::new(self.x_matrix())?;
        let y = PsdWitness::new(self.y_matrix())?;
        Ok((x, y))
    }

    /// Closed forms for the sign-changing entries:
    /// `X^t[0][2] = (cos^2 x - sin^2 x) beta + sin x cos x (1/2 - alpha)`
    /// `X^t[1][2] = -cos x beta + sin x (1/2 - alpha)`
    /// with `alpha = (a^t + b^t)/4` and `beta = sqrt(2)(a^t - b^t)/4`.
    pub fn offdiag_closed_form(&self, t: f64) -> (f64, f64) {
        let at = diag_power(self.params.a, t);
        let bt = diag_power(self.params.b, t);
        let alpha = 0.25 * (at + bt);
        let beta = std::f64::consts::SQRT_2 / 4.0 * (at - bt);
        let (sx, cx) = self.params.x.sin_cos();
        let x13 = (cx * cx - sx * sx) * beta + sx * cx * (0.5 - alpha);
        let x23 = -cx * beta + sx * (0.5 - alpha);
        (x13, x23)
    }

    /// `Tr[X^s Y^t X^{1-s} Y^{1-t}]` through the factored powers; real,
    /// and exact down to the 1e-19 eigenvalue scale.
    pub fn aho_trace_structured(&self, s: f64, t: f64) -> Result<f64> {
        for (name, v) in [("s", s), ("t", t)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidExponent(format!("{name} = {v} outside [0, 1]")));
            }
        }
        let xs = self.x_power_raw(s);
        let yt = self.y_power_raw(t);
        let x1s = self.x_power_raw(1.0 - s);
        let y1t = self.y_power_raw(1.0 - t);
        Ok(xs.mul(&yt).mul(&x1s).mul(&y1t).trace())
    }

    /// `Tr[XY]`.
    pub fn trace_xy(&self) -> f64 {
        self.aho_trace_structured(1.0, 1.0).expect("endpoint exponents are valid")
    }

    /// Near-cancellation diagnostic over a t grid: the largest
    /// `|X^t[0][2] + X^t[1][2]|` against the largest
    /// `|X^t[0][2]| + |X^t[1][2]|`.
    pub fn cancellation_diagnostic(&self, t_grid: &[f64]) -> (f64, f64) {
        let mut max_sum: f64 = 0.0;
        let mut max_abs: f64 = 0.0;
        for &t in t_grid {
            let m = self.x_power_raw(t);
            let x13 = m.0[0][2];
            let x23 = m.0[1][2];
            max_sum = max_sum.max((x13 + x23).abs());
            max_abs = max_abs.max(x13.abs() + x23.abs());
        }
        (max_sum, max_abs)
    }

    /// Bisect `t -> Tr[X^t Y^t X^{1-t} Y^{1-t}]` for a zero between two
    /// exponents of opposite sign, to an interval of width 1e-12.
    pub fn zero_crossing(&self, lo: f64, hi: f64) -> Result<f64> {
        let f_lo = self.aho_trace_structured(lo, lo)?;
        let f_hi = self.aho_trace_structured(hi, hi)?;
        if f_lo == 0.0 {
            return Ok(lo);
        }
        if f_hi == 0.0 {
            return Ok(hi);
        }
        if (f_lo > 0.0) == (f_hi > 0.0) {
            return Err(Error::NoSignChange { lo, hi, f_lo, f_hi });
        }
        let (mut lo, mut hi) = (lo, hi);
        let mut f_lo = f_lo;
        while hi - lo > 1e-12 {
            let mid = 0.5 * (lo + hi);
            let f_mid = self.aho_trace_structured(mid, mid)?;
            if f_mid == 0.0 {
                return Ok(mid);
            }
            if (f_mid > 0.0) == (f_lo > 0.0) {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// `K = log X = R U diag(log a, log b, 0) U R^T`, in factored form.
    pub fn log_x(&self) -> HermitianMatrix {
        let core = Real3::diag(self.params.a.ln(), self.params.b.ln(), 0.0);
        let k = self
            .r
            .mul(&self.u)
            .mul(&core)
            .mul(&self.u)
            .mul(&self.r.transpose());
        HermitianMatrix::symmetrize(&k.to_matrix())
    }

    /// Derivative of the Golden-Thompson interpolation at `u = 1` for
    /// `K = log X`, `H = log Y`:
    /// `f'(1) = Tr[Y K X] - Tr[(Phi . K) X]` in the natural basis, where
    /// `Phi[i][j] = (y_i - y_j)/(log y_i - log y_j)` with the limit value
    /// 0 whenever an eigenvalue of Y vanishes.
    pub fn gt_cex_derivative(&self) -> Result<f64> {
        let CexParams { c, d, .. } = self.params;
        if c == 0.0 && d == 0.0 {
            return Err(Error::InvalidParams(
                "gt derivative needs c > 0 or d > 0; Y = diag(0, 0, 1) is too singular".into(),
            ));
        }
        let ys = [c, d, 1.0];
        let mut phi = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                phi[i][j] = if ys[i] == 0.0 || ys[j] == 0.0 {
                    0.0
                } else {
                    divided_difference_exp(ys[i].ln(), ys[j].ln())
                };
            }
        }
        let phi = Real3(phi);
        let k = {
            let core = Real3::diag(self.params.a.ln(), self.params.b.ln(), 0.0);
            self.r.mul(&self.u).mul(&core).mul(&self.u).mul(&self.r.transpose())
        };
        let x = self.x_power_raw(1.0);
        let y = Real3::diag(c, d, 1.0);
        let term1 = y.mul(&k).mul(&x).trace();
        let term2 = phi.hadamard(&k).mul(&x).trace();
        Ok(term1 - term2)
    }
}

/// Report of the worked tridiagonal example: the matrix whose square root
/// is the displayed tridiagonal `[[2, s2, 0], [s2, 2, s2], [0, s2, 2]]`
/// has profile entries in closed form, satisfies the trace identity
/// `2(a + b + g) + h(s)(a + b - g)` with `g = a^t b^{1-t} + a^{1-t} b^t`
/// and `h(s) = 4^{s-1/2} + 4^{1/2-s}`, and respects both trace bounds
/// everywhere despite `M[0][2](s) <= 0` -- negative profile entries alone
/// do not produce counterexamples.
#[derive(Debug, Clone)]
pub struct TridiagReport {
    pub profile_max_err: f64,
    pub trace_identity_max_err: f64,
    pub convex_in_s: bool,
    pub symmetric_in_s: bool,
    pub minimized_at_half: bool,
    pub bounds_hold: bool,
    pub worst_upper: Option<BoundReport>,
    pub worst_lower: Option<BoundReport>,
}

impl TridiagReport {
    pub fn all_ok(&self) -> bool {
        self.profile_max_err < 1e-12
            && self.trace_identity_max_err < 1e-12
            && self.convex_in_s
            && self.symmetric_in_s
            && self.minimized_at_half
            && self.bounds_hold
    }
}

fn tridiag_h(s: f64) -> f64 {
    4.0_f64.powf(s - 0.5) + 4.0_f64.powf(0.5 - s)
}

/// Run the worked-example verification across `s, t in {0, 0.05, ..., 1}`
/// and the diagonal pairs (1, 2), (0.1, 3), (5, 0.2).
pub fn tridiag_demo() -> Result<TridiagReport> {
    let s2 = std::f64::consts::SQRT_2;
    let half = HermitianMatrix::from_real_rows(&[
        vec![2.0, s2, 0.0],
        vec![s2, 2.0, s2],
        vec![0.0, s2, 2.0],
    ])?;
    let x_m = half.as_matrix().mul(half.as_matrix())?;
    let x = PsdWitness::new(HermitianMatrix::symmetrize(&x_m))?;
    let grid = aho::closed_grid(0.0, 1.0, 0.05);
    let identity = Matrix::identity(3);

    // (i) closed-form profile entries
    let mut profile_max_err: f64 = 0.0;
    for &s in &grid {
        let p = aho::m_profile(&x, &identity, s)?;
        let h = tridiag_h(s);
        profile_max_err = profile_max_err
            .max((p.matrix[(0, 2)].re - (2.0 - h)).abs())
            .max((p.matrix[(0, 0)].re - (2.0 + h)).abs())
            .max((p.matrix[(2, 2)].re - (2.0 + h)).abs());
    }

    let pairs = [(1.0, 2.0), (0.1, 3.0), (5.0, 0.2)];
    let mut trace_identity_max_err: f64 = 0.0;
    let mut convex_in_s = true;
    let mut symmetric_in_s = true;
    let mut minimized_at_half = true;
    let mut bounds_hold = true;
    let mut worst_upper: Option<BoundReport> = None;
    let mut worst_lower: Option<BoundReport> = None;

    for &(a, b) in &pairs {
        let y = PsdWitness::new(HermitianMatrix::diag(&[a, 0.0, b]))?;
        let mut traces = vec![vec![0.0; grid.len()]; grid.len()];
        for (i, &s) in grid.iter().enumerate() {
            for (j, &t) in grid.iter().enumerate() {
                let v = aho::aho_trace(&x, &y, s, t)?;
                traces[i][j] = v.re;
                // (ii) the trace identity
                let g = a.powf(t) * b.powf(1.0 - t) + a.powf(1.0 - t) * b.powf(t);
                let formula = 2.0 * (a + b + g) + tridiag_h(s) * (a + b - g);
                let scale = formula.abs().max(1.0);
                trace_identity_max_err =
                    trace_identity_max_err.max((v.re - formula).abs() / scale);
                // (iv) both bounds on the full grid
                let upper = aho::aho_upper_check(&x, &y, s, t)?;
                let lower = aho::aho_lower_check(&x, &y, s, t)?;
                if !upper.holds() {
                    bounds_hold = false;
                }
                if !lower.holds() {
                    bounds_hold = false;
                }
                if worst_upper.as_ref().map_or(true, |w| upper.margin < w.margin) {
                    worst_upper = Some(upper);
                }
                if worst_lower.as_ref().map_or(true, |w| lower.margin < w.margin) {
                    worst_lower = Some(lower);
                }
            }
        }
        // (iii) in s: discrete convexity, symmetry about 1/2, minimum at 1/2
        let mid = grid.len() / 2;
        for (j, &t) in grid.iter().enumerate() {
            if t <= 0.0 || t >= 1.0 {
                continue;
            }
            let scale = traces.iter().map(|r| r[j].abs()).fold(1.0_f64, f64::max);
            for i in 1..grid.len() - 1 {
                let second = traces[i - 1][j] + traces[i + 1][j] - 2.0 * traces[i][j];
                if second < -1e-10 * scale {
                    convex_in_s = false;
                }
            }
            for i in 0..grid.len() {
                let mirror = grid.len() - 1 - i;
                if (traces[i][j] - traces[mirror][j]).abs() > 1e-11 * scale {
                    symmetric_in_s = false;
                }
            }
            for i in 0..grid.len() {
                if traces[mid][j] > traces[i][j] + 1e-11 * scale {
                    minimized_at_half = false;
                }
            }
        }
    }

    Ok(TridiagReport {
        profile_max_err,
        trace_identity_max_err,
        convex_in_s,
        symmetric_in_s,
        minimized_at_half,
        bounds_hold,
        worst_upper,
        worst_lower,
    })
}
