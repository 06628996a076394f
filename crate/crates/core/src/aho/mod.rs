//! The two-parameter trace functional `Tr[X^s Y^t X^{1-s} Y^{1-t}]` and
//! every inequality checked against it: the upper bound `Tr[XY]`, the
//! lower bound `Tr[X^{1/2}Y^{1/2}X^{1/2}Y^{1/2}]`, the four-matrix
//! Hoelder/Lieb-Thirring bound that proves the upper bound for
//! `s + t <= 3/2`, entrywise-positivity certification, and the
//! small-perturbation expansion.

mod expansion;
mod hadamard;
mod positivity;

pub use expansion::{imaginary_exponent_trace, second_order_expansion, ExpansionReport};
pub use hadamard::{
    at_most_one_negative, conlem_check, m_profile, oct_quadratic_form, AtMostOneReport,
    ConlemReport, HadamardProfile, MEntryViolation, SandwichPoint,
};
pub use positivity::{
    bd_offdiag_check, resolvent_positivity, semigroup_positivity, BdCheck, ResolventReport,
    SemigroupReport,
};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcore::{frac_power, schatten_norm, trace_product, Matrix, PsdWitness};

/// Slack allowed before an inequality counts as violated, relative to
/// `max(|left|, |right|, 1)`. The floor of 1 keeps the comparison
/// meaningful at the 1e-10 trace scales of the counterexamples.
pub const BOUND_TOL: f64 = 1e-12;

/// Exponent pair for the trace functional.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentPair {
    pub s: f64,
    pub t: f64,
}

impl ExponentPair {
    pub fn new(s: f64, t: f64) -> Self {
        ExponentPair { s, t }
    }

    /// Both exponents in [1/2, 1], the range of the conjectured bounds.
    pub fn in_aho_region(&self) -> bool {
        (0.5..=1.0).contains(&self.s) && (0.5..=1.0).contains(&self.t)
    }

    /// `1/2 <= s, t` and `s + t <= 3/2`, where the upper bound is a theorem.
    pub fn in_theorem_region(&self) -> bool {
        self.s >= 0.5 && self.t >= 0.5 && self.s + self.t <= 1.5 + 1e-12
    }
}

/// Outcome of one inequality check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated,
    NotApplicable,
}

/// One inequality check: the two sides, the raw trace behind them, and
/// the slack. `margin` is measured in the direction asserted by the
/// inequality, so `Holds` always means `margin >= -tolerance`.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub exponents: ExponentPair,
    pub trace_value: Complex64,
    pub left_side: f64,
    pub right_side: f64,
    pub margin: f64,
    pub verdict: Verdict,
}

impl BoundReport {
    fn check(exponents: ExponentPair, trace_value: Complex64, left: f64, right: f64) -> Self {
        let margin = right - left;
        let tol = BOUND_TOL * left.abs().max(right.abs()).max(1.0);
        let verdict = if margin >= -tol { Verdict::Holds } else { Verdict::Violated };
        BoundReport { exponents, trace_value, left_side: left, right_side: right, margin, verdict }
    }

    fn not_applicable(exponents: ExponentPair) -> Self {
        BoundReport {
            exponents,
            trace_value: Complex64::new(0.0, 0.0),
            left_side: 0.0,
            right_side: 0.0,
            margin: 0.0,
            verdict: Verdict::NotApplicable,
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

fn check_unit_interval(name: &str, v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::InvalidExponent(format!("{name} = {v} outside [0, 1]")));
    }
    Ok(())
}

/// `Tr[X^s Y^t X^{1-s} Y^{1-t}]`, complex in general.
pub fn aho_trace(x: &PsdWitness, y: &PsdWitness, s: f64, t: f64) -> Result<Complex64> {
    check_unit_interval("s", s)?;
    check_unit_interval("t", t)?;
    let xs = frac_power(x, s)?;
    let yt = frac_power(y, t)?;
    let x1s = frac_power(x, 1.0 - s)?;
    let y1t = frac_power(y, 1.0 - t)?;
    trace_product(&[xs.as_matrix(), yt.as_matrix(), x1s.as_matrix(), y1t.as_matrix()])
}

/// `Tr[XY]`, real and nonnegative for PSD inputs.
pub fn trace_xy(x: &PsdWitness, y: &PsdWitness) -> Result<f64> {
    Ok(trace_product(&[x.matrix().as_matrix(), y.matrix().as_matrix()])?.re)
}

/// Upper bound check `|Tr[X^s Y^t X^{1-s} Y^{1-t}]| <= Tr[XY]`.
pub fn aho_upper_check(x: &PsdWitness, y: &PsdWitness, s: f64, t: f64) -> Result<BoundReport> {
    let trace = aho_trace(x, y, s, t)?;
    let right = trace_xy(x, y)?;
    Ok(BoundReport::check(ExponentPair::new(s, t), trace, trace.norm(), right))
}

/// Lower bound check
/// `Tr[X^{1/2} Y^{1/2} X^{1/2} Y^{1/2}] <= |Tr[X^s Y^t X^{1-s} Y^{1-t}]|`.
pub fn aho_lower_check(x: &PsdWitness, y: &PsdWitness, s: f64, t: f64) -> Result<BoundReport> {
    let trace = aho_trace(x, y, s, t)?;
    let left = aho_trace(x, y, 0.5, 0.5)?.re;
    Ok(BoundReport::check(ExponentPair::new(s, t), trace, left, trace.norm()))
}

/// Four-matrix bound
/// `|Tr[X^t Y^s Z^{1-t} W^{1-s}]| <=
///  (Tr[XY])^{t+s-1} (Tr[YZ])^{1-t} (Tr[WX])^{1-s}`,
/// a theorem for `1/2 <= s, t` with `s + t <= 3/2`; outside that region
/// the report is NotApplicable. A Violated verdict here signals a
/// numerical-integrity failure, not a counterexample.
pub fn four_matrix_bound(
    x: &PsdWitness,
    y: &PsdWitness,
    z: &PsdWitness,
    w: &PsdWitness,
    s: f64,
    t: f64,
) -> Result<BoundReport> {
    check_unit_interval("s", s)?;
    check_unit_interval("t", t)?;
    let exps = ExponentPair::new(s, t);
    if !exps.in_theorem_region() {
        return Ok(BoundReport::not_applicable(exps));
    }
    let xt = frac_power(x, t)?;
    let ys = frac_power(y, s)?;
    let z1t = frac_power(z, 1.0 - t)?;
    let w1s = frac_power(w, 1.0 - s)?;
    let trace =
        trace_product(&[xt.as_matrix(), ys.as_matrix(), z1t.as_matrix(), w1s.as_matrix()])?;
    let txy = trace_xy(x, y)?;
    let tyz = trace_xy(y, z)?;
    let twx = trace_xy(w, x)?;
    let right = txy.powf(t + s - 1.0) * tyz.powf(1.0 - t) * twx.powf(1.0 - s);
    Ok(BoundReport::check(exps, trace, trace.norm(), right))
}

/// Lieb-Thirring/Araki check between `Tr[(B^{1/2} A B^{1/2})^r]` and
/// `Tr[A^r B^r]`: the first is below the second for `r >= 1` and above it
/// for `0 < r <= 1`, with equality exactly at `r = 1`.
///
/// The report stores `left = Tr[(B^{1/2} A B^{1/2})^r]` and
/// `right = Tr[A^r B^r]`; the margin is oriented along the direction
/// asserted for the given `r`.
pub fn lieb_thirring_check(a: &PsdWitness, b: &PsdWitness, r: f64) -> Result<BoundReport> {
    if !(r > 0.0) {
        return Err(Error::InvalidExponent(format!("Lieb-Thirring needs r > 0, got {r}")));
    }
    let b_half = frac_power(b, 0.5)?;
    let sandwich = trace_product(&[
        b_half.as_matrix(),
        a.matrix().as_matrix(),
        b_half.as_matrix(),
    ])?;
    // Re-certify B^{1/2} A B^{1/2}; congruence keeps it PSD.
    let inner = b_half
        .as_matrix()
        .mul(a.matrix().as_matrix())?
        .mul(b_half.as_matrix())?;
    let inner = PsdWitness::new(crate::matcore::HermitianMatrix::symmetrize(&inner))?;
    let thr = inner.zero_threshold();
    let left: f64 = inner
        .decomposition()
        .eigenvalues
        .iter()
        .map(|&l| if l <= thr { 0.0 } else { l.powf(r) })
        .sum();
    let ar = frac_power(a, r)?;
    let br = frac_power(b, r)?;
    let right = trace_product(&[ar.as_matrix(), br.as_matrix()])?.re;
    let exps = ExponentPair::new(r, r);
    let mut report = if r >= 1.0 {
        BoundReport::check(exps, sandwich, left, right)
    } else {
        // Araki's reversal: left >= right. Orient the margin accordingly
        // but keep the documented left/right assignment.
        let mut rep = BoundReport::check(exps, sandwich, right, left);
        std::mem::swap(&mut rep.left_side, &mut rep.right_side);
        rep
    };
    report.trace_value = sandwich;
    Ok(report)
}

/// Generalized Hoelder check `|Tr[A_1 ... A_k]| <= prod ||A_i||_{p_i}`
/// for exponents with `sum 1/p_i = 1`.
pub fn holder_check(factors: &[&Matrix], exponents: &[f64]) -> Result<BoundReport> {
    if factors.len() != exponents.len() {
        return Err(Error::DimensionMismatch { expected: factors.len(), got: exponents.len() });
    }
    let recip_sum: f64 = exponents.iter().map(|&p| if p.is_infinite() { 0.0 } else { 1.0 / p }).sum();
    if (recip_sum - 1.0).abs() > 1e-12 {
        return Err(Error::ExponentSum { sum: recip_sum });
    }
    for &p in exponents {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidExponent(format!("Hoelder exponent {p} below 1")));
        }
    }
    let trace = trace_product(factors)?;
    let mut right = 1.0;
    for (f, &p) in factors.iter().zip(exponents) {
        right *= schatten_norm(f, p)?;
    }
    Ok(BoundReport::check(ExponentPair::new(0.0, 0.0), trace, trace.norm(), right))
}

/// One grid point of a scan: upper and lower checks at the same (s, t).
#[derive(Debug, Clone)]
pub struct ScanPoint {
    pub s: f64,
    pub t: f64,
    pub trace_value: Complex64,
    pub tr_xy: f64,
    pub upper: BoundReport,
    pub lower: BoundReport,
}

/// Closed grid from `lo` to `hi` in steps of `step`; both endpoints are
/// always present.
pub fn closed_grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let mut grid = Vec::new();
    let mut k = 0usize;
    loop {
        let v = lo + k as f64 * step;
        if v >= hi - 1e-12 {
            break;
        }
        grid.push(v);
        k += 1;
    }
    grid.push(hi);
    grid
}

/// Sweep the upper and lower checks over `[1/2, 1]^2` with the given step.
/// Rows are emitted s-major, both axes ascending, endpoints closed.
pub fn scan(x: &PsdWitness, y: &PsdWitness, grid_step: f64) -> Result<Vec<ScanPoint>> {
    if !(grid_step > 0.0 && grid_step <= 0.25) {
        return Err(Error::InvalidParams(format!("grid step {grid_step} outside (0, 1/4]")));
    }
    let grid = closed_grid(0.5, 1.0, grid_step);
    let tr_xy = trace_xy(x, y)?;
    let lower_left = aho_trace(x, y, 0.5, 0.5)?.re;
    let mut out = Vec::with_capacity(grid.len() * grid.len());
    for &s in &grid {
        for &t in &grid {
            let trace = aho_trace(x, y, s, t)?;
            let exps = ExponentPair::new(s, t);
            let upper = BoundReport::check(exps, trace, trace.norm(), tr_xy);
            let lower = BoundReport::check(exps, trace, lower_left, trace.norm());
            out.push(ScanPoint { s, t, trace_value: trace, tr_xy, upper, lower });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::HermitianMatrix;
    use crate::sampling::{self, SplitMix64};

    fn psd_diag(d: &[f64]) -> PsdWitness {
        PsdWitness::new(HermitianMatrix::diag(d)).unwrap()
    }

    #[test]
    fn trace_on_identity_pair() {
        let x = psd_diag(&[1.0, 1.0, 1.0]);
        let y = psd_diag(&[1.0, 1.0, 1.0]);
        for (s, t) in [(0.5, 0.5), (0.7, 0.9), (1.0, 0.3)] {
            let v = aho_trace(&x, &y, s, t).unwrap();
            assert!((v - Complex64::new(3.0, 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn trace_on_commuting_pair_is_tr_xy() {
        let x = psd_diag(&[1.0, 2.0]);
        let y = psd_diag(&[3.0, 4.0]);
        for (s, t) in [(0.25, 0.75), (0.5, 0.5), (0.9, 0.1)] {
            let v = aho_trace(&x, &y, s, t).unwrap();
            assert!((v.re - 11.0).abs() < 1e-12, "s={s}, t={t}: {v}");
            assert!(v.im.abs() < 1e-13);
        }
    }

    #[test]
    fn trace_rejects_out_of_range_exponents() {
        let x = psd_diag(&[1.0, 2.0]);
        assert!(aho_trace(&x, &x, 1.5, 0.5).is_err());
        assert!(aho_trace(&x, &x, 0.5, -0.1).is_err());
    }

    #[test]
    fn symmetry_and_conjugation_identities() {
        let mut rng = SplitMix64::new(101);
        for _ in 0..25 {
            let x = sampling::random_psd_complex(3, &mut rng);
            let y = sampling::random_psd_complex(3, &mut rng);
            let s = 0.5 + 0.5 * rng.next_f64();
            let t = 0.5 + 0.5 * rng.next_f64();
            let f_st = aho_trace(&x, &y, s, t).unwrap();
            let f_sym = aho_trace(&x, &y, 1.0 - s, 1.0 - t).unwrap();
            let f_conj = aho_trace(&x, &y, s, 1.0 - t).unwrap();
            let scale = f_st.norm().max(1e-30);
            assert!((f_st - f_sym).norm() < 1e-12 * scale.max(1.0));
            assert!((f_st.conj() - f_conj).norm() < 1e-12 * scale.max(1.0));
        }
    }

    #[test]
    fn trace_matches_extended_precision_reference_seed23() {
        // reference value from a 50-digit spectral computation of the
        // same seed-23 pair
        let mut rng = SplitMix64::new(23);
        let x = sampling::random_psd(3, &mut rng);
        let y = sampling::random_psd(3, &mut rng);
        let v = aho_trace(&x, &y, 0.6, 0.6).unwrap();
        let reference = 0.22972977947385487;
        assert!(
            (v.re - reference).abs() < 1e-10 * reference,
            "got {}, reference {reference}",
            v.re
        );
        assert!(v.im.abs() < 1e-14);
    }

    #[test]
    fn real_inputs_give_real_trace() {
        let mut rng = SplitMix64::new(55);
        for _ in 0..20 {
            let x = sampling::random_psd(4, &mut rng);
            let y = sampling::random_psd(4, &mut rng);
            let v = aho_trace(&x, &y, 0.6, 0.85).unwrap();
            assert!(v.im.abs() < 1e-12 * v.norm().max(1.0));
        }
    }

    #[test]
    fn endpoint_s_equals_one() {
        let mut rng = SplitMix64::new(60);
        let x = sampling::random_pd(3, &mut rng);
        let y = sampling::random_pd(3, &mut rng);
        let txy = trace_xy(&x, &y).unwrap();
        for t in [0.0, 0.3, 0.5, 0.8, 1.0] {
            let v = aho_trace(&x, &y, 1.0, t).unwrap();
            assert!((v.re - txy).abs() < 1e-12 * txy.max(1.0), "t={t}");
        }
    }

    #[test]
    fn upper_check_equality_at_endpoint() {
        let mut rng = SplitMix64::new(70);
        let x = sampling::random_pd(3, &mut rng);
        let y = sampling::random_pd(3, &mut rng);
        let rep = aho_upper_check(&x, &y, 1.0, 1.0).unwrap();
        assert!(rep.holds());
        assert!(rep.margin.abs() < 1e-12 * rep.right_side.max(1.0));
    }

    #[test]
    fn upper_check_holds_in_theorem_region_seed29() {
        let mut rng = SplitMix64::new(29);
        let x = sampling::random_psd(3, &mut rng);
        let y = sampling::random_psd(3, &mut rng);
        let rep = aho_upper_check(&x, &y, 0.7, 0.7).unwrap();
        assert!(rep.holds(), "margin {}", rep.margin);
    }

    #[test]
    fn lower_check_equality_at_half() {
        let mut rng = SplitMix64::new(71);
        let x = sampling::random_psd(3, &mut rng);
        let y = sampling::random_psd(3, &mut rng);
        let rep = aho_lower_check(&x, &y, 0.5, 0.5).unwrap();
        assert!(rep.holds());
        assert!(rep.margin.abs() < 1e-12 * rep.right_side.max(1.0));
    }

    #[test]
    fn lower_check_commuting_equality_everywhere() {
        let x = psd_diag(&[1.0, 2.0, 0.5]);
        let y = psd_diag(&[3.0, 4.0, 2.0]);
        for (s, t) in [(0.5, 0.9), (0.75, 0.6), (1.0, 1.0)] {
            let rep = aho_lower_check(&x, &y, s, t).unwrap();
            assert!(rep.holds());
            assert!(rep.margin.abs() < 1e-12 * rep.right_side.max(1.0));
        }
    }

    #[test]
    fn four_matrix_identity_equality() {
        let id = psd_diag(&[1.0, 1.0, 1.0, 1.0]);
        let rep = four_matrix_bound(&id, &id, &id, &id, 0.75, 0.75).unwrap();
        assert!(rep.holds());
        assert!((rep.left_side - 4.0).abs() < 1e-12);
        assert!((rep.right_side - 4.0).abs() < 1e-12);
    }

    #[test]
    fn four_matrix_reduces_to_upper_bound_seed31() {
        let mut rng = SplitMix64::new(31);
        let x = sampling::random_psd(3, &mut rng);
        let y = sampling::random_psd(3, &mut rng);
        let rep = four_matrix_bound(&x, &y, &x, &y, 0.6, 0.8).unwrap();
        assert!(rep.holds(), "margin {}", rep.margin);
        // with Z = X, W = Y the left side is the AHO trace with (s, t) swapped
        let direct = aho_trace(&x, &y, 0.8, 0.6).unwrap();
        assert!((rep.trace_value - direct).norm() < 1e-12 * direct.norm().max(1.0));
    }

    #[test]
    fn four_matrix_outside_region_is_not_applicable() {
        let id = psd_diag(&[1.0, 1.0]);
        let rep = four_matrix_bound(&id, &id, &id, &id, 0.9, 0.9).unwrap();
        assert_eq!(rep.verdict, Verdict::NotApplicable);
        let rep = four_matrix_bound(&id, &id, &id, &id, 0.3, 0.9).unwrap();
        assert_eq!(rep.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn four_matrix_all_equal_consistency() {
        let mut rng = SplitMix64::new(99);
        let x = sampling::random_psd(3, &mut rng);
        let rep = four_matrix_bound(&x, &x, &x, &x, 0.75, 0.75).unwrap();
        assert!(rep.holds());
        let tr_x2 = trace_product(&[x.matrix().as_matrix(), x.matrix().as_matrix()])
            .unwrap()
            .re;
        assert!((rep.left_side - tr_x2).abs() < 1e-12 * tr_x2.max(1.0));
    }

    #[test]
    fn lieb_thirring_commuting_equality() {
        let a = psd_diag(&[1.0, 2.0, 3.0]);
        let b = psd_diag(&[0.5, 1.5, 2.5]);
        for r in [0.3, 0.5, 1.0, 2.0, 3.0] {
            let rep = lieb_thirring_check(&a, &b, r).unwrap();
            assert!(rep.holds(), "r={r}");
            assert!(
                rep.margin.abs() < 1e-12 * rep.right_side.max(1.0),
                "r={r}, margin {}",
                rep.margin
            );
        }
    }

    #[test]
    fn lieb_thirring_directions_seed37() {
        let mut rng = SplitMix64::new(37);
        let a = sampling::random_pd(3, &mut rng);
        let b = sampling::random_pd(3, &mut rng);
        let rep2 = lieb_thirring_check(&a, &b, 2.0).unwrap();
        assert!(rep2.holds());
        assert!(rep2.margin > 0.0, "expected strict gap at r=2, margin {}", rep2.margin);
        assert!(rep2.left_side < rep2.right_side);
        let rep_half = lieb_thirring_check(&a, &b, 0.5).unwrap();
        assert!(rep_half.holds());
        assert!(rep_half.left_side > rep_half.right_side, "Araki reversal");
        assert!(lieb_thirring_check(&a, &b, 0.0).is_err());
    }

    #[test]
    fn holder_single_factor_trace_norm() {
        let mut rng = SplitMix64::new(14);
        let a = sampling::random_hermitian(3, &mut rng);
        let rep = holder_check(&[a.as_matrix()], &[1.0]).unwrap();
        assert!(rep.holds());
    }

    #[test]
    fn holder_rank_one_saturation() {
        // A = u u^T has one singular value, so |Tr[A A^T]| = ||A||_2^2.
        let u = [0.6, 0.8];
        let a = Matrix::from_fn(2, |i, j| Complex64::new(u[i] * u[j], 0.0));
        let at = a.transpose();
        let rep = holder_check(&[&a, &at], &[2.0, 2.0]).unwrap();
        assert!(rep.holds());
        assert!(rep.margin.abs() < 1e-12, "saturation margin {}", rep.margin);
    }

    #[test]
    fn holder_triple_seed41() {
        let mut rng = SplitMix64::new(41);
        let a = sampling::random_hermitian(4, &mut rng);
        let b = sampling::random_hermitian(4, &mut rng);
        let c = sampling::random_hermitian(4, &mut rng);
        let rep = holder_check(&[a.as_matrix(), b.as_matrix(), c.as_matrix()], &[3.0, 3.0, 3.0])
            .unwrap();
        assert!(rep.holds());
    }

    #[test]
    fn holder_rejects_bad_exponent_sum() {
        let a = Matrix::identity(2);
        assert!(matches!(
            holder_check(&[&a, &a], &[3.0, 3.0]),
            Err(Error::ExponentSum { .. })
        ));
    }

    #[test]
    fn closed_grid_endpoints() {
        let g = closed_grid(0.5, 1.0, 0.25);
        assert_eq!(g, vec![0.5, 0.75, 1.0]);
        let g = closed_grid(0.5, 1.0, 0.01);
        assert_eq!(g.len(), 51);
        assert_eq!(*g.last().unwrap(), 1.0);
    }

    #[test]
    fn scan_identity_pair_uniform_margins() {
        let x = psd_diag(&[1.0, 1.0, 1.0]);
        let points = scan(&x, &x, 0.25).unwrap();
        assert_eq!(points.len(), 9);
        for p in &points {
            assert!(p.upper.holds() && p.lower.holds());
            assert!(p.upper.margin.abs() < 1e-12);
            assert!(p.lower.margin.abs() < 1e-12);
        }
        // deterministic s-major ordering
        assert!(points[0].s == 0.5 && points[0].t == 0.5);
        assert!(points[1].s == 0.5 && points[1].t == 0.75);
    }

    #[test]
    fn scan_rejects_bad_step() {
        let x = psd_diag(&[1.0]);
        assert!(scan(&x, &x, 0.3).is_err());
        assert!(scan(&x, &x, 0.0).is_err());
    }
}
