//! Small-perturbation behavior of the trace functional for
//! `X = e^{alpha H}`, `Y = e^{alpha K}`: the quadratic commutator term,
//! the residual against it, and the imaginary-exponent variant whose
//! value exceeds `Tr[XY]` for small alpha.

use num_complex::Complex64;

use crate::error::Result;
use crate::matcore::{
    complex_power, eig_hermitian, frac_power, mat_exp, trace_product, HermitianMatrix,
};

/// Exact trace, the commutator-corrected prediction, and their difference.
#[derive(Debug, Clone)]
pub struct ExpansionReport {
    /// `Tr[X^{1-s} Y^{1-t} X^s Y^t]` (real part; imaginary part is
    /// roundoff for Hermitian inputs).
    pub exact: f64,
    /// `Tr[XY] + s t alpha^2 Tr[[H,K]^2]`.
    pub predicted: f64,
    pub residual: f64,
    pub tr_xy: f64,
    /// `Tr[[H,K]^2]`, always <= 0 and strictly negative iff [H,K] != 0.
    pub commutator_trace: f64,
}

/// Rescale a Hermitian matrix to a contraction (operator norm <= 1).
fn contraction(h: &HermitianMatrix) -> HermitianMatrix {
    let radius = eig_hermitian(h).spectral_radius();
    if radius > 1.0 {
        h.scale(1.0 / radius)
    } else {
        h.clone()
    }
}

fn commutator_square_trace(h: &HermitianMatrix, k: &HermitianMatrix) -> Result<f64> {
    let hk = h.as_matrix().mul(k.as_matrix())?;
    let kh = k.as_matrix().mul(h.as_matrix())?;
    let comm = hk.sub(&kh)?;
    Ok(comm.mul(&comm)?.trace().re)
}

/// Evaluate `Tr[X^{1-s} Y^{1-t} X^s Y^t]` with `X = e^{alpha H}`,
/// `Y = e^{alpha K}` against the prediction
/// `Tr[XY] + s t alpha^2 Tr[[H,K]^2]`.
///
/// H and K are rescaled internally to contractions when their operator
/// norm exceeds 1, so alpha alone controls the perturbation size.
pub fn second_order_expansion(
    h: &HermitianMatrix,
    k: &HermitianMatrix,
    alpha: f64,
    s: f64,
    t: f64,
) -> Result<ExpansionReport> {
    let h = contraction(h);
    let k = contraction(k);
    let x = mat_exp(&h.scale(alpha));
    let y = mat_exp(&k.scale(alpha));
    let x1s = frac_power(&x, 1.0 - s)?;
    let y1t = frac_power(&y, 1.0 - t)?;
    let xs = frac_power(&x, s)?;
    let yt = frac_power(&y, t)?;
    let exact =
        trace_product(&[x1s.as_matrix(), y1t.as_matrix(), xs.as_matrix(), yt.as_matrix()])?.re;
    let tr_xy = trace_product(&[x.matrix().as_matrix(), y.matrix().as_matrix()])?.re;
    let commutator_trace = commutator_square_trace(&h, &k)?;
    let predicted = tr_xy + s * t * alpha * alpha * commutator_trace;
    Ok(ExpansionReport { exact, predicted, residual: exact - predicted, tr_xy, commutator_trace })
}

/// `Tr[X^{1-it} Y^{1-is} X^{it} Y^{is}]` with `X = e^{alpha H}`,
/// `Y = e^{alpha K}` (contractions as above). Its real part rises above
/// `Tr[XY]` for small alpha when H and K do not commute.
pub fn imaginary_exponent_trace(
    h: &HermitianMatrix,
    k: &HermitianMatrix,
    alpha: f64,
    s: f64,
    t: f64,
) -> Result<Complex64> {
    let h = contraction(h);
    let k = contraction(k);
    let x = mat_exp(&h.scale(alpha));
    let y = mat_exp(&k.scale(alpha));
    let i = Complex64::new(0.0, 1.0);
    let one = Complex64::new(1.0, 0.0);
    let x_a = complex_power(&x, one - i * t)?;
    let y_a = complex_power(&y, one - i * s)?;
    let x_b = complex_power(&x, i * t)?;
    let y_b = complex_power(&y, i * s)?;
    trace_product(&[&x_a, &y_a, &x_b, &y_b])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aho::trace_xy;

    fn pauli_pair() -> (HermitianMatrix, HermitianMatrix) {
        let h = HermitianMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let k = HermitianMatrix::diag(&[1.0, -1.0]);
        (h, k)
    }

    #[test]
    fn commuting_inputs_have_zero_residual() {
        let h = HermitianMatrix::diag(&[0.3, -0.2]);
        let k = HermitianMatrix::diag(&[0.1, 0.4]);
        let rep = second_order_expansion(&h, &k, 0.5, 0.75, 0.75).unwrap();
        assert_eq!(rep.commutator_trace, 0.0);
        assert!(
            (rep.exact - rep.tr_xy).abs() < 1e-12 * rep.tr_xy.max(1.0),
            "residual {}",
            rep.residual
        );
    }

    #[test]
    fn commutator_trace_sign() {
        let (h, k) = pauli_pair();
        let rep = second_order_expansion(&h, &k, 0.01, 0.75, 0.75).unwrap();
        assert!(rep.commutator_trace < 0.0);
        // the pair is already a contraction pair; [H,K]^2 = -4 [[1,0],[0,1]] scaled
        assert!((rep.commutator_trace + 8.0).abs() < 1e-12);
    }

    #[test]
    fn exact_stays_below_tr_xy_for_small_alpha() {
        let (h, k) = pauli_pair();
        for (s, t) in [(0.6, 0.6), (0.75, 0.9), (0.75, 0.75), (1.0, 1.0)] {
            for alpha in [1e-2, 5e-3] {
                let rep = second_order_expansion(&h, &k, alpha, s, t).unwrap();
                let tol = 1e-12 * rep.tr_xy.max(1.0);
                assert!(
                    rep.exact <= rep.tr_xy + tol,
                    "s={s}, t={t}, alpha={alpha}: exact {} > Tr[XY] {}",
                    rep.exact,
                    rep.tr_xy
                );
            }
        }
    }

    #[test]
    fn residual_halving_study() {
        // The exact difference from Tr[XY] decays like alpha^4, so the
        // residual is dominated by the alpha^2 prediction term and the
        // halving ratio sits at 4 (up to the genuine higher-order tail).
        let (h, k) = pauli_pair();
        let (s, t) = (0.75, 0.75);
        let r1 = second_order_expansion(&h, &k, 1e-2, s, t).unwrap().residual.abs();
        let r2 = second_order_expansion(&h, &k, 5e-3, s, t).unwrap().residual.abs();
        let r4 = second_order_expansion(&h, &k, 2.5e-3, s, t).unwrap().residual.abs();
        for ratio in [r1 / r2, r2 / r4] {
            assert!(
                (4.0 - 1e-3..=16.0 + 1e-3).contains(&ratio),
                "halving ratio {ratio} outside [4, 16]"
            );
        }
    }

    #[test]
    fn rescales_non_contractions() {
        let h = HermitianMatrix::diag(&[5.0, -3.0]);
        let k = HermitianMatrix::from_real_rows(&[vec![0.0, 4.0], vec![4.0, 0.0]]).unwrap();
        let rep = second_order_expansion(&h, &k, 0.01, 0.6, 0.6).unwrap();
        // after rescaling both operators are contractions, so Tr[XY] is
        // within e^{2 alpha} * n of n
        assert!(rep.tr_xy <= 2.0 * (2.0 * 0.01f64).exp() + 1e-12);
    }

    #[test]
    fn imaginary_exponents_exceed_tr_xy() {
        let (h, k) = pauli_pair();
        for alpha in [1e-1, 1e-2] {
            let x = mat_exp(&h.scale(alpha));
            let y = mat_exp(&k.scale(alpha));
            let txy = trace_xy(&x, &y).unwrap();
            let v = imaginary_exponent_trace(&h, &k, alpha, 0.5, 0.5).unwrap();
            assert!(
                v.re > txy,
                "alpha={alpha}: re {} should exceed Tr[XY] {}",
                v.re,
                txy
            );
            assert!(v.im.abs() < 1e-3 * txy, "imaginary part {} too large", v.im);
        }
    }
}
