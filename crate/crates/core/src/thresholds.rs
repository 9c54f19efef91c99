//! Admissibility windows and order thresholds gating the continuity
//! statements: the interpolation window around the Lebesgue exponents, the
//! oscillatory-integral order threshold, and the corresponding `L^p`
//! boundary conditions (strict in the Orlicz-exponent form, non-strict in
//! the `L^p` form).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::young::ExponentReport;

const STRICT_Q_TOL: f64 = 1e-3;

fn strict_gate(report: &ExponentReport) -> Result<(f64, f64)> {
    if !report.p_phi.is_finite() || !(report.q_phi > 1.0 + STRICT_Q_TOL) {
        return Err(Error::NotStrict {
            q_phi: report.q_phi,
            p_phi: report.p_phi,
        });
    }
    Ok((report.p_phi, report.q_phi))
}

/// Exponents `p0 < q_Φ ≤ p_Φ < p1` bracketing the interpolation pair, with
/// the guarantee `p0 > 1`.
pub fn interpolation_window(report: &ExponentReport, margin: f64) -> Result<(f64, f64)> {
    if !(margin > 0.0) {
        return Err(Error::Precondition(format!(
            "window margin must be positive, got {margin}"
        )));
    }
    let (p, q) = strict_gate(report)?;
    let raw = (1.0 + margin / 2.0).max(q - margin);
    let p0 = if raw < q { raw } else { 0.5 * (1.0 + q) };
    let p1 = p + margin;
    debug_assert!(p0 > 1.0 && p0 < q && p1 > p);
    Ok((p0, p1))
}

/// Threshold arithmetic on raw exponents:
/// `−(d−1)·max(|1/p − 1/2|, |1/q − 1/2|)`.
pub fn fio_threshold_exponents(d: usize, p_phi: f64, q_phi: f64) -> f64 {
    let dev_p = (1.0 / p_phi - 0.5).abs();
    let dev_q = (1.0 / q_phi - 0.5).abs();
    -((d as f64) - 1.0) * dev_p.max(dev_q)
}

/// Order threshold for oscillatory-integral continuity on the Orlicz scale.
pub fn fio_threshold(d: usize, report: &ExponentReport) -> Result<f64> {
    let (p, q) = strict_gate(report)?;
    Ok(fio_threshold_exponents(d, p, q))
}

/// Both amplitude orders strictly below the threshold.
pub fn check_fio_orders(m: f64, mu: f64, d: usize, report: &ExponentReport) -> Result<bool> {
    let t = fio_threshold(d, report)?;
    Ok(m < t && mu < t)
}

/// The `L^p` boundary form: both orders at most `−(d−1)|1/p − 1/2|`
/// (equality allowed).
pub fn check_lp_fio_orders(m: f64, mu: f64, d: usize, p: f64) -> Result<bool> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::Precondition(format!(
            "L^p orders need p in (1, inf), got {p}"
        )));
    }
    let t = -((d as f64) - 1.0) * (1.0 / p - 0.5).abs();
    Ok(m <= t && mu <= t)
}

/// Constructive continuity selection: find `p0 < q_Φ` and `p1 > p_Φ` for
/// which the `L^p` order conditions hold at both. Shrinks the window margin
/// geometrically; succeeds whenever the strict order condition holds.
pub fn select_lp_exponents(
    m: f64,
    mu: f64,
    d: usize,
    report: &ExponentReport,
) -> Result<Option<(f64, f64)>> {
    strict_gate(report)?;
    let mut margin = 0.1;
    for _ in 0..60 {
        let (p0, p1) = interpolation_window(report, margin)?;
        if check_lp_fio_orders(m, mu, d, p0)? && check_lp_fio_orders(m, mu, d, p1)? {
            return Ok(Some((p0, p1)));
        }
        margin *= 0.5;
    }
    Ok(None)
}

/// Summary consumed by the experiment harness.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub d: usize,
    pub p_phi: f64,
    pub q_phi: f64,
    pub t_d_phi: f64,
    pub window: (f64, f64),
    pub admissible: bool,
}

pub fn threshold_report(
    d: usize,
    report: &ExponentReport,
    m: f64,
    mu: f64,
    margin: f64,
) -> Result<ThresholdReport> {
    let (p, q) = strict_gate(report)?;
    let t = fio_threshold_exponents(d, p, q);
    let window = interpolation_window(report, margin)?;
    Ok(ThresholdReport {
        d,
        p_phi: p,
        q_phi: q,
        t_d_phi: t,
        window,
        admissible: m < t && mu < t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridConfig;
    use crate::young::{compute_exponents, make_builtin, BuiltinYoung};

    fn report_of(b: BuiltinYoung) -> ExponentReport {
        compute_exponents(&make_builtin(b).unwrap(), &GridConfig::exponent_default()).unwrap()
    }

    #[test]
    fn window_arithmetic() {
        let mut rep = report_of(BuiltinYoung::Power(2.0));
        rep.p_phi = 2.0;
        rep.q_phi = 2.0;
        let (p0, p1) = interpolation_window(&rep, 0.5).unwrap();
        assert!((p0 - 1.5).abs() < 1e-12);
        assert!((p1 - 2.5).abs() < 1e-12);

        rep.p_phi = 2.0;
        rep.q_phi = 4.0 / 3.0;
        let (p0, p1) = interpolation_window(&rep, 0.1).unwrap();
        assert!((p0 - (4.0 / 3.0 - 0.1)).abs() < 1e-12);
        assert!((p1 - 2.1).abs() < 1e-12);

        // Tiny q: the raw candidate exceeds q and is clamped inside (1, q).
        rep.q_phi = 1.01;
        let (p0, _) = interpolation_window(&rep, 0.5).unwrap();
        assert!(p0 > 1.0 && p0 < 1.01);
    }

    #[test]
    fn window_rejects_non_strict() {
        let rep = report_of(BuiltinYoung::Entropy);
        assert!(matches!(
            interpolation_window(&rep, 0.1),
            Err(Error::NotStrict { .. })
        ));
        let rep = report_of(BuiltinYoung::ExpMinusOne);
        assert!(matches!(fio_threshold(3, &rep), Err(Error::NotStrict { .. })));
    }

    #[test]
    fn threshold_values() {
        assert_eq!(fio_threshold_exponents(3, 2.0, 4.0 / 3.0), -0.5);
        assert_eq!(fio_threshold_exponents(2, 2.0, 2.0), 0.0);
        assert_eq!(fio_threshold_exponents(1, 7.3, 1.4), 0.0);
        // Depends on the exponents only through the two deviations.
        let a = fio_threshold_exponents(4, 4.0, 1.6);
        let b = fio_threshold_exponents(4, 4.0, 1.6);
        assert_eq!(a, b);
        // Monotone non-increasing in d.
        assert!(fio_threshold_exponents(3, 3.0, 1.5) <= fio_threshold_exponents(2, 3.0, 1.5));
    }

    #[test]
    fn strictness_at_boundaries() {
        let rep = {
            let mut r = report_of(BuiltinYoung::Counterexample);
            r.p_phi = 2.0;
            r.q_phi = 4.0 / 3.0;
            r
        };
        // Threshold is exactly -1/2 at d = 3; equality must fail (strict).
        assert!(!check_fio_orders(-0.5, -0.5, 3, &rep).unwrap());
        assert!(check_fio_orders(-1.0, -1.0, 3, &rep).unwrap());
        // The L^p form allows equality.
        assert!(check_lp_fio_orders(-0.5, -0.5, 3, 4.0).unwrap());
        assert!(!check_lp_fio_orders(-0.4, -0.5, 3, 4.0).unwrap());
        assert!(check_lp_fio_orders(0.0, 0.0, 5, 2.0).unwrap());
        // d = 1: threshold 0, strict form rejects 0, admits negatives.
        assert!(!check_fio_orders(0.0, 0.0, 1, &rep).unwrap());
        assert!(check_fio_orders(-0.01, -0.01, 1, &rep).unwrap());
    }

    #[test]
    fn constructive_selection_follows_strict_orders() {
        let rep = report_of(BuiltinYoung::Counterexample);
        for d in [1usize, 2, 3] {
            let t = fio_threshold(d, &rep).unwrap();
            for dm in [0.005, 0.1, 0.7] {
                let (m, mu) = (t - dm, t - dm);
                assert!(check_fio_orders(m, mu, d, &rep).unwrap());
                let picked = select_lp_exponents(m, mu, d, &rep).unwrap();
                let (p0, p1) = picked.expect("selection must succeed under strict orders");
                assert!(p0 > 1.0 && p0 < rep.q_phi && p1 > rep.p_phi);
                assert!(check_lp_fio_orders(m, mu, d, p0).unwrap());
                assert!(check_lp_fio_orders(m, mu, d, p1).unwrap());
            }
        }
    }

    #[test]
    fn lp_order_gate_rejects_bad_exponents() {
        assert!(check_lp_fio_orders(0.0, 0.0, 2, 1.0).is_err());
        assert!(check_lp_fio_orders(0.0, 0.0, 2, f64::INFINITY).is_err());
    }

    #[test]
    fn report_invariants() {
        let rep = report_of(BuiltinYoung::Counterexample);
        let tr = threshold_report(3, &rep, -1.0, -1.0, 0.1).unwrap();
        assert!(tr.t_d_phi <= 0.0);
        assert!(tr.window.0 < tr.q_phi && tr.q_phi <= tr.p_phi && tr.p_phi < tr.window.1);
        assert!(tr.admissible);
        let tr2 = threshold_report(3, &rep, -0.1, -1.0, 0.1).unwrap();
        assert!(!tr2.admissible);
    }
}
