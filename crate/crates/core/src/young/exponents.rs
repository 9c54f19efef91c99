//! Lebesgue exponents of a Young function and the structural conditions they
//! characterize.
//!
//! The upper and lower exponents are the sup and inf over `t > 0` of the
//! ratio `t Φ'₊(t) / Φ(t)`. They are scanned on a log grid; at the grid ends
//! the limit of the ratio is estimated by a least-squares fit in `1 / ln t`,
//! which captures logarithmic approaches (e.g. `t·ln(1+t)` tends to its lower
//! exponent 1 like `1 + 1/ln t`, far too slowly for any floating-point grid
//! to reach directly). Divergence is classified by the slope of the ratio in
//! log-log coordinates on the end decades.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{decade_slice, loglog_slope, ls_fit, GridConfig, TREND_LIMIT};

use super::{Side, YoungFunction};

/// Absolute tolerance for exponent extrema on the default grid.
pub const EXPONENT_TOL: f64 = 1e-3;
const LAMBDA_RATIO_TOL: f64 = 1e-6;
const MIN_VALID_SAMPLES: usize = 64;

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Delta2Report {
    pub satisfied: bool,
    /// Supremum of Φ(2t)/Φ(t) over the grid (infinite when the ratio blows up).
    pub constant: f64,
    /// Log-log growth slope of the ratio on the top decade.
    pub trend_slope: f64,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct LambdaReport {
    pub satisfied: bool,
    /// Exponent the scaling scan was run at.
    pub exponent: f64,
    /// `sup Φ(ct) / (c^p Φ(t))` over the `(c, t)` grid; `None` when the scan
    /// was skipped because the exponent gate already failed.
    pub worst_ratio: Option<f64>,
}

/// Computed Lebesgue exponents together with the structural verdicts.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExponentReport {
    /// Upper exponent; `+∞` (serialized as null) when the ratio diverges.
    pub p_phi: f64,
    /// Lower exponent.
    pub q_phi: f64,
    /// Grid argument attaining the upper extremum.
    pub arg_sup: f64,
    /// Grid argument attaining the lower extremum.
    pub arg_inf: f64,
    pub delta2: Delta2Report,
    pub lambda: LambdaReport,
    pub grid_range: GridConfig,
}

impl ExponentReport {
    /// Strictness gate: doubling plus scaling, i.e. finite upper exponent and
    /// lower exponent above 1.
    pub fn is_strict(&self) -> bool {
        self.delta2.satisfied && self.lambda.satisfied
    }
}

fn ratio_samples(
    phi: &YoungFunction,
    cfg: &GridConfig,
    side: Side,
) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::with_capacity(cfg.n_points);
    for t in cfg.points() {
        let v = phi.eval(t)?;
        if v == 0.0 {
            return Err(Error::Degenerate(format!(
                "{}({t}) = 0 at a positive argument",
                phi.label()
            )));
        }
        if !v.is_finite() {
            continue;
        }
        let d = phi.one_sided_derivative(t, side)?;
        let r = t * d / v;
        if r.is_finite() {
            out.push((t, r));
        }
    }
    if out.len() < MIN_VALID_SAMPLES {
        return Err(Error::InvalidGrid(format!(
            "only {} finite ratio samples for {}",
            out.len(),
            phi.label()
        )));
    }
    Ok(out)
}

/// Fit `r ≈ c + b/ln t` over one end decade and return the intercept, i.e.
/// the estimated limit of the ratio at that end. `None` when the decade is
/// too short, not monotone, or the fit extrapolates implausibly far.
fn end_limit(decade: &[(f64, f64)]) -> Option<f64> {
    if decade.len() < 8 {
        return None;
    }
    // 1/ln t must stay away from the singularity at t = 1.
    if decade.iter().any(|&(t, _)| t.ln().abs() < 1.0) {
        return None;
    }
    let mut increasing = true;
    let mut decreasing = true;
    for w in decade.windows(2) {
        let slack = 1e-9 * w[0].1.abs().max(1e-300);
        if w[1].1 > w[0].1 + slack {
            decreasing = false;
        }
        if w[1].1 < w[0].1 - slack {
            increasing = false;
        }
    }
    if !increasing && !decreasing {
        return None;
    }
    let xs: Vec<f64> = decade.iter().map(|&(t, _)| 1.0 / t.ln()).collect();
    let ys: Vec<f64> = decade.iter().map(|&(_, r)| r).collect();
    let (_, intercept) = ls_fit(&xs, &ys);
    let r_end = ys[ys.len() - 1];
    let variation = (ys[0] - r_end).abs() + 1e-12;
    // Reject fits that move the limit further than the decade itself moved.
    if (intercept - r_end).abs() > 10.0 * variation {
        return None;
    }
    Some(intercept)
}

/// Compute the upper and lower exponents of `phi` on the given grid, with
/// doubling and scaling verdicts.
pub fn compute_exponents(phi: &YoungFunction, cfg: &GridConfig) -> Result<ExponentReport> {
    cfg.validate()?;
    if !cfg.covers(1e-6, 1e6) {
        return Err(Error::InvalidGrid(
            "exponent grids must cover [1e-6, 1e6]".into(),
        ));
    }
    phi.require_finite()?;
    compute_exponents_side(phi, cfg, Side::Right)
}

/// Internal variant that lets tests compare the Φ'₊ and Φ'₋ scans.
pub(crate) fn compute_exponents_side(
    phi: &YoungFunction,
    cfg: &GridConfig,
    side: Side,
) -> Result<ExponentReport> {
    let rs = ratio_samples(phi, cfg, side)?;

    let mut grid_max = f64::NEG_INFINITY;
    let mut grid_min = f64::INFINITY;
    let mut arg_sup = rs[0].0;
    let mut arg_inf = rs[0].0;
    for &(t, r) in &rs {
        if r > grid_max {
            grid_max = r;
            arg_sup = t;
        }
        if r < grid_min {
            grid_min = r;
            arg_inf = t;
        }
    }

    let top = decade_slice(&rs, true);
    let bottom = decade_slice(&rs, false);
    let slope_top = loglog_slope(top);
    let slope_bottom = loglog_slope(bottom);
    // Ratio still climbing toward either end: the sup is not attained on any
    // finite grid.
    let divergent = slope_top > TREND_LIMIT || slope_bottom < -TREND_LIMIT;

    let fit_top = end_limit(top);
    let fit_bottom = end_limit(bottom);

    let mut q_phi = grid_min;
    for fit in [fit_top, fit_bottom].into_iter().flatten() {
        let fit = fit.max(1.0);
        if fit < q_phi {
            q_phi = fit;
            arg_inf = if Some(fit) == fit_top.map(|f| f.max(1.0)) {
                rs[rs.len() - 1].0
            } else {
                rs[0].0
            };
        }
    }

    let p_phi = if divergent {
        f64::INFINITY
    } else {
        let mut p = grid_max;
        for fit in [fit_top, fit_bottom].into_iter().flatten() {
            if fit > p {
                p = fit;
                arg_sup = if Some(fit) == fit_top {
                    rs[rs.len() - 1].0
                } else {
                    rs[0].0
                };
            }
        }
        p.max(q_phi)
    };

    let delta2 = check_delta2(phi, cfg)?;
    let lambda = if q_phi > 1.0 + EXPONENT_TOL {
        let scan = check_lambda(phi, cfg, q_phi)?;
        LambdaReport {
            satisfied: scan.satisfied,
            exponent: q_phi,
            worst_ratio: scan.worst_ratio,
        }
    } else {
        LambdaReport {
            satisfied: false,
            exponent: q_phi,
            worst_ratio: None,
        }
    };

    Ok(ExponentReport {
        p_phi,
        q_phi,
        arg_sup,
        arg_inf,
        delta2,
        lambda,
        grid_range: *cfg,
    })
}

/// Doubling condition scan: `C = sup Φ(2t)/Φ(t)`, satisfied when the bound is
/// finite and shows no growth trend on the top decade.
pub fn check_delta2(phi: &YoungFunction, cfg: &GridConfig) -> Result<Delta2Report> {
    cfg.validate()?;
    if let Some(a) = phi.finite_threshold() {
        if a <= 2.0 * cfg.t_max {
            return Err(Error::InfiniteValue(format!(
                "{} is infinite within the doubled grid range (threshold {a})",
                phi.label()
            )));
        }
    }
    let mut ratios: Vec<(f64, f64)> = Vec::with_capacity(cfg.n_points);
    let mut constant = f64::NEG_INFINITY;
    let mut unbounded = false;
    for t in cfg.points() {
        let lo = phi.eval(t)?;
        if lo == 0.0 {
            return Err(Error::Degenerate(format!(
                "{}({t}) = 0 at a positive argument",
                phi.label()
            )));
        }
        let hi = phi.eval(2.0 * t)?;
        if !lo.is_finite() {
            continue;
        }
        if !hi.is_finite() {
            // Φ(2t) overflows while Φ(t) is representable: the ratio is
            // unbounded at working precision.
            unbounded = true;
            continue;
        }
        let r = hi / lo;
        constant = constant.max(r);
        ratios.push((t, r));
    }
    if unbounded {
        constant = f64::INFINITY;
    }
    let trend_slope = loglog_slope(decade_slice(&ratios, true));
    Ok(Delta2Report {
        satisfied: constant.is_finite() && trend_slope < TREND_LIMIT,
        constant,
        trend_slope,
    })
}

/// Scaling condition scan at exponent `p`: `sup Φ(ct) / (c^p Φ(t))` over a
/// `(c, t)` grid with `c ∈ (0, 1]`; satisfied when the sup stays within
/// rounding of 1.
pub fn check_lambda(phi: &YoungFunction, cfg: &GridConfig, p: f64) -> Result<LambdaReport> {
    cfg.validate()?;
    if !(p > 1.0) {
        return Err(Error::Precondition(format!(
            "the scaling condition is defined for exponents p > 1, got p = {p}"
        )));
    }
    let ts = cfg.decimated(4096).points();
    let n_c = 64;
    let mut worst = f64::NEG_INFINITY;
    for ic in 0..n_c {
        // c log-spaced in [1e-3, 1], with the endpoint c = 1 included.
        let c = 10f64.powf(-3.0 * (1.0 - ic as f64 / (n_c - 1) as f64));
        let cp = c.powf(p);
        for &t in &ts {
            let denom = phi.eval(t)?;
            if denom == 0.0 {
                return Err(Error::Degenerate(format!(
                    "{}({t}) = 0 at a positive argument",
                    phi.label()
                )));
            }
            if !denom.is_finite() {
                continue;
            }
            let num = phi.eval(c * t)?;
            let r = num / (cp * denom);
            if r.is_finite() {
                worst = worst.max(r);
            }
        }
    }
    Ok(LambdaReport {
        satisfied: worst <= 1.0 + LAMBDA_RATIO_TOL,
        exponent: p,
        worst_ratio: Some(worst),
    })
}

/// Best constants witnessing `c·t^{p_Φ} ≤ Φ(t) ≤ C·t^{q_Φ}` near zero and
/// `c·t^{q_Φ} ≤ Φ(t) ≤ C·t^{p_Φ}` at infinity, on the report's grid.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SqueezingConstants {
    pub c_low_small: f64,
    pub c_up_small: f64,
    pub c_low_large: f64,
    pub c_up_large: f64,
}

pub fn check_squeezing(
    phi: &YoungFunction,
    report: &ExponentReport,
    r1: f64,
    r2: f64,
) -> Result<SqueezingConstants> {
    let (p, q) = (report.p_phi, report.q_phi);
    if !p.is_finite() {
        return Err(Error::Precondition(
            "squeezing constants need a finite upper exponent".into(),
        ));
    }
    let cfg = report.grid_range;
    if !(r1 >= cfg.t_min && r2 <= cfg.t_max && r1 > 0.0 && r2 > 0.0) {
        return Err(Error::Precondition(
            "r1, r2 must lie inside the report grid range".into(),
        ));
    }
    let mut small_p: Vec<(f64, f64)> = Vec::new(); // Φ(t)/t^p, t <= r1
    let mut small_q: Vec<(f64, f64)> = Vec::new(); // Φ(t)/t^q, t <= r1
    let mut large_p: Vec<(f64, f64)> = Vec::new();
    let mut large_q: Vec<(f64, f64)> = Vec::new();
    for t in cfg.points() {
        let v = phi.eval(t)?;
        if !v.is_finite() {
            continue;
        }
        if t <= r1 {
            small_p.push((t, v / t.powf(p)));
            small_q.push((t, v / t.powf(q)));
        }
        if t >= r2 {
            large_p.push((t, v / t.powf(p)));
            large_q.push((t, v / t.powf(q)));
        }
    }
    if small_p.len() < 8 || large_p.len() < 8 {
        return Err(Error::Precondition(
            "too few grid samples on a squeezing side".into(),
        ));
    }
    let min_of = |v: &[(f64, f64)]| v.iter().map(|&(_, y)| y).fold(f64::INFINITY, f64::min);
    let max_of = |v: &[(f64, f64)]| v.iter().map(|&(_, y)| y).fold(f64::NEG_INFINITY, f64::max);

    let out = SqueezingConstants {
        c_low_small: min_of(&small_p),
        c_up_small: max_of(&small_q),
        c_low_large: min_of(&large_q),
        c_up_large: max_of(&large_p),
    };

    // Trend guards: a constant attained at the outer grid end with a live
    // log-log slope is unbounded (or vanishing) in the limit.
    let bot_p = loglog_slope(decade_slice(&small_p, false));
    let bot_q = loglog_slope(decade_slice(&small_q, false));
    let top_p = loglog_slope(decade_slice(&large_p, true));
    let top_q = loglog_slope(decade_slice(&large_q, true));
    let mut violations: Vec<String> = Vec::new();
    if bot_p > TREND_LIMIT {
        violations.push(format!("Φ/t^p vanishes toward 0 (slope {bot_p:.3})"));
    }
    if bot_q < -TREND_LIMIT {
        violations.push(format!("Φ/t^q blows up toward 0 (slope {bot_q:.3})"));
    }
    if top_p > TREND_LIMIT {
        violations.push(format!("Φ/t^p blows up at infinity (slope {top_p:.3})"));
    }
    if top_q < -TREND_LIMIT {
        violations.push(format!("Φ/t^q vanishes at infinity (slope {top_q:.3})"));
    }
    let all = [
        out.c_low_small,
        out.c_up_small,
        out.c_low_large,
        out.c_up_large,
    ];
    if all.iter().any(|c| !(c.is_finite() && *c > 0.0)) {
        violations.push(format!("non-positive or non-finite constant: {all:?}"));
    }
    if !violations.is_empty() {
        return Err(Error::SqueezingViolation(violations.join("; ")));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    /// `max(sup Φ₁/Φ₂, sup Φ₂/Φ₁)` over the grid.
    pub constant: f64,
}

/// Two-sided comparison `C⁻¹ Φ₂ ≤ Φ₁ ≤ C Φ₂` on the grid; the verdict also
/// requires the ratio to show no growth trend at either grid end.
pub fn check_equivalence(
    phi1: &YoungFunction,
    phi2: &YoungFunction,
    cfg: &GridConfig,
) -> Result<EquivalenceReport> {
    cfg.validate()?;
    phi1.require_finite()?;
    phi2.require_finite()?;
    let mut ratios: Vec<(f64, f64)> = Vec::with_capacity(cfg.n_points);
    let mut constant = f64::NEG_INFINITY;
    for t in cfg.points() {
        let a = phi1.eval(t)?;
        let b = phi2.eval(t)?;
        if b == 0.0 || a == 0.0 {
            return Err(Error::Degenerate(format!(
                "ratio undefined at t = {t}: {} = {a}, {} = {b}",
                phi1.label(),
                phi2.label()
            )));
        }
        let r = a / b;
        constant = constant.max(r.max(1.0 / r));
        ratios.push((t, r));
    }
    let top = loglog_slope(decade_slice(&ratios, true));
    let bottom = loglog_slope(decade_slice(&ratios, false));
    Ok(EquivalenceReport {
        equivalent: constant.is_finite()
            && top.abs() < TREND_LIMIT
            && bottom.abs() < TREND_LIMIT,
        constant,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{library, make_builtin, BuiltinYoung};
    use super::*;

    fn default_cfg() -> GridConfig {
        GridConfig::exponent_default()
    }

    fn exponents(b: BuiltinYoung) -> ExponentReport {
        compute_exponents(&make_builtin(b).unwrap(), &default_cfg()).unwrap()
    }

    #[test]
    fn power_exponents_are_exact() {
        for &p in &[1.0, 1.5, 2.0, 3.0] {
            let rep = exponents(BuiltinYoung::Power(p));
            assert!((rep.p_phi - p).abs() < 1e-9, "p_phi({p}) = {}", rep.p_phi);
            assert!((rep.q_phi - p).abs() < 1e-9, "q_phi({p}) = {}", rep.q_phi);
        }
    }

    #[test]
    fn affine_has_exponent_one_exactly() {
        let rep = exponents(BuiltinYoung::Affine(2.0));
        assert_eq!(rep.p_phi, 1.0);
        assert_eq!(rep.q_phi, 1.0);
        assert!(!rep.lambda.satisfied);
        assert!(rep.delta2.satisfied);
    }

    #[test]
    fn counterexample_exponents() {
        let rep = exponents(BuiltinYoung::Counterexample);
        assert!(
            (rep.q_phi - 4.0 / 3.0).abs() <= 1e-3,
            "q_phi = {}",
            rep.q_phi
        );
        assert!((rep.p_phi - 2.0).abs() <= 1e-3, "p_phi = {}", rep.p_phi);
        assert!((rep.arg_inf - 2.0).abs() < 0.05, "arg_inf = {}", rep.arg_inf);
        assert!(rep.delta2.satisfied);
        assert!(rep.lambda.satisfied);
    }

    #[test]
    fn entropy_exponents() {
        let rep = exponents(BuiltinYoung::Entropy);
        assert!((rep.q_phi - 1.0).abs() <= 1e-3, "q_phi = {}", rep.q_phi);
        assert!((rep.p_phi - 2.0).abs() <= 1e-3, "p_phi = {}", rep.p_phi);
        assert!(rep.delta2.satisfied);
        assert!(!rep.lambda.satisfied);
    }

    #[test]
    fn exp_minus_one_diverges() {
        let rep = exponents(BuiltinYoung::ExpMinusOne);
        assert!(rep.p_phi.is_infinite());
        assert!((rep.q_phi - 1.0).abs() <= 1e-3, "q_phi = {}", rep.q_phi);
        assert!(!rep.delta2.satisfied);
    }

    #[test]
    fn left_and_right_scans_agree_on_library() {
        let cfg = GridConfig::new(1e-6, 1e6, 20_000, crate::grid::Spacing::Log).unwrap();
        for phi in library() {
            let right = compute_exponents_side(&phi, &cfg, Side::Right).unwrap();
            let left = compute_exponents_side(&phi, &cfg, Side::Left).unwrap();
            let close = |a: f64, b: f64| {
                (a.is_infinite() && b.is_infinite()) || (a - b).abs() <= 1e-6 * a.abs().max(1.0)
            };
            assert!(
                close(right.p_phi, left.p_phi) && close(right.q_phi, left.q_phi),
                "{}: right ({}, {}), left ({}, {})",
                phi.label(),
                right.p_phi,
                right.q_phi,
                left.p_phi,
                left.q_phi
            );
        }
    }

    #[test]
    fn delta2_constants() {
        let cfg = default_cfg();
        for &p in &[1.0, 2.0, 3.0] {
            let rep = check_delta2(&make_builtin(BuiltinYoung::Power(p)).unwrap(), &cfg).unwrap();
            assert!(rep.satisfied);
            assert!(
                (rep.constant - 2f64.powf(p)).abs() < 1e-9,
                "C = {}",
                rep.constant
            );
        }
        let ce = check_delta2(&make_builtin(BuiltinYoung::Counterexample).unwrap(), &cfg).unwrap();
        assert!(ce.satisfied);
        assert!((ce.constant - 4.0).abs() < 1e-9, "C = {}", ce.constant);
        let ex = check_delta2(&make_builtin(BuiltinYoung::ExpMinusOne).unwrap(), &cfg).unwrap();
        assert!(!ex.satisfied);
    }

    #[test]
    fn lambda_scans() {
        let cfg = default_cfg();
        let p2 = make_builtin(BuiltinYoung::Power(2.0)).unwrap();
        let r = check_lambda(&p2, &cfg, 2.0).unwrap();
        assert!(r.satisfied);
        assert!((r.worst_ratio.unwrap() - 1.0).abs() < 1e-9);

        let ce = make_builtin(BuiltinYoung::Counterexample).unwrap();
        assert!(check_lambda(&ce, &cfg, 4.0 / 3.0).unwrap().satisfied);
        // Above the lower exponent the scaling bound must fail.
        assert!(!check_lambda(&ce, &cfg, 1.36).unwrap().satisfied);

        let ent = make_builtin(BuiltinYoung::Entropy).unwrap();
        assert!(!check_lambda(&ent, &cfg, 1.1).unwrap().satisfied);
        assert!(matches!(
            check_lambda(&ent, &cfg, 0.9),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn squeezing_constants() {
        let cfg = default_cfg();
        let p2 = make_builtin(BuiltinYoung::Power(2.0)).unwrap();
        let rep = compute_exponents(&p2, &cfg).unwrap();
        let sq = check_squeezing(&p2, &rep, 1.0, 1.0).unwrap();
        for c in [sq.c_low_small, sq.c_up_small, sq.c_low_large, sq.c_up_large] {
            assert!((c - 1.0).abs() < 1e-9, "constant = {c}");
        }

        let ce = make_builtin(BuiltinYoung::Counterexample).unwrap();
        let rep = compute_exponents(&ce, &cfg).unwrap();
        let sq = check_squeezing(&ce, &rep, 1.0, 2.0).unwrap();
        for c in [sq.c_low_small, sq.c_up_small, sq.c_low_large, sq.c_up_large] {
            assert!(c.is_finite() && c > 0.0, "constant = {c}");
        }

        let ent = make_builtin(BuiltinYoung::Entropy).unwrap();
        let rep = compute_exponents(&ent, &cfg).unwrap();
        let sq = check_squeezing(&ent, &rep, 1.0, 2.0).unwrap();
        // Φ(t)/t^{q} on (0, 1] is essentially ln(1+t), bounded by ln 2.
        assert!(sq.c_up_small <= 2.0f64.ln() * (1.0 + 1e-6));
    }

    #[test]
    fn squeezing_detects_wrong_exponents() {
        let p2 = make_builtin(BuiltinYoung::Power(2.0)).unwrap();
        let cfg = default_cfg();
        let mut rep = compute_exponents(&p2, &cfg).unwrap();
        rep.p_phi = 1.0;
        rep.q_phi = 1.0;
        assert!(matches!(
            check_squeezing(&p2, &rep, 1.0, 1.0),
            Err(Error::SqueezingViolation(_))
        ));
    }

    #[test]
    fn equivalence_checks() {
        let cfg = GridConfig::new(1e-6, 1e6, 20_000, crate::grid::Spacing::Log).unwrap();
        let p2 = make_builtin(BuiltinYoung::Power(2.0)).unwrap();
        let same = check_equivalence(&p2, &p2, &cfg).unwrap();
        assert!(same.equivalent);
        assert!((same.constant - 1.0).abs() < 1e-12);

        let scaled = YoungFunction::from_pieces(
            "3t^2",
            vec![super::super::Piece {
                start: 0.0,
                expr: super::super::PieceExpr::Power {
                    coeff: 3.0,
                    exponent: 2.0,
                },
            }],
        )
        .unwrap();
        let r = check_equivalence(&p2, &scaled, &cfg).unwrap();
        assert!(r.equivalent);
        assert!((r.constant - 3.0).abs() < 1e-9);

        let p3 = make_builtin(BuiltinYoung::Power(3.0)).unwrap();
        assert!(!check_equivalence(&p2, &p3, &cfg).unwrap().equivalent);
    }

    #[test]
    fn infinite_functions_rejected() {
        let phi = YoungFunction::from_pieces(
            "capped",
            vec![
                super::super::Piece {
                    start: 0.0,
                    expr: super::super::PieceExpr::Power {
                        coeff: 1.0,
                        exponent: 1.0,
                    },
                },
                super::super::Piece {
                    start: 1.0,
                    expr: super::super::PieceExpr::Infinite,
                },
            ],
        )
        .unwrap();
        assert!(matches!(
            compute_exponents(&phi, &default_cfg()),
            Err(Error::InfiniteValue(_))
        ));
    }

    #[test]
    fn small_grid_rejected() {
        let p2 = make_builtin(BuiltinYoung::Power(2.0)).unwrap();
        let cfg = GridConfig::new(1e-3, 1e3, 1000, crate::grid::Spacing::Log).unwrap();
        assert!(matches!(
            compute_exponents(&p2, &cfg),
            Err(Error::InvalidGrid(_))
        ));
    }
}
