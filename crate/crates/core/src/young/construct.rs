//! Equivalent-function constructions: mollified smoothing and the
//! exponential-convolution strict-convexification.

use crate::error::{Error, Result};
use crate::grid::GridConfig;

use super::{check_delta2, compute_exponents, YoungFunction};

/// Midpoint quadrature of the standard bump `exp(−1/(s(1−s)))` on [0, 1],
/// normalized so the discrete weights sum to exactly 1. With weights summing
/// to 1 and Φ non-decreasing, the discrete mollification stays ≤ Φ pointwise.
pub(super) fn bump_weights(nodes: usize) -> Vec<(f64, f64)> {
    let n = nodes.max(4);
    let h = 1.0 / n as f64;
    let mut pts: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let s = (i as f64 + 0.5) * h;
            (s, (-1.0 / (s * (1.0 - s))).exp())
        })
        .collect();
    let total: f64 = pts.iter().map(|&(_, w)| w).sum();
    for p in &mut pts {
        p.1 /= total;
    }
    pts
}

/// Gauss–Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre recurrence.
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let n = n.max(2);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Chebyshev-style initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((x, w));
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    out
}

/// Beyond this the `e^{−s}` tail is below the double-precision floor for any
/// value the head can produce.
const EXP_TAIL_CUTOFF: f64 = 745.0;

/// `∫_0^t Φ(t − s) e^{−s} ds` by panelled Gauss–Legendre quadrature.
///
/// Panels are split where `t − s` crosses a breakpoint of Φ (the integrand
/// has a kink there) and geometrically in `s` so the decaying weight is
/// resolved; each panel uses `nodes` Gauss–Legendre points.
pub(super) fn exp_conv_eval(base: &YoungFunction, nodes: usize, t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let s_hi = t.min(EXP_TAIL_CUTOFF);
    let mut cuts: Vec<f64> = vec![0.0, s_hi];
    for bp in base.breakpoints() {
        let s = t - bp;
        if s > 0.0 && s < s_hi {
            cuts.push(s);
        }
    }
    // Geometric refinement toward s = 0 where the integrand is largest.
    let mut g = 1.0_f64;
    while g < s_hi {
        cuts.push(g);
        g *= 2.0;
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-300);

    let gl = gauss_legendre(nodes);
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut panel = 0.0;
        for &(x, wt) in &gl {
            let s = mid + half * x;
            panel += wt * base.eval_inner(t - s) * (-s).exp();
        }
        total += panel * half;
    }
    total
}

/// Mollified regularization `Ψ(t) = ∫_0^1 Φ(t − s t / 2) φ(s) ds` with φ the
/// normalized standard bump on [0, 1].
///
/// Requires the doubling condition: then `Ψ(t) ≥ Φ(t/2) ≥ Φ(t)/C`, so Ψ is
/// equivalent to Φ with the doubling constant, and `Ψ ≤ Φ` pointwise.
pub fn smooth_equivalent(phi: &YoungFunction, mollifier_nodes: usize) -> Result<YoungFunction> {
    phi.require_finite()?;
    let d2 = check_delta2(phi, &GridConfig::exponent_default())?;
    if !d2.satisfied {
        return Err(Error::Precondition(format!(
            "{} does not satisfy the doubling condition (ratio bound {})",
            phi.label(),
            d2.constant
        )));
    }
    Ok(YoungFunction::mollified(phi.clone(), mollifier_nodes))
}

/// The exponential convolution `Ψ(t) = ∫_0^t Φ(t − s) e^{−s} ds` as a
/// quadrature-defined Young function. `Ψ ≤ Φ` pointwise and Ψ picks up
/// strict convexity from any region where Φ is strictly convex.
pub fn exp_convolved(phi: &YoungFunction, quad_nodes: usize) -> Result<YoungFunction> {
    phi.require_finite()?;
    Ok(YoungFunction::exp_convolved_kind(phi.clone(), quad_nodes))
}

/// Strictly convex equivalent `Φ₁ = Φ + Ψ` with Ψ the exponential
/// convolution. Requires a lower exponent above 1; then `Φ ≤ Φ₁ ≤ 2Φ`.
pub fn strictly_convex_equivalent(phi: &YoungFunction, quad_nodes: usize) -> Result<YoungFunction> {
    phi.require_finite()?;
    let report = compute_exponents(phi, &GridConfig::exponent_default())?;
    if !(report.q_phi > 1.0 + 1e-3) {
        return Err(Error::Precondition(format!(
            "{} has lower exponent {:.6} <= 1; no strictly convex equivalent via this construction",
            phi.label(),
            report.q_phi
        )));
    }
    let psi = exp_convolved(phi, quad_nodes)?;
    Ok(YoungFunction::sum(
        format!("convexified({})", phi.label()),
        vec![phi.clone(), psi],
    ))
}
