//! Symbol condition functionals: the Mihlin derivative-decay sup, the
//! Hörmander annulus integrals, and the Hörmander-class / SG-class
//! seminorms.
//!
//! Probe sups are lower bounds of the true seminorms; they are paired with
//! a log-log growth slope over the probe radii so callers can classify
//! finite versus divergent (same 0.01 slope rule as the doubling scan).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{decade_slice, loglog_slope, GridConfig, TREND_LIMIT};
use crate::symbols::SymbolDescriptor;

/// All multi-indices over `dim` axes with total order at most `max_total`.
pub fn multi_indices(dim: usize, max_total: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    match dim {
        1 => {
            for a in 0..=max_total {
                out.push(vec![a]);
            }
        }
        2 => {
            for total in 0..=max_total {
                for a in 0..=total {
                    out.push(vec![total - a, a]);
                }
            }
        }
        _ => {}
    }
    out
}

fn directions(dim: usize, count: usize) -> Vec<Vec<f64>> {
    if dim == 1 {
        vec![vec![1.0], vec![-1.0]]
    } else {
        (0..count)
            .map(|i| {
                let th = 2.0 * std::f64::consts::PI * i as f64 / count as f64;
                vec![th.cos(), th.sin()]
            })
            .collect()
    }
}

fn jbracket(v: &[f64]) -> f64 {
    (1.0 + v.iter().map(|c| c * c).sum::<f64>()).sqrt()
}

/// Mihlin's derivative-order accounting: orders up to `⌊d/2⌋ + 1`.
pub fn mihlin_max_order(dim: usize) -> usize {
    dim / 2 + 1
}

#[derive(Clone, Debug, Serialize)]
pub struct MihlinReport {
    /// `sup |ξ|^{|α|} |∂^α a(ξ)|` per multi-index.
    pub per_alpha: Vec<(Vec<usize>, f64)>,
    pub max: f64,
    /// Any per-α probe series still growing at the outer radii.
    pub divergent: bool,
}

/// `sup_{ξ≠0} |ξ|^{|α|} |∂^α a(ξ)|` over a log-radial probe grid, for every
/// `|α| ≤ ⌊d/2⌋ + 1`.
pub fn mihlin_functional(
    a: &SymbolDescriptor,
    dim: usize,
    probe: &GridConfig,
) -> Result<MihlinReport> {
    probe.validate()?;
    if a.dim() != dim {
        return Err(Error::Precondition(format!(
            "symbol has dim {}, requested {dim}",
            a.dim()
        )));
    }
    let radii = probe.points();
    let dirs = directions(dim, 64);
    let x0 = vec![0.0; dim];
    let mut per_alpha = Vec::new();
    let mut divergent = false;
    for alpha in multi_indices(dim, mihlin_max_order(dim)) {
        let order: usize = alpha.iter().sum();
        let mut sup = 0.0f64;
        let mut by_radius: Vec<(f64, f64)> = Vec::with_capacity(radii.len());
        for &r in &radii {
            let mut radial_max = 0.0f64;
            for dir in &dirs {
                let xi: Vec<f64> = dir.iter().map(|&c| c * r).collect();
                let d = a.derivative_at(&vec![0; dim], &alpha, &x0, &xi)?;
                let w = r.powi(order as i32) * d.norm();
                radial_max = radial_max.max(w);
            }
            sup = sup.max(radial_max);
            by_radius.push((r, radial_max));
        }
        if loglog_slope(decade_slice(&by_radius, true)) > TREND_LIMIT {
            divergent = true;
        }
        per_alpha.push((alpha, sup));
    }
    let max = per_alpha.iter().map(|&(_, v)| v).fold(0.0, f64::max);
    Ok(MihlinReport {
        per_alpha,
        max,
        divergent,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HormanderTerm {
    pub alpha: Vec<usize>,
    pub radius: f64,
    pub value: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct HormanderReport {
    pub table: Vec<HormanderTerm>,
    pub max: f64,
}

/// Dyadic radii `2^k`, `k ∈ [-10, 10]`.
pub fn dyadic_radii() -> Vec<f64> {
    (-10..=10).map(|k| 2f64.powi(k)).collect()
}

/// Annulus condition `R^{−d+2|α|} ∫_{R<|ξ|<2R} |∂^α a|² dξ`, maximized over
/// the multi-indices and the given radii.
///
/// In d = 1 the two annulus components ±(R, 2R) are integrated separately
/// (10⁴ midpoint nodes each) and the larger one is reported, so symbols with
/// even modulus score the one-sided value. In d = 2 the full annulus is
/// integrated with a 256×256 polar product rule.
pub fn hormander_functional(
    a: &SymbolDescriptor,
    dim: usize,
    r_set: &[f64],
) -> Result<HormanderReport> {
    if a.dim() != dim {
        return Err(Error::Precondition(format!(
            "symbol has dim {}, requested {dim}",
            a.dim()
        )));
    }
    if r_set.is_empty() || r_set.iter().any(|&r| !(r > 0.0)) {
        return Err(Error::Precondition("radii must be positive".into()));
    }
    let x0 = vec![0.0; dim];
    let mut table = Vec::new();
    let mut max = 0.0f64;
    for alpha in multi_indices(dim, mihlin_max_order(dim)) {
        let order: usize = alpha.iter().sum();
        for &r in r_set {
            let scale = r.powi(2 * order as i32 - dim as i32);
            let value = match dim {
                1 => {
                    let n = 10_000usize;
                    let h = r / n as f64;
                    let mut best = 0.0f64;
                    for sign in [1.0, -1.0] {
                        let mut acc = 0.0;
                        for i in 0..n {
                            let xi = sign * (r + (i as f64 + 0.5) * h);
                            let d = a.derivative_at(&[0], &alpha, &x0, &[xi])?;
                            acc += d.norm_sqr();
                        }
                        best = best.max(acc * h);
                    }
                    scale * best
                }
                _ => {
                    let (nr, nt) = (256usize, 256usize);
                    let hr = r / nr as f64;
                    let ht = 2.0 * std::f64::consts::PI / nt as f64;
                    let mut acc = 0.0;
                    for i in 0..nr {
                        let rho = r + (i as f64 + 0.5) * hr;
                        for j in 0..nt {
                            let th = (j as f64 + 0.5) * ht;
                            let xi = [rho * th.cos(), rho * th.sin()];
                            let d = a.derivative_at(&[0, 0], &alpha, &x0, &xi)?;
                            acc += d.norm_sqr() * rho;
                        }
                    }
                    scale * acc * hr * ht
                }
            };
            max = max.max(value);
            table.push(HormanderTerm {
                alpha: alpha.clone(),
                radius: r,
                value,
            });
        }
    }
    Ok(HormanderReport { table, max })
}

#[derive(Clone, Debug, Serialize)]
pub struct SeminormTerm {
    pub x_order: Vec<usize>,
    pub xi_order: Vec<usize>,
    pub sup: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeminormReport {
    /// Sum over the index pairs of the per-pair probe sups.
    pub value: f64,
    pub divergent: bool,
    /// Largest growth slope seen over the probe radii.
    pub max_growth_slope: f64,
    pub terms: Vec<SeminormTerm>,
}

struct WeightSpec {
    /// weight(x, ξ, |α_x|, |α_ξ|)
    weight: Box<dyn Fn(&[f64], &[f64], usize, usize) -> f64>,
}

fn seminorm_scan(
    a: &SymbolDescriptor,
    n_order: usize,
    spec: WeightSpec,
) -> Result<SeminormReport> {
    let dim = a.dim();
    let (radii_n, x_dirs, xi_dirs) = if dim == 1 { (48, 2, 2) } else { (24, 8, 64) };
    let probe = GridConfig {
        n_points: radii_n,
        ..GridConfig::probe_default()
    };
    let radii = probe.points();
    let xds = directions(dim, x_dirs);
    let xids = directions(dim, xi_dirs);
    let mut xs: Vec<Vec<f64>> = vec![vec![0.0; dim]];
    for &r in &radii {
        for d in &xds {
            xs.push(d.iter().map(|&c| c * r).collect());
        }
    }

    let mut terms = Vec::new();
    let mut value = 0.0;
    let mut max_slope = f64::NEG_INFINITY;
    let mut divergent = false;
    for x_order in multi_indices(dim, n_order) {
        for xi_order in multi_indices(dim, n_order) {
            let ox: usize = x_order.iter().sum();
            let oxi: usize = xi_order.iter().sum();
            let mut sup = 0.0f64;
            let mut by_xi_radius: Vec<(f64, f64)> = Vec::with_capacity(radii.len());
            let mut by_x_radius: Vec<f64> = vec![0.0; radii.len()];
            for &r in radii.iter() {
                let mut radial = 0.0f64;
                for xid in &xids {
                    let xi: Vec<f64> = xid.iter().map(|&c| c * r).collect();
                    for (xj, x) in xs.iter().enumerate() {
                        let d = a.derivative_at(&x_order, &xi_order, x, &xi)?;
                        let w = (spec.weight)(x, &xi, ox, oxi) * d.norm();
                        radial = radial.max(w);
                        if xj > 0 {
                            let x_radius_idx = (xj - 1) / x_dirs.max(1);
                            by_x_radius[x_radius_idx] = by_x_radius[x_radius_idx].max(w);
                        }
                    }
                }
                sup = sup.max(radial);
                by_xi_radius.push((r, radial));
            }
            let xi_slope = loglog_slope(decade_slice(&by_xi_radius, true));
            let x_series: Vec<(f64, f64)> = radii
                .iter()
                .copied()
                .zip(by_x_radius.iter().copied())
                .collect();
            let x_slope = loglog_slope(decade_slice(&x_series, true));
            let slope = xi_slope.max(x_slope);
            max_slope = max_slope.max(slope);
            if slope > TREND_LIMIT {
                divergent = true;
            }
            value += sup;
            terms.push(SeminormTerm {
                x_order: x_order.clone(),
                xi_order,
                sup,
            });
        }
    }
    Ok(SeminormReport {
        value,
        divergent,
        max_growth_slope: max_slope,
        terms,
    })
}

/// Hörmander-class seminorm: sum over `|α|, |β| ≤ N` of
/// `sup ⟨ξ⟩^{−r+ρ|α|−δ|β|} |D_ξ^α D_x^β a|` (α on ξ, β on x).
pub fn hormander_class_seminorm(
    a: &SymbolDescriptor,
    r: f64,
    rho: f64,
    delta: f64,
    n_order: usize,
) -> Result<SeminormReport> {
    if !(0.0 <= delta && delta <= rho && rho <= 1.0 && delta < 1.0) {
        return Err(Error::Precondition(format!(
            "need 0 <= delta <= rho <= 1 and delta < 1, got rho = {rho}, delta = {delta}"
        )));
    }
    seminorm_scan(
        a,
        n_order,
        WeightSpec {
            weight: Box::new(move |_x, xi, ox, oxi| {
                jbracket(xi).powf(-r + rho * oxi as f64 - delta * ox as f64)
            }),
        },
    )
}

/// SG-class seminorm: sum over `|α|, |β| ≤ N` of
/// `sup ⟨x⟩^{−m+|α|} ⟨ξ⟩^{−μ+|β|} |D_x^α D_ξ^β a|`.
pub fn sg_seminorm(a: &SymbolDescriptor, m: f64, mu: f64, n_order: usize) -> Result<SeminormReport> {
    seminorm_scan(
        a,
        n_order,
        WeightSpec {
            weight: Box::new(move |x, xi, ox, oxi| {
                jbracket(x).powf(-m + ox as f64) * jbracket(xi).powf(-mu + oxi as f64)
            }),
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::build_symbol;
    use num_complex::Complex64;

    #[test]
    fn multi_index_enumeration() {
        assert_eq!(multi_indices(1, 2), vec![vec![0], vec![1], vec![2]]);
        let d2 = multi_indices(2, 1);
        assert_eq!(d2, vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn mihlin_identity_and_sgn() {
        let probe = GridConfig::probe_default();
        let id = build_symbol("identity", &[], 1, None).unwrap();
        let rep = mihlin_functional(&id, 1, &probe).unwrap();
        assert!((rep.per_alpha[0].1 - 1.0).abs() < 1e-12);
        assert_eq!(rep.per_alpha[1].1, 0.0);
        assert!(!rep.divergent);

        let sgn = build_symbol("sgn", &[], 1, None).unwrap();
        let rep = mihlin_functional(&sgn, 1, &probe).unwrap();
        assert!((rep.per_alpha[0].1 - 1.0).abs() < 1e-12);
        assert_eq!(rep.per_alpha[1].1, 0.0);
    }

    #[test]
    fn mihlin_unimodular_power() {
        let probe = GridConfig::probe_default();
        let gamma = 1.0;
        let a = build_symbol("unimodular-power", &[gamma], 1, None).unwrap();
        let rep = mihlin_functional(&a, 1, &probe).unwrap();
        // |ξ| · |iγ |ξ|^{iγ−1}| = γ.
        assert!((rep.per_alpha[1].1 - gamma).abs() < 1e-9);
        assert!(!rep.divergent);
    }

    #[test]
    fn mihlin_flags_growth() {
        // a(ξ) = <ξ> is unbounded: the α = 0 term grows with the probe radius.
        let a = build_symbol("sg-power", &[0.0, 1.0], 1, None).unwrap();
        let rep = mihlin_functional(&a, 1, &GridConfig::probe_default()).unwrap();
        assert!(rep.divergent);
    }

    #[test]
    fn hormander_unimodular_value() {
        let gamma = 1.7;
        let a = build_symbol("unimodular-power", &[gamma], 1, None).unwrap();
        let rep = hormander_functional(&a, 1, &dyadic_radii()).unwrap();
        let expected = gamma * gamma / 2.0;
        for term in rep.table.iter().filter(|t| t.alpha == vec![1]) {
            assert!(
                (term.value - expected).abs() < 1e-4,
                "R = {}: {} vs {expected}",
                term.radius,
                term.value
            );
        }
    }

    #[test]
    fn hormander_identity_constant() {
        let a = build_symbol("identity", &[], 1, None).unwrap();
        let rep = hormander_functional(&a, 1, &dyadic_radii()).unwrap();
        for term in rep.table.iter().filter(|t| t.alpha == vec![0]) {
            // One-sided annulus (R, 2R) has measure R: value = R^{-1}·R = 1.
            assert!((term.value - 1.0).abs() < 1e-10);
        }
        for term in rep.table.iter().filter(|t| t.alpha == vec![1]) {
            assert!(term.value.abs() < 1e-12);
        }
    }

    #[test]
    fn hormander_identity_2d() {
        let a = build_symbol("identity", &[], 2, None).unwrap();
        let rep = hormander_functional(&a, 2, &[0.5, 1.0, 4.0]).unwrap();
        let area = 3.0 * std::f64::consts::PI; // |{R < |ξ| < 2R}| / R²
        for term in rep.table.iter().filter(|t| t.alpha == vec![0, 0]) {
            assert!(
                (term.value - area).abs() < 1e-6 * area,
                "R = {}: {}",
                term.radius,
                term.value
            );
        }
    }

    #[test]
    fn mihlin_dominates_hormander_in_1d() {
        // ∫_{R}^{2R} |∂^α a|² ≤ (sup |ξ|^{|α|} |∂^α a|)² ∫_R^{2R} ξ^{-2|α|},
        // and the scaled one-sided integral is bounded by the Mihlin term².
        let probe = GridConfig::probe_default();
        let radii: Vec<f64> = (-3..=3).map(|k| 2f64.powi(k)).collect();
        for (name, params) in [
            ("identity", vec![]),
            ("sgn", vec![]),
            ("riesz", vec![0.0]),
            ("unimodular-power", vec![0.8]),
        ] {
            let a = build_symbol(name, &params, 1, None).unwrap();
            let mih = mihlin_functional(&a, 1, &probe).unwrap();
            let hor = hormander_functional(&a, 1, &radii).unwrap();
            for term in &hor.table {
                let m = mih
                    .per_alpha
                    .iter()
                    .find(|(al, _)| *al == term.alpha)
                    .unwrap()
                    .1;
                assert!(
                    term.value <= m * m * (1.0 + 1e-6) + 1e-12,
                    "{name} α = {:?} R = {}: {} vs {}",
                    term.alpha,
                    term.radius,
                    term.value,
                    m * m
                );
            }
        }
    }

    #[test]
    fn class_seminorm_identity() {
        let a = build_symbol("identity", &[], 1, None).unwrap();
        let rep = hormander_class_seminorm(&a, 0.0, 1.0, 0.0, 0).unwrap();
        assert!((rep.value - 1.0).abs() < 1e-12);
        assert!(!rep.divergent);
    }

    #[test]
    fn class_seminorm_detects_wrong_order() {
        let r = 0.8;
        let a = build_symbol("sg-power", &[0.0, r], 1, None).unwrap();
        let at_r = hormander_class_seminorm(&a, r, 1.0, 0.0, 1).unwrap();
        assert!(!at_r.divergent, "slope {}", at_r.max_growth_slope);
        let below = hormander_class_seminorm(&a, r - 1.0, 1.0, 0.0, 1).unwrap();
        assert!(below.divergent);
    }

    #[test]
    fn class_seminorm_smooth_decaying_symbol() {
        use crate::symbols::SymbolDescriptor;
        let a = SymbolDescriptor::from_xxi_fn("sin-decay", 1, |x, xi| {
            Complex64::new(x[0].sin() / (1.0 + xi[0] * xi[0]).sqrt(), 0.0)
        });
        let rep = hormander_class_seminorm(&a, -1.0, 1.0, 0.0, 1).unwrap();
        assert!(!rep.divergent, "slope {}", rep.max_growth_slope);
        assert!(rep.value.is_finite());
    }

    #[test]
    fn class_seminorm_parameter_gate() {
        let a = build_symbol("identity", &[], 1, None).unwrap();
        assert!(hormander_class_seminorm(&a, 0.0, 0.5, 0.7, 0).is_err());
        assert!(hormander_class_seminorm(&a, 0.0, 1.0, 1.0, 0).is_err());
    }

    #[test]
    fn sg_seminorm_identity_and_orders() {
        let id = build_symbol("identity", &[], 1, None).unwrap();
        let rep = sg_seminorm(&id, 0.0, 0.0, 0).unwrap();
        assert!((rep.value - 1.0).abs() < 1e-12);

        let a = build_symbol("sg-power", &[1.0, -1.0], 1, None).unwrap();
        let at_orders = sg_seminorm(&a, 1.0, -1.0, 1).unwrap();
        assert!(!at_orders.divergent, "slope {}", at_orders.max_growth_slope);
        let wrong = sg_seminorm(&a, 0.0, -1.0, 1).unwrap();
        assert!(wrong.divergent);
    }

    #[test]
    fn sg_seminorm_ignores_region_below_cutoff() {
        let plain = build_symbol("sg-power", &[1.0, -1.0], 1, None).unwrap();
        let cut = build_symbol("sg-power", &[1.0, -1.0], 1, Some(0.5)).unwrap();
        let a = sg_seminorm(&plain, 1.0, -1.0, 1).unwrap();
        let b = sg_seminorm(&cut, 1.0, -1.0, 1).unwrap();
        // The weighted sups live at large |ξ|; zeroing below the cutoff does
        // not change them.
        assert!((a.value - b.value).abs() <= 1e-9 * a.value);
    }
}
