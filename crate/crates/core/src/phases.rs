//! Phase functions `φ(x, ξ)` for the oscillatory-integral operators:
//! real-valued, positively 1-homogeneous in ξ, with a non-degenerate mixed
//! Hessian and bracket-compatible gradient growth. `validate_phase` measures
//! those properties on probe grids and reports them; operator constructors
//! gate on the report.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::GridConfig;

pub type PhaseValueFn = Arc<dyn Fn(&[f64], &[f64]) -> f64 + Send + Sync>;
pub type PhaseGradFn = Arc<dyn Fn(&[f64], &[f64]) -> Vec<f64> + Send + Sync>;
/// Mixed Hessian `∂_x ∂_ξ φ`, row-major d×d.
pub type PhaseHessFn = Arc<dyn Fn(&[f64], &[f64]) -> Vec<f64> + Send + Sync>;

#[derive(Clone)]
pub struct PhaseDescriptor {
    name: String,
    dim: usize,
    value: PhaseValueFn,
    grad_x: PhaseGradFn,
    grad_xi: PhaseGradFn,
    mixed_hessian: PhaseHessFn,
}

impl fmt::Debug for PhaseDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PhaseDescriptor")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .finish()
    }
}

impl PhaseDescriptor {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        value: impl Fn(&[f64], &[f64]) -> f64 + Send + Sync + 'static,
        grad_x: impl Fn(&[f64], &[f64]) -> Vec<f64> + Send + Sync + 'static,
        grad_xi: impl Fn(&[f64], &[f64]) -> Vec<f64> + Send + Sync + 'static,
        mixed_hessian: impl Fn(&[f64], &[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        PhaseDescriptor {
            name: name.into(),
            dim,
            value: Arc::new(value),
            grad_x: Arc::new(grad_x),
            grad_xi: Arc::new(grad_xi),
            mixed_hessian: Arc::new(mixed_hessian),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn value(&self, x: &[f64], xi: &[f64]) -> f64 {
        (self.value)(x, xi)
    }

    pub fn grad_x(&self, x: &[f64], xi: &[f64]) -> Vec<f64> {
        (self.grad_x)(x, xi)
    }

    pub fn grad_xi(&self, x: &[f64], xi: &[f64]) -> Vec<f64> {
        (self.grad_xi)(x, xi)
    }

    pub fn mixed_hessian(&self, x: &[f64], xi: &[f64]) -> Vec<f64> {
        (self.mixed_hessian)(x, xi)
    }
}

fn det(m: &[f64], d: usize) -> f64 {
    match d {
        1 => m[0],
        2 => m[0] * m[3] - m[1] * m[2],
        _ => f64::NAN,
    }
}

fn jbracket(v: &[f64]) -> f64 {
    (1.0 + v.iter().map(|c| c * c).sum::<f64>()).sqrt()
}

/// Measured phase-admissibility quantities.
#[derive(Clone, Debug, Serialize)]
pub struct PhaseReport {
    /// `min |det ∂_x∂_ξ φ|` over probes.
    pub det_lower_bound: f64,
    /// Worst relative deviation from 1-homogeneity in ξ at τ ∈ {2, 1/2}.
    pub homogeneity_residual: f64,
    /// Range of `⟨φ'_ξ⟩ / ⟨x⟩` over probes.
    pub grad_xi_over_x: (f64, f64),
    /// Range of `⟨φ'_x⟩ / ⟨ξ⟩` over probes.
    pub grad_x_over_xi: (f64, f64),
    /// Sup of `|∂_x^α φ| / (⟨x⟩^{1−|α|} |ξ|)` for |α| = 1, 2.
    pub x_growth_sups: Vec<(usize, f64)>,
}

const DET_FLOOR: f64 = 1e-3;
const HOMOGENEITY_TOL: f64 = 1e-6;
const GROWTH_RANGE: (f64, f64) = (0.1, 10.0);
const X_GROWTH_CAP: f64 = 100.0;

impl PhaseReport {
    /// Threshold gate used by the operator constructors.
    pub fn is_admissible(&self) -> bool {
        self.det_lower_bound >= DET_FLOOR
            && self.homogeneity_residual <= HOMOGENEITY_TOL
            && self.grad_xi_over_x.0 >= GROWTH_RANGE.0
            && self.grad_xi_over_x.1 <= GROWTH_RANGE.1
            && self.grad_x_over_xi.0 >= GROWTH_RANGE.0
            && self.grad_x_over_xi.1 <= GROWTH_RANGE.1
            && self
                .x_growth_sups
                .iter()
                .all(|&(_, s)| s.is_finite() && s <= X_GROWTH_CAP)
    }

    pub fn rejection_reason(&self) -> Option<String> {
        if self.is_admissible() {
            return None;
        }
        Some(format!(
            "det >= {DET_FLOOR}? {:.3e}; homogeneity residual {:.3e}; \
             <phi'_xi>/<x> in {:?}; <phi'_x>/<xi> in {:?}; x-growth {:?}",
            self.det_lower_bound,
            self.homogeneity_residual,
            self.grad_xi_over_x,
            self.grad_x_over_xi,
            self.x_growth_sups
        ))
    }
}

/// Probe the phase-function conditions on a log-radial grid. Report only;
/// callers decide on thresholds (see [`PhaseReport::is_admissible`]).
pub fn validate_phase(phase: &PhaseDescriptor, probe: &GridConfig) -> Result<PhaseReport> {
    probe.validate()?;
    let d = phase.dim();
    if d != 1 && d != 2 {
        return Err(Error::Precondition("phases support dim 1 or 2".into()));
    }
    let radii = probe.decimated(32).points();
    let dirs: Vec<Vec<f64>> = if d == 1 {
        vec![vec![1.0], vec![-1.0]]
    } else {
        (0..16)
            .map(|i| {
                let th = 2.0 * std::f64::consts::PI * i as f64 / 16.0;
                vec![th.cos(), th.sin()]
            })
            .collect()
    };
    let mut xs: Vec<Vec<f64>> = vec![vec![0.0; d]];
    let mut xis: Vec<Vec<f64>> = Vec::new();
    for &r in &radii {
        for dir in &dirs {
            let p: Vec<f64> = dir.iter().map(|&c| c * r).collect();
            xs.push(p.clone());
            xis.push(p);
        }
    }

    let mut det_lo = f64::INFINITY;
    let mut resid: f64 = 0.0;
    let mut gxi_range = (f64::INFINITY, f64::NEG_INFINITY);
    let mut gx_range = (f64::INFINITY, f64::NEG_INFINITY);
    let mut grow1: f64 = 0.0;
    let mut grow2: f64 = 0.0;

    for x in &xs {
        for xi in &xis {
            let h = phase.mixed_hessian(x, xi);
            det_lo = det_lo.min(det(&h, d).abs());

            let v = phase.value(x, xi);
            for tau in [2.0, 0.5] {
                let scaled: Vec<f64> = xi.iter().map(|&c| tau * c).collect();
                let vs = phase.value(x, &scaled);
                let denom = (tau * v).abs().max(1e-12);
                resid = resid.max((vs - tau * v).abs() / denom);
            }

            let gxi = phase.grad_xi(x, xi);
            let rx = jbracket(&gxi) / jbracket(x);
            gxi_range.0 = gxi_range.0.min(rx);
            gxi_range.1 = gxi_range.1.max(rx);

            let gx = phase.grad_x(x, xi);
            let rxi = jbracket(&gx) / jbracket(xi);
            gx_range.0 = gx_range.0.min(rxi);
            gx_range.1 = gx_range.1.max(rxi);

            // First- and second-order x-growth against <x>^{1-|alpha|} |xi|.
            let xi_norm = xi.iter().map(|c| c * c).sum::<f64>().sqrt();
            let gx_norm = gx.iter().map(|c| c * c).sum::<f64>().sqrt();
            grow1 = grow1.max(gx_norm / xi_norm);
            // d^2_x phi by differencing the x-gradient.
            let mut hess_norm: f64 = 0.0;
            for axis in 0..d {
                let step = x[axis].abs().max(1.0) * 6e-6;
                let mut hi = x.clone();
                hi[axis] += step;
                let mut lo = x.clone();
                lo[axis] -= step;
                let ghi = phase.grad_x(&hi, xi);
                let glo = phase.grad_x(&lo, xi);
                for c in 0..d {
                    hess_norm = hess_norm.max(((ghi[c] - glo[c]) / (2.0 * step)).abs());
                }
            }
            grow2 = grow2.max(hess_norm * jbracket(x) / xi_norm);
        }
    }

    Ok(PhaseReport {
        det_lower_bound: det_lo,
        homogeneity_residual: resid,
        grad_xi_over_x: gxi_range,
        grad_x_over_xi: gx_range,
        x_growth_sups: vec![(1, grow1), (2, grow2)],
    })
}

/// One catalog entry: a named phase family.
pub struct PhaseEntry {
    pub name: &'static str,
    pub summary: &'static str,
    builder: fn(&[f64], usize) -> Result<PhaseDescriptor>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(&u, &v)| u * v).sum()
}

fn build_flat(params: &[f64], dim: usize) -> Result<PhaseDescriptor> {
    if !params.is_empty() {
        return Err(Error::Precondition("flat-phase takes no parameters".into()));
    }
    Ok(PhaseDescriptor::new(
        "flat-phase",
        dim,
        |x, xi| dot(x, xi),
        |_x, xi| xi.to_vec(),
        |x, _xi| x.to_vec(),
        move |_x, _xi| {
            let mut id = vec![0.0; dim * dim];
            for k in 0..dim {
                id[k * dim + k] = 1.0;
            }
            id
        },
    ))
}

fn build_translation(params: &[f64], dim: usize) -> Result<PhaseDescriptor> {
    if params.len() != 1 {
        return Err(Error::Precondition("translation-phase takes [c]".into()));
    }
    if dim != 1 {
        return Err(Error::Precondition("translation-phase is one-dimensional".into()));
    }
    let c = params[0];
    Ok(PhaseDescriptor::new(
        format!("translation-phase[{c}]"),
        1,
        move |x, xi| x[0] * xi[0] + c * xi[0].abs(),
        |_x, xi| vec![xi[0]],
        move |x, xi| vec![x[0] + c * xi[0].signum()],
        |_x, _xi| vec![1.0],
    ))
}

fn build_perturbed(params: &[f64], dim: usize) -> Result<PhaseDescriptor> {
    if params.len() != 1 {
        return Err(Error::Precondition("perturbed-phase takes [c]".into()));
    }
    if dim != 1 {
        return Err(Error::Precondition("perturbed-phase is one-dimensional".into()));
    }
    let c = params[0];
    Ok(PhaseDescriptor::new(
        format!("perturbed-phase[{c}]"),
        1,
        move |x, xi| x[0] * xi[0] + c * jbracket(x) * xi[0].abs(),
        move |x, xi| vec![xi[0] + c * (x[0] / jbracket(x)) * xi[0].abs()],
        move |x, xi| vec![x[0] + c * jbracket(x) * xi[0].signum()],
        move |x, xi| vec![1.0 + c * (x[0] / jbracket(x)) * xi[0].signum()],
    ))
}

pub static PHASE_CATALOG: &[PhaseEntry] = &[
    PhaseEntry {
        name: "flat-phase",
        summary: "x . xi",
        builder: build_flat,
    },
    PhaseEntry {
        name: "translation-phase",
        summary: "x xi + c |xi|; params: [c]",
        builder: build_translation,
    },
    PhaseEntry {
        name: "perturbed-phase",
        summary: "x xi + c <x> |xi|; params: [c]",
        builder: build_perturbed,
    },
];

pub fn build_phase(name: &str, params: &[f64], dim: usize) -> Result<PhaseDescriptor> {
    let entry = PHASE_CATALOG
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownCatalogEntry(format!("phase '{name}'")))?;
    (entry.builder)(params, dim)
}

pub fn phase_names() -> Vec<&'static str> {
    PHASE_CATALOG.iter().map(|e| e.name).collect()
}
