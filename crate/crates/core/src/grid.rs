//! Scalar sampling grids and the least-squares trend machinery used by the
//! finite/divergent classifiers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slope threshold of a log-log regression above which a ratio is treated
/// as divergent rather than bounded.
pub const TREND_LIMIT: f64 = 0.01;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Log,
    Linear,
}

/// A one-dimensional sampling grid on the positive half line.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct GridConfig {
    pub t_min: f64,
    pub t_max: f64,
    pub n_points: usize,
    pub spacing: Spacing,
}

impl GridConfig {
    pub fn new(t_min: f64, t_max: f64, n_points: usize, spacing: Spacing) -> Result<Self> {
        let cfg = GridConfig {
            t_min,
            t_max,
            n_points,
            spacing,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Default grid for exponent extrema: log-spaced, `1e-6 ..= 1e6`, 1e5 points.
    pub fn exponent_default() -> Self {
        GridConfig {
            t_min: 1e-6,
            t_max: 1e6,
            n_points: 100_000,
            spacing: Spacing::Log,
        }
    }

    /// Default probe grid for symbol and phase conditions.
    pub fn probe_default() -> Self {
        GridConfig {
            t_min: 1e-2,
            t_max: 1e3,
            n_points: 64,
            spacing: Spacing::Log,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_min.is_finite() && self.t_max.is_finite()) || self.t_min >= self.t_max {
            return Err(Error::InvalidGrid(format!(
                "need t_min < t_max, got [{}, {}]",
                self.t_min, self.t_max
            )));
        }
        if self.n_points < 2 {
            return Err(Error::InvalidGrid("need at least 2 points".into()));
        }
        if self.spacing == Spacing::Log && self.t_min <= 0.0 {
            return Err(Error::InvalidGrid("log spacing needs t_min > 0".into()));
        }
        Ok(())
    }

    pub fn covers(&self, lo: f64, hi: f64) -> bool {
        self.t_min <= lo && self.t_max >= hi
    }

    pub fn points(&self) -> Vec<f64> {
        let n = self.n_points;
        let mut out = Vec::with_capacity(n);
        match self.spacing {
            Spacing::Log => {
                let (a, b) = (self.t_min.ln(), self.t_max.ln());
                for i in 0..n {
                    let s = i as f64 / (n - 1) as f64;
                    out.push((a + s * (b - a)).exp());
                }
            }
            Spacing::Linear => {
                for i in 0..n {
                    let s = i as f64 / (n - 1) as f64;
                    out.push(self.t_min + s * (self.t_max - self.t_min));
                }
            }
        }
        // Pin the endpoints so callers can rely on them exactly.
        out[0] = self.t_min;
        out[n - 1] = self.t_max;
        out
    }

    /// Same range, at most `max_points` samples.
    pub fn decimated(&self, max_points: usize) -> Self {
        GridConfig {
            n_points: self.n_points.min(max_points.max(2)),
            ..*self
        }
    }
}

/// Least-squares slope of `y` against `x`. Returns 0 for degenerate data.
pub fn ls_slope(xs: &[f64], ys: &[f64]) -> f64 {
    ls_fit(xs, ys).0
}

/// Least-squares `(slope, intercept)` of `y` against `x`.
pub fn ls_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len().min(ys.len());
    if n < 2 {
        return (0.0, ys.first().copied().unwrap_or(0.0));
    }
    let nf = n as f64;
    let mx = xs[..n].iter().sum::<f64>() / nf;
    let my = ys[..n].iter().sum::<f64>() / nf;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for i in 0..n {
        let dx = xs[i] - mx;
        sxx += dx * dx;
        sxy += dx * (ys[i] - my);
    }
    if sxx == 0.0 {
        return (0.0, my);
    }
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Log-log slope of positive samples `(t, v)`; non-positive values are skipped.
pub fn loglog_slope(samples: &[(f64, f64)]) -> f64 {
    let mut xs = Vec::with_capacity(samples.len());
    let mut ys = Vec::with_capacity(samples.len());
    for &(t, v) in samples {
        if t > 0.0 && v > 0.0 && t.is_finite() && v.is_finite() {
            xs.push(t.ln());
            ys.push(v.ln());
        }
    }
    ls_slope(&xs, &ys)
}

/// The sub-slice of `samples` (sorted by `t`) lying in the top or bottom
/// decade of the sampled range.
pub fn decade_slice(samples: &[(f64, f64)], top: bool) -> &[(f64, f64)] {
    if samples.is_empty() {
        return samples;
    }
    if top {
        let t_hi = samples[samples.len() - 1].0;
        let cut = t_hi / 10.0;
        let start = samples.partition_point(|&(t, _)| t < cut);
        &samples[start..]
    } else {
        let t_lo = samples[0].0;
        let cut = t_lo * 10.0;
        let end = samples.partition_point(|&(t, _)| t <= cut);
        &samples[..end]
    }
}

/// Deterministic low-discrepancy sequence on `[0, 1)` (golden-ratio Kronecker).
pub fn kronecker(index: usize) -> f64 {
    const PHI_INV: f64 = 0.618_033_988_749_894_9;
    (index as f64 * PHI_INV).fract()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_grid_endpoints_exact() {
        let cfg = GridConfig::new(1e-6, 1e6, 11, Spacing::Log).unwrap();
        let pts = cfg.points();
        assert_eq!(pts[0], 1e-6);
        assert_eq!(pts[10], 1e6);
        assert!((pts[5] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn slope_of_power_law() {
        let cfg = GridConfig::new(1.0, 100.0, 50, Spacing::Log).unwrap();
        let samples: Vec<(f64, f64)> = cfg.points().iter().map(|&t| (t, 3.0 * t * t)).collect();
        assert!((loglog_slope(&samples) - 2.0).abs() < 1e-10);
    }

    #[test]
    fn decade_selection() {
        let cfg = GridConfig::new(1e-3, 1e3, 61, Spacing::Log).unwrap();
        let samples: Vec<(f64, f64)> = cfg.points().iter().map(|&t| (t, 1.0)).collect();
        let top = decade_slice(&samples, true);
        assert!(top.iter().all(|&(t, _)| t >= 1e2 * (1.0 - 1e-12)));
        let bottom = decade_slice(&samples, false);
        assert!(bottom.iter().all(|&(t, _)| t <= 1e-2 * (1.0 + 1e-12)));
    }

    #[test]
    fn invalid_grids_rejected() {
        assert!(GridConfig::new(1.0, 1.0, 10, Spacing::Log).is_err());
        assert!(GridConfig::new(-1.0, 1.0, 10, Spacing::Log).is_err());
        assert!(GridConfig::new(0.1, 1.0, 1, Spacing::Linear).is_err());
    }
}
