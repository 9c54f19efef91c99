//! Seeded test-function families. Generation is deterministic: the same
//! configuration and seed produce bit-identical sample arrays, and the
//! random draws do not depend on the grid resolution, so a family can be
//! regenerated on a refined grid for trend studies.

use num_complex::Complex64;
use orlab_core::error::{Error, Result};
use orlab_core::gridfn::GridFunction;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    /// Unit-peak Gaussians over a width sweep.
    Gaussian,
    /// Frequency-modulated Gaussians over a frequency sweep.
    ModulatedGaussian,
    /// Narrow peaks with shrinking width.
    Peaked,
    /// Smoothed indicators of growing plateaus.
    Plateau,
    /// Seeded random trigonometric polynomials.
    RandomTrig,
}

impl FamilyKind {
    pub fn all() -> Vec<FamilyKind> {
        vec![
            FamilyKind::Gaussian,
            FamilyKind::ModulatedGaussian,
            FamilyKind::Peaked,
            FamilyKind::Plateau,
            FamilyKind::RandomTrig,
        ]
    }

    fn tag(&self) -> &'static str {
        match self {
            FamilyKind::Gaussian => "gaussian",
            FamilyKind::ModulatedGaussian => "modulated-gaussian",
            FamilyKind::Peaked => "peaked",
            FamilyKind::Plateau => "plateau",
            FamilyKind::RandomTrig => "random-trig",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyConfig {
    pub kinds: Vec<FamilyKind>,
    /// Members per kind.
    pub count: usize,
    pub seed: u64,
}

impl Default for FamilyConfig {
    fn default() -> Self {
        FamilyConfig {
            kinds: FamilyKind::all(),
            count: 2,
            seed: 7,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub label: String,
    pub f: GridFunction,
}

fn logspace(lo: f64, hi: f64, count: usize, i: usize) -> f64 {
    if count <= 1 {
        return lo;
    }
    let s = i as f64 / (count - 1) as f64;
    (lo.ln() + s * (hi.ln() - lo.ln())).exp()
}

fn radial(dim: usize, x: f64, y: f64) -> f64 {
    if dim == 1 {
        x * x
    } else {
        x * x + y * y
    }
}

fn build(
    dim: usize,
    extent: f64,
    n: usize,
    f: impl Fn(f64, f64) -> Complex64,
) -> Result<GridFunction> {
    match dim {
        1 => GridFunction::from_fn_1d(extent, n, |x| f(x, 0.0)),
        2 => GridFunction::from_fn_2d(extent, n, f),
        d => Err(Error::Precondition(format!("families support dim 1 or 2, got {d}"))),
    }
}

/// Generate the family on the given grid. Members are deterministic in
/// `(cfg, dim, extent, n)` and reproduce bit-exactly for a fixed seed.
pub fn generate_family(
    cfg: &FamilyConfig,
    dim: usize,
    extent: f64,
    n: usize,
) -> Result<Vec<FamilyMember>> {
    if cfg.count == 0 {
        return Err(Error::Precondition("family count must be at least 1".into()));
    }
    let mut out = Vec::new();
    for (ki, kind) in cfg.kinds.iter().enumerate() {
        for i in 0..cfg.count {
            let (label, f) = match kind {
                FamilyKind::Gaussian => {
                    let sigma = logspace(0.5, 2.0, cfg.count, i);
                    let f = build(dim, extent, n, |x, y| {
                        Complex64::new((-radial(dim, x, y) / (2.0 * sigma * sigma)).exp(), 0.0)
                    })?;
                    (format!("{}#{i}[sigma={sigma:.6}]", kind.tag()), f)
                }
                FamilyKind::ModulatedGaussian => {
                    let freq = 2.0 * (i + 1) as f64;
                    let f = build(dim, extent, n, |x, y| {
                        let env = (-radial(dim, x, y) / 2.0).exp();
                        env * Complex64::new(0.0, freq * x).exp()
                    })?;
                    (format!("{}#{i}[freq={freq:.6}]", kind.tag()), f)
                }
                FamilyKind::Peaked => {
                    let sigma = 0.4 / (1 << i.min(8)) as f64;
                    let f = build(dim, extent, n, |x, y| {
                        Complex64::new((-radial(dim, x, y) / (2.0 * sigma * sigma)).exp(), 0.0)
                    })?;
                    (format!("{}#{i}[sigma={sigma:.6}]", kind.tag()), f)
                }
                FamilyKind::Plateau => {
                    let w = 1.0 + i as f64;
                    let s = 0.25;
                    let f = build(dim, extent, n, |x, y| {
                        let r = radial(dim, x, y).sqrt();
                        Complex64::new(0.5 * (((w - r) / s).tanh() + 1.0), 0.0)
                    })?;
                    (format!("{}#{i}[width={w:.6}]", kind.tag()), f)
                }
                FamilyKind::RandomTrig => {
                    let mut rng =
                        ChaCha8Rng::seed_from_u64(cfg.seed ^ ((ki as u64) << 32) ^ i as u64);
                    let modes = 8usize;
                    let coeffs: Vec<(f64, f64, f64)> = (0..modes)
                        .map(|k| {
                            let re: f64 = rng.random_range(-1.0..1.0);
                            let im: f64 = rng.random_range(-1.0..1.0);
                            let decay = 1.0 / ((k + 1) * (k + 1)) as f64;
                            (re * decay, im * decay, (k + 1) as f64)
                        })
                        .collect();
                    let base = std::f64::consts::PI / extent;
                    let f = build(dim, extent, n, |x, y| {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for &(re, im, k) in &coeffs {
                            let phase = k * base * (x + if dim == 2 { 0.5 * y } else { 0.0 });
                            acc += Complex64::new(re, im) * Complex64::new(0.0, phase).exp();
                        }
                        acc
                    })?;
                    // Normalize the peak deterministically.
                    let peak = f.max_abs();
                    let f = f.map(|v| v / peak);
                    (format!("{}#{i}[seed={}]", kind.tag(), cfg.seed), f)
                }
            };
            out.push(FamilyMember { label, f });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use orlab_core::norms::luxemburg_norm;
    use orlab_core::spectral;
    use orlab_core::young::{library, make_builtin, BuiltinYoung};

    #[test]
    fn gaussian_peaks_at_one_in_the_center_cell() {
        let cfg = FamilyConfig {
            kinds: vec![FamilyKind::Gaussian],
            count: 1,
            seed: 0,
        };
        let fam = generate_family(&cfg, 1, 8.0, 256).unwrap();
        let f = &fam[0].f;
        assert_eq!(f.values()[128], num_complex::Complex64::new(1.0, 0.0));
        assert!((f.max_abs() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn same_seed_gives_identical_arrays() {
        let cfg = FamilyConfig {
            kinds: FamilyKind::all(),
            count: 3,
            seed: 42,
        };
        let a = generate_family(&cfg, 1, 8.0, 128).unwrap();
        let b = generate_family(&cfg, 1, 8.0, 128).unwrap();
        assert_eq!(a.len(), b.len());
        for (u, v) in a.iter().zip(&b) {
            assert_eq!(u.label, v.label);
            assert_eq!(u.f.values(), v.f.values());
        }
    }

    #[test]
    fn modulated_gaussian_peaks_at_nearest_lattice_frequency() {
        let cfg = FamilyConfig {
            kinds: vec![FamilyKind::ModulatedGaussian],
            count: 2,
            seed: 0,
        };
        let (extent, n) = (8.0, 256usize);
        let fam = generate_family(&cfg, 1, extent, n).unwrap();
        for (i, member) in fam.iter().enumerate() {
            let freq = 2.0 * (i + 1) as f64;
            let fhat = spectral::forward(&member.f);
            let argmax = (0..n)
                .max_by(|&a, &b| fhat[a].norm().partial_cmp(&fhat[b].norm()).unwrap())
                .unwrap();
            let nearest = (0..n)
                .min_by(|&a, &b| {
                    let da = (spectral::frequency(a, n, extent) - freq).abs();
                    let db = (spectral::frequency(b, n, extent) - freq).abs();
                    da.partial_cmp(&db).unwrap()
                })
                .unwrap();
            assert_eq!(argmax, nearest, "member {i}");
        }
    }

    #[test]
    fn members_have_finite_positive_orlicz_norms() {
        let cfg = FamilyConfig::default();
        let fam = generate_family(&cfg, 1, 8.0, 128).unwrap();
        let strict: Vec<_> = library()
            .into_iter()
            .filter(|p| {
                matches!(p.label(), "power(1.5)" | "power(2)" | "power(3)" | "counterexample")
            })
            .collect();
        assert!(!strict.is_empty());
        for member in &fam {
            for phi in &strict {
                let r = luxemburg_norm(&member.f, phi).unwrap();
                assert!(
                    r.value.is_finite() && r.value > 0.0,
                    "{} under {}",
                    member.label,
                    phi.label()
                );
            }
        }
        // Also check a two-dimensional family.
        let fam2 = generate_family(&cfg, 2, 4.0, 32).unwrap();
        let p2 = make_builtin(BuiltinYoung::Power(2.0)).unwrap();
        for member in &fam2 {
            let r = luxemburg_norm(&member.f, &p2).unwrap();
            assert!(r.value.is_finite() && r.value > 0.0);
        }
    }
}
