//! Discretized operator families on the periodic grid: Fourier multipliers
//! `a(D)`, pseudo-differential operators in any matrix quantization,
//! Fourier integral operators `∫ e^{iφ(x,ξ)} a(x,ξ) f̂(ξ) dξ`, and the
//! quantization transfer acting on phase-space-sampled symbols.
//!
//! Every variant sits behind the [`GridOperator`] trait and can be built by
//! name at runtime through [`build_operator`].

use std::io::{Read, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::GridConfig;
use crate::gridfn::GridFunction;
use crate::phases::{validate_phase, PhaseDescriptor};
use crate::spectral;
use crate::symbols::SymbolDescriptor;

/// Quadrature cap for the double-sum quantization.
const PSDO_GENERAL_MAX_N: usize = 512;
/// Per-x frequency sums stay tractable up to this grid size.
const FIO_MAX_N: usize = 1024;
const PSDO_KN_2D_MAX_N: usize = 128;

/// A linear operator acting on grid functions.
pub trait GridOperator: Send + Sync {
    fn label(&self) -> String;
    fn apply(&self, f: &GridFunction) -> Result<GridFunction>;
}

/// `a(D) f = F⁻¹ [a(ξ) F f]` on the lattice frequencies. A symbol value
/// undefined at the origin is read as 0.
pub fn apply_multiplier(a: &SymbolDescriptor, f: &GridFunction) -> Result<GridFunction> {
    if !a.is_x_independent() {
        return Err(Error::Precondition(
            "multipliers must be frequency-only symbols".into(),
        ));
    }
    if a.dim() != f.dim() {
        return Err(Error::Precondition(format!(
            "symbol dim {} vs grid dim {}",
            a.dim(),
            f.dim()
        )));
    }
    let n = f.n();
    let mut fhat = spectral::forward(f);
    match f.dim() {
        1 => {
            for (k, v) in fhat.iter_mut().enumerate() {
                let xi = [spectral::frequency(k, n, f.extent())];
                *v *= a.multiplier_value(&[], &xi)?;
            }
        }
        _ => {
            for k1 in 0..n {
                for k2 in 0..n {
                    let xi = [
                        spectral::frequency(k1, n, f.extent()),
                        spectral::frequency(k2, n, f.extent()),
                    ];
                    fhat[k1 * n + k2] *= a.multiplier_value(&[], &xi)?;
                }
            }
        }
    }
    spectral::inverse(fhat, f.dim(), f.extent(), n)
}

/// Kohn–Nirenberg application: per grid point,
/// `(2π)^{−d} Σ_ξ a(x, ξ) f̂(ξ) e^{i x·ξ} Δξ` with `f̂` the DFT-based
/// transform. Reduces to [`apply_multiplier`] for frequency-only symbols.
pub fn apply_psdo_kn(a: &SymbolDescriptor, f: &GridFunction) -> Result<GridFunction> {
    if a.dim() != f.dim() {
        return Err(Error::Precondition(format!(
            "symbol dim {} vs grid dim {}",
            a.dim(),
            f.dim()
        )));
    }
    let n = f.n();
    let dim = f.dim();
    if dim == 2 && n > PSDO_KN_2D_MAX_N {
        return Err(Error::ResourceLimit(format!(
            "2-d quantization sums are capped at n = {PSDO_KN_2D_MAX_N}, got {n}"
        )));
    }
    let extent = f.extent();
    let fhat = spectral::forward(f);
    let dxi = std::f64::consts::PI / extent;
    // e^{i x_j ξ_k} on the lattice is (−1)^k ω^{jk} with ω the n-th root.
    let roots: Vec<Complex64> = (0..n)
        .map(|m| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * m as f64 / n as f64))
        .collect();
    let parity = |k: usize| if k % 2 == 0 { 1.0 } else { -1.0 };

    match dim {
        1 => {
            let scale = dxi / (2.0 * std::f64::consts::PI);
            let mut out = Vec::with_capacity(n);
            for j in 0..n {
                let x = [f.coord(j)];
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, &fh) in fhat.iter().enumerate() {
                    let xi = [spectral::frequency(k, n, extent)];
                    let av = a.multiplier_value(&x, &xi)?;
                    if av.norm_sqr() == 0.0 {
                        continue;
                    }
                    acc += av * fh * parity(k) * roots[(j * k) % n];
                }
                out.push(acc * scale);
            }
            GridFunction::new(1, extent, n, out)
        }
        _ => {
            let scale = (dxi / (2.0 * std::f64::consts::PI)).powi(2);
            let mut out = Vec::with_capacity(n * n);
            for j1 in 0..n {
                for j2 in 0..n {
                    let x = [f.coord(j1), f.coord(j2)];
                    let mut acc = Complex64::new(0.0, 0.0);
                    for k1 in 0..n {
                        for k2 in 0..n {
                            let xi = [
                                spectral::frequency(k1, n, extent),
                                spectral::frequency(k2, n, extent),
                            ];
                            let av = a.multiplier_value(&x, &xi)?;
                            if av.norm_sqr() == 0.0 {
                                continue;
                            }
                            acc += av
                                * fhat[k1 * n + k2]
                                * (parity(k1) * parity(k2))
                                * roots[(j1 * k1 + j2 * k2) % n];
                        }
                    }
                    out.push(acc * scale);
                }
            }
            GridFunction::new(2, extent, n, out)
        }
    }
}

/// Real d×d quantization parameter.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuantizationMatrix {
    dim: usize,
    /// Row-major entries.
    entries: Vec<f64>,
}

impl QuantizationMatrix {
    pub fn new(dim: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::Precondition(format!(
                "need {dim}×{dim} entries, got {}",
                entries.len()
            )));
        }
        Ok(QuantizationMatrix { dim, entries })
    }

    pub fn scalar(tau: f64) -> Self {
        QuantizationMatrix {
            dim: 1,
            entries: vec![tau],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn det(&self) -> f64 {
        match self.dim {
            1 => self.entries[0],
            2 => self.entries[0] * self.entries[3] - self.entries[1] * self.entries[2],
            _ => f64::NAN,
        }
    }
}

/// General-quantization application by direct double Riemann sum over
/// `(y, ξ)`, frequencies truncated to the Nyquist band:
/// `(2π)^{−1} ΣΣ a(x − A(x−y), ξ) f(y) e^{i(x−y)ξ} Δy Δξ`. One-dimensional,
/// `n ≤ 512`.
pub fn apply_psdo_general(
    a: &SymbolDescriptor,
    quantization: &QuantizationMatrix,
    f: &GridFunction,
) -> Result<GridFunction> {
    if f.dim() != 1 || quantization.dim() != 1 || a.dim() != 1 {
        return Err(Error::Precondition(
            "the double-quadrature quantization is one-dimensional".into(),
        ));
    }
    let n = f.n();
    if n > PSDO_GENERAL_MAX_N {
        return Err(Error::ResourceLimit(format!(
            "double-quadrature quantization capped at n = {PSDO_GENERAL_MAX_N}, got {n}"
        )));
    }
    let tau = quantization.entries()[0];
    let extent = f.extent();
    let dx = f.step();
    let dxi = std::f64::consts::PI / extent;
    let scale = dx * dxi / (2.0 * std::f64::consts::PI);
    let roots: Vec<Complex64> = (0..n)
        .map(|m| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * m as f64 / n as f64))
        .collect();

    let values = f.values();
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let xj = f.coord(j);
        let mut acc = Complex64::new(0.0, 0.0);
        for (l, &fy) in values.iter().enumerate() {
            if fy.norm_sqr() == 0.0 {
                continue;
            }
            let yl = f.coord(l);
            let xa = [xj - tau * (xj - yl)];
            // e^{i (x_j − y_l) ξ_k} = ω^{(j−l)·sk mod n}
            let dj = j as i64 - l as i64;
            let mut inner = Complex64::new(0.0, 0.0);
            for k in 0..n {
                let sk = spectral::signed_index(k, n);
                let xi = [dxi * sk as f64];
                let av = a.multiplier_value(&xa, &xi)?;
                if av.norm_sqr() == 0.0 {
                    continue;
                }
                inner += av * roots[(dj * sk).rem_euclid(n as i64) as usize];
            }
            acc += inner * fy;
        }
        out.push(acc * scale);
    }
    GridFunction::new(1, extent, n, out)
}

/// Fourier integral operator
/// `(2π)^{−1} Σ_{|ξ| ≥ ε} e^{iφ(x,ξ)} a(x,ξ) f̂(ξ) Δξ` per grid point.
/// The amplitude must carry a frequency cutoff and the phase must pass its
/// admissibility gates.
pub fn apply_fio(
    a: &SymbolDescriptor,
    phase: &PhaseDescriptor,
    f: &GridFunction,
) -> Result<GridFunction> {
    if f.dim() != 1 || a.dim() != 1 || phase.dim() != 1 {
        return Err(Error::Precondition(
            "oscillatory-integral application is one-dimensional".into(),
        ));
    }
    let n = f.n();
    if n > FIO_MAX_N {
        return Err(Error::ResourceLimit(format!(
            "oscillatory-integral application capped at n = {FIO_MAX_N}, got {n}"
        )));
    }
    let eps = a.support_cutoff().ok_or_else(|| {
        Error::Precondition("the amplitude must vanish near ξ = 0 (set a support cutoff)".into())
    })?;
    let report = validate_phase(phase, &GridConfig::probe_default())?;
    if let Some(reason) = report.rejection_reason() {
        return Err(Error::PhaseRejected(reason));
    }
    let extent = f.extent();
    let dxi = std::f64::consts::PI / extent;
    let scale = dxi / (2.0 * std::f64::consts::PI);
    let fhat = spectral::forward(f);
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let x = [f.coord(j)];
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &fh) in fhat.iter().enumerate() {
            let xi = [spectral::frequency(k, n, extent)];
            if xi[0].abs() < eps {
                continue;
            }
            let av = a.multiplier_value(&x, &xi)?;
            if av.norm_sqr() == 0.0 {
                continue;
            }
            acc += Complex64::from_polar(1.0, phase.value(&x, &xi)) * av * fh;
        }
        out.push(acc * scale);
    }
    GridFunction::new(1, extent, n, out)
}

/// A symbol sampled on the periodic phase-space lattice
/// `[−Lx, Lx) × [−Lξ, Lξ)`, `n` points per axis (x-axis slow, row-major).
#[derive(Clone, Debug)]
pub struct SampledSymbol {
    pub x_extent: f64,
    pub xi_extent: f64,
    pub n: usize,
    pub values: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct SampledHeader {
    x_extent: f64,
    xi_extent: f64,
    n: usize,
}

impl SampledSymbol {
    pub fn new(x_extent: f64, xi_extent: f64, n: usize, values: Vec<Complex64>) -> Result<Self> {
        if n < 2 || n % 2 != 0 {
            return Err(Error::Precondition(format!("n must be even and >= 2, got {n}")));
        }
        if values.len() != n * n {
            return Err(Error::Precondition(format!(
                "expected {} samples, got {}",
                n * n,
                values.len()
            )));
        }
        Ok(SampledSymbol {
            x_extent,
            xi_extent,
            n,
            values,
        })
    }

    pub fn from_fn(
        x_extent: f64,
        xi_extent: f64,
        n: usize,
        f: impl Fn(f64, f64) -> Complex64,
    ) -> Result<Self> {
        let dx = 2.0 * x_extent / n as f64;
        let dxi = 2.0 * xi_extent / n as f64;
        let mut values = Vec::with_capacity(n * n);
        for i in 0..n {
            let x = -x_extent + i as f64 * dx;
            for k in 0..n {
                let xi = -xi_extent + k as f64 * dxi;
                values.push(f(x, xi));
            }
        }
        SampledSymbol::new(x_extent, xi_extent, n, values)
    }

    /// Sample a symbol descriptor on the lattice, applying the multiplier
    /// origin rule.
    pub fn from_symbol(
        a: &SymbolDescriptor,
        x_extent: f64,
        xi_extent: f64,
        n: usize,
    ) -> Result<Self> {
        if a.dim() != 1 {
            return Err(Error::Precondition("phase-space sampling is one-dimensional".into()));
        }
        let dx = 2.0 * x_extent / n as f64;
        let dxi = 2.0 * xi_extent / n as f64;
        let mut values = Vec::with_capacity(n * n);
        for i in 0..n {
            let x = [-x_extent + i as f64 * dx];
            for k in 0..n {
                let xi = [-xi_extent + k as f64 * dxi];
                values.push(a.multiplier_value(&x, &xi)?);
            }
        }
        SampledSymbol::new(x_extent, xi_extent, n, values)
    }

    pub fn max_abs_diff(&self, other: &SampledSymbol) -> Result<f64> {
        if self.n != other.n
            || self.x_extent != other.x_extent
            || self.xi_extent != other.xi_extent
        {
            return Err(Error::Precondition("phase-space lattice mismatch".into()));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&u, &v)| (u - v).norm())
            .fold(0.0, f64::max))
    }

    pub fn norm_l2(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Band-limited interpolation onto a lattice refined by `factor` along
    /// the x-axis, as a callable symbol. Queries must land on refined
    /// lattice points (the quantization quadratures only produce those for
    /// τ ∈ {0, ±1/2, 1, ...}).
    pub fn to_descriptor(&self, factor: usize) -> Result<SymbolDescriptor> {
        if factor == 0 {
            return Err(Error::Precondition("upsample factor must be positive".into()));
        }
        let n = self.n;
        let mut spectrum = self.values.clone();
        spectral::forward_2d_general(&mut spectrum, n, (self.x_extent, self.xi_extent));
        let fine = spectral::inverse_2d_upsampled_axis0(
            &spectrum,
            n,
            (self.x_extent, self.xi_extent),
            factor,
        );
        let m = factor * n;
        let dx = 2.0 * self.x_extent / m as f64;
        let dxi = 2.0 * self.xi_extent / n as f64;
        let (x_extent, xi_extent) = (self.x_extent, self.xi_extent);
        Ok(SymbolDescriptor::from_xxi_fn(
            "sampled",
            1,
            move |x, xi| {
                let fi = (x[0] + x_extent) / dx;
                let fk = (xi[0] + xi_extent) / dxi;
                let i = fi.round();
                let k = fk.round();
                if (fi - i).abs() > 1e-6 || (fk - k).abs() > 1e-6 {
                    return Complex64::new(f64::NAN, f64::NAN);
                }
                let i = (i as i64).rem_euclid(m as i64) as usize;
                let k = (k as i64).rem_euclid(n as i64) as usize;
                fine[i * n + k]
            },
        ))
    }

    pub fn write_to(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut out = Vec::new();
        self.write(&mut out)?;
        std::fs::write(path, out)?;
        Ok(())
    }

    pub fn write(&self, w: &mut impl Write) -> Result<()> {
        let header = SampledHeader {
            x_extent: self.x_extent,
            xi_extent: self.xi_extent,
            n: self.n,
        };
        let mut line = serde_json::to_string(&header)
            .map_err(|e| Error::Serialization(e.to_string()))?;
        line.push('\n');
        w.write_all(line.as_bytes())?;
        let mut buf = Vec::with_capacity(self.values.len() * 16);
        for v in &self.values {
            buf.extend_from_slice(&v.re.to_le_bytes());
            buf.extend_from_slice(&v.im.to_le_bytes());
        }
        w.write_all(&buf)?;
        Ok(())
    }

    pub fn read_from(path: impl AsRef<Path>) -> Result<Self> {
        let bytes = std::fs::read(path)?;
        Self::read(&mut bytes.as_slice())
    }

    pub fn read(r: &mut impl Read) -> Result<Self> {
        let mut bytes = Vec::new();
        r.read_to_end(&mut bytes)?;
        let nl = bytes
            .iter()
            .position(|&b| b == b'\n')
            .ok_or_else(|| Error::Serialization("missing header line".into()))?;
        let header: SampledHeader = serde_json::from_slice(&bytes[..nl])
            .map_err(|e| Error::Serialization(format!("bad header: {e}")))?;
        let payload = &bytes[nl + 1..];
        if payload.len() != header.n * header.n * 16 {
            return Err(Error::Serialization("payload size mismatch".into()));
        }
        let values = payload
            .chunks_exact(16)
            .map(|c| {
                Complex64::new(
                    f64::from_le_bytes(c[0..8].try_into().unwrap()),
                    f64::from_le_bytes(c[8..16].try_into().unwrap()),
                )
            })
            .collect();
        SampledSymbol::new(header.x_extent, header.xi_extent, header.n, values)
    }
}

/// Rewrite a sampled symbol from quantization `from` to quantization `to`:
/// multiply the phase-space DFT by `exp(i ⟨(A_from − A_to) η, y⟩)` at the
/// dual variables `(y, η)` and invert. One-dimensional lattices.
pub fn transfer_quantization(
    a1: &SampledSymbol,
    from: &QuantizationMatrix,
    to: &QuantizationMatrix,
) -> Result<SampledSymbol> {
    if from.dim() != 1 || to.dim() != 1 {
        return Err(Error::Precondition(
            "phase-space transfer is one-dimensional".into(),
        ));
    }
    let delta = from.entries()[0] - to.entries()[0];
    let n = a1.n;
    let mut spectrum = a1.values.clone();
    spectral::forward_2d_general(&mut spectrum, n, (a1.x_extent, a1.xi_extent));
    for iy in 0..n {
        let y = spectral::frequency(iy, n, a1.x_extent);
        for ie in 0..n {
            let eta = spectral::frequency(ie, n, a1.xi_extent);
            spectrum[iy * n + ie] *= Complex64::from_polar(1.0, delta * eta * y);
        }
    }
    spectral::inverse_2d_general(&mut spectrum, n, (a1.x_extent, a1.xi_extent));
    SampledSymbol::new(a1.x_extent, a1.xi_extent, n, spectrum)
}

// ---------------------------------------------------------------------------
// Trait-object registry over the operator variants.

pub struct MultiplierOp {
    pub symbol: SymbolDescriptor,
}

impl GridOperator for MultiplierOp {
    fn label(&self) -> String {
        format!("multiplier[{}]", self.symbol.name())
    }
    fn apply(&self, f: &GridFunction) -> Result<GridFunction> {
        apply_multiplier(&self.symbol, f)
    }
}

pub struct KohnNirenbergOp {
    pub symbol: SymbolDescriptor,
}

impl GridOperator for KohnNirenbergOp {
    fn label(&self) -> String {
        format!("psdo-kn[{}]", self.symbol.name())
    }
    fn apply(&self, f: &GridFunction) -> Result<GridFunction> {
        apply_psdo_kn(&self.symbol, f)
    }
}

pub struct GeneralQuantizationOp {
    pub symbol: SymbolDescriptor,
    pub quantization: QuantizationMatrix,
}

impl GridOperator for GeneralQuantizationOp {
    fn label(&self) -> String {
        format!(
            "psdo[{}; A = {:?}]",
            self.symbol.name(),
            self.quantization.entries()
        )
    }
    fn apply(&self, f: &GridFunction) -> Result<GridFunction> {
        apply_psdo_general(&self.symbol, &self.quantization, f)
    }
}

pub struct FioOp {
    pub symbol: SymbolDescriptor,
    pub phase: PhaseDescriptor,
}

impl GridOperator for FioOp {
    fn label(&self) -> String {
        format!("fio[{}; {}]", self.symbol.name(), self.phase.name())
    }
    fn apply(&self, f: &GridFunction) -> Result<GridFunction> {
        apply_fio(&self.symbol, &self.phase, f)
    }
}

/// Which operator family to instantiate.
#[derive(Clone, Debug)]
pub enum OperatorSpec {
    Multiplier,
    KohnNirenberg,
    General(QuantizationMatrix),
    Fio(PhaseDescriptor),
}

/// Runtime dispatch from an operator family name and its extras to a boxed
/// operator.
pub fn build_operator(spec: OperatorSpec, symbol: SymbolDescriptor) -> Result<Box<dyn GridOperator>> {
    Ok(match spec {
        OperatorSpec::Multiplier => Box::new(MultiplierOp { symbol }),
        OperatorSpec::KohnNirenberg => Box::new(KohnNirenbergOp { symbol }),
        OperatorSpec::General(quantization) => Box::new(GeneralQuantizationOp {
            symbol,
            quantization,
        }),
        OperatorSpec::Fio(phase) => Box::new(FioOp { symbol, phase }),
    })
}

pub fn operator_names() -> Vec<&'static str> {
    vec!["multiplier", "psdo-kn", "psdo", "fio"]
}
