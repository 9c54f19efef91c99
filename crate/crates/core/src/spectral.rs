//! Physically-scaled discrete Fourier transforms on the periodic grid.
//!
//! Convention: `f̂(ξ) = ∫ f(x) e^{−i x·ξ} dx`, inverse carries `(2π)^{−d}`.
//! On the lattice `x_j = −L + j·Δx` the frequencies are `ξ_k = π k / L` with
//! `k` running over the signed Nyquist band; the offset by `−L` turns into
//! the alternating-sign phase `(−1)^k` applied around the raw FFT.

use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

use crate::error::Result;
use crate::gridfn::GridFunction;

fn plan(n: usize, direction: FftDirection) -> Arc<dyn Fft<f64>> {
    static PLANNER: OnceLock<Mutex<FftPlanner<f64>>> = OnceLock::new();
    let mut planner = PLANNER
        .get_or_init(|| Mutex::new(FftPlanner::new()))
        .lock()
        .unwrap();
    match direction {
        FftDirection::Forward => planner.plan_fft_forward(n),
        FftDirection::Inverse => planner.plan_fft_inverse(n),
    }
}

/// Signed lattice index for FFT bin `k` of an even-length transform.
pub fn signed_index(k: usize, n: usize) -> i64 {
    if k < n / 2 {
        k as i64
    } else {
        k as i64 - n as i64
    }
}

/// Frequency of FFT bin `k`: `π · signed(k) / extent`.
pub fn frequency(k: usize, n: usize, extent: f64) -> f64 {
    std::f64::consts::PI * signed_index(k, n) as f64 / extent
}

fn parity(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Forward transform along one axis of a row-major array of shape
/// `(rows, cols)`: `axis = 1` transforms contiguous rows, `axis = 0` columns.
fn transform_axis(
    values: &mut [Complex64],
    shape: (usize, usize),
    axis: usize,
    extent: f64,
    forward: bool,
) {
    let (rows, cols) = shape;
    let n = if axis == 1 { cols } else { rows };
    let fft = plan(
        n,
        if forward {
            FftDirection::Forward
        } else {
            FftDirection::Inverse
        },
    );
    let dx = 2.0 * extent / n as f64;
    let dxi = std::f64::consts::PI / extent;
    let inv_scale = dxi / (2.0 * std::f64::consts::PI);
    let mut line = vec![Complex64::default(); n];
    let lines = if axis == 1 { rows } else { cols };
    for l in 0..lines {
        for k in 0..n {
            let idx = if axis == 1 { l * cols + k } else { k * cols + l };
            line[k] = values[idx];
        }
        if forward {
            fft.process(&mut line);
            for (k, v) in line.iter_mut().enumerate() {
                *v *= parity(k) * dx;
            }
        } else {
            for (k, v) in line.iter_mut().enumerate() {
                *v *= parity(k);
            }
            fft.process(&mut line);
            for v in line.iter_mut() {
                *v *= inv_scale;
            }
        }
        for k in 0..n {
            let idx = if axis == 1 { l * cols + k } else { k * cols + l };
            values[idx] = line[k];
        }
    }
}

/// Forward transform of a grid function; output is laid out on the FFT
/// lattice (use [`frequency`] per axis).
pub fn forward(f: &GridFunction) -> Vec<Complex64> {
    let mut out = f.values().to_vec();
    let n = f.n();
    match f.dim() {
        1 => transform_axis(&mut out, (1, n), 1, f.extent(), true),
        _ => {
            transform_axis(&mut out, (n, n), 1, f.extent(), true);
            transform_axis(&mut out, (n, n), 0, f.extent(), true);
        }
    }
    out
}

/// Inverse of [`forward`], producing a grid function on the same grid.
pub fn inverse(mut fhat: Vec<Complex64>, dim: usize, extent: f64, n: usize) -> Result<GridFunction> {
    match dim {
        1 => transform_axis(&mut fhat, (1, n), 1, extent, false),
        _ => {
            transform_axis(&mut fhat, (n, n), 1, extent, false);
            transform_axis(&mut fhat, (n, n), 0, extent, false);
        }
    }
    GridFunction::new(dim, extent, n, fhat)
}

/// General 2-axis forward transform with distinct extents per axis, used for
/// phase-space (x, ξ) lattices. Shape is `(n, n)`, axis 0 has `extents.0`.
pub fn forward_2d_general(values: &mut [Complex64], n: usize, extents: (f64, f64)) {
    transform_axis(values, (n, n), 1, extents.1, true);
    transform_axis(values, (n, n), 0, extents.0, true);
}

pub fn inverse_2d_general(values: &mut [Complex64], n: usize, extents: (f64, f64)) {
    transform_axis(values, (n, n), 1, extents.1, false);
    transform_axis(values, (n, n), 0, extents.0, false);
}

/// Inverse transform onto a refined axis-0 lattice: the spectrum of an
/// `(n, n)` array is zero-padded to `(factor·n, n)` before inversion, which
/// is exact trigonometric interpolation for band-limited data.
pub fn inverse_2d_upsampled_axis0(
    spectrum: &[Complex64],
    n: usize,
    extents: (f64, f64),
    factor: usize,
) -> Vec<Complex64> {
    let m = factor * n;
    let mut padded = vec![Complex64::default(); m * n];
    for k0 in 0..n {
        let sk = signed_index(k0, n);
        let dst = sk.rem_euclid(m as i64) as usize;
        padded[dst * n..dst * n + n].copy_from_slice(&spectrum[k0 * n..k0 * n + n]);
    }
    transform_axis(&mut padded, (m, n), 1, extents.1, false);
    transform_axis(&mut padded, (m, n), 0, extents.0, false);
    padded
}
