//! Complex-valued samples on a uniform periodic grid over `[-L, L)^d`,
//! `d ∈ {1, 2}`, with the binary file format used by the CLI: a single JSON
//! header line `{"dim": .., "extent": .., "n": ..}` followed by row-major
//! little-endian `(re, im)` pairs of 64-bit floats.

use std::io::{Read, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
struct GridHeader {
    dim: usize,
    extent: f64,
    n: usize,
}

/// Samples of `f : [-L, L)^d → C` at the cell-corner lattice
/// `x_j = -L + 2L j / n`. The function is understood as extended by zero
/// outside the box.
#[derive(Clone, Debug)]
pub struct GridFunction {
    dim: usize,
    extent: f64,
    n: usize,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(dim: usize, extent: f64, n: usize, values: Vec<Complex64>) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(Error::Precondition(format!("dim must be 1 or 2, got {dim}")));
        }
        if !(extent > 0.0 && extent.is_finite()) {
            return Err(Error::Precondition(format!("extent must be positive, got {extent}")));
        }
        if n < 2 || n % 2 != 0 {
            return Err(Error::Precondition(format!("n must be even and >= 2, got {n}")));
        }
        let expect = n.pow(dim as u32);
        if values.len() != expect {
            return Err(Error::Precondition(format!(
                "expected {expect} samples for dim {dim}, n {n}; got {}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::Precondition("samples must be finite".into()));
        }
        Ok(GridFunction {
            dim,
            extent,
            n,
            values,
        })
    }

    pub fn from_fn_1d(extent: f64, n: usize, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let step = 2.0 * extent / n as f64;
        let values = (0..n).map(|j| f(-extent + j as f64 * step)).collect();
        GridFunction::new(1, extent, n, values)
    }

    pub fn from_fn_2d(extent: f64, n: usize, f: impl Fn(f64, f64) -> Complex64) -> Result<Self> {
        let step = 2.0 * extent / n as f64;
        let mut values = Vec::with_capacity(n * n);
        for i in 0..n {
            let x = -extent + i as f64 * step;
            for j in 0..n {
                let y = -extent + j as f64 * step;
                values.push(f(x, y));
            }
        }
        GridFunction::new(2, extent, n, values)
    }

    pub fn zeros(dim: usize, extent: f64, n: usize) -> Result<Self> {
        GridFunction::new(dim, extent, n, vec![Complex64::new(0.0, 0.0); n.pow(dim as u32)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Grid spacing along one axis.
    pub fn step(&self) -> f64 {
        2.0 * self.extent / self.n as f64
    }

    /// Volume of one grid cell.
    pub fn cell_volume(&self) -> f64 {
        self.step().powi(self.dim as i32)
    }

    /// Coordinate of index `j` along one axis.
    pub fn coord(&self, j: usize) -> f64 {
        -self.extent + j as f64 * self.step()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Same grid, transformed samples.
    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        GridFunction {
            dim: self.dim,
            extent: self.extent,
            n: self.n,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// `a·self + b·other` on a shared grid.
    pub fn linear_combination(
        &self,
        a: Complex64,
        other: &GridFunction,
        b: Complex64,
    ) -> Result<Self> {
        self.check_compatible(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&u, &v)| a * u + b * v)
            .collect();
        Ok(GridFunction {
            dim: self.dim,
            extent: self.extent,
            n: self.n,
            values,
        })
    }

    pub fn check_compatible(&self, other: &GridFunction) -> Result<()> {
        if self.dim != other.dim || self.n != other.n || self.extent != other.extent {
            return Err(Error::Precondition(format!(
                "grid mismatch: ({}, {}, {}) vs ({}, {}, {})",
                self.dim, self.n, self.extent, other.dim, other.n, other.extent
            )));
        }
        Ok(())
    }

    /// Max-norm distance to another grid function.
    pub fn max_abs_diff(&self, other: &GridFunction) -> Result<f64> {
        self.check_compatible(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&u, &v)| (u - v).norm())
            .fold(0.0, f64::max))
    }

    pub fn write_to(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut out = Vec::new();
        self.write(&mut out)?;
        std::fs::write(path, out)?;
        Ok(())
    }

    pub fn write(&self, w: &mut impl Write) -> Result<()> {
        let header = GridHeader {
            dim: self.dim,
            extent: self.extent,
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
        let header: GridHeader = serde_json::from_slice(&bytes[..nl])
            .map_err(|e| Error::Serialization(format!("bad header: {e}")))?;
        let payload = &bytes[nl + 1..];
        let expect = header.n.pow(header.dim as u32) * 16;
        if payload.len() != expect {
            return Err(Error::Serialization(format!(
                "expected {expect} payload bytes, got {}",
                payload.len()
            )));
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
        GridFunction::new(header.dim, header.extent, header.n, values)
    }
}
