//! Symbols `a(x, ξ)` (or `a(ξ)`) with exact derivative oracles and a
//! finite-difference fallback, plus the named catalog the CLI and the
//! experiment configs draw from.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type SymFn = Arc<dyn Fn(&[f64], &[f64]) -> Complex64 + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolArity {
    XiOnly,
    XAndXi,
}

/// Derivative key: orders per x-axis and per ξ-axis.
pub type DerivKey = (Vec<usize>, Vec<usize>);

/// Relative step for the central-difference fallback; roughly cube-root of
/// machine epsilon, balancing truncation against roundoff.
const FD_REL_STEP: f64 = 6e-6;

#[derive(Clone)]
pub struct SymbolDescriptor {
    name: String,
    dim: usize,
    arity: SymbolArity,
    value: SymFn,
    derivatives: BTreeMap<DerivKey, SymFn>,
    fd_fallback: bool,
    support_cutoff: Option<f64>,
    /// Declared SG orders `(m, μ)`: decay in x and in ξ.
    sg_orders: (f64, f64),
}

impl fmt::Debug for SymbolDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymbolDescriptor")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("arity", &self.arity)
            .field("fd_fallback", &self.fd_fallback)
            .field("support_cutoff", &self.support_cutoff)
            .field("sg_orders", &self.sg_orders)
            .finish()
    }
}

impl SymbolDescriptor {
    pub fn from_xi_fn(
        name: impl Into<String>,
        dim: usize,
        value: impl Fn(&[f64]) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        SymbolDescriptor {
            name: name.into(),
            dim,
            arity: SymbolArity::XiOnly,
            value: Arc::new(move |_x, xi| value(xi)),
            derivatives: BTreeMap::new(),
            fd_fallback: true,
            support_cutoff: None,
            sg_orders: (0.0, 0.0),
        }
    }

    pub fn from_xxi_fn(
        name: impl Into<String>,
        dim: usize,
        value: impl Fn(&[f64], &[f64]) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        SymbolDescriptor {
            name: name.into(),
            dim,
            arity: SymbolArity::XAndXi,
            value: Arc::new(value),
            derivatives: BTreeMap::new(),
            fd_fallback: true,
            support_cutoff: None,
            sg_orders: (0.0, 0.0),
        }
    }

    /// Register an exact derivative oracle for `∂_x^α ∂_ξ^β a`.
    pub fn with_derivative(
        mut self,
        x_order: Vec<usize>,
        xi_order: Vec<usize>,
        oracle: impl Fn(&[f64], &[f64]) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        self.derivatives
            .insert((x_order, xi_order), Arc::new(oracle));
        self
    }

    pub fn with_cutoff(mut self, eps: f64) -> Self {
        self.support_cutoff = Some(eps);
        self
    }

    pub fn with_fd_fallback(mut self, enabled: bool) -> Self {
        self.fd_fallback = enabled;
        self
    }

    pub fn with_sg_orders(mut self, m: f64, mu: f64) -> Self {
        self.sg_orders = (m, mu);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> SymbolArity {
        self.arity
    }

    pub fn support_cutoff(&self) -> Option<f64> {
        self.support_cutoff
    }

    pub fn sg_orders(&self) -> (f64, f64) {
        self.sg_orders
    }

    pub fn is_x_independent(&self) -> bool {
        self.arity == SymbolArity::XiOnly
    }

    /// Raw value with the support cutoff applied (`0` below `|ξ| < ε`).
    pub fn value_at(&self, x: &[f64], xi: &[f64]) -> Complex64 {
        if let Some(eps) = self.support_cutoff {
            let r: f64 = xi.iter().map(|v| v * v).sum::<f64>().sqrt();
            if r < eps {
                return Complex64::new(0.0, 0.0);
            }
        }
        (self.value)(x, xi)
    }

    /// Value at a lattice frequency under the multiplier convention:
    /// a non-finite value at the origin is read as 0, anywhere else it is an
    /// evaluation error.
    pub fn multiplier_value(&self, x: &[f64], xi: &[f64]) -> Result<Complex64> {
        let v = self.value_at(x, xi);
        if v.re.is_finite() && v.im.is_finite() {
            return Ok(v);
        }
        if xi.iter().all(|&c| c == 0.0) {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Err(Error::SymbolEvaluation(format!(
            "{} is not finite at x = {x:?}, xi = {xi:?}",
            self.name
        )))
    }

    /// `∂_x^α ∂_ξ^β a(x, ξ)`: the exact oracle when registered, else nested
    /// central differences over the next-lower available order.
    pub fn derivative_at(
        &self,
        x_order: &[usize],
        xi_order: &[usize],
        x: &[f64],
        xi: &[f64],
    ) -> Result<Complex64> {
        if x_order.iter().all(|&o| o == 0) && xi_order.iter().all(|&o| o == 0) {
            return Ok(self.value_at(x, xi));
        }
        // ξ-derivatives of an x-independent symbol: x-orders must be zero.
        if self.arity == SymbolArity::XiOnly && x_order.iter().any(|&o| o > 0) {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let key = (x_order.to_vec(), xi_order.to_vec());
        if let Some(oracle) = self.derivatives.get(&key) {
            return Ok(oracle(x, xi));
        }
        if !self.fd_fallback {
            return Err(Error::MissingDerivative {
                x_order: x_order.to_vec(),
                xi_order: xi_order.to_vec(),
            });
        }
        // Reduce the last non-zero order by one and difference that axis.
        let mut xo = x_order.to_vec();
        let mut xio = xi_order.to_vec();
        if let Some(axis) = xio.iter().rposition(|&o| o > 0) {
            xio[axis] -= 1;
            let h = xi[axis].abs().max(1.0) * FD_REL_STEP;
            let mut hi = xi.to_vec();
            hi[axis] += h;
            let mut lo = xi.to_vec();
            lo[axis] -= h;
            let a = self.derivative_at(&xo, &xio, x, &hi)?;
            let b = self.derivative_at(&xo, &xio, x, &lo)?;
            Ok((a - b) / (2.0 * h))
        } else {
            let axis = xo.iter().rposition(|&o| o > 0).unwrap();
            xo[axis] -= 1;
            let h = x[axis].abs().max(1.0) * FD_REL_STEP;
            let mut hi = x.to_vec();
            hi[axis] += h;
            let mut lo = x.to_vec();
            lo[axis] -= h;
            let a = self.derivative_at(&xo, &xio, &hi, xi)?;
            let b = self.derivative_at(&xo, &xio, &lo, xi)?;
            Ok((a - b) / (2.0 * h))
        }
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

fn jbracket(v: &[f64]) -> f64 {
    (1.0 + v.iter().map(|c| c * c).sum::<f64>()).sqrt()
}

/// One catalog entry: a named symbol family with numeric parameters.
pub struct SymbolEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub arity: SymbolArity,
    builder: fn(&[f64], usize) -> Result<SymbolDescriptor>,
}

fn need_params(name: &str, params: &[f64], n: usize) -> Result<()> {
    if params.len() != n {
        return Err(Error::Precondition(format!(
            "symbol '{name}' takes {n} parameter(s), got {}",
            params.len()
        )));
    }
    Ok(())
}

fn build_identity(params: &[f64], dim: usize) -> Result<SymbolDescriptor> {
    need_params("identity", params, 0)?;
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut sym = SymbolDescriptor::from_xi_fn("identity", dim, move |_| one);
    for axis in 0..dim {
        let mut key = vec![0usize; dim];
        key[axis] = 1;
        sym = sym.with_derivative(vec![0; dim], key.clone(), move |_, _| zero);
        key[axis] = 2;
        sym = sym.with_derivative(vec![0; dim], key, move |_, _| zero);
    }
    Ok(sym)
}

fn build_sgn(params: &[f64], dim: usize) -> Result<SymbolDescriptor> {
    need_params("sgn", params, 0)?;
    if dim != 1 {
        return Err(Error::Precondition("sgn is one-dimensional".into()));
    }
    let zero = Complex64::new(0.0, 0.0);
    Ok(SymbolDescriptor::from_xi_fn("sgn", 1, |xi| {
        let s = if xi[0] > 0.0 {
            1.0
        } else if xi[0] < 0.0 {
            -1.0
        } else {
            0.0
        };
        Complex64::new(s, 0.0)
    })
    .with_derivative(vec![0], vec![1], move |_, _| zero)
    .with_derivative(vec![0], vec![2], move |_, _| zero))
}

fn build_riesz(params: &[f64], dim: usize) -> Result<SymbolDescriptor> {
    need_params("riesz", params, 1)?;
    let j = params[0] as usize;
    if j >= dim {
        return Err(Error::Precondition(format!(
            "riesz axis {j} out of range for dim {dim}"
        )));
    }
    let mi = Complex64::new(0.0, -1.0);
    let mut sym = SymbolDescriptor::from_xi_fn(format!("riesz[{j}]"), dim, move |xi| {
        mi * xi[j] / norm(xi)
    });
    for k in 0..dim {
        let mut key = vec![0usize; dim];
        key[k] = 1;
        sym = sym.with_derivative(vec![0; dim], key, move |_, xi| {
            let r = norm(xi);
            let kron = if j == k { 1.0 } else { 0.0 };
            mi * (kron / r - xi[j] * xi[k] / (r * r * r))
        });
    }
    for k in 0..dim {
        for l in k..dim {
            let mut key = vec![0usize; dim];
            key[k] += 1;
            key[l] += 1;
            sym = sym.with_derivative(vec![0; dim], key, move |_, xi| {
                let r = norm(xi);
                let r3 = r * r * r;
                let r5 = r3 * r * r;
                let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
                mi * (-(d(j, k) * xi[l] + d(j, l) * xi[k] + d(k, l) * xi[j]) / r3
                    + 3.0 * xi[j] * xi[k] * xi[l] / r5)
            });
        }
    }
    Ok(sym)
}

fn build_unimodular(params: &[f64], dim: usize) -> Result<SymbolDescriptor> {
    need_params("unimodular-power", params, 1)?;
    let gamma = params[0];
    let value = move |xi: &[f64]| {
        let r = norm(xi);
        Complex64::new(0.0, gamma * r.ln()).exp()
    };
    let mut sym =
        SymbolDescriptor::from_xi_fn(format!("unimodular-power[{gamma}]"), dim, value);
    let ig = Complex64::new(0.0, gamma);
    for k in 0..dim {
        let mut key = vec![0usize; dim];
        key[k] = 1;
        sym = sym.with_derivative(vec![0; dim], key, move |_, xi| {
            let r2: f64 = xi.iter().map(|c| c * c).sum();
            let a = Complex64::new(0.0, gamma * r2.sqrt().ln()).exp();
            a * ig * xi[k] / r2
        });
    }
    for k in 0..dim {
        for l in k..dim {
            let mut key = vec![0usize; dim];
            key[k] += 1;
            key[l] += 1;
            sym = sym.with_derivative(vec![0; dim], key, move |_, xi| {
                let r2: f64 = xi.iter().map(|c| c * c).sum();
                let a = Complex64::new(0.0, gamma * r2.sqrt().ln()).exp();
                let d = if k == l { 1.0 } else { 0.0 };
                a * (ig * ig * xi[k] * xi[l] / (r2 * r2) + ig * d / r2
                    - ig * 2.0 * xi[k] * xi[l] / (r2 * r2))
            });
        }
    }
    Ok(sym)
}

/// `⟨x⟩^m ⟨ξ⟩^μ` with exact first- and second-order derivatives per block.
/// With `m = 0` the x-dependence drops out and the symbol is a plain
/// multiplier.
fn build_sg_power(params: &[f64], dim: usize) -> Result<SymbolDescriptor> {
    need_params("sg-power", params, 2)?;
    let (m, mu) = (params[0], params[1]);
    if m == 0.0 {
        return build_sg_power_xi_only(mu, dim);
    }
    let value = move |x: &[f64], xi: &[f64]| {
        Complex64::new(jbracket(x).powf(m) * jbracket(xi).powf(mu), 0.0)
    };
    let mut sym = SymbolDescriptor::from_xxi_fn(format!("sg-power[{m},{mu}]"), dim, value)
        .with_sg_orders(m, mu);
    // ∂_{v_k} ⟨v⟩^e = e v_k ⟨v⟩^{e−2}
    let d1 = |e: f64, v: &[f64], k: usize| e * v[k] * jbracket(v).powf(e - 2.0);
    let d2 = |e: f64, v: &[f64], k: usize, l: usize| {
        let b = jbracket(v);
        let kron = if k == l { 1.0 } else { 0.0 };
        e * kron * b.powf(e - 2.0) + e * (e - 2.0) * v[k] * v[l] * b.powf(e - 4.0)
    };
    for k in 0..dim {
        let mut key = vec![0usize; dim];
        key[k] = 1;
        sym = sym.with_derivative(key.clone(), vec![0; dim], move |x, xi| {
            Complex64::new(d1(m, x, k) * jbracket(xi).powf(mu), 0.0)
        });
        sym = sym.with_derivative(vec![0; dim], key, move |x, xi| {
            Complex64::new(jbracket(x).powf(m) * d1(mu, xi, k), 0.0)
        });
        for l in k..dim {
            let mut key2 = vec![0usize; dim];
            key2[k] += 1;
            key2[l] += 1;
            sym = sym.with_derivative(key2.clone(), vec![0; dim], move |x, xi| {
                Complex64::new(d2(m, x, k, l) * jbracket(xi).powf(mu), 0.0)
            });
            sym = sym.with_derivative(vec![0; dim], key2, move |x, xi| {
                Complex64::new(jbracket(x).powf(m) * d2(mu, xi, k, l), 0.0)
            });
        }
        for l in 0..dim {
            let mut kx = vec![0usize; dim];
            kx[k] = 1;
            let mut kxi = vec![0usize; dim];
            kxi[l] = 1;
            sym = sym.with_derivative(kx, kxi, move |x, xi| {
                Complex64::new(d1(m, x, k) * d1(mu, xi, l), 0.0)
            });
        }
    }
    Ok(sym)
}

fn build_sg_power_xi_only(mu: f64, dim: usize) -> Result<SymbolDescriptor> {
    let mut sym = SymbolDescriptor::from_xi_fn(format!("sg-power[0,{mu}]"), dim, move |xi| {
        Complex64::new(jbracket(xi).powf(mu), 0.0)
    })
    .with_sg_orders(0.0, mu);
    let d1 = |e: f64, v: &[f64], k: usize| e * v[k] * jbracket(v).powf(e - 2.0);
    let d2 = |e: f64, v: &[f64], k: usize, l: usize| {
        let b = jbracket(v);
        let kron = if k == l { 1.0 } else { 0.0 };
        e * kron * b.powf(e - 2.0) + e * (e - 2.0) * v[k] * v[l] * b.powf(e - 4.0)
    };
    for k in 0..dim {
        let mut key = vec![0usize; dim];
        key[k] = 1;
        sym = sym.with_derivative(vec![0; dim], key, move |_, xi| {
            Complex64::new(d1(mu, xi, k), 0.0)
        });
        for l in k..dim {
            let mut key2 = vec![0usize; dim];
            key2[k] += 1;
            key2[l] += 1;
            sym = sym.with_derivative(vec![0; dim], key2, move |_, xi| {
                Complex64::new(d2(mu, xi, k, l), 0.0)
            });
        }
    }
    Ok(sym)
}

pub static SYMBOL_CATALOG: &[SymbolEntry] = &[
    SymbolEntry {
        name: "identity",
        summary: "a == 1",
        arity: SymbolArity::XiOnly,
        builder: build_identity,
    },
    SymbolEntry {
        name: "sgn",
        summary: "sign of xi (d = 1)",
        arity: SymbolArity::XiOnly,
        builder: build_sgn,
    },
    SymbolEntry {
        name: "riesz",
        summary: "-i xi_j / |xi|; params: [axis]",
        arity: SymbolArity::XiOnly,
        builder: build_riesz,
    },
    SymbolEntry {
        name: "unimodular-power",
        summary: "|xi|^{i gamma}; params: [gamma]",
        arity: SymbolArity::XiOnly,
        builder: build_unimodular,
    },
    SymbolEntry {
        name: "sg-power",
        summary: "<x>^m <xi>^mu; params: [m, mu]",
        arity: SymbolArity::XAndXi,
        builder: build_sg_power,
    },
];

/// Instantiate a catalog symbol by name.
pub fn build_symbol(
    name: &str,
    params: &[f64],
    dim: usize,
    cutoff: Option<f64>,
) -> Result<SymbolDescriptor> {
    if dim == 0 || dim > 2 {
        return Err(Error::Precondition(format!("symbols support dim 1 or 2, got {dim}")));
    }
    let entry = SYMBOL_CATALOG
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownCatalogEntry(format!("symbol '{name}'")))?;
    let mut sym = (entry.builder)(params, dim)?;
    if let Some(eps) = cutoff {
        if !(eps > 0.0) {
            return Err(Error::Precondition("cutoff must be positive".into()));
        }
        sym = sym.with_cutoff(eps);
    }
    Ok(sym)
}

pub fn symbol_names() -> Vec<&'static str> {
    SYMBOL_CATALOG.iter().map(|e| e.name).collect()
}
