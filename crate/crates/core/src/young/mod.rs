//! Young functions: convex Φ on [0, ∞) with Φ(0) = 0 and Φ(t) → ∞.
//!
//! A [`YoungFunction`] is either a list of analytic pieces (power, affine,
//! `t·ln(1+t)`, `e^t − 1`, sums, or an explicit +∞ tail) with exact one-sided
//! derivatives, or one of two quadrature-defined constructions built on top
//! of another Young function: a mollified regularization and an exponential
//! convolution. Quadrature-defined functions differentiate by central
//! differences with step `t · 1e-5`; analytic pieces differentiate exactly.

mod builtins;
mod construct;
mod descriptor;
mod exponents;

pub use builtins::{library, make_builtin, BuiltinYoung};
pub use construct::{exp_convolved, smooth_equivalent, strictly_convex_equivalent};
pub use descriptor::{PieceForm, YoungDescriptor};
pub use exponents::{
    check_delta2, check_equivalence, check_lambda, check_squeezing, compute_exponents,
    Delta2Report, EquivalenceReport, ExponentReport, LambdaReport, SqueezingConstants,
};

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grid::{kronecker, GridConfig, Spacing};

/// Which one-sided derivative to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// One analytic expression, valid on a single piece.
#[derive(Clone, Debug, PartialEq)]
pub enum PieceExpr {
    /// `c · t^p`
    Power { coeff: f64, exponent: f64 },
    /// `a · t + b`
    Affine { slope: f64, offset: f64 },
    /// `c · t · ln(1 + t)`
    EntropyLog { coeff: f64 },
    /// `c · (e^t − 1)`
    ExpMinusOne { coeff: f64 },
    /// The function is +∞ on this piece.
    Infinite,
    /// Sum of sub-expressions.
    Sum(Vec<PieceExpr>),
}

impl PieceExpr {
    fn eval(&self, t: f64) -> f64 {
        match self {
            PieceExpr::Power { coeff, exponent } => coeff * t.powf(*exponent),
            PieceExpr::Affine { slope, offset } => slope * t + offset,
            PieceExpr::EntropyLog { coeff } => coeff * t * (1.0 + t).ln(),
            PieceExpr::ExpMinusOne { coeff } => coeff * (t.exp() - 1.0),
            PieceExpr::Infinite => f64::INFINITY,
            PieceExpr::Sum(terms) => terms.iter().map(|e| e.eval(t)).sum(),
        }
    }

    fn derivative(&self, t: f64) -> f64 {
        match self {
            PieceExpr::Power { coeff, exponent } => {
                if *exponent == 1.0 {
                    *coeff
                } else {
                    coeff * exponent * t.powf(exponent - 1.0)
                }
            }
            PieceExpr::Affine { slope, .. } => *slope,
            PieceExpr::EntropyLog { coeff } => coeff * ((1.0 + t).ln() + t / (1.0 + t)),
            PieceExpr::ExpMinusOne { coeff } => coeff * t.exp(),
            PieceExpr::Infinite => f64::INFINITY,
            PieceExpr::Sum(terms) => terms.iter().map(|e| e.derivative(t)).sum(),
        }
    }

    fn is_finite(&self) -> bool {
        match self {
            PieceExpr::Infinite => false,
            PieceExpr::Sum(terms) => terms.iter().all(|e| e.is_finite()),
            _ => true,
        }
    }
}

/// One piece: active on `[start, next_start)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Piece {
    pub start: f64,
    pub expr: PieceExpr,
}

#[derive(Clone, Debug)]
enum YoungKind {
    Piecewise(Vec<Piece>),
    /// `Ψ(t) = Σ_i w_i Φ(t − s_i t / 2)` with `(s_i, w_i)` a normalized bump
    /// quadrature on [0, 1].
    Mollified {
        base: Arc<YoungFunction>,
        nodes: usize,
        weights: Arc<Vec<(f64, f64)>>,
    },
    /// `Ψ(t) = ∫_0^t Φ(t − s) e^{−s} ds`, Gauss–Legendre panels split at the
    /// breakpoints of the base function.
    ExpConvolved {
        base: Arc<YoungFunction>,
        nodes: usize,
    },
    Sum(Vec<YoungFunction>),
}

/// A Young function with exact piecewise evaluation and one-sided derivatives.
#[derive(Clone, Debug)]
pub struct YoungFunction {
    label: String,
    kind: YoungKind,
}

/// Central-difference step factor for quadrature-defined functions.
const CENTRAL_DIFF_REL_STEP: f64 = 1e-5;
/// Φ(t_max) must exceed this for the growth-to-infinity check to pass.
const GROWTH_FLOOR: f64 = 1e2;

impl YoungFunction {
    /// Build a piecewise-analytic Young function. Pieces must start at 0 and
    /// have strictly increasing breakpoints; convexity is not verified here
    /// (see [`YoungFunction::validate`]).
    pub fn from_pieces(label: impl Into<String>, pieces: Vec<Piece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::Degenerate("no pieces".into()));
        }
        if pieces[0].start != 0.0 {
            return Err(Error::Domain(format!(
                "first piece must start at 0, got {}",
                pieces[0].start
            )));
        }
        for w in pieces.windows(2) {
            if !(w[1].start > w[0].start) || !w[1].start.is_finite() {
                return Err(Error::Domain("breakpoints must strictly increase".into()));
            }
        }
        Ok(YoungFunction {
            label: label.into(),
            kind: YoungKind::Piecewise(pieces),
        })
    }

    pub(crate) fn mollified(base: YoungFunction, nodes: usize) -> Self {
        let weights = Arc::new(construct::bump_weights(nodes));
        YoungFunction {
            label: format!("smoothed({})", base.label),
            kind: YoungKind::Mollified {
                base: Arc::new(base),
                nodes,
                weights,
            },
        }
    }

    pub(crate) fn exp_convolved_kind(base: YoungFunction, nodes: usize) -> Self {
        YoungFunction {
            label: format!("exp-convolved({})", base.label),
            kind: YoungKind::ExpConvolved {
                base: Arc::new(base),
                nodes,
            },
        }
    }

    pub(crate) fn sum(label: impl Into<String>, terms: Vec<YoungFunction>) -> Self {
        YoungFunction {
            label: label.into(),
            kind: YoungKind::Sum(terms),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Φ(t). Returns `+∞` as a marker on infinite-valued pieces; `t < 0` is a
    /// domain error.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(Error::Domain(format!("Young functions live on [0, inf), got t = {t}")));
        }
        Ok(self.eval_inner(t))
    }

    fn eval_inner(&self, t: f64) -> f64 {
        match &self.kind {
            YoungKind::Piecewise(pieces) => pieces[piece_index(pieces, t)].expr.eval(t),
            YoungKind::Mollified { base, weights, .. } => {
                if t == 0.0 {
                    return 0.0;
                }
                weights
                    .iter()
                    .map(|&(s, w)| w * base.eval_inner(t - 0.5 * s * t))
                    .sum()
            }
            YoungKind::ExpConvolved { base, nodes } => construct::exp_conv_eval(base, *nodes, t),
            YoungKind::Sum(terms) => terms.iter().map(|f| f.eval_inner(t)).sum(),
        }
    }

    /// Exact one-sided derivative for analytic pieces; central differences
    /// with step `t·1e-5` for quadrature-defined functions.
    pub fn one_sided_derivative(&self, t: f64, side: Side) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::Domain(format!(
                "one-sided derivatives need t > 0, got t = {t}"
            )));
        }
        if !self.eval_inner(t).is_finite() {
            return Err(Error::InfiniteValue(format!(
                "{} is infinite at t = {t}",
                self.label
            )));
        }
        Ok(self.derivative_inner(t, side))
    }

    fn derivative_inner(&self, t: f64, side: Side) -> f64 {
        match &self.kind {
            YoungKind::Piecewise(pieces) => {
                let mut idx = piece_index(pieces, t);
                // At a breakpoint the right derivative reads the piece that
                // starts there, the left derivative the piece before it.
                if side == Side::Left && idx > 0 && pieces[idx].start == t {
                    idx -= 1;
                }
                pieces[idx].expr.derivative(t)
            }
            YoungKind::Sum(terms) => terms.iter().map(|f| f.derivative_inner(t, side)).sum(),
            YoungKind::Mollified { .. } | YoungKind::ExpConvolved { .. } => {
                let h = t * CENTRAL_DIFF_REL_STEP;
                (self.eval_inner(t + h) - self.eval_inner(t - h)) / (2.0 * h)
            }
        }
    }

    /// Interior breakpoints (excluding 0) of the analytic pieces.
    pub fn breakpoints(&self) -> Vec<f64> {
        match &self.kind {
            YoungKind::Piecewise(pieces) => pieces.iter().skip(1).map(|p| p.start).collect(),
            YoungKind::Sum(terms) => {
                let mut bps: Vec<f64> = terms.iter().flat_map(|f| f.breakpoints()).collect();
                bps.sort_by(|a, b| a.partial_cmp(b).unwrap());
                bps.dedup();
                bps
            }
            _ => Vec::new(),
        }
    }

    /// Whether Φ(t) < ∞ for every finite t.
    pub fn is_finite_everywhere(&self) -> bool {
        match &self.kind {
            YoungKind::Piecewise(pieces) => pieces.iter().all(|p| p.expr.is_finite()),
            YoungKind::Mollified { base, .. } | YoungKind::ExpConvolved { base, .. } => {
                base.is_finite_everywhere()
            }
            YoungKind::Sum(terms) => terms.iter().all(|f| f.is_finite_everywhere()),
        }
    }

    /// Start of the +∞ region, when one exists.
    pub fn finite_threshold(&self) -> Option<f64> {
        match &self.kind {
            YoungKind::Piecewise(pieces) => pieces
                .iter()
                .find(|p| !p.expr.is_finite())
                .map(|p| p.start),
            YoungKind::Mollified { base, .. } | YoungKind::ExpConvolved { base, .. } => {
                base.finite_threshold()
            }
            YoungKind::Sum(terms) => terms
                .iter()
                .filter_map(|f| f.finite_threshold())
                .min_by(|a, b| a.partial_cmp(b).unwrap()),
        }
    }

    pub(crate) fn require_finite(&self) -> Result<()> {
        if let Some(a) = self.finite_threshold() {
            return Err(Error::InfiniteValue(format!(
                "{} is infinite beyond t = {a}",
                self.label
            )));
        }
        Ok(())
    }

    /// Check the Young-function axioms on grid samples: Φ(0) = 0, monotone
    /// non-decreasing, midpoint convexity on sampled pairs, growth at the
    /// right end, and monotone one-sided derivatives.
    pub fn validate(&self) -> Result<()> {
        self.validate_on(&GridConfig::new(1e-6, 1e6, 2_000, Spacing::Log)?, 10_000)
    }

    pub fn validate_on(&self, cfg: &GridConfig, convexity_pairs: usize) -> Result<()> {
        if self.eval(0.0)?.abs() > 1e-300 {
            return Err(Error::Degenerate(format!("{}(0) != 0", self.label)));
        }
        let finite_hi = self.finite_threshold().unwrap_or(f64::INFINITY);
        let pts: Vec<f64> = cfg.points().into_iter().filter(|&t| t < finite_hi).collect();
        if pts.len() < 2 {
            return Err(Error::InvalidGrid("no finite samples".into()));
        }
        let mut prev_v = 0.0;
        let mut prev_dplus = 0.0;
        for &t in &pts {
            let v = self.eval_inner(t);
            if v < prev_v * (1.0 - 1e-12) {
                return Err(Error::Degenerate(format!(
                    "{} decreases near t = {t}",
                    self.label
                )));
            }
            let dm = self.derivative_inner(t, Side::Left);
            let dp = self.derivative_inner(t, Side::Right);
            let slack = 1e-9 * dp.abs().max(dm.abs()).max(1e-300);
            if dm > dp + slack || dp + slack < prev_dplus {
                return Err(Error::Degenerate(format!(
                    "{} has non-monotone one-sided derivatives near t = {t}",
                    self.label
                )));
            }
            prev_v = v;
            prev_dplus = dp.max(prev_dplus);
        }
        // Midpoint convexity on a deterministic low-discrepancy pair set.
        let (lo_ln, hi_ln) = (pts[0].ln(), pts[pts.len() - 1].ln());
        for i in 0..convexity_pairs {
            let s = (lo_ln + kronecker(2 * i + 1) * (hi_ln - lo_ln)).exp();
            let t = (lo_ln + kronecker(2 * i + 2) * (hi_ln - lo_ln)).exp();
            let lhs = self.eval_inner(0.5 * (s + t));
            let rhs = 0.5 * (self.eval_inner(s) + self.eval_inner(t));
            if lhs > rhs + 1e-9 * rhs.abs().max(1e-300) {
                return Err(Error::Degenerate(format!(
                    "{} fails midpoint convexity at ({s}, {t})",
                    self.label
                )));
            }
        }
        let right = self.eval_inner(pts[pts.len() - 1]);
        if finite_hi.is_infinite() && right < GROWTH_FLOOR {
            return Err(Error::Degenerate(format!(
                "{} does not grow at the right grid end (value {right})",
                self.label
            )));
        }
        Ok(())
    }
}

fn piece_index(pieces: &[Piece], t: f64) -> usize {
    // Last piece whose start is <= t.
    match pieces.binary_search_by(|p| p.start.partial_cmp(&t).unwrap()) {
        Ok(i) => i,
        Err(0) => 0,
        Err(i) => i - 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counterexample() -> YoungFunction {
        make_builtin(BuiltinYoung::Counterexample).unwrap()
    }

    #[test]
    fn eval_counterexample_pieces() {
        let phi = counterexample();
        assert_eq!(phi.eval(0.0).unwrap(), 0.0);
        assert!((phi.eval(0.5).unwrap() - 0.5).abs() < 1e-15);
        assert!((phi.eval(1.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((phi.eval(1.5).unwrap() - 4.0).abs() < 1e-15);
        // Both pieces agree at the second breakpoint: 4·2−2 = 2²+2 = 6.
        assert!((phi.eval(2.0).unwrap() - 6.0).abs() < 1e-15);
        assert!((phi.eval(3.0).unwrap() - 11.0).abs() < 1e-15);
    }

    #[test]
    fn eval_entropy_and_power() {
        let ent = make_builtin(BuiltinYoung::Entropy).unwrap();
        assert!((ent.eval(2.0).unwrap() - 2.0 * 3.0f64.ln()).abs() < 1e-15);
        let p2 = make_builtin(BuiltinYoung::Power(2.0)).unwrap();
        assert_eq!(p2.eval(3.0).unwrap(), 9.0);
        assert_eq!(p2.eval(0.0).unwrap(), 0.0);
    }

    #[test]
    fn negative_argument_rejected() {
        let phi = counterexample();
        assert!(matches!(phi.eval(-1.0), Err(Error::Domain(_))));
        assert!(phi.one_sided_derivative(0.0, Side::Right).is_err());
    }

    #[test]
    fn one_sided_derivatives_at_breakpoints() {
        let phi = counterexample();
        // The counterexample happens to be C^1: both sides give 4 at t = 1, 2.
        assert!((phi.one_sided_derivative(1.0, Side::Right).unwrap() - 4.0).abs() < 1e-15);
        assert!((phi.one_sided_derivative(1.0, Side::Left).unwrap() - 4.0).abs() < 1e-15);
        assert!((phi.one_sided_derivative(2.0, Side::Left).unwrap() - 4.0).abs() < 1e-15);
        assert!((phi.one_sided_derivative(2.0, Side::Right).unwrap() - 4.0).abs() < 1e-15);
        let p3 = make_builtin(BuiltinYoung::Power(3.0)).unwrap();
        for &t in &[0.3, 1.0, 7.5] {
            let expect = 3.0 * t * t;
            assert!((p3.one_sided_derivative(t, Side::Left).unwrap() - expect).abs() < 1e-12);
            assert!((p3.one_sided_derivative(t, Side::Right).unwrap() - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn infinite_valued_function_markers() {
        let phi = YoungFunction::from_pieces(
            "capped",
            vec![
                Piece {
                    start: 0.0,
                    expr: PieceExpr::Power {
                        coeff: 1.0,
                        exponent: 2.0,
                    },
                },
                Piece {
                    start: 1.0,
                    expr: PieceExpr::Infinite,
                },
            ],
        )
        .unwrap();
        assert!(!phi.is_finite_everywhere());
        assert_eq!(phi.finite_threshold(), Some(1.0));
        assert!(phi.eval(2.0).unwrap().is_infinite());
        assert!(matches!(
            phi.one_sided_derivative(2.0, Side::Right),
            Err(Error::InfiniteValue(_))
        ));
    }

    #[test]
    fn validate_accepts_library() {
        for phi in library() {
            phi.validate().unwrap_or_else(|e| panic!("{}: {e}", phi.label()));
        }
    }

    #[test]
    fn validate_rejects_non_convex() {
        // t^2 followed by a slope-1 affine piece: derivative drops from 2 to 1.
        let phi = YoungFunction::from_pieces(
            "bad",
            vec![
                Piece {
                    start: 0.0,
                    expr: PieceExpr::Power {
                        coeff: 1.0,
                        exponent: 2.0,
                    },
                },
                Piece {
                    start: 1.0,
                    expr: PieceExpr::Affine {
                        slope: 1.0,
                        offset: 0.0,
                    },
                },
            ],
        )
        .unwrap();
        assert!(phi.validate().is_err());
    }

    #[test]
    fn breakpoint_lookup() {
        let phi = counterexample();
        assert_eq!(phi.breakpoints(), vec![1.0, 2.0]);
    }
}
