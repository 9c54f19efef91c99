//! Built-in Young functions, constructible by name.

use crate::error::{Error, Result};

use super::{Piece, PieceExpr, YoungFunction};

/// The catalog of built-in Young functions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BuiltinYoung {
    /// `t^p`, `p >= 1`.
    Power(f64),
    /// `t · ln(1 + t)` — strictly convex with lower exponent 1.
    Entropy,
    /// Piecewise `[2t² on [0,1], 4t−2 on [1,2], t²+2 on [2,∞)]` — not strictly
    /// convex, lower exponent 4/3.
    Counterexample,
    /// `e^t − 1` — fails the doubling condition.
    ExpMinusOne,
    /// `a · t`, `a > 0`.
    Affine(f64),
}

impl BuiltinYoung {
    /// Parse a `(kind, params)` pair as used by JSON descriptors and the CLI.
    pub fn parse(kind: &str, params: &[f64]) -> Result<Self> {
        match kind {
            "power" => {
                let p = *params
                    .first()
                    .ok_or_else(|| Error::Precondition("power needs one parameter".into()))?;
                Ok(BuiltinYoung::Power(p))
            }
            "entropy" => Ok(BuiltinYoung::Entropy),
            "counterexample" => Ok(BuiltinYoung::Counterexample),
            "exp-minus-one" | "exp_minus_one" => Ok(BuiltinYoung::ExpMinusOne),
            "affine" => {
                let a = *params
                    .first()
                    .ok_or_else(|| Error::Precondition("affine needs one parameter".into()))?;
                Ok(BuiltinYoung::Affine(a))
            }
            other => Err(Error::UnknownCatalogEntry(format!(
                "young function kind '{other}'"
            ))),
        }
    }
}

/// Construct a built-in with exact breakpoints and one-sided derivatives.
pub fn make_builtin(which: BuiltinYoung) -> Result<YoungFunction> {
    match which {
        BuiltinYoung::Power(p) => {
            if !(p >= 1.0) {
                return Err(Error::Precondition(format!(
                    "t^p is convex only for p >= 1, got p = {p}"
                )));
            }
            YoungFunction::from_pieces(
                format!("power({p})"),
                vec![Piece {
                    start: 0.0,
                    expr: PieceExpr::Power {
                        coeff: 1.0,
                        exponent: p,
                    },
                }],
            )
        }
        BuiltinYoung::Entropy => YoungFunction::from_pieces(
            "entropy",
            vec![Piece {
                start: 0.0,
                expr: PieceExpr::EntropyLog { coeff: 1.0 },
            }],
        ),
        BuiltinYoung::Counterexample => YoungFunction::from_pieces(
            "counterexample",
            vec![
                Piece {
                    start: 0.0,
                    expr: PieceExpr::Power {
                        coeff: 2.0,
                        exponent: 2.0,
                    },
                },
                Piece {
                    start: 1.0,
                    expr: PieceExpr::Affine {
                        slope: 4.0,
                        offset: -2.0,
                    },
                },
                Piece {
                    start: 2.0,
                    expr: PieceExpr::Sum(vec![
                        PieceExpr::Power {
                            coeff: 1.0,
                            exponent: 2.0,
                        },
                        PieceExpr::Affine {
                            slope: 0.0,
                            offset: 2.0,
                        },
                    ]),
                },
            ],
        ),
        BuiltinYoung::ExpMinusOne => YoungFunction::from_pieces(
            "exp_minus_one",
            vec![Piece {
                start: 0.0,
                expr: PieceExpr::ExpMinusOne { coeff: 1.0 },
            }],
        ),
        BuiltinYoung::Affine(a) => {
            if !(a > 0.0) {
                return Err(Error::Precondition(format!(
                    "affine Young functions need a positive slope, got {a}"
                )));
            }
            YoungFunction::from_pieces(
                format!("affine({a})"),
                vec![Piece {
                    start: 0.0,
                    expr: PieceExpr::Affine {
                        slope: a,
                        offset: 0.0,
                    },
                }],
            )
        }
    }
}

/// The reference library used by the characterization and norm suites.
pub fn library() -> Vec<YoungFunction> {
    vec![
        make_builtin(BuiltinYoung::Power(1.0)).unwrap(),
        make_builtin(BuiltinYoung::Power(1.5)).unwrap(),
        make_builtin(BuiltinYoung::Power(2.0)).unwrap(),
        make_builtin(BuiltinYoung::Power(3.0)).unwrap(),
        make_builtin(BuiltinYoung::Affine(2.0)).unwrap(),
        make_builtin(BuiltinYoung::Entropy).unwrap(),
        make_builtin(BuiltinYoung::Counterexample).unwrap(),
        make_builtin(BuiltinYoung::ExpMinusOne).unwrap(),
    ]
}
