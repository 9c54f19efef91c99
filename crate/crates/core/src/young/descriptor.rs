//! JSON descriptors for Young functions:
//! `{"kind": "...", "params": [...], "pieces": [...]}` plus nested forms for
//! the quadrature-defined constructions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{
    builtins::{make_builtin, BuiltinYoung},
    exp_convolved, smooth_equivalent, Piece, PieceExpr, YoungFunction, YoungKind,
};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum PieceForm {
    Power { coeff: f64, exponent: f64 },
    Affine { slope: f64, offset: f64 },
    EntropyLog { coeff: f64 },
    ExpMinusOne { coeff: f64 },
    Infinite,
    Sum { terms: Vec<PieceForm> },
}

impl From<&PieceExpr> for PieceForm {
    fn from(e: &PieceExpr) -> Self {
        match e {
            PieceExpr::Power { coeff, exponent } => PieceForm::Power {
                coeff: *coeff,
                exponent: *exponent,
            },
            PieceExpr::Affine { slope, offset } => PieceForm::Affine {
                slope: *slope,
                offset: *offset,
            },
            PieceExpr::EntropyLog { coeff } => PieceForm::EntropyLog { coeff: *coeff },
            PieceExpr::ExpMinusOne { coeff } => PieceForm::ExpMinusOne { coeff: *coeff },
            PieceExpr::Infinite => PieceForm::Infinite,
            PieceExpr::Sum(terms) => PieceForm::Sum {
                terms: terms.iter().map(PieceForm::from).collect(),
            },
        }
    }
}

impl From<&PieceForm> for PieceExpr {
    fn from(f: &PieceForm) -> Self {
        match f {
            PieceForm::Power { coeff, exponent } => PieceExpr::Power {
                coeff: *coeff,
                exponent: *exponent,
            },
            PieceForm::Affine { slope, offset } => PieceExpr::Affine {
                slope: *slope,
                offset: *offset,
            },
            PieceForm::EntropyLog { coeff } => PieceExpr::EntropyLog { coeff: *coeff },
            PieceForm::ExpMinusOne { coeff } => PieceExpr::ExpMinusOne { coeff: *coeff },
            PieceForm::Infinite => PieceExpr::Infinite,
            PieceForm::Sum { terms } => PieceExpr::Sum(terms.iter().map(PieceExpr::from).collect()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PieceDescriptor {
    pub start: f64,
    pub form: PieceForm,
}

/// Serializable description of a Young function.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct YoungDescriptor {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pieces: Vec<PieceDescriptor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Box<YoungDescriptor>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub terms: Vec<YoungDescriptor>,
}

impl YoungDescriptor {
    pub fn builtin(kind: &str, params: &[f64]) -> Self {
        YoungDescriptor {
            kind: kind.into(),
            params: params.to_vec(),
            pieces: Vec::new(),
            base: None,
            nodes: None,
            terms: Vec::new(),
        }
    }

    pub fn to_young(&self) -> Result<YoungFunction> {
        match self.kind.as_str() {
            "piecewise" => {
                let pieces: Vec<Piece> = self
                    .pieces
                    .iter()
                    .map(|p| Piece {
                        start: p.start,
                        expr: PieceExpr::from(&p.form),
                    })
                    .collect();
                YoungFunction::from_pieces("piecewise", pieces)
            }
            "smoothed" => {
                let base = self
                    .base
                    .as_ref()
                    .ok_or_else(|| Error::Serialization("smoothed needs a base".into()))?
                    .to_young()?;
                smooth_equivalent(&base, self.nodes.unwrap_or(64))
            }
            "exp-convolved" => {
                let base = self
                    .base
                    .as_ref()
                    .ok_or_else(|| Error::Serialization("exp-convolved needs a base".into()))?
                    .to_young()?;
                exp_convolved(&base, self.nodes.unwrap_or(32))
            }
            "sum" => {
                if self.terms.is_empty() {
                    return Err(Error::Serialization("sum needs terms".into()));
                }
                let terms: Result<Vec<YoungFunction>> =
                    self.terms.iter().map(|t| t.to_young()).collect();
                Ok(YoungFunction::sum("sum", terms?))
            }
            kind => make_builtin(BuiltinYoung::parse(kind, &self.params)?),
        }
    }

    pub fn from_young(phi: &YoungFunction) -> Self {
        match &phi.kind {
            YoungKind::Piecewise(pieces) => YoungDescriptor {
                kind: "piecewise".into(),
                params: Vec::new(),
                pieces: pieces
                    .iter()
                    .map(|p| PieceDescriptor {
                        start: p.start,
                        form: PieceForm::from(&p.expr),
                    })
                    .collect(),
                base: None,
                nodes: None,
                terms: Vec::new(),
            },
            YoungKind::Mollified { base, nodes, .. } => YoungDescriptor {
                kind: "smoothed".into(),
                params: Vec::new(),
                pieces: Vec::new(),
                base: Some(Box::new(Self::from_young(base))),
                nodes: Some(*nodes),
                terms: Vec::new(),
            },
            YoungKind::ExpConvolved { base, nodes } => YoungDescriptor {
                kind: "exp-convolved".into(),
                params: Vec::new(),
                pieces: Vec::new(),
                base: Some(Box::new(Self::from_young(base))),
                nodes: Some(*nodes),
                terms: Vec::new(),
            },
            YoungKind::Sum(terms) => YoungDescriptor {
                kind: "sum".into(),
                params: Vec::new(),
                pieces: Vec::new(),
                base: None,
                nodes: None,
                terms: terms.iter().map(Self::from_young).collect(),
            },
        }
    }
}

impl Serialize for YoungFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        YoungDescriptor::from_young(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for YoungFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let desc = YoungDescriptor::deserialize(d)?;
        desc.to_young().map_err(serde::de::Error::custom)
    }
}
