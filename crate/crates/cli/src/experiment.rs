//! Experiment configuration: which operator, which symbol, which Young
//! function, which family, on which grid. Symbols and phases are referenced
//! by catalog name; arbitrary user symbols stay a library-level feature.

use orlab_core::error::{Error, Result};
use orlab_core::operators::{OperatorSpec, QuantizationMatrix};
use orlab_core::phases::{build_phase, PhaseDescriptor};
use orlab_core::symbols::{build_symbol, SymbolDescriptor};
use orlab_core::young::{YoungDescriptor, YoungFunction};
use serde::{Deserialize, Serialize};

use crate::family::FamilyConfig;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PhaseConfig {
    pub name: String,
    #[serde(default)]
    pub params: Vec<f64>,
}

impl PhaseConfig {
    pub fn build(&self, dim: usize) -> Result<PhaseDescriptor> {
        build_phase(&self.name, &self.params, dim)
    }

    /// Parse `name` or `name:p1,p2` syntax.
    pub fn parse(spec: &str) -> Result<Self> {
        let (name, params) = split_spec(spec)?;
        Ok(PhaseConfig { name, params })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SymbolConfig {
    pub name: String,
    #[serde(default)]
    pub params: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<f64>,
    /// Override for the declared SG orders `(m, μ)`; defaults to the
    /// catalog entry's own orders.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orders: Option<(f64, f64)>,
}

impl SymbolConfig {
    pub fn named(name: &str, params: &[f64]) -> Self {
        SymbolConfig {
            name: name.into(),
            params: params.to_vec(),
            cutoff: None,
            orders: None,
        }
    }

    pub fn parse(spec: &str) -> Result<Self> {
        let (name, params) = split_spec(spec)?;
        Ok(SymbolConfig {
            name,
            params,
            cutoff: None,
            orders: None,
        })
    }

    pub fn build(&self, dim: usize) -> Result<SymbolDescriptor> {
        let mut sym = build_symbol(&self.name, &self.params, dim, self.cutoff)?;
        if let Some((m, mu)) = self.orders {
            sym = sym.with_sg_orders(m, mu);
        }
        Ok(sym)
    }
}

fn split_spec(spec: &str) -> Result<(String, Vec<f64>)> {
    let mut parts = spec.splitn(2, ':');
    let name = parts
        .next()
        .filter(|s| !s.is_empty())
        .ok_or_else(|| Error::Precondition(format!("empty spec '{spec}'")))?;
    let params = match parts.next() {
        None => Vec::new(),
        Some(rest) => rest
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Precondition(format!("bad parameter '{tok}': {e}")))
            })
            .collect::<Result<Vec<f64>>>()?,
    };
    Ok((name.to_string(), params))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OperatorConfig {
    Multiplier,
    PsdoKn,
    PsdoGeneral { a: f64 },
    Fio { phase: PhaseConfig },
}

impl OperatorConfig {
    pub fn tag(&self) -> &'static str {
        match self {
            OperatorConfig::Multiplier => "multiplier",
            OperatorConfig::PsdoKn => "psdo-kn",
            OperatorConfig::PsdoGeneral { .. } => "psdo",
            OperatorConfig::Fio { .. } => "fio",
        }
    }

    pub fn to_spec(&self, dim: usize) -> Result<OperatorSpec> {
        Ok(match self {
            OperatorConfig::Multiplier => OperatorSpec::Multiplier,
            OperatorConfig::PsdoKn => OperatorSpec::KohnNirenberg,
            OperatorConfig::PsdoGeneral { a } => {
                OperatorSpec::General(QuantizationMatrix::scalar(*a))
            }
            OperatorConfig::Fio { phase } => OperatorSpec::Fio(phase.build(dim)?),
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GridSpec {
    pub extent: f64,
    pub n: usize,
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormSelection {
    #[serde(default = "default_true")]
    pub orlicz: bool,
    #[serde(default = "default_true")]
    pub weak_orlicz: bool,
    #[serde(default)]
    pub lp: Vec<f64>,
}

impl Default for NormSelection {
    fn default() -> Self {
        NormSelection {
            orlicz: true,
            weak_orlicz: true,
            lp: vec![2.0],
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub operator: OperatorConfig,
    pub symbol: SymbolConfig,
    pub phi: YoungDescriptor,
    #[serde(default)]
    pub family: FamilyConfig,
    pub grid: GridSpec,
    #[serde(default)]
    pub norms: NormSelection,
    #[serde(default = "default_dim")]
    pub dim: usize,
}

fn default_dim() -> usize {
    1
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        if !self.grid.n.is_power_of_two() {
            return Err(Error::Precondition(format!(
                "grid n must be a power of two, got {}",
                self.grid.n
            )));
        }
        if !(self.grid.extent > 0.0) {
            return Err(Error::Precondition("grid extent must be positive".into()));
        }
        if self.dim != 1 && self.dim != 2 {
            return Err(Error::Precondition(format!("dim must be 1 or 2, got {}", self.dim)));
        }
        Ok(())
    }

    pub fn phi(&self) -> Result<YoungFunction> {
        self.phi.to_young()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_round_trips_through_json() {
        let spec = ExperimentSpec {
            operator: OperatorConfig::Fio {
                phase: PhaseConfig {
                    name: "translation-phase".into(),
                    params: vec![0.5],
                },
            },
            symbol: SymbolConfig {
                name: "sg-power".into(),
                params: vec![-0.5, -0.5],
                cutoff: Some(0.5),
                orders: None,
            },
            phi: YoungDescriptor::builtin("counterexample", &[]),
            family: FamilyConfig::default(),
            grid: GridSpec {
                extent: 8.0,
                n: 256,
            },
            norms: NormSelection::default(),
            dim: 1,
        };
        let json = serde_json::to_string_pretty(&spec).unwrap();
        let back: ExperimentSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back.operator.tag(), "fio");
        assert_eq!(back.symbol.cutoff, Some(0.5));
        back.validate().unwrap();
    }

    #[test]
    fn spec_syntax_parsing() {
        let s = SymbolConfig::parse("sg-power:-1,0.5").unwrap();
        assert_eq!(s.name, "sg-power");
        assert_eq!(s.params, vec![-1.0, 0.5]);
        let p = PhaseConfig::parse("flat-phase").unwrap();
        assert!(p.params.is_empty());
        assert!(SymbolConfig::parse("sgn:abc").is_err());
    }

    #[test]
    fn validation_rejects_bad_grids() {
        let mut spec = ExperimentSpec {
            operator: OperatorConfig::Multiplier,
            symbol: SymbolConfig::named("sgn", &[]),
            phi: YoungDescriptor::builtin("power", &[2.0]),
            family: FamilyConfig::default(),
            grid: GridSpec {
                extent: 8.0,
                n: 100,
            },
            norms: NormSelection::default(),
            dim: 1,
        };
        assert!(spec.validate().is_err());
        spec.grid.n = 128;
        assert!(spec.validate().is_ok());
    }
}
