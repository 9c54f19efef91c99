//! The empirical boundedness harness: apply an operator to a seeded family,
//! measure Orlicz-norm ratios, attach the symbol condition functionals and
//! threshold verdicts, and repeat on a refined grid. A sup ratio on a single
//! grid cannot separate bounded from slowly divergent; the verdict therefore
//! couples the sup with the refinement trend.

use orlab_core::conditions::{
    dyadic_radii, hormander_functional, mihlin_functional, mihlin_max_order, sg_seminorm,
    HormanderReport, MihlinReport, SeminormReport,
};
use orlab_core::error::{Error, Result};
use orlab_core::grid::GridConfig;
use orlab_core::norms::{lp_norm, luxemburg_norm, weak_orlicz_norm};
use orlab_core::operators::build_operator;
use orlab_core::phases::validate_phase;
use orlab_core::thresholds::{check_fio_orders, threshold_report, ThresholdReport};
use orlab_core::young::{compute_exponents, ExponentReport, YoungFunction};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::experiment::{ExperimentSpec, OperatorConfig};
use crate::family::generate_family;

pub const REPORT_SCHEMA_VERSION: u32 = 1;
/// Refinement-trend slope below which a sup ratio counts as stable.
pub const TREND_SLOPE_LIMIT: f64 = 0.05;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FunctionRatios {
    pub label: String,
    pub input_norm: f64,
    pub output_norm: f64,
    pub ratio: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weak_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub lp_ratios: Vec<(f64, f64)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionSummary {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mihlin: Option<MihlinReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hormander: Option<HormanderReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class_seminorm: Option<SeminormReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sg: Option<SeminormReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<ThresholdReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RefinementTrend {
    pub n_coarse: usize,
    pub n_fine: usize,
    pub sup_coarse: f64,
    pub sup_fine: f64,
    /// `log2(sup_fine / sup_coarse)`.
    pub slope: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weak_slope: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundednessReport {
    pub schema_version: u32,
    pub operator: String,
    pub symbol: String,
    pub phi: String,
    pub exponents: ExponentReport,
    pub per_function: Vec<FunctionRatios>,
    pub sup_ratio: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weak_sup_ratio: Option<f64>,
    pub conditions: ConditionSummary,
    pub refinement: RefinementTrend,
    pub bounded: bool,
}

fn ratios_at(
    spec: &ExperimentSpec,
    phi: &YoungFunction,
    n: usize,
) -> Result<Vec<FunctionRatios>> {
    let dim = spec.dim;
    let symbol = spec.symbol.build(dim)?;
    let op = build_operator(spec.operator.to_spec(dim)?, symbol)?;
    let family = generate_family(&spec.family, dim, spec.grid.extent, n)?;
    family
        .par_iter()
        .map(|member| {
            let out = op.apply(&member.f)?;
            let input_norm = luxemburg_norm(&member.f, phi)?.value;
            let output_norm = luxemburg_norm(&out, phi)?.value;
            let ratio = output_norm / input_norm;
            let weak_ratio = if spec.norms.weak_orlicz {
                let wi = weak_orlicz_norm(&member.f, phi)?.value;
                let wo = weak_orlicz_norm(&out, phi)?.value;
                Some(wo / wi)
            } else {
                None
            };
            let lp_ratios = spec
                .norms
                .lp
                .iter()
                .map(|&p| Ok((p, lp_norm(&out, p)? / lp_norm(&member.f, p)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(FunctionRatios {
                label: member.label.clone(),
                input_norm,
                output_norm,
                ratio,
                weak_ratio,
                lp_ratios,
            })
        })
        .collect()
}

fn sup_of(ratios: &[FunctionRatios]) -> f64 {
    ratios.iter().map(|r| r.ratio).fold(0.0, f64::max)
}

fn weak_sup_of(ratios: &[FunctionRatios]) -> Option<f64> {
    let vals: Vec<f64> = ratios.iter().filter_map(|r| r.weak_ratio).collect();
    if vals.is_empty() {
        None
    } else {
        Some(vals.into_iter().fold(0.0, f64::max))
    }
}

fn condition_summary(
    spec: &ExperimentSpec,
    exponents: &ExponentReport,
) -> Result<ConditionSummary> {
    let dim = spec.dim;
    let symbol = spec.symbol.build(dim)?;
    let mut summary = ConditionSummary {
        mihlin: None,
        hormander: None,
        class_seminorm: None,
        sg: None,
        threshold: None,
    };
    match &spec.operator {
        OperatorConfig::Multiplier => {
            summary.mihlin = Some(mihlin_functional(&symbol, dim, &GridConfig::probe_default())?);
            summary.hormander = Some(hormander_functional(&symbol, dim, &dyadic_radii())?);
        }
        OperatorConfig::PsdoKn | OperatorConfig::PsdoGeneral { .. } => {
            summary.class_seminorm = Some(orlab_core::conditions::hormander_class_seminorm(
                &symbol,
                0.0,
                1.0,
                0.0,
                mihlin_max_order(dim),
            )?);
        }
        OperatorConfig::Fio { .. } => {
            let (m, mu) = symbol.sg_orders();
            summary.sg = Some(sg_seminorm(&symbol, m, mu, mihlin_max_order(dim))?);
            summary.threshold = Some(threshold_report(dim, exponents, m, mu, 0.1)?);
        }
    }
    Ok(summary)
}

/// Run the boundedness experiment. Refuses non-strict Young functions and,
/// for oscillatory-integral specs, inadmissible phases or orders.
pub fn run_boundedness(spec: &ExperimentSpec) -> Result<BoundednessReport> {
    spec.validate()?;
    let phi = spec.phi()?;
    let exponents = compute_exponents(&phi, &GridConfig::exponent_default())?;
    if !exponents.is_strict() {
        return Err(Error::NotStrict {
            q_phi: exponents.q_phi,
            p_phi: exponents.p_phi,
        });
    }

    if let OperatorConfig::Fio { phase } = &spec.operator {
        let descriptor = phase.build(spec.dim)?;
        let report = validate_phase(&descriptor, &GridConfig::probe_default())?;
        if let Some(reason) = report.rejection_reason() {
            return Err(Error::PhaseRejected(reason));
        }
        let symbol = spec.symbol.build(spec.dim)?;
        if symbol.support_cutoff().is_none() {
            return Err(Error::Precondition(
                "oscillatory-integral amplitudes need a frequency cutoff".into(),
            ));
        }
        let (m, mu) = symbol.sg_orders();
        if !check_fio_orders(m, mu, spec.dim, &exponents)? {
            return Err(Error::OrderViolation(format!(
                "orders (m, mu) = ({m}, {mu}) do not lie strictly below the threshold {}",
                orlab_core::thresholds::fio_threshold(spec.dim, &exponents)?
            )));
        }
    }

    let coarse = ratios_at(spec, &phi, spec.grid.n)?;
    let fine = ratios_at(spec, &phi, spec.grid.n * 2)?;

    let sup_coarse = sup_of(&coarse);
    let sup_fine = sup_of(&fine);
    let slope = (sup_fine / sup_coarse).log2();
    let weak_slope = match (weak_sup_of(&coarse), weak_sup_of(&fine)) {
        (Some(a), Some(b)) => Some((b / a).log2()),
        _ => None,
    };

    let conditions = condition_summary(spec, &exponents)?;
    let bounded = sup_fine.is_finite() && sup_coarse.is_finite() && slope < TREND_SLOPE_LIMIT;

    Ok(BoundednessReport {
        schema_version: REPORT_SCHEMA_VERSION,
        operator: spec.operator.tag().to_string(),
        symbol: format!("{}{:?}", spec.symbol.name, spec.symbol.params),
        phi: phi.label().to_string(),
        exponents,
        weak_sup_ratio: weak_sup_of(&coarse),
        per_function: coarse,
        sup_ratio: sup_coarse,
        conditions,
        refinement: RefinementTrend {
            n_coarse: spec.grid.n,
            n_fine: spec.grid.n * 2,
            sup_coarse,
            sup_fine,
            slope,
            weak_slope,
        },
        bounded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::{GridSpec, NormSelection, SymbolConfig};
    use crate::family::{FamilyConfig, FamilyKind};
    use orlab_core::young::YoungDescriptor;

    fn base_spec() -> ExperimentSpec {
        ExperimentSpec {
            operator: OperatorConfig::Multiplier,
            symbol: SymbolConfig::named("identity", &[]),
            phi: YoungDescriptor::builtin("counterexample", &[]),
            family: FamilyConfig {
                kinds: vec![FamilyKind::Gaussian, FamilyKind::RandomTrig],
                count: 2,
                seed: 11,
            },
            grid: GridSpec {
                extent: 8.0,
                n: 64,
            },
            norms: NormSelection::default(),
            dim: 1,
        }
    }

    #[test]
    fn identity_operator_has_unit_ratios() {
        let report = run_boundedness(&base_spec()).unwrap();
        for r in &report.per_function {
            assert!((r.ratio - 1.0).abs() < 1e-9, "{}: {}", r.label, r.ratio);
            assert!((r.weak_ratio.unwrap() - 1.0).abs() < 1e-9);
        }
        assert!(report.bounded);
        assert!(report.refinement.slope.abs() < 1e-9);
    }

    #[test]
    fn non_strict_phi_is_refused() {
        let mut spec = base_spec();
        spec.phi = YoungDescriptor::builtin("entropy", &[]);
        match run_boundedness(&spec) {
            Err(Error::NotStrict { q_phi, .. }) => assert!(q_phi <= 1.0 + 1e-3),
            other => panic!("expected a strictness refusal, got {other:?}"),
        }
    }

    #[test]
    fn fio_orders_are_gated() {
        let mut spec = base_spec();
        spec.operator = OperatorConfig::Fio {
            phase: crate::experiment::PhaseConfig {
                name: "translation-phase".into(),
                params: vec![0.5],
            },
        };
        // Zero orders fail the strict inequality at d = 1 (threshold 0).
        spec.symbol = SymbolConfig {
            name: "sg-power".into(),
            params: vec![0.0, 0.0],
            cutoff: Some(0.5),
            orders: None,
        };
        assert!(matches!(
            run_boundedness(&spec),
            Err(Error::OrderViolation(_))
        ));
        // Slightly negative orders are admitted.
        spec.symbol.params = vec![-0.01, -0.01];
        let report = run_boundedness(&spec).unwrap();
        assert!(report.conditions.threshold.as_ref().unwrap().admissible);
        assert!(report.sup_ratio.is_finite());
    }

    #[test]
    fn missing_cutoff_is_refused_for_fio() {
        let mut spec = base_spec();
        spec.operator = OperatorConfig::Fio {
            phase: crate::experiment::PhaseConfig {
                name: "flat-phase".into(),
                params: vec![],
            },
        };
        spec.symbol = SymbolConfig {
            name: "sg-power".into(),
            params: vec![-0.1, -0.1],
            cutoff: None,
            orders: None,
        };
        assert!(matches!(
            run_boundedness(&spec),
            Err(Error::Precondition(_))
        ));
    }
}
