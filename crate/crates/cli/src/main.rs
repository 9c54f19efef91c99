//! `orlab` — exponent reports, Orlicz norms, operator application, and the
//! empirical boundedness harness from the command line.
//!
//! Exit codes: 0 = pass, 1 = a check ran and failed, 2 = precondition
//! refusal (non-strict Young function, inadmissible orders or phase, bad
//! inputs). Reports are JSON on stdout, or written to `--out`.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use orlab_core::grid::GridConfig;
use orlab_core::gridfn::GridFunction;
use orlab_core::norms::{luxemburg_norm, weak_orlicz_norm};
use orlab_core::operators::{
    apply_fio, apply_multiplier, apply_psdo_general, apply_psdo_kn, transfer_quantization,
    QuantizationMatrix, SampledSymbol,
};
use orlab_core::young::{compute_exponents, YoungDescriptor, YoungFunction};
use orlab_cli::experiment::{ExperimentSpec, PhaseConfig, SymbolConfig};
use orlab_cli::{boundedness, reproduce};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "orlab", version, about = "Orlicz-space operator laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lebesgue exponents and structural verdicts of a Young function.
    Exponents {
        /// JSON descriptor file.
        phi: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Luxemburg (or weak Orlicz) norm of a sampled grid function.
    Norm {
        /// Grid function file (JSON header + little-endian samples).
        input: PathBuf,
        #[arg(long)]
        phi: PathBuf,
        /// Compute the weak Orlicz norm instead.
        #[arg(long)]
        weak: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Derivative-decay condition table of a catalog multiplier.
    CheckMihlin {
        /// Catalog symbol, `name` or `name:p1,p2`.
        symbol: String,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Annulus-integral condition table of a catalog multiplier.
    CheckHormander {
        symbol: String,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply an operator to a sampled grid function.
    Apply {
        /// Operator family: multiplier | psdo-kn | psdo | fio.
        #[arg(long)]
        op: String,
        /// Catalog symbol, `name` or `name:p1,p2`.
        #[arg(long)]
        symbol: String,
        #[arg(long)]
        input: PathBuf,
        /// Quantization parameter for `psdo`.
        #[arg(long, default_value_t = 0.0)]
        a: f64,
        /// Catalog phase for `fio`.
        #[arg(long)]
        phase: Option<String>,
        /// Frequency support cutoff for the symbol.
        #[arg(long)]
        cutoff: Option<f64>,
        /// Write the transformed grid function here.
        #[arg(long)]
        save: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rewrite a phase-space-sampled symbol between quantizations.
    Transfer {
        /// Sampled symbol file, or a catalog spec with `--sample`.
        #[arg(long)]
        a1: Option<PathBuf>,
        /// Sample this catalog symbol instead of reading a file.
        #[arg(long)]
        sample: Option<String>,
        #[arg(long, default_value_t = 8.0)]
        x_extent: f64,
        #[arg(long, default_value_t = 12.566370614359172)]
        xi_extent: f64,
        #[arg(long, default_value_t = 64)]
        n: usize,
        /// Source quantization parameter.
        #[arg(long = "A1")]
        a_from: f64,
        /// Target quantization parameter.
        #[arg(long = "A2")]
        a_to: f64,
        /// Write the transferred symbol here.
        #[arg(long)]
        save: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a boundedness experiment from a JSON spec.
    Bench {
        experiment: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one scripted check (or `all`).
    Reproduce {
        case_id: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct NormReport {
    input: String,
    phi: String,
    weak: bool,
    value: f64,
    modular_at_value: f64,
    bisection_iters: u32,
    tolerance: f64,
}

#[derive(Serialize)]
struct ApplyReport {
    operator: String,
    symbol: String,
    n: usize,
    extent: f64,
    input_l2: f64,
    output_l2: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    saved: Option<String>,
}

#[derive(Serialize)]
struct TransferReport {
    a_from: f64,
    a_to: f64,
    n: usize,
    x_extent: f64,
    xi_extent: f64,
    max_abs_change: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    saved: Option<String>,
}

fn emit<T: Serialize>(value: &T, out: &Option<PathBuf>) -> anyhow::Result<()> {
    let mut json = serde_json::to_string_pretty(value)?;
    json.push('\n');
    match out {
        Some(path) => std::fs::write(path, json)?,
        None => print!("{json}"),
    }
    Ok(())
}

fn load_phi(path: &Path) -> anyhow::Result<YoungFunction> {
    let text = std::fs::read_to_string(path)?;
    let desc: YoungDescriptor = serde_json::from_str(&text)?;
    let phi = desc.to_young()?;
    phi.validate()?;
    Ok(phi)
}

/// Outcome of a subcommand: pass/fail drives the exit code.
enum Outcome {
    Pass,
    Fail,
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Exponents { phi, out } => {
            let phi = load_phi(&phi)?;
            let report = compute_exponents(&phi, &GridConfig::exponent_default())?;
            emit(&report, &out)?;
            Ok(Outcome::Pass)
        }
        Command::Norm {
            input,
            phi,
            weak,
            out,
        } => {
            let f = GridFunction::read_from(&input)?;
            let phi = load_phi(&phi)?;
            let r = if weak {
                weak_orlicz_norm(&f, &phi)?
            } else {
                luxemburg_norm(&f, &phi)?
            };
            emit(
                &NormReport {
                    input: input.display().to_string(),
                    phi: phi.label().to_string(),
                    weak,
                    value: r.value,
                    modular_at_value: r.modular_at_value,
                    bisection_iters: r.bisection_iters,
                    tolerance: r.tolerance,
                },
                &out,
            )?;
            Ok(Outcome::Pass)
        }
        Command::CheckMihlin { symbol, dim, out } => {
            let sym = SymbolConfig::parse(&symbol)?.build(dim)?;
            let report =
                orlab_core::conditions::mihlin_functional(&sym, dim, &GridConfig::probe_default())?;
            let divergent = report.divergent;
            emit(&report, &out)?;
            Ok(if divergent { Outcome::Fail } else { Outcome::Pass })
        }
        Command::CheckHormander { symbol, dim, out } => {
            let sym = SymbolConfig::parse(&symbol)?.build(dim)?;
            let report = orlab_core::conditions::hormander_functional(
                &sym,
                dim,
                &orlab_core::conditions::dyadic_radii(),
            )?;
            emit(&report, &out)?;
            Ok(Outcome::Pass)
        }
        Command::Apply {
            op,
            symbol,
            input,
            a,
            phase,
            cutoff,
            save,
            out,
        } => {
            let f = GridFunction::read_from(&input)?;
            let mut sym_cfg = SymbolConfig::parse(&symbol)?;
            sym_cfg.cutoff = cutoff;
            let sym = sym_cfg.build(f.dim())?;
            let result = match op.as_str() {
                "multiplier" => apply_multiplier(&sym, &f)?,
                "psdo-kn" => apply_psdo_kn(&sym, &f)?,
                "psdo" => apply_psdo_general(&sym, &QuantizationMatrix::scalar(a), &f)?,
                "fio" => {
                    let phase_spec = phase.ok_or_else(|| {
                        orlab_core::Error::Precondition("fio needs --phase".into())
                    })?;
                    let ph = PhaseConfig::parse(&phase_spec)?.build(f.dim())?;
                    apply_fio(&sym, &ph, &f)?
                }
                other => {
                    return Err(orlab_core::Error::UnknownCatalogEntry(format!(
                        "operator '{other}'"
                    ))
                    .into())
                }
            };
            let saved = match &save {
                Some(path) => {
                    result.write_to(path)?;
                    Some(path.display().to_string())
                }
                None => None,
            };
            emit(
                &ApplyReport {
                    operator: op,
                    symbol,
                    n: f.n(),
                    extent: f.extent(),
                    input_l2: orlab_core::norms::lp_norm(&f, 2.0)?,
                    output_l2: orlab_core::norms::lp_norm(&result, 2.0)?,
                    saved,
                },
                &out,
            )?;
            Ok(Outcome::Pass)
        }
        Command::Transfer {
            a1,
            sample,
            x_extent,
            xi_extent,
            n,
            a_from,
            a_to,
            save,
            out,
        } => {
            let source = match (&a1, &sample) {
                (Some(path), None) => SampledSymbol::read_from(path)?,
                (None, Some(spec)) => {
                    let sym = SymbolConfig::parse(spec)?.build(1)?;
                    SampledSymbol::from_symbol(&sym, x_extent, xi_extent, n)?
                }
                _ => {
                    return Err(orlab_core::Error::Precondition(
                        "provide exactly one of --a1 <file> or --sample <catalog spec>".into(),
                    )
                    .into())
                }
            };
            let transferred = transfer_quantization(
                &source,
                &QuantizationMatrix::scalar(a_from),
                &QuantizationMatrix::scalar(a_to),
            )?;
            let change = source.max_abs_diff(&transferred)?;
            let saved = match &save {
                Some(path) => {
                    transferred.write_to(path)?;
                    Some(path.display().to_string())
                }
                None => None,
            };
            emit(
                &TransferReport {
                    a_from,
                    a_to,
                    n: source.n,
                    x_extent: source.x_extent,
                    xi_extent: source.xi_extent,
                    max_abs_change: change,
                    saved,
                },
                &out,
            )?;
            Ok(Outcome::Pass)
        }
        Command::Bench { experiment, out } => {
            let text = std::fs::read_to_string(&experiment)?;
            let spec: ExperimentSpec = serde_json::from_str(&text)
                .map_err(|e| orlab_core::Error::Serialization(format!("bad experiment: {e}")))?;
            let report = boundedness::run_boundedness(&spec)?;
            let bounded = report.bounded;
            emit(&report, &out)?;
            Ok(if bounded { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Reproduce { case_id, out } => {
            if case_id == "all" {
                let reports = reproduce::run_all()?;
                let pass = reports.iter().all(|r| r.pass);
                emit(&reports, &out)?;
                Ok(if pass { Outcome::Pass } else { Outcome::Fail })
            } else {
                let report = reproduce::run_case(&case_id)?;
                let pass = report.pass;
                emit(&report, &out)?;
                Ok(if pass { Outcome::Pass } else { Outcome::Fail })
            }
        }
    }
}

fn main() -> ExitCode {
    // The only environment knob: worker thread count for family processing.
    if let Ok(threads) = std::env::var("ORLAB_THREADS") {
        if let Ok(threads) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::from(0),
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            let refusal = err
                .downcast_ref::<orlab_core::Error>()
                .map(|e| e.is_refusal())
                // Unreadable inputs and malformed configs are refusals too.
                .unwrap_or(true);
            ExitCode::from(if refusal { 2 } else { 1 })
        }
    }
}
