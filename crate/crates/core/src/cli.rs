//! Command-line surface. Parsing and dispatch live here so they can be
//! exercised without spawning the binary.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::experiments::{
    run_qec_montecarlo, DjCircuit, DjConfig, DjEngine, ExperimentError, QecMonteCarloConfig,
};
use crate::noise_algebra::{sweep_grid, AlgebraError, ErrorProbabilities};
use crate::report::{self, Format, FractionsReport};
use crate::sensor_qec::enumerate_truth_table;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Experiment(#[from] ExperimentError),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
}

#[derive(Debug, Parser)]
#[command(
    name = "sensor-assist",
    version,
    about = "Sensor-assisted fault mitigation analyses"
)]
pub struct Cli {
    /// Output format (defaults to csv for tables, json for reports)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output to PATH instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Master seed for Monte Carlo runs
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// All 64 error combinations with syndromes and outcomes
    TruthTable,
    /// Closed-form outcome fractions for one (phat, p) or (o, p) point
    Fractions(ProbabilityArgs),
    /// Effective fault rates over a (phat, entangling fraction) grid
    Sweep(SweepArgs),
    /// Monte Carlo validation of the outcome fractions
    QecMc(QecMcArgs),
    /// Noisy balanced Deutsch-Jozsa benchmark with sensor veto
    Dj(DjArgs),
}

#[derive(Debug, Args)]
pub struct ProbabilityArgs {
    /// Total per-qubit error probability, o + p - o*p
    #[arg(long)]
    pub phat: Option<f64>,
    /// Environmental (sensor-detectable) error probability
    #[arg(long)]
    pub o: Option<f64>,
    /// Entangling error probability
    #[arg(long)]
    pub p: f64,
}

impl ProbabilityArgs {
    pub fn resolve(&self) -> Result<ErrorProbabilities, CliError> {
        match (self.phat, self.o) {
            (Some(phat), None) => Ok(ErrorProbabilities::from_total(phat, self.p)?),
            (None, Some(o)) => Ok(ErrorProbabilities::new(o, self.p)?),
            (Some(_), Some(_)) => Err(CliError::Usage(
                "give either --phat or --o together with --p, not both".into(),
            )),
            (None, None) => Err(CliError::Usage("one of --phat or --o is required".into())),
        }
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 0.0)]
    pub phat_min: f64,
    #[arg(long, default_value_t = 0.5)]
    pub phat_max: f64,
    #[arg(long, default_value_t = 0.0)]
    pub frac_min: f64,
    #[arg(long, default_value_t = 1.0)]
    pub frac_max: f64,
    /// Grid points per axis, endpoints included
    #[arg(long, default_value_t = 50)]
    pub steps: usize,
}

#[derive(Debug, Args)]
pub struct QecMcArgs {
    #[arg(long, default_value_t = 1_000_000)]
    pub shots: u64,
    #[command(flatten)]
    pub probs: ProbabilityArgs,
    #[arg(long, default_value_t = 1.0)]
    pub sensor_efficiency: f64,
    /// Fraction of shots also executed on the statevector simulator
    #[arg(long, default_value_t = 0.01)]
    pub audit_fraction: f64,
}

#[derive(Debug, Args)]
pub struct DjArgs {
    #[arg(long, default_value_t = 81_920)]
    pub shots: u64,
    #[arg(long, default_value_t = 1)]
    pub trials: u32,
    /// Bit-flip probability at each error site
    #[arg(long, default_value_t = 0.07)]
    pub gate_error: f64,
    /// Probability that a realized flip is seen by the sensor
    #[arg(long, default_value_t = 0.40)]
    pub detectable: f64,
    /// Discard shots in which a sensor fired
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub veto: bool,
    /// Alternative circuit in the flat gate-list format
    #[arg(long, value_name = "PATH")]
    pub circuit: Option<PathBuf>,
}

/// Runs the parsed command and returns the rendered output.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let fmt = |default| cli.format.unwrap_or(default);
    match &cli.command {
        Command::TruthTable => Ok(report::truth_table(
            &enumerate_truth_table(),
            fmt(Format::Csv),
        )),
        Command::Fractions(args) => {
            let probs = args.resolve()?;
            Ok(FractionsReport::new(&probs).render(fmt(Format::Json)))
        }
        Command::Sweep(a) => {
            let cells = sweep_grid((a.phat_min, a.phat_max), (a.frac_min, a.frac_max), a.steps)?;
            Ok(report::sweep(&cells, fmt(Format::Csv)))
        }
        Command::QecMc(a) => {
            let probs = a.probs.resolve()?;
            let config = QecMonteCarloConfig {
                shots: a.shots,
                o: probs.o(),
                p: probs.p(),
                seed: cli.seed,
                sensor_efficiency: a.sensor_efficiency,
                audit_fraction: a.audit_fraction,
            };
            Ok(report::qec_montecarlo(
                &run_qec_montecarlo(&config)?,
                fmt(Format::Json),
            ))
        }
        Command::Dj(a) => {
            let engine = match &a.circuit {
                Some(path) => {
                    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
                        path: path.clone(),
                        source,
                    })?;
                    DjEngine::new(DjCircuit::parse(&text)?)?
                }
                None => DjEngine::canonical(),
            };
            let config = DjConfig {
                shots: a.shots,
                trials: a.trials,
                gate_error_prob: a.gate_error,
                detectable_fraction: a.detectable,
                veto_enabled: a.veto,
                seed: cli.seed,
            };
            Ok(report::dj_experiment(
                &engine.run(&config)?,
                fmt(Format::Json),
            ))
        }
    }
}

/// Warning for parameters outside the small-error regime, if any.
pub fn warning(cli: &Cli) -> Option<String> {
    let args = match &cli.command {
        Command::Fractions(a) => a,
        Command::QecMc(a) => &a.probs,
        _ => return None,
    };
    let probs = args.resolve().ok()?;
    (!probs.is_small()).then(|| {
        format!(
            "warning: o = {} and p = {} are not both below 0.5; the code is outside its intended regime",
            probs.o(),
            probs.p()
        )
    })
}

/// Writes `contents` to `path` through a sibling temporary file so a failed
/// write never leaves a partial output behind.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let err = |source| CliError::Write {
        path: path.to_path_buf(),
        source,
    };
    let name = path.file_name().ok_or_else(|| {
        err(io::Error::new(
            io::ErrorKind::InvalidInput,
            "not a file path",
        ))
    })?;
    let tmp = path.with_file_name(format!(
        ".{}.{}.tmp",
        name.to_string_lossy(),
        std::process::id()
    ));
    fs::write(&tmp, contents)
        .and_then(|_| fs::rename(&tmp, path))
        .map_err(|e| {
            let _ = fs::remove_file(&tmp);
            err(e)
        })
}
