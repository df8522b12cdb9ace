//! Batch front end: a TOML run configuration in, CSV/JSON files out.
//!
//! Exit codes: 0 on success, 2 for configuration and validation failures
//! (bad keys, unstable model, premium outside the net-profit window), 1 for
//! numeric failures. `MARKHAWKES_THREADS` sets the worker thread count.

pub mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::error::HawkesError;

pub use commands::Artifact;
pub use config::{ClaimsSection, Format, ImpactKind, OutputSection, RunConfig, RunSection};

/// Environment variable holding the default worker thread count.
pub const THREADS_ENV: &str = "MARKHAWKES_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Model(#[from] HawkesError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Model(e) => match e {
                HawkesError::InvalidParameter(_)
                | HawkesError::Stability(_)
                | HawkesError::Window { .. }
                | HawkesError::NetProfit { .. }
                | HawkesError::HeavyTail(_)
                | HawkesError::CltCondition { .. } => 2,
                _ => 1,
            },
            CliError::Io(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "markhawkes", version, about = "Marked linear Hawkes processes: simulation, transforms, large deviations and ruin")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Simulate,
    RateFunction,
    Ruin,
    Cgf,
    CltCheck,
    ClusterMgf,
}

#[derive(Debug, clap::Args)]
pub struct CommonArgs {
    /// Run configuration (TOML).
    #[arg(short, long)]
    pub config: PathBuf,
    /// Override a config key, e.g. `--set run.seed=3`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
    /// Output directory (overrides `output.path`).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate one path: events.csv (tau, mark) and summary.json.
    Simulate(CommonArgs),
    /// Rate function rows (x, theta_star, x_star, lambda).
    RateFunction(CommonArgs),
    /// Lundberg exponent, w(z), heavy-tail asymptotics and Monte Carlo ruin.
    Ruin(CommonArgs),
    /// Limiting CGF rows (theta, x_star, gamma, converged).
    Cgf(CommonArgs),
    /// Monte Carlo check of the Gaussian limit.
    CltCheck(CommonArgs),
    /// Cluster MGF path F(t).
    ClusterMgf(CommonArgs),
}

impl Command {
    fn split(&self) -> (CommandKind, &CommonArgs) {
        match self {
            Command::Simulate(a) => (CommandKind::Simulate, a),
            Command::RateFunction(a) => (CommandKind::RateFunction, a),
            Command::Ruin(a) => (CommandKind::Ruin, a),
            Command::Cgf(a) => (CommandKind::Cgf, a),
            Command::CltCheck(a) => (CommandKind::CltCheck, a),
            Command::ClusterMgf(a) => (CommandKind::ClusterMgf, a),
        }
    }
}

/// Runs one command on a parsed configuration.
pub fn execute(kind: CommandKind, config: &RunConfig) -> Result<Vec<Artifact>, CliError> {
    config.model.check()?;
    match kind {
        CommandKind::Simulate => commands::simulate(config),
        CommandKind::RateFunction => commands::rate_function(config),
        CommandKind::Ruin => commands::ruin(config),
        CommandKind::Cgf => commands::cgf(config),
        CommandKind::CltCheck => commands::clt_check(config),
        CommandKind::ClusterMgf => commands::cluster_mgf(config),
    }
}

/// Writes artifacts into `dir`, or to `out` when no directory is set.
pub fn emit(artifacts: &[Artifact], dir: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    match dir {
        Some(d) => {
            for a in artifacts {
                output::write_atomic(d, &a.name, &a.contents)?;
            }
        }
        None => {
            for a in artifacts {
                out.write_all(a.contents.as_bytes())?;
            }
        }
    }
    Ok(())
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        // fails only if a pool already exists, in which case it is kept
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Entry point of the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    configure_threads();
    let (kind, common) = cli.command.split();
    let result = RunConfig::load(&common.config, &common.overrides).and_then(|config| {
        let artifacts = execute(kind, &config)?;
        let dir = common.output.clone().or_else(|| config.output.path.as_ref().map(PathBuf::from));
        emit(&artifacts, dir.as_deref(), &mut std::io::stdout().lock())
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
