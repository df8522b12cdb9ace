//! Run configuration: a TOML file with `[model]`, `[claims]`, `[run]` and
//! `[output]` sections. Unknown keys are rejected.
//!
//! ```toml
//! [model]
//! nu = 1.0
//! kernel = { family = "exp", beta = 1.0 }
//! marks = { family = "exponential", rate = 2.0 }
//!
//! [claims]                      # ruin and compound transforms only
//! law = { family = "exponential", rate = 1.0 }
//! rho = 3.0
//! u = 10.0
//!
//! [run]                         # every key optional
//! horizon = 100.0
//! replicas = 1000
//! seed = 7
//!
//! [output]
//! path = "out"                  # directory; stdout when absent
//! format = "csv"                # or "json"
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cgf::{Impact, Tolerances};
use crate::model::{ClaimLaw, HawkesModel};
use crate::simulate::{RngSpec, Sampler, DEFAULT_MAX_EVENTS};

use super::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: HawkesModel,
    #[serde(default)]
    pub claims: Option<ClaimsSection>,
    #[serde(default)]
    pub run: RunSection,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClaimsSection {
    pub law: ClaimLaw,
    /// Premium rate.
    pub rho: f64,
    /// Initial reserve.
    pub u: f64,
}

/// Transform applied by `cgf` and `rate-function`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ImpactKind {
    #[default]
    Counting,
    /// Uses the `[claims]` law.
    Compound,
}

/// Command parameters. Grids left empty are filled with command defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunSection {
    /// Simulation horizon `T` (simulate, clt-check, cluster-mgf).
    pub horizon: f64,
    /// Monte Carlo replicas (clt-check, ruin).
    pub replicas: usize,
    pub seed: u64,
    pub stream: u64,
    pub sampler: Sampler,
    pub max_events: usize,
    pub impact: ImpactKind,
    /// rate-function abscissae; default 20 points on `(0, 3 mu]` plus `mu`.
    pub x_grid: Vec<f64>,
    /// cgf abscissae; default 50 points on `(-1, theta_c]`.
    pub theta_grid: Vec<f64>,
    /// ruin reserves; default `[5, 10, 15, 20]`.
    pub reserves: Vec<f64>,
    /// ruin: `z` values for `w(z)` (light claims) or horizons `T` for
    /// `psi(u, u T)` (heavy claims); default `[0.25, 0.5, 1, 2, 4]`.
    pub z_grid: Vec<f64>,
    /// ruin: Monte Carlo horizon; default `50 max(reserves) / (rho - rho_min)`.
    pub ruin_horizon: Option<f64>,
    /// cluster-mgf: `theta`.
    pub theta: f64,
    /// cluster-mgf: time step; default `horizon / 2000`.
    pub step: Option<f64>,
    /// Fixed-point tolerance and iteration cap.
    pub tol_fp: f64,
    pub max_iter: usize,
}

impl Default for RunSection {
    fn default() -> Self {
        let tol = Tolerances::default();
        RunSection {
            horizon: 100.0,
            replicas: 1000,
            seed: 0,
            stream: 0,
            sampler: Sampler::Thinning,
            max_events: DEFAULT_MAX_EVENTS,
            impact: ImpactKind::Counting,
            x_grid: Vec::new(),
            theta_grid: Vec::new(),
            reserves: Vec::new(),
            z_grid: Vec::new(),
            ruin_horizon: None,
            theta: 0.1,
            step: None,
            tol_fp: tol.tol_fp,
            max_iter: tol.max_iter,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    /// Output directory; results go to stdout when absent.
    pub path: Option<String>,
    pub format: Format,
}

impl RunConfig {
    /// Parses TOML text, applying `key.path=value` overrides first.
    pub fn parse(text: &str, overrides: &[String]) -> Result<Self, CliError> {
        if overrides.is_empty() {
            return toml::from_str(text).map_err(|e| CliError::Config(e.to_string()));
        }
        let mut table: toml::Table = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        for o in overrides {
            apply_override(&mut table, o)?;
        }
        toml::Value::Table(table)
            .try_into()
            .map_err(|e: toml::de::Error| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path, overrides: &[String]) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, overrides).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn rng(&self) -> RngSpec {
        RngSpec::new(self.run.seed, self.run.stream)
    }

    pub fn tolerances(&self) -> Tolerances {
        Tolerances { tol_fp: self.run.tol_fp, max_iter: self.run.max_iter }
    }

    pub fn claims(&self) -> Result<ClaimsSection, CliError> {
        self.claims.ok_or_else(|| CliError::Config("missing [claims] section".into()))
    }

    pub fn impact(&self) -> Result<Impact, CliError> {
        Ok(match self.run.impact {
            ImpactKind::Counting => Impact::Counting,
            ImpactKind::Compound => Impact::Compound(self.claims()?.law),
        })
    }
}

/// `section.key=value`; the value is read as a TOML literal, or as a bare
/// string if it does not parse as one.
fn apply_override(table: &mut toml::Table, spec: &str) -> Result<(), CliError> {
    let (key, raw) = spec
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("override `{spec}` is not key=value")))?;
    let value = toml::from_str::<toml::Table>(&format!("v = {raw}"))
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(raw.to_string()));
    let parts: Vec<&str> = key.trim().split('.').collect();
    let (last, prefix) = parts.split_last().expect("split yields at least one part");
    let mut cursor = table;
    for p in prefix {
        cursor = cursor
            .entry(p.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()))
            .as_table_mut()
            .ok_or_else(|| CliError::Config(format!("override `{key}`: `{p}` is not a table")))?;
    }
    cursor.insert(last.to_string(), value);
    Ok(())
}
