//! One function per subcommand; each returns the files it produces.

use serde_json::{json, Value};

use crate::asymptotics::{clt_check_with, lln_mean};
use crate::cgf::{cluster_mgf_path, critical_pair, minimal_fixed_point_with, Extended};
use crate::error::HawkesError;
use crate::ldp::rate_point;
use crate::risk::{
    default_horizon, finite_horizon_knee, finite_horizon_rate, heavy_tail_finite, heavy_tail_infinite,
    lundberg_exponent, net_profit_window, ruin_mc_curve, RiskModel,
};
use crate::simulate::{simulate_cluster_with, simulate_thinning_with, Sampler, SimOptions};

use super::config::{Format, RunConfig};
use super::output::{csv, ext, fmt_ext, fmt_num, num, pretty};
use super::CliError;

/// A named output file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

fn artifact(name: impl Into<String>, contents: String) -> Artifact {
    Artifact { name: name.into(), contents }
}

fn echo(config: &RunConfig) -> Value {
    serde_json::to_value(config).expect("config serializes")
}

/// Rows as CSV, or as a JSON object `{command, columns, rows, config}`.
fn table(config: &RunConfig, command: &str, header: &[&str], rows: Vec<Vec<String>>, json_rows: Vec<Value>) -> Artifact {
    match config.output.format {
        Format::Csv => artifact(format!("{}.csv", command.replace('-', "_")), csv(header, &rows)),
        Format::Json => artifact(
            format!("{}.json", command.replace('-', "_")),
            pretty(&json!({ "command": command, "columns": header, "rows": json_rows, "config": echo(config) })),
        ),
    }
}

pub fn simulate(config: &RunConfig) -> Result<Vec<Artifact>, CliError> {
    let model = &config.model;
    let opts = SimOptions { max_events: config.run.max_events };
    let horizon = config.run.horizon;
    let stream = match config.run.sampler {
        Sampler::Thinning => simulate_thinning_with(model, horizon, config.rng(), opts)?,
        Sampler::Cluster => simulate_cluster_with(model, horizon, config.rng(), opts)?.0,
    };
    let rows: Vec<Vec<String>> = stream.events.iter().map(|e| vec![fmt_num(e.time), fmt_num(e.mark)]).collect();
    let summary = json!({
        "command": "simulate",
        "n_t": stream.count(),
        "horizon": num(horizon),
        "mean_intensity": num(stream.count() as f64 / horizon),
        "lln_mean": num(lln_mean(model)?),
        "config": echo(config),
    });
    Ok(vec![artifact("events.csv", csv(&["tau", "mark"], &rows)), artifact("summary.json", pretty(&summary))])
}

fn default_x_grid(mu: f64) -> Vec<f64> {
    let mut grid: Vec<f64> = (1..=20).map(|i| 3.0 * mu * i as f64 / 20.0).collect();
    grid.push(mu);
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

pub fn rate_function(config: &RunConfig) -> Result<Vec<Artifact>, CliError> {
    let model = &config.model;
    let impact = config.impact()?;
    let grid = if config.run.x_grid.is_empty() {
        default_x_grid(lln_mean(model)? * impact.mean())
    } else {
        config.run.x_grid.clone()
    };
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for &x in &grid {
        let p = rate_point(model, x, &impact)?;
        rows.push(vec![fmt_num(x), fmt_num(p.theta_star), fmt_num(p.x_star), fmt_ext(p.lambda_value)]);
        json_rows.push(json!({
            "x": num(x), "theta_star": num(p.theta_star), "x_star": num(p.x_star), "lambda": ext(p.lambda_value)
        }));
    }
    Ok(vec![table(config, "rate-function", &["x", "theta_star", "x_star", "lambda"], rows, json_rows)])
}

pub fn cgf(config: &RunConfig) -> Result<Vec<Artifact>, CliError> {
    let model = &config.model;
    let impact = config.impact()?;
    let grid = if config.run.theta_grid.is_empty() {
        let hi = match critical_pair(model, &impact) {
            Ok(c) => c.theta_c,
            Err(HawkesError::Steepness) => 1.0,
            Err(e) => return Err(e.into()),
        };
        (1..=50).map(|i| -1.0 + (hi + 1.0) * i as f64 / 50.0).collect()
    } else {
        config.run.theta_grid.clone()
    };
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for &theta in &grid {
        let fp = minimal_fixed_point_with(model, theta, &impact, config.tolerances())?;
        let gamma = match fp.x_star {
            Extended::Finite(x) => Extended::Finite(model.nu * (x - 1.0)),
            Extended::Infinite => Extended::Infinite,
        };
        rows.push(vec![fmt_num(theta), fmt_ext(fp.x_star), fmt_ext(gamma), fp.converged.to_string()]);
        json_rows.push(json!({
            "theta": num(theta), "x_star": ext(fp.x_star), "gamma": ext(gamma), "converged": fp.converged
        }));
    }
    Ok(vec![table(config, "cgf", &["theta", "x_star", "gamma", "converged"], rows, json_rows)])
}

pub fn clt_check(config: &RunConfig) -> Result<Vec<Artifact>, CliError> {
    let r = clt_check_with(&config.model, config.run.horizon, config.run.replicas, config.rng(), config.run.sampler)?;
    let report = json!({
        "command": "clt-check",
        "replicas": r.replicas,
        "horizon": num(r.horizon),
        "mu": num(r.mu),
        "sigma2": num(r.sigma2),
        "sample_mean_rate": num(r.sample_mean_rate),
        "sample_var_rate": num(r.sample_var_rate),
        "ks_statistic": num(r.ks_statistic),
        "p_value": num(r.p_value),
        "config": echo(config),
    });
    Ok(vec![artifact("clt_check.json", pretty(&report))])
}

pub fn cluster_mgf(config: &RunConfig) -> Result<Vec<Artifact>, CliError> {
    let horizon = config.run.horizon;
    let step = config.run.step.unwrap_or(horizon / 2000.0);
    let path = cluster_mgf_path(&config.model, config.run.theta, horizon, step)?;
    let rows = path.times.iter().zip(&path.values).map(|(t, v)| vec![fmt_num(*t), fmt_num(*v)]).collect();
    let json_rows = path.times.iter().zip(&path.values).map(|(t, v)| json!({ "t": num(*t), "f": num(*v) })).collect();
    Ok(vec![table(config, "cluster-mgf", &["t", "f"], rows, json_rows)])
}

pub fn ruin(config: &RunConfig) -> Result<Vec<Artifact>, CliError> {
    let claims = config.claims()?;
    let risk = RiskModel::new(config.model.clone(), claims.law, claims.rho, claims.u)?;
    let reserves = if config.run.reserves.is_empty() {
        vec![5.0, 10.0, 15.0, 20.0]
    } else {
        config.run.reserves.clone()
    };
    let z_grid = if config.run.z_grid.is_empty() {
        vec![0.25, 0.5, 1.0, 2.0, 4.0]
    } else {
        config.run.z_grid.clone()
    };
    let mut out = serde_json::Map::new();
    out.insert("command".into(), json!("ruin"));

    if claims.law.is_heavy() {
        let k = heavy_tail_infinite(&risk, claims.u)?.k;
        out.insert("k".into(), num(k));
        out.insert("rho_min".into(), num(risk.claim_rate()));
        let mut asym = Vec::new();
        for &u in &reserves {
            let inf = heavy_tail_infinite(&risk, u)?;
            let mut finite = Vec::new();
            for &t in &z_grid {
                let f = heavy_tail_finite(&risk, u, t)?;
                finite.push(json!({ "t": num(t), "psi": num(f.psi) }));
            }
            asym.push(json!({
                "u": num(u), "integrated_tail": num(inf.integrated_tail), "psi_infinite": num(inf.psi), "finite_horizon": finite
            }));
        }
        out.insert("asymptotics".into(), Value::Array(asym));
    } else {
        let (rho_min, rho_max) = net_profit_window(&risk)?;
        let l = lundberg_exponent(&risk)?;
        out.insert("theta_dagger".into(), num(l.theta_dagger));
        out.insert("residual".into(), num(l.residual));
        out.insert("rho_window".into(), json!([num(rho_min), num(rho_max)]));
        out.insert("knee".into(), num(finite_horizon_knee(&risk)?));
        let mut w = Vec::new();
        for &z in &z_grid {
            w.push(json!({ "z": num(z), "w": num(finite_horizon_rate(&risk, z)?) }));
        }
        out.insert("w".into(), Value::Array(w));
    }

    let max_u = reserves.iter().cloned().fold(0.0, f64::max);
    let horizon = match config.run.ruin_horizon {
        Some(h) => h,
        None => default_horizon(&risk, max_u)?,
    };
    let curve = ruin_mc_curve(&risk, &reserves, horizon, config.run.replicas, config.rng())?;
    let mc: Vec<Value> = curve
        .iter()
        .map(|e| json!({ "u": num(e.u), "psi_hat": num(e.psi_hat), "ci_low": num(e.ci_low), "ci_high": num(e.ci_high) }))
        .collect();
    out.insert("psi_mc".into(), Value::Array(mc));
    out.insert("mc_horizon".into(), num(horizon));
    out.insert("replicas".into(), json!(config.run.replicas));
    out.insert("config".into(), echo(config));
    Ok(vec![artifact("ruin.json", pretty(&Value::Object(out)))])
}
