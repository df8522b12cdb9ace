//! Law of large numbers and central limit theorem for `N_t`, with a Monte
//! Carlo harness that checks the Gaussian limit.

use serde::Serialize;

use crate::error::{HawkesError, Result};
use crate::model::HawkesModel;
use crate::simulate::{replicate, simulate, RngSpec, Sampler};
use crate::stats;

/// `lim N_t / t = nu / (1 - E[H])`.
pub fn lln_mean(model: &HawkesModel) -> Result<f64> {
    model.check()?;
    model.require_stable()?;
    Ok(model.nu / (1.0 - model.branching_ratio()))
}

/// `sigma^2 = nu (1 + Var[H]) / (1 - E[H])^3`.
///
/// If the kernel tail decays too slowly for the CLT, the formula value is
/// returned inside [`HawkesError::CltCondition`].
pub fn clt_variance(model: &HawkesModel) -> Result<f64> {
    model.check()?;
    model.require_stable()?;
    let one_minus = 1.0 - model.branching_ratio();
    let variance = model.nu * (1.0 + model.impact_variance()) / one_minus.powi(3);
    if model.validate().clt_condition {
        Ok(variance)
    } else {
        Err(HawkesError::CltCondition { variance })
    }
}

/// Mean of the stationary intensity `alpha + beta Z`: `alpha / (1 - beta E[H])`.
pub fn stationary_mean_intensity(alpha: f64, beta: f64, model: &HawkesModel) -> Result<f64> {
    let load = beta * model.branching_ratio();
    if load >= 1.0 {
        return Err(HawkesError::Stability(load));
    }
    Ok(alpha / (1.0 - load))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CltReport {
    pub replicas: usize,
    pub horizon: f64,
    /// Mean of `N_T / T`.
    pub sample_mean_rate: f64,
    /// Sample variance of `N_T`, divided by `T`.
    pub sample_var_rate: f64,
    /// KS statistic of `(N_T - mu T) / sqrt(sigma^2 T)` against N(0, 1).
    pub ks_statistic: f64,
    pub p_value: f64,
    pub mu: f64,
    pub sigma2: f64,
}

/// Simulates `replicas` independent paths on `[0, T)` and compares the
/// standardized counts with the Gaussian limit.
pub fn clt_check(model: &HawkesModel, horizon: f64, replicas: usize, rng: RngSpec) -> Result<CltReport> {
    clt_check_with(model, horizon, replicas, rng, Sampler::Thinning)
}

pub fn clt_check_with(
    model: &HawkesModel,
    horizon: f64,
    replicas: usize,
    rng: RngSpec,
    sampler: Sampler,
) -> Result<CltReport> {
    if replicas < 2 {
        return Err(HawkesError::invalid("clt_check needs at least 2 replicas"));
    }
    let mu = lln_mean(model)?;
    let sigma2 = clt_variance(model)?;
    let counts = replicate(rng, replicas, |r| Ok(simulate(model, horizon, r, sampler)?.count() as f64))?;
    let rates: Vec<f64> = counts.iter().map(|n| n / horizon).collect();
    let z: Vec<f64> = counts.iter().map(|n| (n - mu * horizon) / (sigma2 * horizon).sqrt()).collect();
    let ks = stats::ks_one_sample(&z, stats::standard_normal_cdf);
    Ok(CltReport {
        replicas,
        horizon,
        sample_mean_rate: stats::mean(&rates),
        sample_var_rate: stats::variance(&counts) / horizon,
        ks_statistic: ks.statistic,
        p_value: ks.p_value,
        mu,
        sigma2,
    })
}

/// Monte Carlo estimate of `(1/t) log E[exp(theta N_t)]`.
///
/// The estimator is dominated by rare large counts; use it as a qualitative
/// check of the limiting CGF for small `theta` only.
pub fn empirical_scaled_cgf(
    model: &HawkesModel,
    theta: f64,
    horizon: f64,
    replicas: usize,
    rng: RngSpec,
) -> Result<f64> {
    let counts = replicate(rng, replicas, |r| Ok(simulate(model, horizon, r, Sampler::Thinning)?.count() as f64))?;
    // log-mean-exp for stability
    let top = counts.iter().map(|n| theta * n).fold(f64::NEG_INFINITY, f64::max);
    let shifted: Vec<f64> = counts.iter().map(|n| (theta * n - top).exp()).collect();
    Ok((top + stats::mean(&shifted).ln()) / horizon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{KernelSpec, MarkLaw};
    use approx::assert_relative_eq;

    fn model(nu: f64, marks: MarkLaw) -> HawkesModel {
        HawkesModel::new(nu, KernelSpec::exp(1.0).unwrap(), marks).unwrap()
    }

    #[test]
    fn lln_examples() {
        assert_relative_eq!(lln_mean(&model(1.0, MarkLaw::Exponential { rate: 2.0 })).unwrap(), 2.0, epsilon = 1e-15);
        assert_eq!(lln_mean(&model(1.7, MarkLaw::Degenerate { value: 0.0 })).unwrap(), 1.7);
        assert_relative_eq!(lln_mean(&model(2.0, MarkLaw::Degenerate { value: 0.25 })).unwrap(), 8.0 / 3.0, epsilon = 1e-15);
        assert!(matches!(lln_mean(&model(1.0, MarkLaw::Exponential { rate: 1.0 })), Err(HawkesError::Stability(_))));
    }

    #[test]
    fn clt_examples() {
        assert_relative_eq!(clt_variance(&model(1.0, MarkLaw::Exponential { rate: 2.0 })).unwrap(), 10.0, epsilon = 1e-12);
        assert_eq!(clt_variance(&model(1.3, MarkLaw::Degenerate { value: 0.0 })).unwrap(), 1.3);
        assert_relative_eq!(clt_variance(&model(1.0, MarkLaw::Degenerate { value: 0.5 })).unwrap(), 8.0, epsilon = 1e-12);
    }

    #[test]
    fn clt_identity_holds_for_every_family() {
        for marks in [
            MarkLaw::Gamma { shape: 3.0, scale: 0.1 },
            MarkLaw::Categorical { values: vec![0.0, 0.4, 1.2], probs: vec![0.3, 0.3, 0.4] },
            MarkLaw::Exponential { rate: 5.0 },
        ] {
            let m = HawkesModel::new(0.9, KernelSpec::power(2.5, 0.8).unwrap(), marks).unwrap();
            let one_minus = 1.0 - m.branching_ratio();
            let s2 = clt_variance(&m).unwrap();
            assert_relative_eq!(s2 * one_minus.powi(3), m.nu * (1.0 + m.impact_variance()), max_relative = 1e-14);
        }
    }

    #[test]
    fn slow_kernel_flags_clt_condition() {
        let m = HawkesModel::new(1.0, KernelSpec::power(1.4, 0.1).unwrap(), MarkLaw::Degenerate { value: 1.0 }).unwrap();
        match clt_variance(&m) {
            Err(HawkesError::CltCondition { variance }) => assert!(variance > 0.0),
            other => panic!("expected CltCondition, got {other:?}"),
        }
    }

    #[test]
    fn stationary_intensity_examples() {
        let m = model(1.0, MarkLaw::Exponential { rate: 2.0 });
        assert_eq!(stationary_mean_intensity(1.0, 1.0, &m).unwrap(), lln_mean(&m).unwrap());
        assert_eq!(stationary_mean_intensity(1.0, 0.0, &m).unwrap(), 1.0);
        assert_relative_eq!(stationary_mean_intensity(2.0, 1.5, &m).unwrap(), 8.0, epsilon = 1e-14);
        assert!(stationary_mean_intensity(1.0, 2.0, &m).is_err());
    }

    #[test]
    fn poisson_clt_check() {
        let m = model(1.0, MarkLaw::Degenerate { value: 0.0 });
        // 2000 replicas: the variance estimate has relative sd ~ 0.03
        let r = clt_check(&m, 100.0, 2000, RngSpec::new(17, 0)).unwrap();
        assert!((r.sample_var_rate - 1.0).abs() < 0.1, "{r:?}");
        assert!(r.p_value > 0.001);
    }
}
