//! Parametric kernels, mark laws and claim laws.
//!
//! Kernels are multiplicatively marked: an event with mark `a` adds
//! `h(t, a) = a * phi(t)` to the intensity `t` time units later, so the total
//! impact is `H(a) = kappa * a` with `kappa = int_0^inf phi`. Every transform
//! of `H(a)` under the mark law is then available in closed form, and the
//! divergence boundary of each transform is exposed as data.

use rand::Rng;
use rand_distr::{Distribution, Exp, Gamma, LogNormal, Weibull};
use serde::{Deserialize, Serialize};

use crate::error::{HawkesError, Result};
use crate::quad;

/// Excitation function family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum KernelSpec {
    /// `h(t, a) = a * beta * exp(-beta t)`, so `H(a) = a`.
    Exp { beta: f64 },
    /// `h(t, a) = a * c * (1 + t)^(-p)`, so `H(a) = a c / (p - 1)`.
    Power { p: f64, c: f64 },
}

impl KernelSpec {
    pub fn exp(beta: f64) -> Result<Self> {
        let k = KernelSpec::Exp { beta };
        k.check()?;
        Ok(k)
    }

    pub fn power(p: f64, c: f64) -> Result<Self> {
        let k = KernelSpec::Power { p, c };
        k.check()?;
        Ok(k)
    }

    pub fn check(&self) -> Result<()> {
        match *self {
            KernelSpec::Exp { beta } if !(beta > 0.0 && beta.is_finite()) => {
                Err(HawkesError::invalid(format!("exp kernel rate beta = {beta} must be > 0")))
            }
            KernelSpec::Power { p, c } if !(p > 1.0 && p.is_finite() && c > 0.0 && c.is_finite()) => {
                Err(HawkesError::invalid(format!(
                    "power kernel needs p > 1 and c > 0 (got p = {p}, c = {c})"
                )))
            }
            _ => Ok(()),
        }
    }

    /// Total impact per unit of mark, `kappa = H(1)`.
    pub fn impact_factor(&self) -> f64 {
        match *self {
            KernelSpec::Exp { .. } => 1.0,
            KernelSpec::Power { p, c } => c / (p - 1.0),
        }
    }

    /// `h(t, a)`; zero for `t < 0`.
    pub fn h(&self, t: f64, a: f64) -> f64 {
        if t < 0.0 {
            return 0.0;
        }
        match *self {
            KernelSpec::Exp { beta } => a * beta * (-beta * t).exp(),
            KernelSpec::Power { p, c } => a * c * (1.0 + t).powf(-p),
        }
    }

    /// `H(a) = int_0^inf h(t, a) dt`, exact.
    pub fn integrated(&self, a: f64) -> f64 {
        a * self.impact_factor()
    }

    /// Normalized decay profile `phi(t) / kappa`, a probability density on `t >= 0`.
    pub fn profile_density(&self, t: f64) -> f64 {
        if t < 0.0 {
            return 0.0;
        }
        match *self {
            KernelSpec::Exp { beta } => beta * (-beta * t).exp(),
            KernelSpec::Power { p, .. } => (p - 1.0) * (1.0 + t).powf(-p),
        }
    }

    /// Fraction of the total impact delivered within `t` time units.
    pub fn profile_cdf(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        match *self {
            KernelSpec::Exp { beta } => -(-beta * t).exp_m1(),
            KernelSpec::Power { p, .. } => -((1.0 - p) * t.ln_1p()).exp_m1(),
        }
    }

    /// Fraction of the total impact still to come after `t` time units.
    pub fn profile_tail(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 1.0;
        }
        match *self {
            KernelSpec::Exp { beta } => (-beta * t).exp(),
            KernelSpec::Power { p, .. } => (1.0 + t).powf(1.0 - p),
        }
    }

    /// `int_0^t s * profile_density(s) ds`.
    pub(crate) fn profile_first_moment(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        match *self {
            KernelSpec::Exp { beta } => {
                let e = (-beta * t).exp();
                (-(-beta * t).exp_m1() - beta * t * e) / beta
            }
            KernelSpec::Power { p, .. } => {
                // s (p-1)(1+s)^-p = (p-1)[(1+s)^(1-p) - (1+s)^-p]
                let first = if (p - 2.0).abs() < 1e-12 {
                    (p - 1.0) * t.ln_1p()
                } else {
                    (p - 1.0) * ((2.0 - p) * t.ln_1p()).exp_m1() / (2.0 - p)
                };
                first - self.profile_cdf(t)
            }
        }
    }

    /// Draws an offset from the normalized profile (offspring birth delay).
    pub fn sample_offset<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            KernelSpec::Exp { beta } => Exp::new(beta).expect("beta > 0").sample(rng),
            KernelSpec::Power { p, .. } => {
                let u: f64 = 1.0 - rng.random::<f64>();
                u.powf(-1.0 / (p - 1.0)) - 1.0
            }
        }
    }
}

/// Distribution `q(da)` of the marks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum MarkLaw {
    Degenerate { value: f64 },
    Exponential { rate: f64 },
    Gamma { shape: f64, scale: f64 },
    Categorical { values: Vec<f64>, probs: Vec<f64> },
}

impl MarkLaw {
    pub fn check(&self) -> Result<()> {
        let positive = |x: f64| x > 0.0 && x.is_finite();
        match self {
            MarkLaw::Degenerate { value } if !(*value >= 0.0 && value.is_finite()) => {
                Err(HawkesError::invalid(format!("degenerate mark {value} must be >= 0")))
            }
            MarkLaw::Exponential { rate } if !positive(*rate) => {
                Err(HawkesError::invalid(format!("exponential mark rate {rate} must be > 0")))
            }
            MarkLaw::Gamma { shape, scale } if !(positive(*shape) && positive(*scale)) => {
                Err(HawkesError::invalid("gamma mark shape and scale must be > 0"))
            }
            MarkLaw::Categorical { values, probs } => {
                if values.is_empty() || values.len() != probs.len() {
                    return Err(HawkesError::invalid(
                        "categorical marks need matching, non-empty values and probs",
                    ));
                }
                if values.iter().any(|v| !(*v >= 0.0 && v.is_finite())) {
                    return Err(HawkesError::invalid("categorical mark values must be >= 0"));
                }
                if probs.iter().any(|p| !(*p >= 0.0)) {
                    return Err(HawkesError::invalid("categorical probabilities must be >= 0"));
                }
                let total: f64 = probs.iter().sum();
                if (total - 1.0).abs() > 1e-9 {
                    return Err(HawkesError::invalid(format!(
                        "categorical probabilities sum to {total}, not 1"
                    )));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn mean(&self) -> f64 {
        match self {
            MarkLaw::Degenerate { value } => *value,
            MarkLaw::Exponential { rate } => 1.0 / rate,
            MarkLaw::Gamma { shape, scale } => shape * scale,
            MarkLaw::Categorical { values, probs } => {
                values.iter().zip(probs).map(|(v, p)| v * p).sum()
            }
        }
    }

    pub fn variance(&self) -> f64 {
        match self {
            MarkLaw::Degenerate { .. } => 0.0,
            MarkLaw::Exponential { rate } => 1.0 / (rate * rate),
            MarkLaw::Gamma { shape, scale } => shape * scale * scale,
            MarkLaw::Categorical { values, probs } => {
                let m = self.mean();
                values.iter().zip(probs).map(|(v, p)| p * (v - m) * (v - m)).sum()
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            MarkLaw::Degenerate { value } => *value,
            MarkLaw::Exponential { rate } => Exp::new(*rate).expect("validated").sample(rng),
            MarkLaw::Gamma { shape, scale } => {
                Gamma::new(*shape, *scale).expect("validated").sample(rng)
            }
            MarkLaw::Categorical { values, probs } => {
                let u: f64 = rng.random();
                let mut acc = 0.0;
                for (v, p) in values.iter().zip(probs) {
                    acc += p;
                    if u < acc {
                        return *v;
                    }
                }
                // rounding left u above the last partial sum
                *values
                    .iter()
                    .zip(probs)
                    .rev()
                    .find(|(_, p)| **p > 0.0)
                    .map(|(v, _)| v)
                    .unwrap_or(&values[values.len() - 1])
            }
        }
    }
}

/// Baseline intensity, kernel and mark law of a marked linear Hawkes process.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HawkesModel {
    pub nu: f64,
    pub kernel: KernelSpec,
    pub marks: MarkLaw,
}

/// Outcome of [`HawkesModel::validate`]; never an error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidationReport {
    pub branching_ratio: f64,
    /// `E[H(a)] < 1`.
    pub stability: bool,
    /// `M(x) - x -> inf` as `x -> inf`; needed for the large deviation results.
    pub steepness: bool,
    /// `t^(1/2) int_t^inf E[h(s, a)] ds -> 0`; needed for the CLT.
    pub clt_condition: bool,
}

impl HawkesModel {
    /// Checks parameter ranges. Stability is reported by [`validate`](Self::validate), not enforced here.
    pub fn new(nu: f64, kernel: KernelSpec, marks: MarkLaw) -> Result<Self> {
        let m = HawkesModel { nu, kernel, marks };
        m.check()?;
        Ok(m)
    }

    pub fn check(&self) -> Result<()> {
        if !(self.nu > 0.0 && self.nu.is_finite()) {
            return Err(HawkesError::invalid(format!("baseline nu = {} must be > 0", self.nu)));
        }
        self.kernel.check()?;
        self.marks.check()
    }

    /// `E^q[H(a)]`.
    pub fn branching_ratio(&self) -> f64 {
        self.kernel.impact_factor() * self.marks.mean()
    }

    /// `Var^q[H(a)]`.
    pub fn impact_variance(&self) -> f64 {
        let k = self.kernel.impact_factor();
        k * k * self.marks.variance()
    }

    pub fn require_stable(&self) -> Result<()> {
        let b = self.branching_ratio();
        if b < 1.0 {
            Ok(())
        } else {
            Err(HawkesError::Stability(b))
        }
    }

    /// Supremum of the domain of `M(s) = E^q[exp(s H(a))]` (possibly infinite).
    pub fn mgf_boundary(&self) -> f64 {
        let k = self.kernel.impact_factor();
        match &self.marks {
            MarkLaw::Exponential { rate } => rate / k,
            MarkLaw::Gamma { scale, .. } => 1.0 / (scale * k),
            MarkLaw::Degenerate { .. } | MarkLaw::Categorical { .. } => f64::INFINITY,
        }
    }

    fn check_mgf_arg(&self, s: f64) -> Result<()> {
        let boundary = self.mgf_boundary();
        if s < boundary {
            Ok(())
        } else {
            Err(HawkesError::Domain { arg: s, boundary })
        }
    }

    /// `M(s) = E^q[exp(s H(a))]`.
    pub fn mark_mgf(&self, s: f64) -> Result<f64> {
        self.check_mgf_arg(s)?;
        let k = self.kernel.impact_factor();
        Ok(match &self.marks {
            MarkLaw::Degenerate { value } => (s * k * value).exp(),
            MarkLaw::Exponential { rate } => {
                let r = rate / k;
                r / (r - s)
            }
            MarkLaw::Gamma { shape, scale } => (1.0 - s * k * scale).powf(-shape),
            MarkLaw::Categorical { values, probs } => values
                .iter()
                .zip(probs)
                .map(|(v, p)| p * (s * k * v).exp())
                .sum(),
        })
    }

    /// `M'(s) = E^q[H(a) exp(s H(a))]`.
    pub fn mark_mgf_prime(&self, s: f64) -> Result<f64> {
        self.check_mgf_arg(s)?;
        let k = self.kernel.impact_factor();
        Ok(match &self.marks {
            MarkLaw::Degenerate { value } => k * value * (s * k * value).exp(),
            MarkLaw::Exponential { rate } => {
                let r = rate / k;
                r / ((r - s) * (r - s))
            }
            MarkLaw::Gamma { shape, scale } => {
                let ks = k * scale;
                shape * ks * (1.0 - s * ks).powf(-shape - 1.0)
            }
            MarkLaw::Categorical { values, probs } => values
                .iter()
                .zip(probs)
                .map(|(v, p)| p * k * v * (s * k * v).exp())
                .sum(),
        })
    }

    pub fn validate(&self) -> ValidationReport {
        let branching_ratio = self.branching_ratio();
        let has_impact = match &self.marks {
            MarkLaw::Degenerate { value } => *value > 0.0,
            MarkLaw::Exponential { .. } | MarkLaw::Gamma { .. } => true,
            MarkLaw::Categorical { values, probs } => {
                values.iter().zip(probs).any(|(v, p)| *v > 0.0 && *p > 0.0)
            }
        };
        // A finite MGF boundary makes M blow up, so the limit holds trivially;
        // otherwise M grows exponentially as soon as H has mass above zero.
        let steepness = self.mgf_boundary().is_finite() || has_impact;
        let clt_condition = match self.kernel {
            KernelSpec::Exp { .. } => true,
            KernelSpec::Power { p, .. } => p > 1.5 || !has_impact,
        };
        ValidationReport {
            branching_ratio,
            stability: branching_ratio < 1.0,
            steepness,
            clt_condition,
        }
    }
}

/// Tail class of a heavy-tailed claim law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailClass {
    /// `B̄ ∈ R(-alpha - 1)`.
    RegularlyVarying { alpha: f64 },
    /// Maximum domain of attraction of the Gumbel law.
    Gumbel,
}

/// Claim-size distribution `mu(dC)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum ClaimLaw {
    Degenerate { value: f64 },
    Exponential { rate: f64 },
    Gamma { shape: f64, scale: f64 },
    /// Shifted Pareto with tail `(scale / (scale + y))^(alpha + 1)`, mean `scale / alpha`.
    Pareto { alpha: f64, scale: f64 },
    /// Tail `exp(-(y / scale)^shape)` with `shape < 1`.
    Weibull { shape: f64, scale: f64 },
    /// `exp(mu + sigma Z)`.
    #[serde(rename = "lognormal")]
    LogNormal { mu: f64, sigma: f64 },
}

impl ClaimLaw {
    pub fn check(&self) -> Result<()> {
        let positive = |x: f64| x > 0.0 && x.is_finite();
        let ok = match *self {
            ClaimLaw::Degenerate { value } => value >= 0.0 && value.is_finite(),
            ClaimLaw::Exponential { rate } => positive(rate),
            ClaimLaw::Gamma { shape, scale } => positive(shape) && positive(scale),
            ClaimLaw::Pareto { alpha, scale } => positive(alpha) && positive(scale),
            ClaimLaw::Weibull { shape, scale } => positive(shape) && shape < 1.0 && positive(scale),
            ClaimLaw::LogNormal { mu, sigma } => mu.is_finite() && positive(sigma),
        };
        if ok {
            Ok(())
        } else {
            Err(HawkesError::invalid(format!("invalid claim law parameters: {self:?}")))
        }
    }

    pub fn is_heavy(&self) -> bool {
        matches!(
            self,
            ClaimLaw::Pareto { .. } | ClaimLaw::Weibull { .. } | ClaimLaw::LogNormal { .. }
        )
    }

    pub fn tail_class(&self) -> Option<TailClass> {
        match *self {
            ClaimLaw::Pareto { alpha, .. } => Some(TailClass::RegularlyVarying { alpha }),
            ClaimLaw::Weibull { .. } | ClaimLaw::LogNormal { .. } => Some(TailClass::Gumbel),
            _ => None,
        }
    }

    pub fn mean(&self) -> f64 {
        match *self {
            ClaimLaw::Degenerate { value } => value,
            ClaimLaw::Exponential { rate } => 1.0 / rate,
            ClaimLaw::Gamma { shape, scale } => shape * scale,
            ClaimLaw::Pareto { alpha, scale } => scale / alpha,
            ClaimLaw::Weibull { shape, scale } => {
                scale * statrs::function::gamma::gamma(1.0 + 1.0 / shape)
            }
            ClaimLaw::LogNormal { mu, sigma } => (mu + 0.5 * sigma * sigma).exp(),
        }
    }

    /// `B̄(x) = P(C > x)`.
    pub fn tail(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 1.0;
        }
        if x == f64::INFINITY {
            return 0.0;
        }
        match *self {
            ClaimLaw::Degenerate { value } => {
                if x < value {
                    1.0
                } else {
                    0.0
                }
            }
            ClaimLaw::Exponential { rate } => (-rate * x).exp(),
            ClaimLaw::Gamma { shape, scale } => {
                statrs::function::gamma::gamma_ur(shape, x / scale)
            }
            ClaimLaw::Pareto { alpha, scale } => (scale / (scale + x)).powf(alpha + 1.0),
            ClaimLaw::Weibull { shape, scale } => (-(x / scale).powf(shape)).exp(),
            ClaimLaw::LogNormal { mu, sigma } => {
                if x == 0.0 {
                    return 1.0;
                }
                let z = (x.ln() - mu) / sigma;
                0.5 * statrs::function::erf::erfc(z / std::f64::consts::SQRT_2)
            }
        }
    }

    /// Supremum of the domain of `L(theta)`; zero for heavy laws.
    pub fn mgf_boundary(&self) -> f64 {
        match *self {
            ClaimLaw::Degenerate { .. } => f64::INFINITY,
            ClaimLaw::Exponential { rate } => rate,
            ClaimLaw::Gamma { scale, .. } => 1.0 / scale,
            _ => 0.0,
        }
    }

    fn check_mgf_arg(&self, theta: f64) -> Result<()> {
        if self.is_heavy() {
            if theta > 0.0 {
                return Err(HawkesError::HeavyTail(theta));
            }
            return Ok(());
        }
        let boundary = self.mgf_boundary();
        if theta < boundary {
            Ok(())
        } else {
            Err(HawkesError::Domain { arg: theta, boundary })
        }
    }

    /// `L(theta) = E[exp(theta C)]`.
    ///
    /// Heavy-tailed laws only admit `theta <= 0`, evaluated by quadrature of
    /// `1 + theta int_0^inf exp(theta y) B̄(y) dy`.
    pub fn mgf(&self, theta: f64) -> Result<f64> {
        self.check_mgf_arg(theta)?;
        if theta == 0.0 {
            return Ok(1.0);
        }
        Ok(match *self {
            ClaimLaw::Degenerate { value } => (theta * value).exp(),
            ClaimLaw::Exponential { rate } => rate / (rate - theta),
            ClaimLaw::Gamma { shape, scale } => (1.0 - scale * theta).powf(-shape),
            _ => {
                let integral = quad::integrate_to_infinity(
                    |y| (theta * y).exp() * self.tail(y),
                    0.0,
                    1e-10,
                )?;
                1.0 + theta * integral
            }
        })
    }

    /// `L'(theta) = E[C exp(theta C)]`.
    pub fn mgf_prime(&self, theta: f64) -> Result<f64> {
        self.check_mgf_arg(theta)?;
        Ok(match *self {
            ClaimLaw::Degenerate { value } => value * (theta * value).exp(),
            ClaimLaw::Exponential { rate } => rate / ((rate - theta) * (rate - theta)),
            ClaimLaw::Gamma { shape, scale } => shape * scale * (1.0 - scale * theta).powf(-shape - 1.0),
            _ => {
                if theta == 0.0 {
                    return Ok(self.mean());
                }
                // E[C e^{tC}] = int_0^inf (1 + t y) e^{t y} B̄(y) dy
                quad::integrate_to_infinity(
                    |y| (1.0 + theta * y) * (theta * y).exp() * self.tail(y),
                    0.0,
                    1e-10,
                )?
            }
        })
    }

    /// Solves `L(theta) = v` for theta (light laws with closed-form inverse).
    pub fn mgf_inverse(&self, v: f64) -> Result<f64> {
        if !(v > 0.0) {
            return Err(HawkesError::Domain { arg: v, boundary: 0.0 });
        }
        match *self {
            ClaimLaw::Degenerate { value } if value > 0.0 => Ok(v.ln() / value),
            ClaimLaw::Exponential { rate } => Ok(rate * (1.0 - 1.0 / v)),
            ClaimLaw::Gamma { shape, scale } => Ok(-(-v.ln() / shape).exp_m1() / scale),
            _ => Err(HawkesError::invalid(format!(
                "claim MGF is not invertible for {self:?}"
            ))),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            ClaimLaw::Degenerate { value } => value,
            ClaimLaw::Exponential { rate } => Exp::new(rate).expect("validated").sample(rng),
            ClaimLaw::Gamma { shape, scale } => Gamma::new(shape, scale).expect("validated").sample(rng),
            ClaimLaw::Pareto { alpha, scale } => {
                let u: f64 = 1.0 - rng.random::<f64>();
                scale * (u.powf(-1.0 / (alpha + 1.0)) - 1.0)
            }
            ClaimLaw::Weibull { shape, scale } => {
                Weibull::new(scale, shape).expect("validated").sample(rng)
            }
            ClaimLaw::LogNormal { mu, sigma } => {
                LogNormal::new(mu, sigma).expect("validated").sample(rng)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn exp_model(rate: f64) -> HawkesModel {
        HawkesModel::new(1.0, KernelSpec::exp(1.0).unwrap(), MarkLaw::Exponential { rate }).unwrap()
    }

    #[test]
    fn integrated_kernel_values() {
        assert_eq!(KernelSpec::exp(1.0).unwrap().integrated(0.7), 0.7);
        assert_relative_eq!(KernelSpec::power(3.0, 2.0).unwrap().integrated(1.0), 1.0, epsilon = 1e-15);
        assert_eq!(KernelSpec::power(1.5, 0.3).unwrap().integrated(0.0), 0.0);
    }

    #[test]
    fn integrated_kernel_matches_quadrature() {
        for k in [KernelSpec::exp(2.5).unwrap(), KernelSpec::power(2.7, 0.4).unwrap()] {
            let num = quad::integrate_to_infinity(|t| k.h(t, 0.8), 0.0, 1e-12).unwrap();
            assert_relative_eq!(num, k.integrated(0.8), max_relative = 1e-8);
        }
    }

    #[test]
    fn profile_moments_match_quadrature() {
        for k in [KernelSpec::exp(0.7).unwrap(), KernelSpec::power(2.0, 1.0).unwrap(), KernelSpec::power(3.5, 1.0).unwrap()] {
            for t in [0.1, 1.0, 7.5] {
                let c = quad::integrate(|s| k.profile_density(s), 0.0, t, 1e-13).unwrap();
                let m = quad::integrate(|s| s * k.profile_density(s), 0.0, t, 1e-13).unwrap();
                assert_relative_eq!(c, k.profile_cdf(t), max_relative = 1e-9);
                assert_relative_eq!(m, k.profile_first_moment(t), max_relative = 1e-9);
                assert_relative_eq!(k.profile_tail(t), 1.0 - k.profile_cdf(t), epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn mark_mgf_examples() {
        let m = exp_model(2.0);
        assert_relative_eq!(m.mark_mgf(0.5).unwrap(), 4.0 / 3.0, epsilon = 1e-14);
        assert_eq!(m.mark_mgf(0.0).unwrap(), 1.0);
        assert!(matches!(m.mark_mgf(2.0), Err(HawkesError::Domain { .. })));
        assert!(matches!(m.mark_mgf_prime(2.5), Err(HawkesError::Domain { .. })));
        assert_relative_eq!(m.mark_mgf_prime(0.5).unwrap(), 2.0 / 2.25, epsilon = 1e-14);
        assert_relative_eq!(m.mark_mgf_prime(0.0).unwrap(), 0.5, epsilon = 1e-15);

        let d = HawkesModel::new(1.0, KernelSpec::exp(1.0).unwrap(), MarkLaw::Degenerate { value: 0.5 }).unwrap();
        assert_relative_eq!(d.mark_mgf_prime(1.0).unwrap(), 0.5 * 0.5f64.exp(), epsilon = 1e-15);
    }

    #[test]
    fn power_kernel_rescales_transform_domain() {
        // kappa = 0.5 / 1.5 = 1/3, so H ~ Exp(3 * 2)
        let m = HawkesModel::new(1.0, KernelSpec::power(2.5, 0.5).unwrap(), MarkLaw::Exponential { rate: 2.0 }).unwrap();
        assert_relative_eq!(m.mgf_boundary(), 6.0, epsilon = 1e-14);
        assert_relative_eq!(m.mark_mgf(3.0).unwrap(), 2.0, epsilon = 1e-14);
        let g = HawkesModel::new(1.0, KernelSpec::power(2.5, 0.5).unwrap(), MarkLaw::Gamma { shape: 2.0, scale: 0.5 }).unwrap();
        assert_relative_eq!(g.mgf_boundary(), 6.0, epsilon = 1e-14);
    }

    #[test]
    fn mgf_normalization_and_mean_every_family() {
        let kernels = [KernelSpec::exp(1.3).unwrap(), KernelSpec::power(2.2, 0.6).unwrap()];
        let laws = [
            MarkLaw::Degenerate { value: 0.4 },
            MarkLaw::Exponential { rate: 3.0 },
            MarkLaw::Gamma { shape: 2.5, scale: 0.2 },
            MarkLaw::Categorical { values: vec![0.1, 0.5, 0.9], probs: vec![0.2, 0.5, 0.3] },
        ];
        for k in kernels {
            for q in &laws {
                let m = HawkesModel::new(1.0, k, q.clone()).unwrap();
                assert_eq!(m.mark_mgf(0.0).unwrap(), 1.0);
                assert_relative_eq!(m.mark_mgf_prime(0.0).unwrap(), m.branching_ratio(), max_relative = 1e-14);
            }
        }
    }

    #[test]
    fn categorical_mgf_is_weighted_sum() {
        let values = [0.2, 0.8, 1.1];
        let probs = [0.25, 0.5, 0.25];
        let m = HawkesModel::new(
            1.0,
            KernelSpec::exp(1.0).unwrap(),
            MarkLaw::Categorical { values: values.to_vec(), probs: probs.to_vec() },
        )
        .unwrap();
        for s in [-1.0, 0.3, 2.0] {
            let mut brute = 0.0;
            for i in 0..3 {
                brute += probs[i] * f64::exp(s * values[i]);
            }
            assert_relative_eq!(m.mark_mgf(s).unwrap(), brute, max_relative = 1e-14);
        }
    }

    #[test]
    fn claim_mgf_examples() {
        let c = ClaimLaw::Exponential { rate: 1.0 };
        assert_relative_eq!(c.mgf(0.5).unwrap(), 2.0, epsilon = 1e-15);
        assert_eq!(c.mgf(0.0).unwrap(), 1.0);
        assert!(matches!(c.mgf(1.0), Err(HawkesError::Domain { .. })));
        let p = ClaimLaw::Pareto { alpha: 1.5, scale: 1.0 };
        assert!(matches!(p.mgf(0.1), Err(HawkesError::HeavyTail(_))));
        assert_eq!(p.mgf(0.0).unwrap(), 1.0);
    }

    #[test]
    fn heavy_claim_mgf_negative_argument_by_quadrature() {
        // Lomax(shape 2, scale 1): compare against direct density quadrature
        let p = ClaimLaw::Pareto { alpha: 1.0, scale: 1.0 };
        let density = |y: f64| 2.0 * (1.0 + y).powf(-3.0);
        let direct = quad::integrate_to_infinity(|y| (-0.7 * y).exp() * density(y), 0.0, 1e-12).unwrap();
        assert_relative_eq!(p.mgf(-0.7).unwrap(), direct, max_relative = 1e-8);
        assert_relative_eq!(p.mgf_prime(0.0).unwrap(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn claim_mgf_inverse_roundtrip() {
        for c in [
            ClaimLaw::Degenerate { value: 1.7 },
            ClaimLaw::Exponential { rate: 1.5 },
            ClaimLaw::Gamma { shape: 2.0, scale: 0.5 },
        ] {
            for theta in [-2.0, -0.1, 0.3, 0.9] {
                let v = c.mgf(theta).unwrap();
                assert_relative_eq!(c.mgf_inverse(v).unwrap(), theta, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn claim_means_match_tail_integrals() {
        for c in [
            ClaimLaw::Gamma { shape: 2.0, scale: 0.5 },
            ClaimLaw::Pareto { alpha: 1.5, scale: 1.5 },
            ClaimLaw::Weibull { shape: 0.5, scale: 1.0 },
            ClaimLaw::LogNormal { mu: 0.0, sigma: 1.0 },
        ] {
            let num = quad::integrate_to_infinity(|y| c.tail(y), 0.0, 1e-12).unwrap();
            assert_relative_eq!(num, c.mean(), max_relative = 1e-7);
        }
    }

    #[test]
    fn validate_examples() {
        let r = exp_model(2.0).validate();
        assert!(r.stability && r.steepness && r.clt_condition);
        assert_eq!(r.branching_ratio, 0.5);

        assert!(!exp_model(1.0).validate().stability);

        let p = HawkesModel::new(1.0, KernelSpec::power(1.4, 0.1).unwrap(), MarkLaw::Degenerate { value: 1.0 }).unwrap();
        let r = p.validate();
        assert!(r.stability);
        assert!(!r.clt_condition);

        let poisson = HawkesModel::new(1.0, KernelSpec::exp(1.0).unwrap(), MarkLaw::Degenerate { value: 0.0 }).unwrap();
        assert!(!poisson.validate().steepness);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(KernelSpec::exp(0.0).is_err());
        assert!(KernelSpec::power(1.0, 1.0).is_err());
        assert!(HawkesModel::new(0.0, KernelSpec::Exp { beta: 1.0 }, MarkLaw::Degenerate { value: 0.1 }).is_err());
        assert!(MarkLaw::Categorical { values: vec![0.1, 0.2], probs: vec![0.5, 0.6] }.check().is_err());
        assert!(ClaimLaw::Weibull { shape: 1.5, scale: 1.0 }.check().is_err());
    }
}
