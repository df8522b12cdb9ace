//! Insurance surplus `R_t = u + rho t - sum_{i <= N_t} C_i` driven by a marked
//! Hawkes claim arrival stream: compound CGF, net-profit window, Lundberg
//! exponent, finite-horizon ruin rate, Monte Carlo ruin probabilities and
//! heavy-tail asymptotics.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cgf::{critical_pair, limit_cgf, limit_cgf_derivative, Extended, Impact};
use crate::error::{HawkesError, Result};
use crate::ldp::rate_point;
use crate::model::{ClaimLaw, HawkesModel, TailClass};
use crate::quad;
use crate::simulate::{replicate, simulate, RngSpec, Sampler};
use crate::stats;

/// Offsets the seed of the claim-size stream from the arrival stream.
const CLAIM_SEED_OFFSET: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, PartialEq)]
pub struct RiskModel {
    pub hawkes: HawkesModel,
    pub claims: ClaimLaw,
    /// Premium rate.
    pub rho: f64,
    /// Initial reserve.
    pub u: f64,
}

impl RiskModel {
    pub fn new(hawkes: HawkesModel, claims: ClaimLaw, rho: f64, u: f64) -> Result<Self> {
        let r = RiskModel { hawkes, claims, rho, u };
        r.check()?;
        Ok(r)
    }

    pub fn check(&self) -> Result<()> {
        self.hawkes.check()?;
        self.hawkes.require_stable()?;
        self.claims.check()?;
        if !(self.rho > 0.0 && self.rho.is_finite()) {
            return Err(HawkesError::invalid(format!("premium rate must be positive, got {}", self.rho)));
        }
        if !(self.u > 0.0 && self.u.is_finite()) {
            return Err(HawkesError::invalid(format!("initial reserve must be positive, got {}", self.u)));
        }
        Ok(())
    }

    pub fn impact(&self) -> Impact {
        Impact::Compound(self.claims)
    }

    /// `E[C] nu / (1 - E[H])`, the long-run claim outflow rate.
    pub fn claim_rate(&self) -> f64 {
        self.claims.mean() * self.hawkes.nu / (1.0 - self.hawkes.branching_ratio())
    }

    /// `rho (1 - E[H]) - nu E[C]`, positive under the net profit condition.
    fn safety_margin(&self) -> f64 {
        self.rho * (1.0 - self.hawkes.branching_ratio()) - self.hawkes.nu * self.claims.mean()
    }
}

/// `Gamma_C(theta) = nu (x - 1)` with `x` the minimal root of `x = L(theta) M(x - 1)`.
pub fn compound_cgf(risk: &RiskModel, theta: f64) -> Result<Extended> {
    if risk.claims.is_heavy() && theta > 0.0 {
        return Err(HawkesError::HeavyTail(theta));
    }
    limit_cgf(&risk.hawkes, theta, &risk.impact())
}

/// `(rho_min, rho_max)` with `rho_min = E[C] nu / (1 - E[H])` and
/// `rho_max = nu (x_c - 1) / theta_c`; `rho_max = inf` when no tangency exists.
pub fn net_profit_window(risk: &RiskModel) -> Result<(f64, f64)> {
    risk.check()?;
    if risk.claims.is_heavy() {
        return Err(HawkesError::HeavyTail(f64::NAN));
    }
    let rho_min = risk.claim_rate();
    if risk.claims.mean() == 0.0 {
        return Ok((0.0, f64::INFINITY));
    }
    match critical_pair(&risk.hawkes, &risk.impact()) {
        Ok(c) => Ok((rho_min, risk.hawkes.nu * (c.x_c - 1.0) / c.theta_c)),
        Err(HawkesError::Steepness) => Ok((rho_min, f64::INFINITY)),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lundberg {
    pub theta_dagger: f64,
    /// `|Gamma_C(theta_dagger) - rho theta_dagger|`.
    pub residual: f64,
    /// Upper end of the bisection bracket (`theta_c`, or a probe when no tangency exists).
    pub theta_upper: f64,
}

/// Positive root of `G(theta) = Gamma_C(theta) - rho theta` by bisection on
/// `(0, theta_c]`. `G(0) = 0`, `G'(0) = rho_min - rho < 0` and `G(theta_c) > 0`
/// inside the window, so the bracket always holds exactly one sign change.
pub fn lundberg_exponent(risk: &RiskModel) -> Result<Lundberg> {
    let (rho_min, rho_max) = net_profit_window(risk)?;
    let rho = risk.rho;
    if !(rho > rho_min && rho < rho_max) {
        return Err(HawkesError::Window { rho, rho_min, rho_max });
    }
    let g = |theta: f64| -> Result<f64> {
        match compound_cgf(risk, theta)? {
            Extended::Finite(v) => Ok(v - rho * theta),
            Extended::Infinite => Ok(f64::INFINITY),
        }
    };
    let upper = match critical_pair(&risk.hawkes, &risk.impact()) {
        Ok(c) => c.theta_c,
        Err(HawkesError::Steepness) => {
            let mut b = 1.0_f64.min(0.5 * risk.claims.mgf_boundary());
            while g(b)? <= 0.0 {
                b = if risk.claims.mgf_boundary().is_finite() {
                    0.5 * (b + risk.claims.mgf_boundary())
                } else {
                    2.0 * b
                };
                if b > 1e6 {
                    return Err(HawkesError::NoConvergence { what: "Lundberg bracket", iterations: 0 });
                }
            }
            b
        }
        Err(e) => return Err(e),
    };
    let (mut a, mut b) = (0.0_f64, upper);
    let mut iterations = 0;
    while iterations < 200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        iterations += 1;
        if g(mid)? < 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    let (ga, gb) = (g(a)?.abs(), g(b)?.abs());
    let theta = if a > 0.0 && ga < gb { a } else { b };
    let residual = ga.min(gb);
    if residual >= 1e-10 {
        return Err(HawkesError::NoConvergence { what: "Lundberg exponent", iterations });
    }
    Ok(Lundberg { theta_dagger: theta, residual, theta_upper: upper })
}

/// Position `1 / (Gamma_C'(theta_dagger) - rho)` of the knee of `w`.
pub fn finite_horizon_knee(risk: &RiskModel) -> Result<f64> {
    let l = lundberg_exponent(risk)?;
    let slope = limit_cgf_derivative(&risk.hawkes, l.theta_dagger, &risk.impact())?;
    Ok(1.0 / (slope - risk.rho))
}

/// `w(z) = z Lambda_C(1/z + rho)` below the knee and `theta_dagger` above it,
/// the decay rate of `psi(u, u z)` in `u`.
///
/// `z Lambda_C(1/z + rho) = sup_theta {theta - z (Gamma_C(theta) - rho theta)}`
/// is at least `theta_dagger`, so `w` decreases to the plateau.
pub fn finite_horizon_rate(risk: &RiskModel, z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(HawkesError::invalid(format!("horizon scale z must be positive, got {z}")));
    }
    let l = lundberg_exponent(risk)?;
    let slope = limit_cgf_derivative(&risk.hawkes, l.theta_dagger, &risk.impact())?;
    let knee = 1.0 / (slope - risk.rho);
    if z >= knee {
        return Ok(l.theta_dagger);
    }
    let p = rate_point(&risk.hawkes, 1.0 / z + risk.rho, &risk.impact())?;
    match p.lambda_value {
        Extended::Finite(v) => Ok((z * v).max(l.theta_dagger)),
        Extended::Infinite => Ok(f64::INFINITY),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RuinEstimate {
    pub u: f64,
    pub psi_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub replicas: usize,
    pub horizon: f64,
}

/// Default simulation horizon `50 u / (rho - rho_min)`.
pub fn default_horizon(risk: &RiskModel, u: f64) -> Result<f64> {
    let slack = risk.rho - risk.claim_rate();
    if !(slack > 0.0) {
        return Err(HawkesError::NetProfit { rho: risk.rho, rho_min: risk.claim_rate() });
    }
    Ok(50.0 * u / slack)
}

/// Monte Carlo estimate of `P(tau_u <= horizon)` with a Wilson interval.
pub fn ruin_mc(risk: &RiskModel, u: f64, horizon: f64, replicas: usize, rng: RngSpec) -> Result<RuinEstimate> {
    Ok(ruin_mc_curve(risk, &[u], horizon, replicas, rng)?.remove(0))
}

/// [`ruin_mc`] for several reserves on common paths.
///
/// The surplus only jumps down at arrivals, so ruin before `horizon` happens
/// iff `min_i (rho tau_i - sum_{j <= i} C_j) <= -u`.
pub fn ruin_mc_curve(
    risk: &RiskModel,
    reserves: &[f64],
    horizon: f64,
    replicas: usize,
    rng: RngSpec,
) -> Result<Vec<RuinEstimate>> {
    risk.check()?;
    if !(horizon > 0.0) || replicas == 0 {
        return Err(HawkesError::invalid("ruin_mc needs horizon > 0 and at least one replica"));
    }
    let minima = replicate(rng, replicas, |r| {
        let events = simulate(&risk.hawkes, horizon, r, Sampler::Thinning)?;
        let mut claims_rng = ChaCha8Rng::seed_from_u64(r.seed.wrapping_add(CLAIM_SEED_OFFSET));
        claims_rng.set_stream(r.stream);
        let mut total = 0.0;
        let mut lowest = f64::INFINITY;
        for t in events.times() {
            total += risk.claims.sample(&mut claims_rng);
            lowest = lowest.min(risk.rho * t - total);
        }
        Ok(lowest)
    })?;
    Ok(reserves
        .iter()
        .map(|&u| {
            let ruined = minima.iter().filter(|&&m| m <= -u).count();
            let (ci_low, ci_high) = stats::wilson_interval(ruined, replicas);
            let psi_hat = ruined as f64 / replicas as f64;
            RuinEstimate {
                u,
                psi_hat,
                ci_low: ci_low.min(psi_hat),
                ci_high: ci_high.max(psi_hat),
                replicas,
                horizon,
            }
        })
        .collect())
}

/// `B̄_0(x) = (1 / E[C]) int_x^inf B̄(y) dy`.
///
/// Closed form for Pareto (`(s / (s + x))^alpha`), exponential and degenerate
/// claims; adaptive quadrature otherwise.
pub fn integrated_tail(claims: &ClaimLaw, x: f64) -> Result<f64> {
    claims.check()?;
    let mean = claims.mean();
    if !(mean > 0.0) {
        return Err(HawkesError::invalid("integrated tail needs E[C] > 0"));
    }
    if x <= 0.0 {
        return Ok(1.0);
    }
    if x == f64::INFINITY {
        return Ok(0.0);
    }
    match *claims {
        ClaimLaw::Pareto { alpha, scale } => Ok((scale / (scale + x)).powf(alpha)),
        ClaimLaw::Exponential { rate } => Ok((-rate * x).exp()),
        ClaimLaw::Degenerate { value } => Ok(((value - x) / value).max(0.0)),
        _ => Ok(quad::integrate_to_infinity(|y| claims.tail(y), x, 1e-8)? / mean),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeavyTailAsymptotic {
    /// `K = nu E[C] / (rho (1 - E[H]) - nu E[C])`.
    pub k: f64,
    /// Horizon factor multiplying `K` (1 for the infinite horizon).
    pub horizon_factor: f64,
    /// `B̄_0(u)`.
    pub integrated_tail: f64,
    /// `K * horizon_factor * B̄_0(u)`.
    pub psi: f64,
}

fn heavy_constant(risk: &RiskModel) -> Result<f64> {
    risk.check()?;
    if !risk.claims.is_heavy() {
        return Err(HawkesError::invalid("heavy-tail asymptotics need a heavy-tailed claim law"));
    }
    let margin = risk.safety_margin();
    if !(margin > 0.0) {
        return Err(HawkesError::NetProfit { rho: risk.rho, rho_min: risk.claim_rate() });
    }
    Ok(risk.hawkes.nu * risk.claims.mean() / margin)
}

/// `psi(u) ~ K B̄_0(u)` as `u -> inf`.
pub fn heavy_tail_infinite(risk: &RiskModel, u: f64) -> Result<HeavyTailAsymptotic> {
    let k = heavy_constant(risk)?;
    let tail = integrated_tail(&risk.claims, u)?;
    Ok(HeavyTailAsymptotic { k, horizon_factor: 1.0, integrated_tail: tail, psi: k * tail })
}

/// `psi(u, u T) ~ K [1 - (1 + q T / alpha)^(-alpha)] B̄_0(u)` for regularly
/// varying claims and `K [1 - exp(-q T)] B̄_0(u)` in the Gumbel class, with
/// `q = (rho (1 - E[H]) - nu E[C]) / (rho (1 - E[H]))`.
pub fn heavy_tail_finite(risk: &RiskModel, u: f64, horizon: f64) -> Result<HeavyTailAsymptotic> {
    let k = heavy_constant(risk)?;
    if !(horizon >= 0.0) {
        return Err(HawkesError::invalid(format!("horizon must be nonnegative, got {horizon}")));
    }
    let q = risk.safety_margin() / (risk.rho * (1.0 - risk.hawkes.branching_ratio()));
    let factor = match risk.claims.tail_class() {
        Some(TailClass::RegularlyVarying { alpha }) => -(-alpha * (q * horizon / alpha).ln_1p()).exp_m1(),
        Some(TailClass::Gumbel) => -(-q * horizon).exp_m1(),
        None => unreachable!("heavy laws carry a tail class"),
    };
    let tail = integrated_tail(&risk.claims, u)?;
    Ok(HeavyTailAsymptotic { k, horizon_factor: factor, integrated_tail: tail, psi: k * factor * tail })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cgf::limit_cgf;
    use crate::model::{KernelSpec, MarkLaw};
    use approx::assert_relative_eq;

    fn hawkes() -> HawkesModel {
        HawkesModel::new(1.0, KernelSpec::exp(1.0).unwrap(), MarkLaw::Exponential { rate: 2.0 }).unwrap()
    }

    fn light(rho: f64) -> RiskModel {
        RiskModel::new(hawkes(), ClaimLaw::Exponential { rate: 1.0 }, rho, 10.0).unwrap()
    }

    fn pareto(rho: f64) -> RiskModel {
        RiskModel::new(hawkes(), ClaimLaw::Pareto { alpha: 1.5, scale: 1.5 }, rho, 10.0).unwrap()
    }

    #[test]
    fn compound_cgf_basics() {
        assert_eq!(compound_cgf(&light(3.0), 0.0).unwrap(), Extended::Finite(0.0));
        let unit = RiskModel::new(hawkes(), ClaimLaw::Degenerate { value: 1.0 }, 3.0, 1.0).unwrap();
        for theta in [-1.0, 0.05, 0.1] {
            assert_eq!(compound_cgf(&unit, theta).unwrap(), limit_cgf(&hawkes(), theta, &Impact::Counting).unwrap());
        }
        // x = (3 - sqrt(9 - 8 / (1 - theta))) / 2
        let theta = 0.0893164f64;
        let x = (3.0 - (9.0 - 8.0 / (1.0 - theta)).sqrt()) / 2.0;
        assert_relative_eq!(compound_cgf(&light(3.0), theta).unwrap().finite().unwrap(), x - 1.0, epsilon = 1e-12);
        assert!(compound_cgf(&light(3.0), 0.2).unwrap().is_infinite());
        assert!(matches!(compound_cgf(&pareto(3.0), 0.1), Err(HawkesError::HeavyTail(_))));
    }

    #[test]
    fn window_examples() {
        let (lo, hi) = net_profit_window(&light(3.0)).unwrap();
        assert_relative_eq!(lo, 2.0, epsilon = 1e-14);
        // x_c = 1.5, theta_c = 1 - 1 / 1.125
        assert_relative_eq!(hi, 0.5 / (1.0 - 1.0 / 1.125), epsilon = 1e-9);
        let free = RiskModel::new(hawkes(), ClaimLaw::Degenerate { value: 0.0 }, 1.0, 1.0).unwrap();
        assert_eq!(net_profit_window(&free).unwrap().0, 0.0);
    }

    #[test]
    fn lundberg_example() {
        let l = lundberg_exponent(&light(3.0)).unwrap();
        let admissible = (12.0 - (144.0f64 - 36.0).sqrt()) / 18.0;
        assert_relative_eq!(l.theta_dagger, admissible, epsilon = 1e-10);
        assert!(l.residual < 1e-10);
        assert!(l.theta_dagger > 0.0 && l.theta_dagger < l.theta_upper);
        // the "+" root exceeds the claim MGF boundary
        assert!((12.0 + 108f64.sqrt()) / 18.0 > 1.0);
    }

    #[test]
    fn lundberg_boundary_trends() {
        let thetas: Vec<f64> = [2.4, 2.2, 2.05, 2.01]
            .iter()
            .map(|&rho| lundberg_exponent(&light(rho)).unwrap().theta_dagger)
            .collect();
        assert!(thetas.windows(2).all(|w| w[1] < w[0]));
        assert!(thetas[3] < 0.01);

        let unit = |rho| RiskModel::new(hawkes(), ClaimLaw::Degenerate { value: 1.0 }, rho, 1.0).unwrap();
        let (_, hi) = net_profit_window(&unit(3.0)).unwrap();
        let theta_c = (9.0f64 / 8.0).ln();
        let gaps: Vec<f64> = [0.5, 0.9, 0.99, 0.999]
            .iter()
            .map(|&f| theta_c - lundberg_exponent(&unit(hi * f)).unwrap().theta_dagger)
            .collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]) && gaps.iter().all(|&g| g > 0.0));
        assert!(gaps[3] < 1e-5, "{gaps:?}");
    }

    #[test]
    fn window_errors() {
        assert!(matches!(lundberg_exponent(&light(1.5)), Err(HawkesError::Window { .. })));
        assert!(matches!(lundberg_exponent(&light(5.0)), Err(HawkesError::Window { .. })));
    }

    #[test]
    fn finite_horizon_rate_shape() {
        let r = light(3.0);
        let theta = lundberg_exponent(&r).unwrap().theta_dagger;
        let knee = finite_horizon_knee(&r).unwrap();
        assert_eq!(finite_horizon_rate(&r, knee).unwrap(), theta);
        assert_eq!(finite_horizon_rate(&r, 10.0 * knee).unwrap(), theta);
        let below = finite_horizon_rate(&r, knee * (1.0 - 1e-7)).unwrap();
        assert!((below - theta).abs() < 1e-6);
        let grid: Vec<f64> = (1..=40).map(|i| finite_horizon_rate(&r, knee * i as f64 / 20.0).unwrap()).collect();
        assert!(grid.windows(2).all(|w| w[1] <= w[0] + 1e-12));
        assert!(grid.iter().all(|&w| w >= theta));
        assert!(grid[0] > theta);
    }

    #[test]
    fn ruin_mc_extremes_and_monotone() {
        let rich = light(2000.0);
        let e = ruin_mc(&rich, 10.0, 50.0, 200, RngSpec::new(1, 0)).unwrap();
        assert_eq!(e.psi_hat, 0.0);
        assert!(e.ci_low == 0.0 && e.ci_high < 0.03);
        let r = light(3.0);
        let curve = ruin_mc_curve(&r, &[2.0, 5.0, 10.0], 200.0, 400, RngSpec::new(2, 0)).unwrap();
        assert!(curve.windows(2).all(|w| w[1].psi_hat <= w[0].psi_hat));
        for c in &curve {
            assert!(c.ci_low <= c.psi_hat && c.psi_hat <= c.ci_high);
        }
        let again = ruin_mc_curve(&r, &[2.0, 5.0, 10.0], 200.0, 400, RngSpec::new(2, 0)).unwrap();
        assert_eq!(curve, again);
    }

    #[test]
    fn compound_poisson_ruin_matches_exact_formula() {
        // psi(u) = nu / (rho gamma) exp(-(gamma - nu / rho) u)
        let poisson = HawkesModel::new(1.0, KernelSpec::exp(1.0).unwrap(), MarkLaw::Degenerate { value: 0.0 }).unwrap();
        let r = RiskModel::new(poisson, ClaimLaw::Exponential { rate: 1.0 }, 3.0, 1.0).unwrap();
        assert_relative_eq!(lundberg_exponent(&r).unwrap().theta_dagger, 2.0 / 3.0, epsilon = 1e-10);
        let curve = ruin_mc_curve(&r, &[1.0, 2.0, 4.0], 200.0, 20_000, RngSpec::new(5, 0)).unwrap();
        for e in curve {
            let exact = (-2.0 / 3.0 * e.u).exp() / 3.0;
            let half_width = 0.5 * (e.ci_high - e.ci_low);
            assert!((e.psi_hat - exact).abs() < 2.0 * half_width, "u {}: {} vs {exact}", e.u, e.psi_hat);
        }
    }

    #[test]
    fn pareto_integrated_tail_closed_form() {
        let c = ClaimLaw::Pareto { alpha: 1.5, scale: 1.0 };
        assert_eq!(integrated_tail(&c, 0.0).unwrap(), 1.0);
        for x in [0.5, 3.0, 40.0] {
            let numeric = quad::integrate_to_infinity(|y| c.tail(y), x, 1e-12).unwrap() / c.mean();
            assert_relative_eq!(integrated_tail(&c, x).unwrap(), numeric, max_relative = 1e-9);
        }
    }

    #[test]
    fn weibull_and_lognormal_integrated_tails() {
        use statrs::distribution::{ContinuousCDF, Normal};
        use statrs::function::gamma::{gamma, gamma_ur};
        let (k, s) = (0.5, 2.0);
        let w = ClaimLaw::Weibull { shape: k, scale: s };
        for x in [0.3, 2.0, 15.0] {
            let oracle = s / k * gamma(1.0 / k) * gamma_ur(1.0 / k, (x / s).powf(k)) / w.mean();
            assert_relative_eq!(integrated_tail(&w, x).unwrap(), oracle, max_relative = 1e-8);
        }
        let (mu, sigma) = (0.2, 0.8);
        let l = ClaimLaw::LogNormal { mu, sigma };
        let n = Normal::standard();
        for x in [0.3f64, 2.0, 15.0] {
            let d1 = (mu + sigma * sigma - x.ln()) / sigma;
            let stop_loss = l.mean() * n.cdf(d1) - x * n.cdf(d1 - sigma);
            assert_relative_eq!(integrated_tail(&l, x).unwrap(), stop_loss / l.mean(), max_relative = 1e-8);
        }
        let grid: Vec<f64> = (0..30).map(|i| integrated_tail(&w, i as f64 * 3.0).unwrap()).collect();
        assert!(grid.windows(2).all(|p| p[1] <= p[0]));
        assert!(integrated_tail(&w, 1e4).unwrap() < 1e-10);
    }

    #[test]
    fn heavy_tail_constants() {
        let r = pareto(3.0);
        assert_eq!(r.claims.mean(), 1.0);
        let a = heavy_tail_infinite(&r, 10.0).unwrap();
        assert_relative_eq!(a.k, 2.0, epsilon = 1e-14);
        assert_relative_eq!(a.psi, 2.0 * (1.5f64 / 11.5).powf(1.5), epsilon = 1e-14);
        assert!(heavy_tail_infinite(&pareto(1e6), 1.0).unwrap().k < 1e-5);
        let ks: Vec<f64> = [1.0, 5.0, 20.0].iter().map(|&u| heavy_tail_infinite(&r, u).unwrap().psi).collect();
        assert!(ks.windows(2).all(|w| w[1] < w[0]));
        assert!(matches!(heavy_tail_infinite(&pareto(1.5), 1.0), Err(HawkesError::NetProfit { .. })));
        assert!(heavy_tail_infinite(&light(3.0), 1.0).is_err());
    }

    #[test]
    fn heavy_tail_finite_limits() {
        let r = pareto(3.0);
        let inf = heavy_tail_infinite(&r, 10.0).unwrap().psi;
        assert_eq!(heavy_tail_finite(&r, 10.0, 0.0).unwrap().psi, 0.0);
        // q = 1/3, so T = 4.5 makes the inner term 2
        let half = heavy_tail_finite(&r, 10.0, 4.5).unwrap();
        assert_relative_eq!(half.horizon_factor, 1.0 - 2f64.powf(-1.5), epsilon = 1e-15);
        let far = heavy_tail_finite(&r, 10.0, 1e9).unwrap();
        assert!((far.k * far.horizon_factor - 2.0).abs() < 1e-10);
        assert!((far.psi - inf).abs() < 1e-10);
        // at T = 1e6 the regularly varying remainder is K (1 + T / 4.5)^(-1.5)
        let mid = heavy_tail_finite(&r, 10.0, 1e6).unwrap();
        let remainder = 2.0 * (1.0 + 1e6 / 4.5f64).powf(-1.5);
        assert_relative_eq!(2.0 - mid.k * mid.horizon_factor, remainder, max_relative = 1e-6);

        let weibull = RiskModel { claims: ClaimLaw::Weibull { shape: 0.5, scale: 0.5 }, ..r.clone() };
        let g = heavy_tail_finite(&weibull, 10.0, 1e6).unwrap();
        assert!((g.k * g.horizon_factor - g.k).abs() < 1e-10);
    }
}
