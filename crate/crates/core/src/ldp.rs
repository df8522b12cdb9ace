//! Large deviation rate function of `N_t / t` (and of the compound claim
//! rate), computed from the tangent system and checked against two oracles:
//! a numeric Legendre transform of the limiting CGF, and a brute-force
//! variational infimum over reweighted mark laws with finite support.

use serde::Serialize;

use crate::cgf::{critical_pair, limit_cgf, Extended, Impact};
use crate::error::{HawkesError, Result};
use crate::model::{HawkesModel, MarkLaw};

/// Lower end of the bisection bracket for `x*`.
const X_STAR_FLOOR: f64 = 1e-12;

/// A point of the rate function together with its optimizers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatePoint {
    pub x: f64,
    /// Maximizer of `theta x - Gamma(theta)`; `-inf` at `x = 0`, NaN for `x < 0`.
    pub theta_star: f64,
    /// `f(theta_star)`; 0 at `x = 0`, NaN for `x < 0`.
    pub x_star: f64,
    pub lambda_value: Extended,
}

/// `Lambda(x)` for the counting process.
pub fn rate_function(model: &HawkesModel, x: f64) -> Result<RatePoint> {
    rate_point(model, x, &Impact::Counting)
}

/// `Lambda(x) = theta* x - nu (x* - 1)`.
///
/// `theta*` is eliminated through `g(theta*) = x* / M(x* - 1)`, leaving the
/// scalar equation
///
/// ```text
/// x* M'(x*-1) / M(x*-1) - 1 + nu g'(theta*) M(x*-1) / x = 0
/// ```
///
/// (for counting, `g' M = x*` and this reads `x* M'/M = 1 - nu x*/x`), which is
/// bisected on `(0, x_c]`.
pub fn rate_point(model: &HawkesModel, x: f64, impact: &Impact) -> Result<RatePoint> {
    model.check()?;
    model.require_stable()?;
    if x < 0.0 {
        return Ok(RatePoint { x, theta_star: f64::NAN, x_star: f64::NAN, lambda_value: Extended::Infinite });
    }
    if x == 0.0 {
        // void probability of the immigrant stream
        return Ok(RatePoint {
            x,
            theta_star: f64::NEG_INFINITY,
            x_star: 0.0,
            lambda_value: Extended::Finite(model.nu),
        });
    }
    let nu = model.nu;
    let theta_of = |y: f64| -> Result<f64> { impact.g_inverse(y / model.mark_mgf(y - 1.0)?) };
    let residual = |y: f64| -> Result<f64> {
        let m = model.mark_mgf(y - 1.0)?;
        let mp = model.mark_mgf_prime(y - 1.0)?;
        let theta = impact.g_inverse(y / m)?;
        Ok(y * mp / m - 1.0 + nu * impact.g_prime(theta)? * m / x)
    };

    let hi = match critical_pair(model, impact) {
        Ok(c) => c.x_c,
        Err(HawkesError::Steepness) => {
            let mut hi = 2.0;
            while residual(hi)? < 0.0 {
                hi *= 2.0;
                if hi > 1e15 {
                    return Err(HawkesError::NoConvergence { what: "rate function bracket", iterations: 0 });
                }
            }
            hi
        }
        Err(e) => return Err(e),
    };
    let lo = X_STAR_FLOOR;
    if residual(lo)? > 0.0 || residual(hi)? < 0.0 {
        return Err(HawkesError::Domain { arg: x, boundary: hi });
    }
    let (mut a, mut b) = (lo, hi);
    let mut iterations = 0;
    while iterations < 400 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        iterations += 1;
        if residual(mid)? < 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    let y = if residual(b)?.abs() < residual(a)?.abs() { b } else { a };
    let theta = theta_of(y)?;
    Ok(RatePoint {
        x,
        theta_star: theta,
        x_star: y,
        lambda_value: Extended::Finite(theta * x - nu * (y - 1.0)),
    })
}

/// Search range for [`legendre_numeric`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaGrid {
    pub lo: f64,
    /// Upper end; defaults to the critical value.
    pub hi: Option<f64>,
    pub points: usize,
}

impl Default for ThetaGrid {
    fn default() -> Self {
        ThetaGrid { lo: -30.0, hi: None, points: 400 }
    }
}

/// `sup_theta {theta x - Gamma(theta)}` by grid search and golden-section
/// refinement. Oracle only; independent of the tangent system.
pub fn legendre_numeric(model: &HawkesModel, x: f64, grid: ThetaGrid) -> Result<f64> {
    legendre_numeric_with(model, x, &Impact::Counting, grid)
}

pub fn legendre_numeric_with(model: &HawkesModel, x: f64, impact: &Impact, grid: ThetaGrid) -> Result<f64> {
    let hi = match grid.hi {
        Some(h) => h,
        None => match critical_pair(model, impact) {
            Ok(c) => c.theta_c,
            Err(HawkesError::Steepness) => (x.max(1e-300) / model.nu).ln().max(0.0) + 5.0,
            Err(e) => return Err(e),
        },
    };
    let objective = |theta: f64| -> Result<f64> {
        match limit_cgf(model, theta, impact)? {
            Extended::Finite(gamma) => Ok(theta * x - gamma),
            Extended::Infinite => Ok(f64::NEG_INFINITY),
        }
    };
    let n = grid.points.max(3);
    let thetas: Vec<f64> = (0..n).map(|i| grid.lo + (hi - grid.lo) * i as f64 / (n - 1) as f64).collect();
    let mut best = (0, f64::NEG_INFINITY);
    for (i, &t) in thetas.iter().enumerate() {
        let v = objective(t)?;
        if v > best.1 {
            best = (i, v);
        }
    }
    let (mut a, mut b) = (thetas[best.0.saturating_sub(1)], thetas[(best.0 + 1).min(n - 1)]);
    // golden section on a concave objective
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (objective(c)?, objective(d)?);
    for _ in 0..200 {
        if (b - a).abs() < 1e-13 * (1.0 + a.abs()) {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = objective(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = objective(d)?;
        }
    }
    Ok(best.1.max(fc).max(fd).max(objective(hi.min(b))?))
}

/// Resolution of the simplex search in [`variational_rate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexGrid {
    pub coarse: f64,
    pub fine: f64,
}

impl Default for SimplexGrid {
    fn default() -> Self {
        SimplexGrid { coarse: 1e-2, fine: 1e-4 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VariationalResult {
    pub value: f64,
    /// Minimizing weights over the atoms of the mark law.
    pub weights: Vec<f64>,
}

/// Infimum over `q_hat << q` of
///
/// ```text
/// x E[H] + nu - x + x log(x / (x E[H] + nu)) + x KL(q_hat | q)
/// ```
///
/// for a categorical mark law with at most four atoms: exhaustive search on a
/// simplex lattice, then compass search moving mass between pairs of atoms
/// with the step halved down to `grid.fine`. The objective is convex in
/// `q_hat`, so the local search finds the global minimum.
pub fn variational_rate(model: &HawkesModel, x: f64, grid: SimplexGrid) -> Result<VariationalResult> {
    let MarkLaw::Categorical { values, probs } = &model.marks else {
        return Err(HawkesError::invalid("variational_rate needs categorical marks"));
    };
    if values.len() > 4 {
        return Err(HawkesError::invalid("variational_rate supports at most 4 atoms"));
    }
    if !(x > 0.0) {
        return Err(HawkesError::invalid("variational_rate needs x > 0"));
    }
    // atoms with zero probability cannot carry q_hat mass
    let atoms: Vec<(f64, f64)> = values
        .iter()
        .zip(probs)
        .filter(|(_, p)| **p > 0.0)
        .map(|(v, p)| (model.kernel.integrated(*v), *p))
        .collect();
    let nu = model.nu;
    let objective = |w: &[f64]| -> f64 {
        let mean_h: f64 = w.iter().zip(&atoms).map(|(wi, (h, _))| wi * h).sum();
        let kl: f64 = w
            .iter()
            .zip(&atoms)
            .filter(|(wi, _)| **wi > 0.0)
            .map(|(wi, (_, p))| wi * (wi / p).ln())
            .sum();
        x * mean_h + nu - x + x * (x / (x * mean_h + nu)).ln() + x * kl
    };

    let d = atoms.len();
    let k = (1.0 / grid.coarse).round() as usize;
    let mut best_w = vec![0.0; d];
    let mut best = f64::INFINITY;
    let mut counts = vec![0usize; d];
    enumerate_compositions(k, d, 0, &mut counts, &mut |c| {
        let w: Vec<f64> = c.iter().map(|&ci| ci as f64 / k as f64).collect();
        let v = objective(&w);
        if v < best {
            best = v;
            best_w = w;
        }
    });

    let mut step = grid.coarse / 2.0;
    while step >= grid.fine * (1.0 - 1e-9) {
        loop {
            let mut improved = false;
            for i in 0..d {
                for j in 0..d {
                    if i == j || best_w[i] < step {
                        continue;
                    }
                    let mut w = best_w.clone();
                    w[i] -= step;
                    w[j] += step;
                    let v = objective(&w);
                    if v < best {
                        best = v;
                        best_w = w;
                        improved = true;
                    }
                }
            }
            if !improved {
                break;
            }
        }
        step /= 2.0;
    }

    // report weights on the original atom list
    let mut weights = Vec::with_capacity(values.len());
    let mut it = best_w.into_iter();
    for p in probs {
        weights.push(if *p > 0.0 { it.next().unwrap_or(0.0) } else { 0.0 });
    }
    Ok(VariationalResult { value: best, weights })
}

fn enumerate_compositions(total: usize, parts: usize, used: usize, counts: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    let slot = counts.len() - parts;
    if parts == 1 {
        counts[slot] = total - used;
        f(counts);
        return;
    }
    for c in 0..=(total - used) {
        counts[slot] = c;
        enumerate_compositions(total, parts - 1, used + c, counts, f);
    }
}

/// Exponentially tilted mark law `dq* = exp((x* - 1) H(a)) / M(x* - 1) dq`,
/// expressed in the same family as `q`.
pub fn tilted_mark_law(model: &HawkesModel, x_star: f64) -> Result<MarkLaw> {
    let s = x_star - 1.0;
    let boundary = model.mgf_boundary();
    if !(s < boundary) {
        return Err(HawkesError::Domain { arg: s, boundary });
    }
    let kappa = model.kernel.impact_factor();
    Ok(match &model.marks {
        MarkLaw::Degenerate { value } => MarkLaw::Degenerate { value: *value },
        MarkLaw::Exponential { rate } => MarkLaw::Exponential { rate: rate - s * kappa },
        MarkLaw::Gamma { shape, scale } => MarkLaw::Gamma { shape: *shape, scale: 1.0 / (1.0 / scale - s * kappa) },
        MarkLaw::Categorical { values, probs } => {
            let raw: Vec<f64> = values.iter().zip(probs).map(|(v, p)| p * (s * kappa * v).exp()).collect();
            let total: f64 = raw.iter().sum();
            MarkLaw::Categorical { values: values.clone(), probs: raw.iter().map(|r| r / total).collect() }
        }
    })
}

/// Closed forms for `H(a) ~ Exp(lambda)`; test oracles.
pub mod closed_form {
    use crate::cgf::Extended;
    use crate::error::{HawkesError, Result};

    fn check(lambda: f64) -> Result<()> {
        if lambda > 1.0 {
            Ok(())
        } else {
            Err(HawkesError::Stability(1.0 / lambda))
        }
    }

    /// `log((lambda + 1)^2 / (4 lambda))`.
    pub fn critical_theta(lambda: f64) -> f64 {
        ((lambda + 1.0).powi(2) / (4.0 * lambda)).ln()
    }

    /// `Gamma(theta) = nu ((lambda + 1 - sqrt((lambda+1)^2 - 4 lambda e^theta)) / 2 - 1)`.
    ///
    /// The discriminant is evaluated as `-(lambda+1)^2 expm1(theta - theta_c)`,
    /// which is the same quantity without cancellation near `theta_c`.
    pub fn exp_marks_cgf(nu: f64, lambda: f64, theta: f64) -> Result<f64> {
        check(lambda)?;
        let theta_c = critical_theta(lambda);
        if theta > theta_c {
            return Err(HawkesError::Domain { arg: theta, boundary: theta_c });
        }
        let disc = -(lambda + 1.0).powi(2) * (theta - theta_c).exp_m1();
        Ok(nu * (0.5 * (lambda + 1.0 - disc.max(0.0).sqrt()) - 1.0))
    }

    /// Maximizer `theta(x)` and value `I(x)` of the Legendre transform.
    ///
    /// `-2x^2 + x sqrt(4x^2 + nu^2 (lambda+1)^2)` is evaluated as
    /// `x c^2 / (sqrt(4x^2 + c^2) + 2x)` with `c = nu (lambda + 1)`.
    pub fn exp_marks_rate(nu: f64, lambda: f64, x: f64) -> Result<(f64, Extended)> {
        check(lambda)?;
        if x < 0.0 {
            return Ok((f64::NAN, Extended::Infinite));
        }
        let c = nu * (lambda + 1.0);
        let root = (4.0 * x * x + c * c).sqrt();
        let inner = x * c * c / (root + 2.0 * x);
        let theta = (inner / (lambda * nu * nu)).ln();
        let linear = if x == 0.0 { 0.0 } else { x * theta };
        let value = linear - nu * (0.5 * (lambda + 1.0 - (-2.0 * x + root) / nu) - 1.0);
        Ok((theta, Extended::Finite(value)))
    }
}
