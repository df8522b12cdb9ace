//! Limiting logarithmic moment generating function of `N_t` (or of the
//! compound sum of claims), its effective domain, and its derivative.
//!
//! For `theta` up to the critical value, `Gamma(theta) = nu (x* - 1)` where
//! `x*` is the minimal root of `x = g(theta) M(x - 1)`, with `g = exp` for the
//! counting process and `g = L` (claim MGF) for the compound sum.

mod cluster;

pub use cluster::{cluster_mgf_path, ClusterMgfPath};

use serde::{Deserialize, Serialize};

use crate::error::{HawkesError, Result};
use crate::model::{ClaimLaw, HawkesModel};

/// What each event contributes to the transformed quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Impact {
    /// Each event counts 1 (`N_t`).
    Counting,
    /// Each event brings an i.i.d. claim (`sum_{i <= N_t} C_i`).
    Compound(ClaimLaw),
}

impl Impact {
    /// `g(theta)`: `e^theta` or `L(theta)`.
    pub fn g(&self, theta: f64) -> Result<f64> {
        match self {
            Impact::Counting => Ok(theta.exp()),
            Impact::Compound(c) => c.mgf(theta),
        }
    }

    pub fn g_prime(&self, theta: f64) -> Result<f64> {
        match self {
            Impact::Counting => Ok(theta.exp()),
            Impact::Compound(c) => c.mgf_prime(theta),
        }
    }

    /// Solves `g(theta) = v`.
    pub fn g_inverse(&self, v: f64) -> Result<f64> {
        match self {
            Impact::Counting => {
                if v > 0.0 {
                    Ok(v.ln())
                } else {
                    Err(HawkesError::Domain { arg: v, boundary: 0.0 })
                }
            }
            Impact::Compound(c) => {
                if c.is_heavy() && v > 1.0 {
                    return Err(HawkesError::HeavyTail(f64::NAN));
                }
                c.mgf_inverse(v)
            }
        }
    }

    /// Mean contribution per event.
    pub fn mean(&self) -> f64 {
        match self {
            Impact::Counting => 1.0,
            Impact::Compound(c) => c.mean(),
        }
    }
}

/// Real number or `+inf`, kept as an explicit variant outside arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Extended {
    Finite(f64),
    Infinite,
}

impl Extended {
    pub fn finite(self) -> Option<f64> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Extended::Infinite)
    }

    /// Collapses to `f64`, mapping the sentinel to `f64::INFINITY` (for output only).
    pub fn to_f64(self) -> f64 {
        self.finite().unwrap_or(f64::INFINITY)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Fixed-point residual tolerance.
    pub tol_fp: f64,
    pub max_iter: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { tol_fp: 1e-10, max_iter: 200 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FixedPointResult {
    pub theta: f64,
    /// Minimal root of `x = g(theta) M(x - 1)`, or `Infinite` beyond the critical value.
    pub x_star: Extended,
    pub converged: bool,
    pub iterations: usize,
    /// Final bracket `[lo, hi]` of the last bisection.
    pub bracket: (f64, f64),
}

/// Tangency point `(theta_c, x_c)` bounding the effective domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalPair {
    pub theta_c: f64,
    pub x_c: f64,
}

/// Bisection for an increasing function on `(lo, hi)`: returns the final bracket.
fn bisect_increasing<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    max_iter: usize,
    iterations: &mut usize,
) -> Result<(f64, f64)> {
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        *iterations += 1;
        if f(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

/// Finds a point above 1 where `f` is non-negative, on `(1, 1 + s_max)`.
/// Returns `None` if `f` stays negative up to the boundary.
fn upper_probe<F: FnMut(f64) -> Result<f64>>(mut f: F, s_max: f64, stop: impl Fn(f64) -> bool) -> Result<Option<f64>> {
    if s_max.is_finite() {
        let hi = 1.0 + s_max;
        // walk geometrically toward the boundary
        let mut gap = s_max;
        for _ in 0..1100 {
            gap *= 0.5;
            let x = hi - gap;
            if x >= hi {
                break;
            }
            if f(x)? >= 0.0 || stop(x) {
                return Ok(Some(x));
            }
        }
        Ok(None)
    } else {
        let mut x = 2.0;
        while x < 1e12 {
            if f(x)? >= 0.0 || stop(x) {
                return Ok(Some(x));
            }
            x *= 2.0;
        }
        Ok(None)
    }
}

/// Minimal root of `x = g(theta) M(x - 1)`.
///
/// `phi(x) = g M(x-1) - x` is convex with `phi(0) > 0`. The stationary point
/// `x_hat` of `phi` is bracketed first; if `phi(x_hat) > tol_fp` there is no
/// root (theta beyond critical). Otherwise the minimal root is bisected on
/// `[0, x_hat]`, where `phi` is decreasing.
pub fn minimal_fixed_point(model: &HawkesModel, theta: f64, impact: &Impact) -> Result<FixedPointResult> {
    minimal_fixed_point_with(model, theta, impact, Tolerances::default())
}

pub fn minimal_fixed_point_with(
    model: &HawkesModel,
    theta: f64,
    impact: &Impact,
    tol: Tolerances,
) -> Result<FixedPointResult> {
    model.check()?;
    model.require_stable()?;
    let g = impact.g(theta)?;
    let s_max = model.mgf_boundary();
    let phi = |x: f64| -> Result<f64> { Ok(g * model.mark_mgf(x - 1.0)? - x) };
    let dphi = |x: f64| -> Result<f64> { Ok(g * model.mark_mgf_prime(x - 1.0)? - 1.0) };
    let mut iterations = 0;

    let infinite = |iterations, bracket| FixedPointResult {
        theta,
        x_star: Extended::Infinite,
        converged: true,
        iterations,
        bracket,
    };

    if g == 1.0 {
        // x = 1 is a root and phi'(1) = E[H] - 1 < 0, so it is the minimal one
        return Ok(FixedPointResult { theta, x_star: Extended::Finite(1.0), converged: true, iterations, bracket: (1.0, 1.0) });
    }

    if dphi(0.0)? >= 0.0 {
        // phi increasing from phi(0) > 0
        return Ok(infinite(0, (0.0, 0.0)));
    }

    // Either phi' turns non-negative (x_hat exists) or phi goes negative while
    // still decreasing (then [0, probe] already brackets the unique root).
    let probe = upper_probe(&dphi, s_max, |x| phi(x).map(|v| v <= 0.0).unwrap_or(false))?
        .ok_or(HawkesError::NoConvergence { what: "fixed-point bracket", iterations: 0 })?;

    let root_hi = if dphi(probe)? >= 0.0 {
        let (lo, hi) = bisect_increasing(dphi, 0.0, probe, tol.max_iter, &mut iterations)?;
        let x_hat = if dphi(hi)?.abs() < dphi(lo)?.abs() { hi } else { lo };
        let at_hat = phi(x_hat)?;
        if at_hat > tol.tol_fp {
            return Ok(infinite(iterations, (lo, hi)));
        }
        // within rounding of tangency x_hat is the double root
        if at_hat >= -64.0 * f64::EPSILON * x_hat.max(1.0) {
            return Ok(FixedPointResult {
                theta,
                x_star: Extended::Finite(x_hat),
                converged: true,
                iterations,
                bracket: (lo, hi),
            });
        }
        x_hat
    } else {
        probe
    };

    // phi decreasing on [0, root_hi]; bisect -phi, which is increasing
    let (lo, hi) = bisect_increasing(|x| phi(x).map(|v| -v), 0.0, root_hi, tol.max_iter, &mut iterations)?;
    let x_star = if phi(hi)?.abs() < phi(lo)?.abs() { hi } else { lo };
    let residual = phi(x_star)?.abs();
    let converged = residual < tol.tol_fp;
    if !converged {
        return Err(HawkesError::NoConvergence { what: "minimal fixed point", iterations });
    }
    Ok(FixedPointResult {
        theta,
        x_star: Extended::Finite(x_star),
        converged,
        iterations,
        bracket: (lo, hi),
    })
}

/// Tangency `(theta_c, x_c)`: `x_c > 1` solves `x M'(x-1) = M(x-1)`, which does
/// not involve `g`; then `g(theta_c) M'(x_c - 1) = 1`.
pub fn critical_pair(model: &HawkesModel, impact: &Impact) -> Result<CriticalPair> {
    critical_pair_with(model, impact, Tolerances::default())
}

pub fn critical_pair_with(model: &HawkesModel, impact: &Impact, tol: Tolerances) -> Result<CriticalPair> {
    model.check()?;
    model.require_stable()?;
    let x_c = critical_x(model, tol)?;
    let slope = model.mark_mgf_prime(x_c - 1.0)?;
    let theta_c = impact.g_inverse(1.0 / slope)?;
    Ok(CriticalPair { theta_c, x_c })
}

fn critical_x(model: &HawkesModel, tol: Tolerances) -> Result<f64> {
    let psi = |x: f64| -> Result<f64> {
        Ok(x * model.mark_mgf_prime(x - 1.0)? - model.mark_mgf(x - 1.0)?)
    };
    let s_max = model.mgf_boundary();
    let probe = upper_probe(psi, s_max, |_| false)?.ok_or(HawkesError::Steepness)?;
    let mut iterations = 0;
    let (lo, hi) = bisect_increasing(psi, 1.0, probe, tol.max_iter, &mut iterations)?;
    Ok(if psi(hi)?.abs() < psi(lo)?.abs() { hi } else { lo })
}

/// `Gamma(theta) = nu (x* - 1)`, or `+inf` beyond the critical value.
pub fn limit_cgf(model: &HawkesModel, theta: f64, impact: &Impact) -> Result<Extended> {
    let fp = minimal_fixed_point(model, theta, impact)?;
    Ok(match fp.x_star {
        Extended::Finite(x) => Extended::Finite(model.nu * (x - 1.0)),
        Extended::Infinite => Extended::Infinite,
    })
}

/// `Gamma'(theta) = nu g'(theta) M(x*-1) / (1 - g(theta) M'(x*-1))` for `theta < theta_c`.
pub fn limit_cgf_derivative(model: &HawkesModel, theta: f64, impact: &Impact) -> Result<f64> {
    let boundary = match critical_pair(model, impact) {
        Ok(c) => c.theta_c,
        Err(HawkesError::Steepness) => f64::INFINITY,
        Err(e) => return Err(e),
    };
    if theta >= boundary {
        return Err(HawkesError::Domain { arg: theta, boundary });
    }
    let fp = minimal_fixed_point(model, theta, impact)?;
    let x = fp.x_star.finite().ok_or(HawkesError::Domain { arg: theta, boundary })?;
    let denom = 1.0 - impact.g(theta)? * model.mark_mgf_prime(x - 1.0)?;
    if denom <= 0.0 {
        return Err(HawkesError::Domain { arg: theta, boundary });
    }
    Ok(model.nu * impact.g_prime(theta)? * model.mark_mgf(x - 1.0)? / denom)
}
