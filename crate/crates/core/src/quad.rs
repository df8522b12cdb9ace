//! Thin wrappers over tanh-sinh quadrature with a relative tolerance and a
//! half-line map.

use crate::error::{HawkesError, Result};

/// `int_a^b f`, to relative tolerance `rel_tol` (absolute when the integral is near zero).
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    let coarse = quadrature::double_exponential::integrate(&f, a, b, 1e-6);
    let target = (rel_tol * coarse.integral.abs()).max(1e-300);
    let fine = quadrature::double_exponential::integrate(&f, a, b, target);
    if !fine.integral.is_finite() {
        return Err(HawkesError::Other(format!("quadrature on [{a}, {b}] produced a non-finite value")));
    }
    if fine.error_estimate > 100.0 * target.max(rel_tol * fine.integral.abs()) {
        return Err(HawkesError::NoConvergence {
            what: "adaptive quadrature",
            iterations: fine.num_function_evaluations as usize,
        });
    }
    Ok(fine.integral)
}

/// `int_a^inf f` via `y = a + s (exp(w) - 1)`, `w = t / (1 - t)`, `s = 1 + |a|`.
///
/// The log stage turns power-law tails into exponential decay in `w`, so the
/// transformed integrand on `t in [0, 1)` is smooth up to the endpoint.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: F, a: f64, rel_tol: f64) -> Result<f64> {
    let scale = 1.0 + a.abs();
    let g = |t: f64| {
        let one_minus = 1.0 - t;
        if one_minus <= 0.0 {
            return 0.0;
        }
        let w = t / one_minus;
        let ew = w.exp();
        let v = f(a + scale * (ew - 1.0)) * scale * ew / (one_minus * one_minus);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let left = integrate(g, 0.0, 0.5, rel_tol)?;
    let right = integrate(g, 0.5, 1.0, rel_tol)?;
    Ok(left + right)
}
