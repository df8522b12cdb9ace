//! Finite-time MGF of the size of one cluster.
//!
//! `F(t) = E[exp(theta S_t)]`, where `S_t` counts the root of a cluster and
//! its descendants born within `t` of it, satisfies
//!
//! ```text
//! F(t) = e^theta * M( int_0^t p(s) (F(t - s) - 1) ds )
//! ```
//!
//! with `p` the normalized kernel profile. The convolution is discretized by
//! product trapezoid: `F` is interpolated linearly between grid nodes and the
//! profile is integrated exactly against each linear piece.

use serde::Serialize;

use super::{critical_pair, Impact};
use crate::error::{HawkesError, Result};
use crate::model::HawkesModel;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterMgfPath {
    pub theta: f64,
    pub step: f64,
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

impl ClusterMgfPath {
    pub fn last(&self) -> f64 {
        *self.values.last().expect("non-empty path")
    }
}

/// Solves for `F` on the uniform grid `0, h, ..., T`; `step` is adjusted so that
/// a whole number of steps spans `T`.
pub fn cluster_mgf_path(model: &HawkesModel, theta: f64, horizon: f64, step: f64) -> Result<ClusterMgfPath> {
    model.check()?;
    model.require_stable()?;
    if !(horizon > 0.0 && step > 0.0 && step <= horizon) {
        return Err(HawkesError::invalid(format!("need 0 < step <= T (step {step}, T {horizon})")));
    }
    let n_steps = (horizon / step).round().max(1.0) as usize;
    let h = horizon / n_steps as f64;
    let g = theta.exp();
    let s_max = model.mgf_boundary();
    let limit = match critical_pair(model, &Impact::Counting) {
        Ok(c) => c.x_c * (1.0 + 1e-9),
        Err(HawkesError::Steepness) => f64::INFINITY,
        Err(e) => return Err(e),
    };

    let kernel = model.kernel;
    // Weights of F at the left and right end of each profile interval [kh, (k+1)h].
    let (w_left, w_right): (Vec<f64>, Vec<f64>) = (0..n_steps)
        .map(|k| {
            let (a, b) = (k as f64 * h, (k + 1) as f64 * h);
            let mass = kernel.profile_tail(a) - kernel.profile_tail(b);
            let first = kernel.profile_first_moment(b) - kernel.profile_first_moment(a);
            ((b * mass - first) / h, (first - a * mass) / h)
        })
        .unzip();

    let mut values = Vec::with_capacity(n_steps + 1);
    values.push(g);
    for n in 1..=n_steps {
        // Interval k joins F(t_n - kh) = values[n-k] (left) and values[n-k-1] (right);
        // the k = 0 left term involves the unknown values[n].
        let mut known = w_right[0] * (values[n - 1] - 1.0);
        for k in 1..n {
            known += w_left[k] * (values[n - k] - 1.0) + w_right[k] * (values[n - k - 1] - 1.0);
        }
        let mut f = values[n - 1];
        for _ in 0..100 {
            let arg = known + w_left[0] * (f - 1.0);
            if arg >= s_max {
                return Err(HawkesError::Divergence { value: f64::INFINITY, limit });
            }
            let next = g * model.mark_mgf(arg)?;
            let done = (next - f).abs() <= 1e-15 * next.abs();
            f = next;
            if done {
                break;
            }
        }
        if !(f <= limit) {
            return Err(HawkesError::Divergence { value: f, limit });
        }
        values.push(f);
    }
    let times = (0..=n_steps).map(|i| i as f64 * h).collect();
    Ok(ClusterMgfPath { theta, step: h, times, values })
}
