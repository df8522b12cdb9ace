//! Limiting cumulant generating function `Gamma(theta) = nu (x* - 1)`: the
//! minimal fixed point, the critical pair and the closed form for exponential marks.

use marked_hawkes::cgf::{critical_pair, limit_cgf, limit_cgf_derivative, minimal_fixed_point};
use marked_hawkes::ldp::closed_form::{critical_theta, exp_marks_cgf};
use marked_hawkes::{HawkesModel, Impact, KernelSpec, MarkLaw};

fn main() -> marked_hawkes::Result<()> {
    let lambda = 2.0;
    let model = HawkesModel::new(1.0, KernelSpec::exp(1.0)?, MarkLaw::Exponential { rate: lambda })?;
    let c = critical_pair(&model, &Impact::Counting)?;
    println!("theta_c = {:.10} (closed form {:.10}), x_c = {:.10}", c.theta_c, critical_theta(lambda), c.x_c);

    println!("{:>10} {:>14} {:>14} {:>14}", "theta", "Gamma", "closed form", "Gamma'");
    for i in 0..=8 {
        let theta = -1.0 + (c.theta_c + 1.0) * i as f64 / 8.0;
        let g = limit_cgf(&model, theta, &Impact::Counting)?.to_f64();
        let d = limit_cgf_derivative(&model, theta, &Impact::Counting).map_or(f64::INFINITY, |v| v);
        println!("{theta:>10.5} {g:>14.10} {:>14.10} {d:>14.6}", exp_marks_cgf(1.0, lambda, theta)?);
    }
    let beyond = minimal_fixed_point(&model, c.theta_c + 0.01, &Impact::Counting)?;
    println!("beyond theta_c: x* = {:?}", beyond.x_star);
    Ok(())
}
