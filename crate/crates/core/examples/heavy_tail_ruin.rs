//! Subexponential claims: the constant `K`, infinite- and finite-horizon ruin
//! asymptotics, and the Monte Carlo ratio `psi_hat(u) / B̄_0(u)`.
//!
//! The ratio approaches `K` only for very large reserves; at these reserves it
//! is a trend check, not a quantitative one.

use marked_hawkes::risk::{
    default_horizon, heavy_tail_finite, heavy_tail_infinite, integrated_tail, ruin_mc_curve, RiskModel,
};
use marked_hawkes::{ClaimLaw, HawkesModel, KernelSpec, MarkLaw, RngSpec};

fn main() -> marked_hawkes::Result<()> {
    let hawkes = HawkesModel::new(1.0, KernelSpec::exp(1.0)?, MarkLaw::Exponential { rate: 2.0 })?;
    // E[C] = scale / alpha = 1
    let claims = ClaimLaw::Pareto { alpha: 1.5, scale: 1.5 };
    let risk = RiskModel::new(hawkes, claims, 3.0, 10.0)?;

    let inf = heavy_tail_infinite(&risk, 10.0)?;
    println!("K = {}", inf.k);
    for t in [1.0, 4.5, 100.0, 1e6, 1e9] {
        let f = heavy_tail_finite(&risk, 10.0, t)?;
        println!("  T = {t:>8.1e}  K * factor = {:.12}", f.k * f.horizon_factor);
    }

    let reserves = [10.0, 30.0, 100.0];
    let replicas: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2000);
    let horizon = default_horizon(&risk, 100.0)?;
    let curve = ruin_mc_curve(&risk, &reserves, horizon, replicas, RngSpec::new(99, 0))?;
    for e in &curve {
        let tail = integrated_tail(&claims, e.u)?;
        println!(
            "  u = {:5}  psi = {:.5} [{:.5}, {:.5}]  B0 = {:.5}  ratio = {:.3}",
            e.u,
            e.psi_hat,
            e.ci_low,
            e.ci_high,
            tail,
            e.psi_hat / tail
        );
    }
    Ok(())
}
