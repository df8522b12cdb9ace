//! Light-tailed ruin: net-profit window, Lundberg exponent, the finite-horizon
//! rate `w(z)`, and a Monte Carlo check of the exponential decay of `psi(u)`.

use marked_hawkes::risk::{
    default_horizon, finite_horizon_knee, finite_horizon_rate, lundberg_exponent, net_profit_window, ruin_mc_curve,
    RiskModel,
};
use marked_hawkes::stats::ols_slope;
use marked_hawkes::{ClaimLaw, HawkesModel, KernelSpec, MarkLaw, RngSpec};

fn main() -> marked_hawkes::Result<()> {
    let hawkes = HawkesModel::new(1.0, KernelSpec::exp(1.0)?, MarkLaw::Exponential { rate: 2.0 })?;
    let risk = RiskModel::new(hawkes, ClaimLaw::Exponential { rate: 1.0 }, 3.0, 10.0)?;

    let (rho_min, rho_max) = net_profit_window(&risk)?;
    let l = lundberg_exponent(&risk)?;
    println!("window ({rho_min:.6}, {rho_max:.6}), theta_dagger {:.8} (residual {:.1e})", l.theta_dagger, l.residual);

    let knee = finite_horizon_knee(&risk)?;
    println!("w(z), knee at z = {knee:.4}");
    for f in [0.25, 0.5, 1.0, 2.0] {
        println!("  z = {:8.4}  w = {:.6}", f * knee, finite_horizon_rate(&risk, f * knee)?);
    }

    // optional arguments: replicas, reserve multiplier
    let mut args = std::env::args().skip(1);
    let replicas: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(4000);
    let scale: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1.0);
    let reserves = [5.0, 10.0, 15.0, 20.0].map(|u| u * scale);
    let horizon = default_horizon(&risk, reserves[3])?;
    let curve = ruin_mc_curve(&risk, &reserves, horizon, replicas, RngSpec::new(2024, 0))?;
    for e in &curve {
        println!("  u = {:4}  psi = {:.4} [{:.4}, {:.4}]", e.u, e.psi_hat, e.ci_low, e.ci_high);
    }
    let logs: Vec<f64> = curve.iter().map(|e| e.psi_hat.ln()).collect();
    println!("log-psi slope {:.5} vs -theta_dagger {:.5}", ols_slope(&reserves, &logs), -l.theta_dagger);
    Ok(())
}
