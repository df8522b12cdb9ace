//! Law of large numbers and central limit theorem: closed-form constants and
//! a Monte Carlo check of the Gaussian limit of `(N_T - mu T) / sqrt(sigma^2 T)`.

use marked_hawkes::asymptotics::{clt_check, clt_variance, lln_mean};
use marked_hawkes::{HawkesModel, KernelSpec, MarkLaw, RngSpec};

fn main() -> marked_hawkes::Result<()> {
    let model = HawkesModel::new(1.0, KernelSpec::exp(1.0)?, MarkLaw::Exponential { rate: 2.0 })?;
    println!("mu = {}, sigma^2 = {}", lln_mean(&model)?, clt_variance(&model)?);

    let report = clt_check(&model, 500.0, 400, RngSpec::new(7, 0))?;
    println!(
        "{} replicas at T = {}: mean rate {:.4}, variance rate {:.3}, KS {:.4} (p = {:.3})",
        report.replicas, report.horizon, report.sample_mean_rate, report.sample_var_rate, report.ks_statistic, report.p_value
    );

    let slow = HawkesModel::new(1.0, KernelSpec::power(1.4, 0.1)?, MarkLaw::Degenerate { value: 1.0 })?;
    match clt_variance(&slow) {
        Err(e) => println!("power kernel with p = 1.4: {e}"),
        Ok(v) => println!("power kernel with p = 1.4: sigma^2 = {v}"),
    }
    Ok(())
}
