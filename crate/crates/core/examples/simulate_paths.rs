//! Exact simulation by thinning and by the cluster construction, with the
//! intensity path and the compensator of one realization.

use marked_hawkes::simulate::{integrated_intensity, intensity_path, simulate_cluster_with, SimOptions};
use marked_hawkes::{HawkesModel, KernelSpec, MarkLaw, RngSpec, Sampler};

fn main() -> marked_hawkes::Result<()> {
    let model = HawkesModel::new(1.0, KernelSpec::exp(1.0)?, MarkLaw::Exponential { rate: 2.0 })?;
    let horizon = 200.0;
    let rng = RngSpec::new(42, 0);

    let path = marked_hawkes::simulate::simulate(&model, horizon, rng, Sampler::Thinning)?;
    println!("thinning: N_T = {}, N_T / T = {:.3}", path.count(), path.count() as f64 / horizon);
    println!("compensator at T = {:.3}", integrated_intensity(&model, &path, horizon));

    let grid: Vec<f64> = (0..=10).map(|i| i as f64).collect();
    for (t, l) in grid.iter().zip(intensity_path(&model, &path, &grid)) {
        println!("  lambda({t:4.1}) = {l:.4}");
    }

    let (cluster, stats) = simulate_cluster_with(&model, horizon, rng, SimOptions::default())?;
    println!(
        "cluster: N_T = {}, immigrants {}, offspring per event {:.3} (E[H] = {})",
        cluster.count(),
        stats.immigrants,
        stats.offspring as f64 / stats.parents as f64,
        model.branching_ratio()
    );

    let power = HawkesModel::new(0.5, KernelSpec::power(2.5, 0.6)?, MarkLaw::Gamma { shape: 2.0, scale: 0.3 })?;
    let p = marked_hawkes::simulate::simulate(&power, horizon, rng, Sampler::Thinning)?;
    println!("power kernel: E[H] = {:.3}, N_T = {}", power.branching_ratio(), p.count());
    Ok(())
}
