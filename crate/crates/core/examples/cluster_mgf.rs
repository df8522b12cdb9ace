//! Time-dependent cluster MGF `F(t)` from its Volterra equation; `F(t)`
//! increases to the minimal fixed point `x*`, or blows up past `theta_c`.

use marked_hawkes::cgf::{cluster_mgf_path, minimal_fixed_point};
use marked_hawkes::{HawkesModel, Impact, KernelSpec, MarkLaw};

fn main() -> marked_hawkes::Result<()> {
    let model = HawkesModel::new(1.0, KernelSpec::exp(1.0)?, MarkLaw::Exponential { rate: 2.0 })?;
    let theta = 0.1;
    let x_star = minimal_fixed_point(&model, theta, &Impact::Counting)?.x_star.to_f64();
    let path = cluster_mgf_path(&model, theta, 50.0, 50.0 / 2000.0)?;
    for i in (0..path.times.len()).step_by(200) {
        println!("  F({:5.2}) = {:.8}", path.times[i], path.values[i]);
    }
    println!("F(50) = {:.8}, x* = {x_star:.8}", path.last());

    match cluster_mgf_path(&model, 0.3, 50.0, 0.025) {
        Ok(p) => println!("theta = 0.3: F(50) = {}", p.last()),
        Err(e) => println!("theta = 0.3: {e}"),
    }
    Ok(())
}
