//! Large deviation rate function `Lambda(x)` from the tangent system, against
//! the numeric Legendre transform and the closed form for exponential marks.

use marked_hawkes::ldp::closed_form::exp_marks_rate;
use marked_hawkes::ldp::{legendre_numeric, rate_function, tilted_mark_law, ThetaGrid};
use marked_hawkes::{HawkesModel, KernelSpec, MarkLaw};

fn main() -> marked_hawkes::Result<()> {
    let model = HawkesModel::new(1.0, KernelSpec::exp(1.0)?, MarkLaw::Exponential { rate: 2.0 })?;
    println!("{:>6} {:>12} {:>12} {:>14} {:>14} {:>14}", "x", "theta*", "x*", "Lambda", "Legendre", "closed form");
    for x in [-1.0, 0.0, 0.5, 1.0, 2.0, 3.0, 5.0, 10.0] {
        let p = rate_function(&model, x)?;
        let legendre = if x > 0.0 { legendre_numeric(&model, x, ThetaGrid::default())? } else { f64::NAN };
        let closed = exp_marks_rate(1.0, 2.0, x)?.1.to_f64();
        println!(
            "{x:>6} {:>12.6} {:>12.6} {:>14.10} {legendre:>14.10} {closed:>14.10}",
            p.theta_star,
            p.x_star,
            p.lambda_value.to_f64()
        );
    }
    let p = rate_function(&model, 3.0)?;
    println!("tilted mark law at x = 3: {:?}", tilted_mark_law(&model, p.x_star)?);
    Ok(())
}
