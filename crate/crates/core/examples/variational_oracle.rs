//! The rate function as an infimum over reweighted mark laws, computed by
//! brute force over the simplex for a two-atom mark law. The minimizer is the
//! exponentially tilted law.

use marked_hawkes::ldp::{rate_function, tilted_mark_law, variational_rate, SimplexGrid};
use marked_hawkes::{HawkesModel, KernelSpec, MarkLaw};

fn main() -> marked_hawkes::Result<()> {
    let model = HawkesModel::new(
        1.0,
        KernelSpec::exp(1.0)?,
        MarkLaw::Categorical { values: vec![0.2, 0.8], probs: vec![0.5, 0.5] },
    )?;
    for x in [1.0, 2.0, 3.0, 6.0] {
        let v = variational_rate(&model, x, SimplexGrid::default())?;
        let p = rate_function(&model, x)?;
        let MarkLaw::Categorical { probs, .. } = tilted_mark_law(&model, p.x_star)? else { unreachable!() };
        println!(
            "x = {x}: variational {:.8}, tangent system {:.8}; weights {:.4?} vs tilted {:.4?}",
            v.value,
            p.lambda_value.to_f64(),
            v.weights,
            probs
        );
    }
    Ok(())
}
