//! How many training tasks and demonstrations the guarantees ask for as the
//! number of subtasks per step grows.

use arc_lab::stats::{nonasymptotic_bound, theorem_thresholds, BoundInputs};

fn main() -> arc_lab::Result<()> {
    println!("{:>4} {:>3} {:>8} {:>6}", "D", "T", "n_theta", "ell");
    for d in [5u64, 10, 20, 50, 100] {
        let th = theorem_thresholds(d, 3, 0.5)?;
        println!("{d:>4} {:>3} {:>8} {:>6}", 3, th.n_theta_min, th.ell_min);
    }

    let bound = nonasymptotic_bound(&BoundInputs {
        d: 10,
        t: 3,
        h: 10,
        c: 0.5,
        r: 0.5,
        n_theta: 81,
        ell: 81,
        n_x: 200,
    })?;
    println!(
        "D=10 T=3: coverage {:.4} + inference {:.4} + training {:.2e} = {:.4}",
        bound.coverage, bound.inference, bound.training, bound.total
    );
    Ok(())
}
