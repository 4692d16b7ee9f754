//! Sparse parity with chain of thought: each step XORs one more secret bit
//! into the running value, so the class is a product of tiny subtask families.

use arc_lab::families::{count_tasks, make_parity_class, ParityConfig, Representation};
use arc_lab::generate_dataset;
use arc_lab::seed::rng_from_seed;
use arc_lab::stats::theorem_thresholds;
use num_traits::ToPrimitive;

fn main() -> arc_lab::Result<()> {
    let class = make_parity_class(&ParityConfig::new(10, 3))?;
    let task = class.task(vec![0, 3, 6])?;
    println!("task {} over {} bits", task.one_indexed(), class.input_space().width());

    let data = generate_dataset(&class, &task, 5, &mut rng_from_seed(7))?;
    for demo in data.iter() {
        let bits: String = class.input_space().to_ints(&demo.x).iter().map(u64::to_string).collect();
        println!("  x={bits}  y={:?}", demo.y);
    }

    // Same tasks either way, but without intermediate tokens the class is one
    // step with C(d, k) subtasks, so far more training tasks are needed.
    let with_cot = count_tasks(&class, Representation::WithCot)?;
    let no_cot = count_tasks(&class, Representation::NoCot)?;
    let (d, t) = (class.subtasks_per_step() as u64, class.steps() as u64);
    let cot = theorem_thresholds(d, t, 0.5)?;
    let flat = theorem_thresholds(no_cot.to_u64().unwrap_or(u64::MAX), 1, 0.5)?;
    println!("{with_cot} tasks with chain of thought: D={d} T={t}, n_theta={}", cot.n_theta_min);
    println!("{no_cot} tasks without: D={no_cot} T=1, n_theta={}", flat.n_theta_min);
    Ok(())
}
