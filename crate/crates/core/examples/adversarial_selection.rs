//! Withholding training tasks on purpose. Removing every task with a given
//! index at one step makes that subtask unlearnable; removing only tasks that
//! use two indices together does not, since each still appears elsewhere.

use arc_lab::families::ParityConfig;
use arc_lab::harness::{adversarial_experiment, ExperimentConfig, SelectionFilter};

fn main() -> arc_lab::Result<()> {
    for filter in [
        SelectionFilter::ExcludeCoordinate { step: 1, value: 4 },
        SelectionFilter::ExcludePair { a: 3, b: 5 },
    ] {
        let mut cfg = ExperimentConfig::new(ParityConfig::new(8, 3), 0, 100, 80, 20).with_seed(9);
        cfg.filter = filter;
        let r = adversarial_experiment(&cfg, None)?;
        println!("{:?}: trained on {} tasks", r.filter, r.admitted);
        println!(
            "  withheld tasks: recovery {:.2}, per-step {:?}, token accuracy {:.2}",
            r.excluded.recovery_rate(),
            r.excluded.step_recovery,
            r.excluded.mean_token_accuracy
        );
        println!("  i.i.d. control: recovery {:.2}", r.control.recovery_rate());
    }
    Ok(())
}
