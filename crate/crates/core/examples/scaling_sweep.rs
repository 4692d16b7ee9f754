//! Failure rate as the number of subtasks per step grows, with `n_θ` and `ℓ`
//! set by the theorem rules at each point. `n_θ` must stay below the task
//! count, or no unseen test task is left.

use arc_lab::families::ParityConfig;
use arc_lab::harness::{sweep, EllRule, ExperimentConfig, NThetaRule, SweepGrid};

fn main() -> arc_lab::Result<()> {
    let base = ExperimentConfig::new(ParityConfig::new(8, 3), 0, 100, 0, 40).with_seed(5);
    let report = sweep(
        &base,
        &SweepGrid::D(vec![8, 10, 12, 14]),
        NThetaRule::Theorem,
        EllRule::Theorem,
        None,
    )?;
    print!("{}", report.csv());
    Ok(())
}
