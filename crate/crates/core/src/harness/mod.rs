//! Monte Carlo trials of the full pipeline: sample training tasks, train,
//! infer on a held-out task, and compare the failure rate with the bounds.
//!
//! Trial `i` of an experiment draws all of its randomness from
//! `mix64(master_seed, i)`, so reports do not depend on the worker count.

mod adversarial;
mod experiment;
mod sampling;
mod sweep;
mod trial;

pub use adversarial::{adversarial_experiment, AdversarialReport};
pub(crate) use experiment::pool;
pub use experiment::{resolve_margins, run_experiment, ExperimentReport, ReportBounds};
pub use sampling::{
    admitted_tasks, coverage_experiment, coverage_holds, sample_training_tasks, SelectionFilter,
    TaskPredicate, TestTaskPolicy, ENUMERATION_LIMIT,
};
pub use sweep::{sweep, EllRule, NThetaRule, SweepGrid, SweepReport, SweepRow};
pub use trial::{run_trial, run_trial_with, ExperimentConfig, TrainingSet, TrialResult};
