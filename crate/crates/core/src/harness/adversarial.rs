use serde::{Deserialize, Serialize};

use super::experiment::{run_experiment, ExperimentReport};
use super::sampling::admitted_tasks;
use super::trial::{ExperimentConfig, TrainingSet};
use super::{SelectionFilter, TestTaskPolicy};
use crate::class::FamilyTag;
use crate::error::{ArcError, Result};

/// Paired runs: train under the filter and test on what it removed, versus
/// i.i.d. training of the same size tested on unseen tasks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdversarialReport {
    pub filter: SelectionFilter,
    pub admitted: usize,
    pub excluded: ExperimentReport,
    pub control: ExperimentReport,
}

/// `base.filter` selects the adversarial kind. The excluded run trains on
/// every admitted task; the control draws as many tasks i.i.d. from the full class.
pub fn adversarial_experiment(base: &ExperimentConfig, workers: Option<usize>) -> Result<AdversarialReport> {
    if base.family.tag() != FamilyTag::Parity {
        return Err(ArcError::Unsupported("adversarial selection outside parity".into()));
    }
    if let SelectionFilter::IidUniform = base.filter {
        return Err(ArcError::InvalidConfig("adversarial runs need an excluding filter".into()));
    }
    let class = base.family.build()?;
    let admitted = admitted_tasks(&class, &base.filter)?.len();

    let mut excluded = base.clone();
    excluded.training_set = TrainingSet::AllAdmitted;
    excluded.test_policy = TestTaskPolicy::ExcludedSet;
    excluded.n_theta = admitted;

    let mut control = base.clone();
    control.filter = SelectionFilter::IidUniform;
    control.training_set = TrainingSet::Sampled;
    control.test_policy = TestTaskPolicy::UnseenUniform;
    control.n_theta = admitted;
    control.master_seed = base.master_seed.wrapping_add(1);

    Ok(AdversarialReport {
        filter: base.filter.clone(),
        admitted,
        excluded: run_experiment(&excluded, workers)?,
        control: run_experiment(&control, workers)?,
    })
}
