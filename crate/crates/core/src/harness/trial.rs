use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::sampling::{admitted_tasks, coverage_holds, sample_test_task, sample_training_tasks};
use super::{SelectionFilter, TestTaskPolicy};
use crate::class::{TaskClass, TaskParams};
use crate::dataset::{generate_dataset, Dataset};
use crate::error::{ArcError, Result};
use crate::families::FamilyConfig;
use crate::learner::{Learner, LearnerConfig, MuEstimation, TrainingMode};
use crate::seed::Rng;

/// Where the training tasks come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrainingSet {
    /// `n_theta` i.i.d. draws from the filtered set.
    #[default]
    Sampled,
    /// Every filtered task once; `n_theta` is ignored.
    AllAdmitted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub family: FamilyConfig,
    pub n_theta: usize,
    pub n_x: usize,
    pub ell: usize,
    pub trials: u64,
    pub mode: TrainingMode,
    #[serde(default)]
    pub filter: SelectionFilter,
    #[serde(default)]
    pub training_set: TrainingSet,
    #[serde(default)]
    pub test_policy: TestTaskPolicy,
    pub master_seed: u64,
    /// Fresh inputs per trial for final-token accuracy.
    pub held_out: usize,
    pub dedupe: bool,
    #[serde(default)]
    pub mu: MuEstimation,
    /// `(c, r)` used for the bounds; derived from the class when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub margins: Option<(f64, f64)>,
}

impl ExperimentConfig {
    /// Discrimination training, dedupe on, uniform unseen test tasks.
    pub fn new(family: impl Into<FamilyConfig>, n_theta: usize, n_x: usize, ell: usize, trials: u64) -> Self {
        Self {
            family: family.into(),
            n_theta,
            n_x,
            ell,
            trials,
            mode: TrainingMode::Discrimination,
            filter: SelectionFilter::IidUniform,
            training_set: TrainingSet::Sampled,
            test_policy: TestTaskPolicy::UnseenUniform,
            master_seed: 0,
            held_out: 200,
            dedupe: true,
            mu: MuEstimation::Exact,
            margins: None,
        }
    }

    pub fn with_mode(mut self, mode: TrainingMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.master_seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(ArcError::InvalidConfig("trials must be at least 1".into()));
        }
        if self.n_x == 0 || self.ell == 0 {
            return Err(ArcError::InvalidConfig("n_x and ell must be at least 1".into()));
        }
        if self.n_theta == 0 && self.training_set == TrainingSet::Sampled {
            return Err(ArcError::InvalidConfig("n_theta must be at least 1".into()));
        }
        Ok(())
    }

    pub(crate) fn learner_config(&self) -> LearnerConfig {
        LearnerConfig {
            mode: self.mode,
            dedupe: self.dedupe,
            mu: self.mu,
        }
    }
}

/// One end-to-end run: sample tasks, train, draw a test task, infer, score.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub trial: u64,
    pub seed: u64,
    pub training_tasks: usize,
    /// Per step: all reachable truth members were among the training tasks.
    pub coverage_ok: Vec<bool>,
    /// 0-based test task, absent when it could not be drawn.
    pub test_task: Option<Vec<u32>>,
    pub selected: Option<Vec<u32>>,
    /// Every component of the test task was identified during training.
    pub representable: bool,
    pub full_match: bool,
    pub step_matches: Vec<bool>,
    /// Final-token agreement with the test task on fresh inputs.
    pub token_accuracy: f64,
    pub error: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl TrialResult {
    pub fn failed(&self) -> bool {
        !self.full_match
    }

    pub fn coverage_failed(&self) -> bool {
        !self.coverage_ok.iter().all(|&c| c)
    }

    fn errored(trial: u64, seed: u64, steps: usize, coverage_ok: Vec<bool>, training_tasks: usize, e: ArcError, start: Instant) -> Self {
        Self {
            trial,
            seed,
            training_tasks,
            coverage_ok,
            test_task: None,
            selected: None,
            representable: false,
            full_match: false,
            step_matches: vec![false; steps],
            token_accuracy: 0.0,
            error: Some(e.to_string()),
            elapsed: start.elapsed(),
        }
    }
}

/// The training tasks of one trial.
pub(crate) fn draw_training_tasks(class: &TaskClass, config: &ExperimentConfig, rng: &mut Rng) -> Result<Vec<TaskParams>> {
    match config.training_set {
        TrainingSet::Sampled => sample_training_tasks(class, config.n_theta, &config.filter, rng),
        TrainingSet::AllAdmitted => admitted_tasks(class, &config.filter),
    }
}

/// Runs one trial with a learner whose cache may be shared across trials.
pub fn run_trial_with(learner: &Learner<'_>, config: &ExperimentConfig, trial: u64, seed: u64) -> TrialResult {
    let start = Instant::now();
    let class = learner.class();
    let steps = class.steps();
    let mut rng = crate::seed::rng_from_seed(seed);

    let tasks = match draw_training_tasks(class, config, &mut rng) {
        Ok(t) => t,
        Err(e) => return TrialResult::errored(trial, seed, steps, vec![false; steps], 0, e, start),
    };
    let coverage_ok = coverage_holds(class, &tasks);
    let n_tasks = tasks.len();
    let fail = |e: ArcError, cov: Vec<bool>| TrialResult::errored(trial, seed, steps, cov, n_tasks, e, start);

    let data: Result<Vec<Dataset>> = tasks
        .iter()
        .map(|t| generate_dataset(class, t, config.n_x, &mut rng).map(|d| d.without_generator()))
        .collect();
    let data = match data {
        Ok(d) => d,
        Err(e) => return fail(e, coverage_ok),
    };
    let ident = match learner.train(&data) {
        Ok(i) => i,
        Err(e) => return fail(e, coverage_ok),
    };
    let test = match sample_test_task(class, config.test_policy, &config.filter, &tasks, &mut rng) {
        Ok(t) => t,
        Err(e) => return fail(e, coverage_ok),
    };
    let infer_data = match generate_dataset(class, &test, config.ell, &mut rng) {
        Ok(d) => d.without_generator(),
        Err(e) => return fail(e, coverage_ok),
    };
    let selected = match learner.infer(&ident, &infer_data) {
        Ok(s) => s,
        Err(e) => return fail(e, coverage_ok),
    };

    let chosen = selected.ids();
    let step_matches: Vec<bool> = chosen.iter().zip(test.ids()).map(|(a, b)| a == b).collect();
    let full_match = step_matches.iter().all(|&m| m);
    let representable = (0..steps).all(|t| ident.steps[t].iter().any(|m| m.id == test.ids()[t]));

    let mut agree = 0usize;
    for _ in 0..config.held_out {
        let x = class.input_space().sample(&mut rng);
        let truth = class.generate_sequence(&test, &x, &mut rng);
        let guess = class.sample_path(&chosen, &x, &mut rng);
        agree += (truth.last() == guess.last()) as usize;
    }
    let token_accuracy = if config.held_out == 0 {
        full_match as u8 as f64
    } else {
        agree as f64 / config.held_out as f64
    };

    TrialResult {
        trial,
        seed,
        training_tasks: n_tasks,
        coverage_ok,
        test_task: Some(test.ids().to_vec()),
        selected: Some(chosen),
        representable,
        full_match,
        step_matches,
        token_accuracy,
        error: None,
        elapsed: start.elapsed(),
    }
}

/// Runs a single trial of `config` with the given stream seed.
pub fn run_trial(config: &ExperimentConfig, seed: u64) -> Result<TrialResult> {
    config.validate()?;
    let class = config.family.build()?;
    let learner = Learner::new(&class, config.learner_config());
    Ok(run_trial_with(&learner, config, 0, seed))
}
