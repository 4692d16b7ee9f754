use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::trial::{run_trial_with, ExperimentConfig, TrainingSet, TrialResult};
use crate::class::TaskClass;
use crate::error::{ArcError, Result};
use crate::families::estimate_margin;
use crate::learner::Learner;
use crate::seed::mix64;
use crate::stats::{coverage_failure_bound, nonasymptotic_bound, wilson, BoundInputs, FailureBound, RateInterval};

/// Spaces up to this size get their margins brute-forced when no closed form exists.
const MARGIN_SEARCH_CAP: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportBounds {
    #[serde(rename = "D")]
    pub d: u64,
    #[serde(rename = "T")]
    pub t: u64,
    #[serde(rename = "H")]
    pub h: u64,
    pub c: Option<f64>,
    pub r: Option<f64>,
    /// `D T e^{-n_θ/D}`.
    pub coverage: f64,
    /// All three terms; absent when a margin is unknown.
    pub nonasymptotic: Option<FailureBound>,
}

impl ReportBounds {
    /// The tightest available bound on the failure rate.
    pub fn headline(&self) -> f64 {
        self.nonasymptotic.map_or(self.coverage, |b| b.total)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    /// Trials whose selected task differs from the test task.
    pub failure: RateInterval,
    /// Trials where some reachable subtask was missing from training.
    pub coverage_failure: RateInterval,
    /// Trials whose training or test stage raised an error (counted as failures).
    pub errored: u64,
    /// Per-step recovery rate.
    pub step_recovery: Vec<f64>,
    pub mean_token_accuracy: f64,
    pub bounds: ReportBounds,
    pub rows: Vec<TrialResult>,
}

impl ExperimentReport {
    pub fn recovery_rate(&self) -> f64 {
        1.0 - self.failure.rate
    }

    /// `failure ≤ bound + 3σ`, with `σ` the Wilson half-width over `z`.
    pub fn within_bound(&self) -> bool {
        let sigma = self.failure.half_width() / crate::stats::Z95;
        self.failure.rate <= self.bounds.headline() + 3.0 * sigma
    }

    /// Per-trial rows as CSV.
    pub fn rows_csv(&self) -> String {
        let mut out = String::from("trial,seed,coverage_ok,full_match,step_matches,token_accuracy,training_error\n");
        let bits = |v: &[bool]| v.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>();
        for r in &self.rows {
            let err = r.error.as_deref().unwrap_or("").replace(['"', ','], " ");
            let _ = writeln!(
                out,
                "{},{},{},{},{},{:.6},{}",
                r.trial,
                r.seed,
                bits(&r.coverage_ok),
                r.full_match as u8,
                bits(&r.step_matches),
                r.token_accuracy,
                err
            );
        }
        out
    }
}

/// `(c, r)` from the config, the class's closed forms, or a brute-force search on small spaces.
pub fn resolve_margins(class: &TaskClass, config: &ExperimentConfig) -> (Option<f64>, Option<f64>) {
    if let Some((c, r)) = config.margins {
        return (Some(c), Some(r));
    }
    let (mut c, mut r) = (class.analytic_margin(), class.analytic_r());
    if (c.is_none() || r.is_none()) && class.input_space().cardinality() <= MARGIN_SEARCH_CAP as u128 {
        if let Ok(m) = estimate_margin(class, class.steps()) {
            c = c.or(m.c);
            r = r.or(m.r);
        }
    }
    (c, r)
}

pub(crate) fn report_bounds(class: &TaskClass, config: &ExperimentConfig, n_theta: usize) -> ReportBounds {
    let (d, t, h) = (
        class.subtasks_per_step() as u64,
        class.steps() as u64,
        class.max_hypotheses() as u64,
    );
    let (c, r) = resolve_margins(class, config);
    let nonasymptotic = match (c, r) {
        (Some(c), Some(r)) => nonasymptotic_bound(&BoundInputs {
            d,
            t,
            h,
            c,
            r,
            n_theta: n_theta as u64,
            ell: config.ell as u64,
            n_x: config.n_x as u64,
        })
        .ok(),
        _ => None,
    };
    ReportBounds {
        d,
        t,
        h,
        c,
        r,
        coverage: coverage_failure_bound(d, t, n_theta as u64),
        nonasymptotic,
    }
}

/// Worker pool with `workers` threads, or rayon's default when `None`.
pub(crate) fn pool(workers: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        if w == 0 {
            return Err(ArcError::InvalidConfig("workers must be at least 1".into()));
        }
        b = b.num_threads(w);
    }
    b.build()
        .map_err(|e| ArcError::InvalidConfig(format!("cannot start worker pool: {e}")))
}

/// Runs `config.trials` independent trials; trial `i` uses seed `mix64(master_seed, i)`.
pub fn run_experiment(config: &ExperimentConfig, workers: Option<usize>) -> Result<ExperimentReport> {
    config.validate()?;
    let class = config.family.build()?;
    let learner = Learner::new(&class, config.learner_config());
    let rows: Vec<TrialResult> = pool(workers)?.install(|| {
        (0..config.trials)
            .into_par_iter()
            .map(|i| run_trial_with(&learner, config, i, mix64(config.master_seed, i)))
            .collect()
    });
    Ok(summarize(&class, config, rows))
}

pub(crate) fn summarize(class: &TaskClass, config: &ExperimentConfig, rows: Vec<TrialResult>) -> ExperimentReport {
    let n = rows.len() as u64;
    let failures = rows.iter().filter(|r| r.failed()).count() as u64;
    let coverage_failures = rows.iter().filter(|r| r.coverage_failed()).count() as u64;
    let errored = rows.iter().filter(|r| r.error.is_some()).count() as u64;
    let step_recovery = (0..class.steps())
        .map(|t| rows.iter().filter(|r| r.step_matches[t]).count() as f64 / n.max(1) as f64)
        .collect();
    let mean_token_accuracy = rows.iter().map(|r| r.token_accuracy).sum::<f64>() / n.max(1) as f64;
    let n_theta = match config.training_set {
        TrainingSet::Sampled => config.n_theta,
        TrainingSet::AllAdmitted => rows.first().map_or(0, |r| r.training_tasks),
    };
    ExperimentReport {
        config: config.clone(),
        failure: wilson(failures, n),
        coverage_failure: wilson(coverage_failures, n),
        errored,
        step_recovery,
        mean_token_accuracy,
        bounds: report_bounds(class, config, n_theta),
        rows,
    }
}
