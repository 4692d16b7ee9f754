use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_traits::ToPrimitive;
use rand::{Rng as _, RngCore};
use serde::{Deserialize, Serialize};

use crate::class::{TaskClass, TaskParams};
use crate::error::{ArcError, Result};
use crate::seed::{mix64, rng_from_seed};
use crate::stats::{wilson, RateInterval};

/// Admitted sets up to this size are enumerated; larger ones use rejection.
pub const ENUMERATION_LIMIT: u64 = 1 << 20;
const REJECTION_LIMIT: usize = 1 << 20;

/// A user predicate over tasks.
#[derive(Clone)]
pub struct TaskPredicate(pub Arc<dyn Fn(&TaskParams) -> bool + Send + Sync>);

impl fmt::Debug for TaskPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("TaskPredicate(..)")
    }
}

impl PartialEq for TaskPredicate {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

/// Which tasks the training distribution may draw.
///
/// Step and id fields are 0-based.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SelectionFilter {
    #[default]
    IidUniform,
    /// Drops tasks whose component at `step` is `value`.
    ExcludeCoordinate { step: usize, value: u32 },
    /// Drops tasks containing both `a` and `b` anywhere.
    ExcludePair { a: u32, b: u32 },
    #[serde(skip)]
    Custom(TaskPredicate),
}

impl SelectionFilter {
    pub fn custom<F>(f: F) -> Self
    where
        F: Fn(&TaskParams) -> bool + Send + Sync + 'static,
    {
        SelectionFilter::Custom(TaskPredicate(Arc::new(f)))
    }

    pub fn admits(&self, task: &TaskParams) -> bool {
        match self {
            SelectionFilter::IidUniform => true,
            SelectionFilter::ExcludeCoordinate { step, value } => task.ids().get(*step) != Some(value),
            SelectionFilter::ExcludePair { a, b } => !(task.ids().contains(a) && task.ids().contains(b)),
            SelectionFilter::Custom(p) => (p.0)(task),
        }
    }
}

fn small_count(class: &TaskClass) -> Option<u64> {
    class.task_count().to_u64().filter(|&n| n <= ENUMERATION_LIMIT)
}

/// Every class-admitted task accepted by `keep`, when the class is small enough.
fn enumerate_where<F: Fn(&TaskParams) -> bool>(class: &TaskClass, keep: F) -> Option<Vec<TaskParams>> {
    small_count(class)?;
    class
        .enumerate_tasks(ENUMERATION_LIMIT)
        .ok()
        .map(|all| all.into_iter().filter(|t| keep(t)).collect())
}

/// Uniform draw from the class-admitted tasks accepted by `keep`.
pub(crate) fn sample_where<R, F>(class: &TaskClass, rng: &mut R, keep: F) -> Result<TaskParams>
where
    R: RngCore + ?Sized,
    F: Fn(&TaskParams) -> bool,
{
    for _ in 0..REJECTION_LIMIT {
        let task = class.sample_task(rng);
        if keep(&task) {
            return Ok(task);
        }
    }
    Err(ArcError::EmptyAdmittedSet)
}

/// All class-admitted tasks the filter accepts.
pub fn admitted_tasks(class: &TaskClass, filter: &SelectionFilter) -> Result<Vec<TaskParams>> {
    let tasks = enumerate_where(class, |t| filter.admits(t)).ok_or_else(|| {
        ArcError::Unsupported(format!("listing more than {ENUMERATION_LIMIT} tasks"))
    })?;
    if tasks.is_empty() {
        return Err(ArcError::EmptyAdmittedSet);
    }
    Ok(tasks)
}

/// `n_θ` independent uniform draws, with replacement, from the filtered set.
pub fn sample_training_tasks<R: RngCore + ?Sized>(
    class: &TaskClass,
    n_theta: usize,
    filter: &SelectionFilter,
    rng: &mut R,
) -> Result<Vec<TaskParams>> {
    if let SelectionFilter::IidUniform = filter {
        return Ok((0..n_theta).map(|_| class.sample_task(rng)).collect());
    }
    if let Some(pool) = enumerate_where(class, |t| filter.admits(t)) {
        if pool.is_empty() {
            return Err(ArcError::EmptyAdmittedSet);
        }
        return Ok((0..n_theta).map(|_| pool[rng.random_range(0..pool.len())].clone()).collect());
    }
    (0..n_theta).map(|_| sample_where(class, rng, |t| filter.admits(t))).collect()
}

/// Per step: does every reachable truth member appear among the tasks?
pub fn coverage_holds(class: &TaskClass, tasks: &[TaskParams]) -> Vec<bool> {
    (0..class.steps())
        .map(|t| {
            let seen: HashSet<u32> = tasks.iter().map(|task| task.ids()[t]).collect();
            class.reachable_members(t).iter().all(|m| seen.contains(m))
        })
        .collect()
}

/// Which test task a trial evaluates on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TestTaskPolicy {
    /// Uniform over admitted tasks not drawn for training.
    #[default]
    UnseenUniform,
    /// Uniform over the tasks the selection filter removed.
    ExcludedSet,
}

pub(crate) fn sample_test_task<R: RngCore + ?Sized>(
    class: &TaskClass,
    policy: TestTaskPolicy,
    filter: &SelectionFilter,
    training: &[TaskParams],
    rng: &mut R,
) -> Result<TaskParams> {
    match policy {
        TestTaskPolicy::UnseenUniform => {
            let seen: HashSet<&TaskParams> = training.iter().collect();
            if let Some(pool) = enumerate_where(class, |t| !seen.contains(t)) {
                if pool.is_empty() {
                    return Err(ArcError::InvalidConfig("every task was drawn for training".into()));
                }
                return Ok(pool[rng.random_range(0..pool.len())].clone());
            }
            sample_where(class, rng, |t| !seen.contains(t))
        }
        TestTaskPolicy::ExcludedSet => {
            if let Some(pool) = enumerate_where(class, |t| !filter.admits(t)) {
                if pool.is_empty() {
                    return Err(ArcError::InvalidConfig("the selection filter excludes no task".into()));
                }
                return Ok(pool[rng.random_range(0..pool.len())].clone());
            }
            sample_where(class, rng, |t| !filter.admits(t))
        }
    }
}

/// Coverage-failure rate of `n_θ` uniform draws over `trials` repetitions.
pub fn coverage_experiment(
    class: &TaskClass,
    n_theta: usize,
    trials: u64,
    master_seed: u64,
) -> RateInterval {
    let failures = (0..trials)
        .filter(|&i| {
            let mut rng = rng_from_seed(mix64(master_seed, i));
            let tasks: Vec<TaskParams> = (0..n_theta).map(|_| class.sample_task(&mut rng)).collect();
            !coverage_holds(class, &tasks).into_iter().all(|c| c)
        })
        .count() as u64;
    wilson(failures, trials)
}
