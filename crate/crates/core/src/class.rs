//! Autoregressive compositional task classes.
//!
//! A class has `T` steps. Step `t` offers a truth family `Θ_t` of `D`
//! conditionals and a hypothesis class `Ξ_t ⊇ Θ_t`. Members of `Ξ_t` are
//! addressed by id; ids `0..D` are the truth members, further ids are decoys.
//! A task picks one truth id per step.

use num_bigint::BigUint;
use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{ArcError, Result};
use crate::families::FamilyConfig;
use crate::space::{Input, InputSpace, OutputAlphabet, Token};
use crate::subtask::{FamilyRole, Subtask, SubtaskFamily, SubtaskHypothesis};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyTag {
    Parity,
    Arithmetic,
    Translation,
}

impl FamilyTag {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyTag::Parity => "parity",
            FamilyTag::Arithmetic => "arithmetic",
            FamilyTag::Translation => "translation",
        }
    }
}

/// Which tuples of truth ids count as tasks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TaskAdmission {
    /// Every tuple in `Θ_1 × … × Θ_T`.
    Product,
    /// Strictly increasing id tuples (distinct parity secret indices).
    StrictlyIncreasing,
}

/// `θ = (θ_1, …, θ_T)`, one truth id per step (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TaskParams(Vec<u32>);

impl TaskParams {
    pub fn ids(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn prefix(&self, t: usize) -> &[u32] {
        &self.0[..t]
    }

    /// 1-indexed rendering, e.g. `(1,4,7)`.
    pub fn one_indexed(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        format!("({})", parts.join(","))
    }
}

#[derive(Debug, Clone)]
pub struct TaskClass {
    family: FamilyTag,
    config: FamilyConfig,
    input_space: InputSpace,
    alphabet: OutputAlphabet,
    truth_size: usize,
    hypotheses: Vec<SubtaskFamily>,
    admission: TaskAdmission,
    analytic_margin: Option<f64>,
    analytic_r: Option<f64>,
}

impl TaskClass {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn new(
        config: FamilyConfig,
        input_space: InputSpace,
        alphabet: OutputAlphabet,
        truth_size: usize,
        hypotheses: Vec<SubtaskFamily>,
        admission: TaskAdmission,
        analytic_margin: Option<f64>,
        analytic_r: Option<f64>,
    ) -> Self {
        debug_assert!(!hypotheses.is_empty());
        debug_assert!(hypotheses.iter().all(|f| f.len() >= truth_size));
        Self {
            family: config.tag(),
            config,
            input_space,
            alphabet,
            truth_size,
            hypotheses,
            admission,
            analytic_margin,
            analytic_r,
        }
    }

    pub fn family(&self) -> FamilyTag {
        self.family
    }

    pub fn config(&self) -> &FamilyConfig {
        &self.config
    }

    pub fn input_space(&self) -> &InputSpace {
        &self.input_space
    }

    pub fn alphabet(&self) -> &OutputAlphabet {
        &self.alphabet
    }

    /// `T`.
    pub fn steps(&self) -> usize {
        self.hypotheses.len()
    }

    /// `D = |Θ_t|`, the same at every step.
    pub fn subtasks_per_step(&self) -> usize {
        self.truth_size
    }

    /// `H = max_t |Ξ_t|`.
    pub fn max_hypotheses(&self) -> usize {
        self.hypotheses.iter().map(SubtaskFamily::len).max().unwrap_or(0)
    }

    pub fn admission(&self) -> TaskAdmission {
        self.admission
    }

    /// Closed-form identifiability margin `c`, when the family has one.
    pub fn analytic_margin(&self) -> Option<f64> {
        self.analytic_margin
    }

    /// Closed-form margin `r` between truth members and all of `Ξ_t`, when known.
    pub fn analytic_r(&self) -> Option<f64> {
        self.analytic_r
    }

    /// `Θ_t` (0-based step) as a family view.
    pub fn truth(&self, t: usize) -> SubtaskFamily {
        SubtaskFamily::new(
            t,
            FamilyRole::Truth,
            self.hypotheses[t].members()[..self.truth_size].to_vec(),
        )
    }

    /// `Ξ_t` (0-based step).
    pub fn hypotheses(&self, t: usize) -> &SubtaskFamily {
        &self.hypotheses[t]
    }

    #[inline]
    pub fn hypothesis(&self, t: usize, id: u32) -> &SubtaskHypothesis {
        &self.hypotheses[t].members()[id as usize]
    }

    pub fn is_truth(&self, id: u32) -> bool {
        (id as usize) < self.truth_size
    }

    /// True when every hypothesis in every `Ξ_t` is deterministic given `(x, y_<t)`.
    pub fn is_deterministic(&self) -> bool {
        self.hypotheses
            .iter()
            .all(|f| f.members().iter().all(SubtaskHypothesis::is_deterministic))
    }

    /// Appends extra members to `Ξ_t`; returns the new ids.
    pub fn with_extra_hypotheses(mut self, t: usize, kinds: Vec<Subtask>) -> Result<(Self, Vec<u32>)> {
        if t >= self.steps() {
            return Err(ArcError::InvalidConfig(format!("step {t} out of range")));
        }
        let mut ids = Vec::with_capacity(kinds.len());
        for kind in kinds {
            if let Subtask::NoisyXor { flip_log2: 0, .. } = kind {
                return Err(ArcError::InvalidConfig(
                    "a noisy xor that always flips is a negated xor; add that instead".into(),
                ));
            }
            let probe = SubtaskHypothesis::new(0, t, kind.clone());
            let descriptor = probe.descriptor();
            if self.hypotheses[t]
                .members()
                .iter()
                .any(|m| m.descriptor() == descriptor)
            {
                return Err(ArcError::InvalidConfig(format!(
                    "hypothesis {descriptor:?} already present at step {t}"
                )));
            }
            ids.push(self.hypotheses[t].push(kind));
        }
        self.analytic_r = None;
        Ok((self, ids))
    }

    /// Validates and wraps a task tuple of 0-based truth ids.
    pub fn task(&self, ids: Vec<u32>) -> Result<TaskParams> {
        if ids.len() != self.steps() {
            return Err(ArcError::InvalidTask(format!(
                "task has {} components, class has {} steps",
                ids.len(),
                self.steps()
            )));
        }
        if let Some(bad) = ids.iter().find(|&&i| i as usize >= self.truth_size) {
            return Err(ArcError::InvalidTask(format!(
                "component {bad} outside the {} subtasks per step",
                self.truth_size
            )));
        }
        let task = TaskParams(ids);
        if !self.admits(&task) {
            return Err(ArcError::InvalidTask(format!(
                "{} is not admitted by {:?} indexing",
                task.one_indexed(),
                self.admission
            )));
        }
        Ok(task)
    }

    pub fn admits(&self, task: &TaskParams) -> bool {
        match self.admission {
            TaskAdmission::Product => true,
            TaskAdmission::StrictlyIncreasing => task.0.windows(2).all(|w| w[0] < w[1]),
        }
    }

    /// Number of admitted tasks.
    pub fn task_count(&self) -> BigUint {
        let d = self.truth_size as u64;
        let t = self.steps() as u64;
        match self.admission {
            TaskAdmission::Product => BigUint::from(d).pow(t as u32),
            TaskAdmission::StrictlyIncreasing => crate::families::binomial(d, t),
        }
    }

    /// Truth ids that occur at step `t` in at least one admitted task.
    pub fn reachable_members(&self, t: usize) -> Vec<u32> {
        let d = self.truth_size as u32;
        match self.admission {
            TaskAdmission::Product => (0..d).collect(),
            TaskAdmission::StrictlyIncreasing => {
                let k = self.steps() as u32;
                (t as u32..=d - k + t as u32).collect()
            }
        }
    }

    /// Draws a task uniformly from the admitted set.
    pub fn sample_task<R: RngCore + ?Sized>(&self, rng: &mut R) -> TaskParams {
        let d = self.truth_size;
        match self.admission {
            TaskAdmission::Product => {
                use rand::Rng as _;
                TaskParams((0..self.steps()).map(|_| rng.random_range(0..d as u32)).collect())
            }
            TaskAdmission::StrictlyIncreasing => {
                let mut ids: Vec<u32> = rand::seq::index::sample(rng, d, self.steps())
                    .into_iter()
                    .map(|i| i as u32)
                    .collect();
                ids.sort_unstable();
                TaskParams(ids)
            }
        }
    }

    /// All admitted tasks in lexicographic order, refusing more than `limit`.
    pub fn enumerate_tasks(&self, limit: u64) -> Result<Vec<TaskParams>> {
        let count = self.task_count();
        if count > BigUint::from(limit) {
            return Err(ArcError::Unsupported(format!(
                "enumerating {count} tasks (limit {limit})"
            )));
        }
        let d = self.truth_size as u32;
        let k = self.steps();
        let mut out = Vec::new();
        let mut cur: Vec<u32> = match self.admission {
            TaskAdmission::Product => vec![0; k],
            TaskAdmission::StrictlyIncreasing => (0..k as u32).collect(),
        };
        loop {
            out.push(TaskParams(cur.clone()));
            // advance to the next tuple
            let mut pos = k;
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                let max = match self.admission {
                    TaskAdmission::Product => d - 1,
                    TaskAdmission::StrictlyIncreasing => d - (k - pos) as u32,
                };
                if cur[pos] < max {
                    cur[pos] += 1;
                    for j in pos + 1..k {
                        cur[j] = match self.admission {
                            TaskAdmission::Product => 0,
                            TaskAdmission::StrictlyIncreasing => cur[j - 1] + 1,
                        };
                    }
                    break;
                }
            }
        }
    }

    /// Samples `y_1..y_len` along a path of `Ξ` ids.
    pub fn sample_path<R: RngCore + ?Sized>(&self, path: &[u32], x: &Input, rng: &mut R) -> Vec<Token> {
        let mut y = Vec::with_capacity(path.len());
        for (t, &id) in path.iter().enumerate() {
            let token = self.hypothesis(t, id).sample(x, &y, rng);
            y.push(token);
        }
        y
    }

    /// Draws `y_t ~ P_{θ_t}(· | x, y_<t)` for `t = 1..T`.
    pub fn generate_sequence<R: RngCore + ?Sized>(
        &self,
        task: &TaskParams,
        x: &Input,
        rng: &mut R,
    ) -> Vec<Token> {
        self.sample_path(task.ids(), x, rng)
    }

    /// `P(x) · Π_{s ≤ t} P_{path_s}(y_s | x, y_<s)` with `t = path.len()`.
    /// Only the first `t` tokens of `y` are read.
    #[inline]
    pub fn joint_prob(&self, path: &[u32], x: &Input, y: &[Token]) -> f64 {
        debug_assert!(y.len() >= path.len());
        let mut p = self.input_space.prob();
        for (t, &id) in path.iter().enumerate() {
            p *= self.hypothesis(t, id).pmf(x, &y[..t], y[t]);
            if p == 0.0 {
                break;
            }
        }
        p
    }

    /// Log of [`Self::joint_prob`], `-inf` when any factor is zero.
    pub fn joint_log_prob(&self, path: &[u32], x: &Input, y: &[Token]) -> f64 {
        let mut lp = self.input_space.log_prob();
        for (t, &id) in path.iter().enumerate() {
            let p = self.hypothesis(t, id).pmf(x, &y[..t], y[t]);
            if p == 0.0 {
                return f64::NEG_INFINITY;
            }
            lp += p.ln();
        }
        lp
    }

    pub fn validate_path(&self, path: &[u32]) -> Result<()> {
        if path.len() > self.steps() {
            return Err(ArcError::InvalidTask(format!(
                "path of length {} exceeds {} steps",
                path.len(),
                self.steps()
            )));
        }
        for (t, &id) in path.iter().enumerate() {
            if id as usize >= self.hypotheses[t].len() {
                return Err(ArcError::InvalidTask(format!(
                    "hypothesis id {id} outside Ξ at step {}",
                    t + 1
                )));
            }
        }
        Ok(())
    }
}
