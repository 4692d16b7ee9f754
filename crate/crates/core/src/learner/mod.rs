//! The two-stage learner.
//!
//! Training identifies, for each training task and step, which member of
//! `Ξ_t` generated the data, using the already identified prefix. Inference
//! runs a champion/challenger tournament over the identified members with the
//! pairwise sign test.

mod cache;
mod dedupe;
mod infer;
mod train;

use serde::{Deserialize, Serialize};

use crate::class::TaskClass;
use crate::dataset::Dataset;
use crate::error::{ArcError, Result};
use crate::space::{Input, Token};
use crate::subtask::HypothesisDescriptor;

pub use cache::{ContrastCache, MuEstimation};
pub use dedupe::dedupe_families;
pub use infer::{SelectedTask, StepSelection};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrainingMode {
    /// Keep hypotheses whose support equals the observed sample set, then argmax likelihood.
    #[serde(rename = "mle-strict-support")]
    MleStrict,
    /// Keep hypotheses that give every observation positive probability, then argmax likelihood.
    #[serde(rename = "mle-containment-support")]
    MleContainment,
    /// Champion tournament over `Ξ_t` with the sign test on the training samples.
    #[default]
    Discrimination,
}

impl TrainingMode {
    pub fn as_str(self) -> &'static str {
        match self {
            TrainingMode::MleStrict => "mle-strict-support",
            TrainingMode::MleContainment => "mle-containment-support",
            TrainingMode::Discrimination => "discrimination",
        }
    }
}

impl std::str::FromStr for TrainingMode {
    type Err = ArcError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mle-strict-support" | "strict" => Ok(TrainingMode::MleStrict),
            "mle-containment-support" | "containment" => Ok(TrainingMode::MleContainment),
            "discrimination" => Ok(TrainingMode::Discrimination),
            other => Err(ArcError::InvalidConfig(format!("unknown training mode {other:?}"))),
        }
    }
}

/// One identified subtask and the training tasks it came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentifiedMember {
    pub id: u32,
    pub descriptor: HypothesisDescriptor,
    /// Indices into the training set.
    pub sources: Vec<usize>,
}

/// Per-step identified members, in training-task order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentifiedFamilies {
    pub steps: Vec<Vec<IdentifiedMember>>,
    /// `θ̂^i` for every training task.
    pub per_task: Vec<Vec<u32>>,
    pub dedup_applied: bool,
}

impl IdentifiedFamilies {
    /// Ids at step `t`, in order.
    pub fn ids(&self, t: usize) -> Vec<u32> {
        self.steps[t].iter().map(|m| m.id).collect()
    }

    pub fn member_count(&self) -> usize {
        self.steps.iter().map(Vec::len).sum()
    }

    pub fn validate(&self, class: &TaskClass) -> Result<()> {
        if self.steps.len() != class.steps() {
            return Err(ArcError::InvalidConfig(format!(
                "identified families cover {} steps, class has {}",
                self.steps.len(),
                class.steps()
            )));
        }
        for (t, members) in self.steps.iter().enumerate() {
            if members.is_empty() {
                return Err(ArcError::InvalidConfig(format!("no identified member at step {}", t + 1)));
            }
            if let Some(m) = members.iter().find(|m| m.id as usize >= class.hypotheses(t).len()) {
                return Err(ArcError::InvalidConfig(format!(
                    "identified id {} outside the hypothesis class at step {}",
                    m.id,
                    t + 1
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LearnerConfig {
    pub mode: TrainingMode,
    pub dedupe: bool,
    pub mu: MuEstimation,
}

impl Default for LearnerConfig {
    fn default() -> Self {
        Self {
            mode: TrainingMode::Discrimination,
            dedupe: true,
            mu: MuEstimation::Exact,
        }
    }
}

/// A learner bound to one class, with a contrast cache reused across calls.
#[derive(Debug)]
pub struct Learner<'c> {
    class: &'c TaskClass,
    config: LearnerConfig,
    cache: ContrastCache,
}

impl<'c> Learner<'c> {
    pub fn new(class: &'c TaskClass, config: LearnerConfig) -> Self {
        Self {
            class,
            config,
            cache: ContrastCache::new(),
        }
    }

    pub fn class(&self) -> &'c TaskClass {
        self.class
    }

    pub fn config(&self) -> LearnerConfig {
        self.config
    }

    pub fn cache(&self) -> &ContrastCache {
        &self.cache
    }

    /// Training stage over every dataset; deduplicated when configured.
    pub fn train(&self, data: &[Dataset]) -> Result<IdentifiedFamilies> {
        let ident = train::train_with(self, data)?;
        Ok(if self.config.dedupe {
            dedupe_families(&ident, self.class)
        } else {
            ident
        })
    }

    /// Inference stage.
    pub fn infer(&self, ident: &IdentifiedFamilies, data: &Dataset) -> Result<SelectedTask> {
        infer::infer_with(self, ident, data)
    }

    pub(crate) fn contrast(&self, prefix: &[u32], a: u32, b: u32) -> Result<crate::support::Contrast> {
        self.cache.get(self.class, prefix, a, b, self.config.mu)
    }
}

/// Training stage without deduplication.
pub fn train(class: &TaskClass, data: &[Dataset], mode: TrainingMode) -> Result<IdentifiedFamilies> {
    let learner = Learner::new(
        class,
        LearnerConfig {
            mode,
            dedupe: false,
            mu: MuEstimation::Exact,
        },
    );
    learner.train(data)
}

/// Inference stage with exact expectations.
pub fn infer(ident: &IdentifiedFamilies, data: &Dataset, class: &TaskClass) -> Result<SelectedTask> {
    Learner::new(class, LearnerConfig::default()).infer(ident, data)
}

/// Runs the selected hypotheses on `x`.
pub fn predict<R: rand::RngCore + ?Sized>(
    class: &TaskClass,
    selected: &SelectedTask,
    x: &Input,
    rng: &mut R,
) -> Vec<Token> {
    class.sample_path(&selected.ids(), x, rng)
}
