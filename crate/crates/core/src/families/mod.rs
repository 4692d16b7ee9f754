//! The three concrete families, their configs, margins, and task counts.

mod arithmetic;
mod count;
mod margin;
mod parity;
mod translation;

use serde::{Deserialize, Serialize};

use crate::class::{FamilyTag, TaskClass};
use crate::error::Result;

pub use arithmetic::{make_arithmetic_class, ArithmeticConfig};
pub(crate) use arithmetic::parse_ops;
pub use count::{binomial, count_tasks, Representation};
pub use margin::{estimate_margin, parity_margin, MarginReport, MarginWitness, StepMargin};
pub use parity::{make_parity_class, DecoyMode, IndexMode, ParityConfig};
pub use translation::{make_translation_class, TranslationConfig};

/// Task-class config as stored in JSON, tagged by `"family"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilyConfig {
    Parity(ParityConfig),
    Arithmetic(ArithmeticConfig),
    Translation(TranslationConfig),
}

impl FamilyConfig {
    pub fn tag(&self) -> FamilyTag {
        match self {
            FamilyConfig::Parity(_) => FamilyTag::Parity,
            FamilyConfig::Arithmetic(_) => FamilyTag::Arithmetic,
            FamilyConfig::Translation(_) => FamilyTag::Translation,
        }
    }

    pub fn build(&self) -> Result<TaskClass> {
        match self {
            FamilyConfig::Parity(cfg) => make_parity_class(cfg),
            FamilyConfig::Arithmetic(cfg) => make_arithmetic_class(cfg),
            FamilyConfig::Translation(cfg) => make_translation_class(cfg),
        }
    }
}

impl From<ParityConfig> for FamilyConfig {
    fn from(cfg: ParityConfig) -> Self {
        FamilyConfig::Parity(cfg)
    }
}

impl From<ArithmeticConfig> for FamilyConfig {
    fn from(cfg: ArithmeticConfig) -> Self {
        FamilyConfig::Arithmetic(cfg)
    }
}

impl From<TranslationConfig> for FamilyConfig {
    fn from(cfg: TranslationConfig) -> Self {
        FamilyConfig::Translation(cfg)
    }
}
