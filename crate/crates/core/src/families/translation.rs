use std::sync::Arc;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::FamilyConfig;
use crate::class::{TaskAdmission, TaskClass};
use crate::error::{ArcError, Result};
use crate::seed::rng_from_seed;
use crate::space::{InputSpace, OutputAlphabet};
use crate::subtask::{FamilyRole, Lexicon, Subtask, SubtaskFamily, SubtaskHypothesis};

/// Translation chains over `languages` synthetic lexicons.
///
/// The input is a `(language, meaning)` word; each of the `steps` steps picks a
/// target language. Lexicons are drawn from `lexicon_seed` unless given.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslationConfig {
    pub languages: u32,
    pub steps: u32,
    pub meanings: u32,
    #[serde(default)]
    pub lexicon_seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lexicons: Option<Vec<Vec<u32>>>,
}

impl TranslationConfig {
    pub fn new(languages: u32, steps: u32, meanings: u32) -> Self {
        Self {
            languages,
            steps,
            meanings,
            lexicon_seed: 0,
            lexicons: None,
        }
    }

    /// The lexicons this config resolves to.
    pub fn resolved_lexicons(&self) -> Vec<Vec<u32>> {
        if let Some(lex) = &self.lexicons {
            return lex.clone();
        }
        let mut rng = rng_from_seed(self.lexicon_seed);
        (0..self.languages)
            .map(|_| {
                let mut perm: Vec<u32> = (0..self.meanings).collect();
                perm.shuffle(&mut rng);
                perm
            })
            .collect()
    }
}

/// Step hypothesis `L` maps the previous word to its meaning and writes it in `L`.
/// Token blocks are disjoint per language, so distinct targets always disagree.
pub fn make_translation_class(cfg: &TranslationConfig) -> Result<TaskClass> {
    if cfg.languages < 2 {
        return Err(ArcError::InvalidConfig("translation needs at least two languages".into()));
    }
    if cfg.steps == 0 || cfg.meanings == 0 {
        return Err(ArcError::InvalidConfig(
            "translation needs at least one step and one meaning".into(),
        ));
    }
    let lexicons = cfg.resolved_lexicons();
    if lexicons.len() != cfg.languages as usize {
        return Err(ArcError::InvalidConfig(format!(
            "expected {} lexicons, got {}",
            cfg.languages,
            lexicons.len()
        )));
    }
    let lexicon = Arc::new(Lexicon::new(lexicons.clone())?);
    if lexicon.meanings() != cfg.meanings {
        return Err(ArcError::InvalidConfig(format!(
            "lexicons cover {} meanings, config says {}",
            lexicon.meanings(),
            cfg.meanings
        )));
    }
    let input_space = InputSpace::words(cfg.languages, cfg.meanings)?;
    let labels = (0..cfg.languages)
        .flat_map(|l| (0..cfg.meanings).map(move |w| format!("L{}:w{w}", l + 1)))
        .collect();
    let families = (0..cfg.steps as usize)
        .map(|t| {
            let members = (0..cfg.languages)
                .map(|target| {
                    SubtaskHypothesis::new(
                        target,
                        t,
                        Subtask::Translate {
                            target,
                            lexicon: Arc::clone(&lexicon),
                        },
                    )
                })
                .collect();
            SubtaskFamily::new(t, FamilyRole::HypothesisClass, members)
        })
        .collect();
    let mut resolved = cfg.clone();
    resolved.lexicons = Some(lexicons);
    Ok(TaskClass::new(
        FamilyConfig::Translation(resolved),
        input_space,
        OutputAlphabet::new(labels)?,
        cfg.languages as usize,
        families,
        TaskAdmission::Product,
        Some(1.0),
        Some(1.0),
    ))
}
