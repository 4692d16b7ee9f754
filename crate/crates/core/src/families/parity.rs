use serde::{Deserialize, Serialize};

use super::FamilyConfig;
use crate::class::{TaskAdmission, TaskClass};
use crate::error::{ArcError, Result};
use crate::space::{InputSpace, OutputAlphabet};
use crate::subtask::{FamilyRole, Subtask, SubtaskFamily, SubtaskHypothesis};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndexMode {
    /// Every tuple in `[d]^k`.
    Ordered,
    /// Strictly increasing tuples, `C(d, k)` tasks.
    #[default]
    StrictlyIncreasing,
}

/// Extra members of `Ξ_t` beyond the truth family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecoyMode {
    #[default]
    None,
    /// `1[y_t = ¬(y_{t-1} ⊕ x_i)]` at every step.
    NegatedXor,
    /// `1[y_t = x_i]` at steps `t ≥ 2`.
    FreshBit,
    Both,
}

impl DecoyMode {
    fn negated(self) -> bool {
        matches!(self, DecoyMode::NegatedXor | DecoyMode::Both)
    }

    fn fresh(self) -> bool {
        matches!(self, DecoyMode::FreshBit | DecoyMode::Both)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityConfig {
    pub d: u32,
    pub k: u32,
    #[serde(default)]
    pub index_mode: IndexMode,
    #[serde(default)]
    pub decoys: DecoyMode,
}

impl ParityConfig {
    pub fn new(d: u32, k: u32) -> Self {
        Self {
            d,
            k,
            index_mode: IndexMode::default(),
            decoys: DecoyMode::default(),
        }
    }

    pub fn ordered(mut self) -> Self {
        self.index_mode = IndexMode::Ordered;
        self
    }

    pub fn with_decoys(mut self, decoys: DecoyMode) -> Self {
        self.decoys = decoys;
        self
    }
}

/// Sparse parity with chain of thought: step `t` emits `y_{t-1} ⊕ x_{i_t}`.
///
/// `Ξ_t` lists the `d` xor members first (ids `0..d`), then negated-xor
/// decoys, then fresh-bit decoys.
pub fn make_parity_class(cfg: &ParityConfig) -> Result<TaskClass> {
    let ParityConfig { d, k, index_mode, decoys } = *cfg;
    if k == 0 || k > d {
        return Err(ArcError::InvalidConfig(format!("parity needs 1 <= k <= d, got d={d}, k={k}")));
    }
    let input_space = InputSpace::binary(d)?;
    // In ordered mode a repeated index cancels, so from step 3 on the running
    // parity can collapse to a single coordinate and match a fresh-bit decoy.
    // Strictly increasing tuples keep at least two distinct coordinates.
    if decoys.fresh() && index_mode == IndexMode::Ordered && k >= 3 {
        return Err(ArcError::InvalidConfig(
            "fresh-bit decoys coincide with a truth member under some ordered prefix when k >= 3".into(),
        ));
    }

    let mut families = Vec::with_capacity(k as usize);
    for t in 0..k as usize {
        let mut members: Vec<SubtaskHypothesis> = (0..d)
            .map(|i| SubtaskHypothesis::new(i, t, Subtask::Xor { index: i }))
            .collect();
        let mut push = |kind: Subtask| {
            let id = members.len() as u32;
            members.push(SubtaskHypothesis::new(id, t, kind));
        };
        if decoys.negated() {
            (0..d).for_each(|i| push(Subtask::NegatedXor { index: i }));
        }
        if decoys.fresh() && t >= 1 {
            (0..d).for_each(|i| push(Subtask::FreshBit { index: i }));
        }
        families.push(SubtaskFamily::new(t, FamilyRole::HypothesisClass, members));
    }

    let admission = match index_mode {
        IndexMode::Ordered => TaskAdmission::Product,
        IndexMode::StrictlyIncreasing => TaskAdmission::StrictlyIncreasing,
    };
    Ok(TaskClass::new(
        FamilyConfig::Parity(cfg.clone()),
        input_space,
        OutputAlphabet::integers(1)?,
        d as usize,
        families,
        admission,
        Some(0.5),
        Some(0.5),
    ))
}
