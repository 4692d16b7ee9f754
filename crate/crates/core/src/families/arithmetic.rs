use serde::{Deserialize, Serialize};

use super::FamilyConfig;
use crate::class::{TaskAdmission, TaskClass};
use crate::error::{ArcError, Result};
use crate::space::{InputSpace, OutputAlphabet};
use crate::subtask::{ArithOp, FamilyRole, Subtask, SubtaskFamily, SubtaskHypothesis};

/// Left-to-right `+`/`×` chains over `d` input bits; `T = d - 1` steps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArithmeticConfig {
    pub d: u32,
}

impl ArithmeticConfig {
    pub fn new(d: u32) -> Self {
        Self { d }
    }
}

/// Step `t` is `+` (id 0) or `×` (id 1). Values stay in `0..=d` since each
/// step either adds a bit or multiplies by one.
pub fn make_arithmetic_class(cfg: &ArithmeticConfig) -> Result<TaskClass> {
    let d = cfg.d;
    if d < 2 {
        return Err(ArcError::InvalidConfig(format!("arithmetic needs d >= 2, got {d}")));
    }
    let input_space = InputSpace::binary(d)?;
    let families = (0..(d - 1) as usize)
        .map(|t| {
            let members = [ArithOp::Add, ArithOp::Mul]
                .into_iter()
                .enumerate()
                .map(|(id, op)| SubtaskHypothesis::new(id as u32, t, Subtask::Arithmetic { op }))
                .collect();
            SubtaskFamily::new(t, FamilyRole::HypothesisClass, members)
        })
        .collect();
    Ok(TaskClass::new(
        FamilyConfig::Arithmetic(cfg.clone()),
        input_space,
        OutputAlphabet::integers(d)?,
        2,
        families,
        TaskAdmission::Product,
        None,
        None,
    ))
}

/// Parses `+,x,+` (also `*`) into op ids.
pub(crate) fn parse_ops(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|s| match s.trim() {
            "+" => Ok(0),
            "x" | "X" | "*" => Ok(1),
            other => Err(ArcError::InvalidTask(format!("unknown operator {other:?}"))),
        })
        .collect()
}
