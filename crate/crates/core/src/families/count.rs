use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::FamilyConfig;
use crate::class::TaskClass;
use crate::error::{ArcError, Result};

/// How a parity task is written out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Representation {
    /// One subtask per step; the task count is `D^T` or the admitted subset.
    WithCot,
    /// The whole parity as a single step over `C(d, k)` subsets.
    NoCot,
}

/// Exact `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn count_tasks(class: &TaskClass, representation: Representation) -> Result<BigUint> {
    match representation {
        Representation::WithCot => Ok(class.task_count()),
        Representation::NoCot => match class.config() {
            FamilyConfig::Parity(cfg) => Ok(binomial(cfg.d as u64, cfg.k as u64)),
            other => Err(ArcError::Unsupported(format!(
                "a single-step count for the {} family",
                other.tag().as_str()
            ))),
        },
    }
}
