use std::collections::HashMap;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::class::TaskClass;
use crate::error::Result;
use crate::seed::{mix64, rng_from_seed};
use crate::support::{contrast, estimate_contrast, Contrast};

/// How the expectations `mu_p`, `mu_q` of a contest are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MuEstimation {
    /// Exact enumeration of the joint support.
    #[default]
    Exact,
    /// Monte Carlo with `samples` draws per side. Approximate; opt-in only.
    MonteCarlo { samples: usize, seed: u64 },
}

type Key = (Vec<u32>, u32, u32);

/// Memoized contrasts for one task class, shared across tasks and trials.
///
/// A cache must only ever be used with the class it was first filled from.
#[derive(Debug, Default)]
pub struct ContrastCache {
    map: Mutex<HashMap<Key, Contrast>>,
}

impl ContrastCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.lock().map(|m| m.len()).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The contrast for `P = (prefix, a)`, `Q = (prefix, b)`.
    pub fn get(
        &self,
        class: &TaskClass,
        prefix: &[u32],
        a: u32,
        b: u32,
        how: MuEstimation,
    ) -> Result<Contrast> {
        let key = (prefix.to_vec(), a, b);
        if let Some(c) = self.map.lock().expect("contrast cache poisoned").get(&key) {
            return Ok(*c);
        }
        let value = match how {
            MuEstimation::Exact => contrast(class, prefix, a, b)?,
            MuEstimation::MonteCarlo { samples, seed } => {
                let mut rng = rng_from_seed(mix64(seed, key_hash(&key)));
                estimate_contrast(class, prefix, a, b, samples, &mut rng)?
            }
        };
        self.map
            .lock()
            .expect("contrast cache poisoned")
            .insert(key, value);
        Ok(value)
    }
}

/// FNV-1a over the key, so Monte Carlo estimates do not depend on call order.
fn key_hash((prefix, a, b): &Key) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for v in prefix.iter().chain([a, b]) {
        for byte in v.to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h ^ prefix.len() as u64
}
