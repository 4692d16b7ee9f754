use rand::RngCore;

use crate::class::{TaskClass, TaskParams};
use crate::error::{ArcError, Result};
use crate::space::{Input, InputSpace, Token};

/// One `(x, y_1..y_T)` pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Demonstration {
    pub x: Input,
    pub y: Vec<Token>,
}

/// i.i.d. demonstrations from one task.
///
/// `generator` is the ground truth and is only kept for records and scoring;
/// the learner never reads it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dataset {
    demonstrations: Vec<Demonstration>,
    generator: Option<TaskParams>,
}

impl Dataset {
    pub fn new(demonstrations: Vec<Demonstration>, generator: Option<TaskParams>) -> Self {
        Self {
            demonstrations,
            generator,
        }
    }

    pub fn demonstrations(&self) -> &[Demonstration] {
        &self.demonstrations
    }

    pub fn generator(&self) -> Option<&TaskParams> {
        self.generator.as_ref()
    }

    /// The same demonstrations with the ground-truth task stripped.
    pub fn without_generator(&self) -> Self {
        Self::new(self.demonstrations.clone(), None)
    }

    pub fn len(&self) -> usize {
        self.demonstrations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.demonstrations.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Demonstration> {
        self.demonstrations.iter()
    }
}

pub fn sample_input<R: RngCore + ?Sized>(space: &InputSpace, rng: &mut R) -> Input {
    space.sample(rng)
}

/// Draws `n` demonstrations: `x` uniform, then `y` autoregressively.
pub fn generate_dataset<R: RngCore + ?Sized>(
    class: &TaskClass,
    task: &TaskParams,
    n: usize,
    rng: &mut R,
) -> Result<Dataset> {
    if n == 0 {
        return Err(ArcError::EmptyDataset);
    }
    let space = class.input_space();
    let demonstrations = (0..n)
        .map(|_| {
            let x = space.sample(rng);
            let y = class.generate_sequence(task, &x, rng);
            Demonstration { x, y }
        })
        .collect();
    Ok(Dataset::new(demonstrations, Some(task.clone())))
}
