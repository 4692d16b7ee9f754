use thiserror::Error;

/// Errors raised across task construction, estimation, and the experiment harness.
#[derive(Debug, Error)]
pub enum ArcError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid task: {0}")]
    InvalidTask(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A numeric argument outside its mathematical domain (margins, probabilities, counts).
    #[error("{0}")]
    Domain(String),

    #[error("dataset size must be at least 1")]
    EmptyDataset,

    #[error("sample set is empty")]
    EmptySample,

    #[error("input space has {size} points, above the exact-enumeration cap of {cap}")]
    SpaceTooLarge { size: u128, cap: u64 },

    #[error("hypothesis pair has zero total variation and cannot be discriminated")]
    ZeroTotalVariation,

    #[error("no hypothesis survives support filtering at step {step} of training task {task}")]
    EmptyCandidates { step: usize, task: usize },

    #[error("selection filter admits no task")]
    EmptyAdmittedSet,

    #[error("identifiability fails at step {step}: hypotheses {a} and {b} coincide under prefix {prefix:?}")]
    NotIdentifiable {
        step: usize,
        prefix: Vec<u32>,
        a: u32,
        b: u32,
    },

    #[error("{0} is not supported for this task class")]
    Unsupported(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl ArcError {
    /// True for errors caused by the caller's arguments rather than by the run itself.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            ArcError::InvalidConfig(_)
                | ArcError::InvalidTask(_)
                | ArcError::InvalidInput(_)
                | ArcError::Domain(_)
                | ArcError::EmptyDataset
                | ArcError::SpaceTooLarge { .. }
                | ArcError::Unsupported(_)
                | ArcError::EmptyAdmittedSet
        )
    }
}

pub type Result<T> = std::result::Result<T, ArcError>;
