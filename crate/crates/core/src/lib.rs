//! Autoregressive compositional tasks: task classes, a two-stage learner that
//! identifies per-step subtasks from a few training tasks and selects among
//! their compositions at inference, and a Monte Carlo harness that measures
//! how often the learner fails against the closed-form bounds.
//!
//! ```
//! use arc_lab::families::{make_parity_class, ParityConfig};
//! use arc_lab::seed::rng_from_seed;
//! use arc_lab::space::Input;
//!
//! let class = make_parity_class(&ParityConfig::new(4, 2)).unwrap();
//! let task = class.task(vec![0, 2]).unwrap();
//! let y = class.generate_sequence(&task, &Input::Bits(0b1101), &mut rng_from_seed(0));
//! assert_eq!(y, vec![1, 0]);
//! ```

pub mod class;
pub mod cli;
pub mod dataset;
pub mod error;
pub mod families;
pub mod harness;
pub mod io;
pub mod learner;
pub mod seed;
pub mod space;
pub mod stats;
pub mod subtask;
pub mod support;

pub use class::{FamilyTag, TaskAdmission, TaskClass, TaskParams};
pub use dataset::{generate_dataset, sample_input, Dataset, Demonstration};
pub use error::{ArcError, Result};
pub use space::{Input, InputSpace, OutputAlphabet, Token};
