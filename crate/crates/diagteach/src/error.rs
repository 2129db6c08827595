//! Crate-wide error type.
//!
//! Every fallible operation returns [`Result`]. Variants carry enough
//! context to act on: colliding inputs for a failed Gram factorization,
//! the final certificate for a stalled optimizer, the offending cells
//! for a teacher that trained to a suboptimal policy.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller violated a precondition (empty candidate set, dimension
    /// mismatch, out-of-range hyperparameter, malformed trajectory, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The GP Gram matrix could not be factorized even with jitter.
    /// `colliding` lists index pairs of (near-)duplicate inputs.
    #[error("Gram matrix factorization failed; colliding input pairs: {colliding:?}")]
    GramFactorization { colliding: Vec<(usize, usize)> },

    /// A linear system was singular where a unique solution was required.
    #[error("degenerate data: {0}")]
    DegenerateData(String),

    /// An iterative optimizer exhausted its budget before meeting its
    /// convergence certificate.
    #[error("optimization failed to converge: final subgradient norm {final_norm:.3e} exceeds tolerance {tolerance:.3e}")]
    OptimizationFailure { final_norm: f64, tolerance: f64 },

    /// Online teacher training finished without an optimal greedy policy.
    #[error("teacher training left suboptimal greedy actions at cells {cells:?}")]
    TrainingFailure { cells: Vec<(usize, usize)> },

    /// A teacher rollout failed to reach the goal within its step cap.
    #[error("rollout from {start:?} did not reach the goal within {cap} steps")]
    RolloutFailure { start: (usize, usize), cap: usize },

    /// Dataset generation could not satisfy its contract (e.g. no linear
    /// separator after the retry budget).
    #[error("generation failed: {0}")]
    Generation(String),

    /// Experiment configuration is unusable.
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}
