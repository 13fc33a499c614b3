use crate::model::ThrusterConfig;
use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Invalid physical parameters or malformed parameter input.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A state reached the cylindrical coordinate singularity (r <= 0).
    #[error("coordinate singularity: cylindrical radius must stay positive ({0})")]
    CoordinateSingularity(String),

    /// Bad argument to a numerical routine (empty horizon, odd step count, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The requested thruster configuration fails the Kalman rank test.
    #[error("configuration {config} is not controllable: rank {rank} < 6")]
    Uncontrollable { config: ThrusterConfig, rank: usize },

    /// The controllability Gramian is numerically singular.
    #[error("singular Gramian: factorization broke down at pivot {pivot}")]
    SingularGramian { pivot: usize },

    /// Integration produced a non-finite state or left the valid domain.
    #[error("integration diverged at step {step}: {reason}")]
    Divergence { step: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
