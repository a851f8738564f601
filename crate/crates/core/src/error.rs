use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree vector has length {got}, space has {expected} factors")]
    LengthMismatch { expected: usize, got: usize },

    #[error("input outside the supported range: {0}")]
    UnsupportedRange(String),

    #[error("factor index {index} out of range for a space with {factors} factors")]
    IndexOutOfRange { index: usize, factors: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("incomplete scenario data: missing {0}")]
    IncompleteScenario(&'static str),

    /// A mechanically verified step did not hold. Never expected to fire.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}
