use thiserror::Error;

/// Error type shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input text (decimal or fraction grammar violations).
    #[error("parse error: {0}")]
    Parse(String),
    /// A precondition on the arguments does not hold.
    #[error("domain error: {0}")]
    Domain(String),
    /// A bounded search ran past its iteration cap.
    #[error("iteration limit exceeded: {0}")]
    IterationLimit(String),
    /// A condition the construction guarantees was observed to fail.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
