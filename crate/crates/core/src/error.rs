use thiserror::Error;

/// Errors raised by the matrix kernel, code constructions and decoders.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("matrix is singular (rank {rank} of {dim})")]
    Singular { rank: usize, dim: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// The received values contradict the parity constraints, so the input
    /// was not produced by an erasure channel.
    #[error("inconsistent equations: {0}")]
    Inconsistent(String),
    /// A decoder produced an assignment that fails re-verification.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error("no full-rank systematic seed found in {attempts} attempts")]
    SeedSearchExhausted { attempts: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
