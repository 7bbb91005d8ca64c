use thiserror::Error;

/// Errors produced by the library.
///
/// Everything except [`Error::Invariant`] describes bad input. An
/// `Invariant` error means a structural theorem the library relies on did
/// not hold, which points at a bug rather than at the caller.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Fibonacci set: {0}")]
    InvalidSet(String),

    #[error("invalid free set: {0}")]
    InvalidFreeSet(String),

    #[error("invalid Fibonacci word: {0}")]
    InvalidWord(String),

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("malformed matching: {0}")]
    Structure(String),

    #[error("height label violation: {0}")]
    Label(String),

    #[error("propagating label sets differ: {left} vs {right}")]
    PropLabMismatch { left: String, right: String },

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn is_invariant(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
