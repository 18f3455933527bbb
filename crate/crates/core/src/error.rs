use thiserror::Error;

/// Errors raised by the arithmetic, series and operator layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series has a non-invertible constant term")]
    SingularSeries,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("coefficient {index} is not {prime}-integral")]
    Integrality { index: usize, prime: u64 },

    #[error("resonance: indicial polynomial vanishes at k = {k}")]
    Resonance { k: usize },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("rejected input: {0}")]
    Rejected(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
