use std::path::PathBuf;

use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid prime {value}: {reason}")]
    InvalidPrime { value: String, reason: &'static str },

    #[error("arguments are not coprime: {0}")]
    NotCoprime(String),

    #[error("bad modulus {0}: norm must be a prime = 1 mod 3 or the square of an inert prime")]
    BadModulus(String),

    #[error("factorization of {0} exceeds the configured budget")]
    FactorizationTooHard(String),

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("{0} is not a unit")]
    NotAUnit(String),

    #[error("symbol argument is zero")]
    ZeroArgument,

    #[error("no factorable lift found within radius {0}")]
    LiftSearchFailed(u32),

    #[error("polynomial {0} is reducible")]
    Reducible(String),

    #[error("order is not maximal at {0}")]
    NotMaximalAtQ(u64),

    #[error("effort exhausted: {0}")]
    EffortExhausted(String),

    #[error("inconsistent inputs: {0}")]
    InconsistentInputs(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
