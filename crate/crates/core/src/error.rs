use std::path::PathBuf;

use thiserror::Error;

use crate::statute::TimeUnit;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty range {lo}..{hi}")]
    EmptyRange { lo: u64, hi: u64 },

    #[error("realized gain must be non-negative, got {0}")]
    NegativeGain(String),

    #[error("full test length must be positive")]
    ZeroTestLength,

    #[error("search limit must be at least 1")]
    ZeroLimit,

    #[error(
        "search domain has {size} points, above the safety bound of {bound}; \
         pass --override-domain-bound to search it anyway"
    )]
    DomainTooLarge { size: u128, bound: u128 },

    #[error("invalid search domain: {0}")]
    InvalidDomain(String),

    #[error("no facts supplied for unit `{0}`")]
    MissingUnitFacts(TimeUnit),

    #[error("determinism check needs at least 2 runs, got {0}")]
    TooFewRuns(usize),

    #[error("fixture file missing: {}", .0.display())]
    FixtureMissing(PathBuf),

    #[error("{file}:{line}: {message}")]
    FixtureFormat {
        file: String,
        line: usize,
        message: String,
    },

    #[error("amount {0} does not fit the report encoding")]
    AmountOverflow(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
