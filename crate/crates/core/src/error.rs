use thiserror::Error;

/// Errors surfaced by the library. Internal contract violations (rank
/// mismatches between values that never cross a user boundary) panic instead.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("invalid chain set: {0}")]
    InvalidChainSet(String),
    #[error("invalid infinitesimal character: {0}")]
    InvalidInfChar(String),
    #[error("invalid representation parameters: {0}")]
    InvalidRepParams(String),
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
