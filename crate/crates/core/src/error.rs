use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The input is outside the domain an operation is defined on
    /// (e.g. an irregular graph passed to a regular-only bound).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("enumeration budget exceeded: projected {projected} operations, limit {limit}")]
    Budget { projected: u128, limit: u128 },

    #[error("random walk did not mix within {cap} steps")]
    MixingCapExceeded { cap: usize },

    #[error("random regular generation failed after {restarts} restarts")]
    RestartsExhausted { restarts: usize },

    /// An experiment grid point failed.
    #[error("at tau = {tau}: {source}")]
    AtTau { tau: usize, source: Box<Error> },

    #[error("plot error: {0}")]
    Plot(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
