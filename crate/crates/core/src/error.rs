use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid spherical harmonic index (n={n}, m={m})")]
    ShIndex { n: i64, m: i64 },

    #[error("unsupported Lebedev grid size {0}")]
    UnsupportedGrid(usize),

    #[error("invalid direction grid: {0}")]
    InvalidGrid(String),

    #[error("invalid direction: {0}")]
    InvalidDirection(String),

    #[error("truncation order {order} too low for ka = {ka:.3} (need at least {required})")]
    TruncationOrder { order: usize, ka: f64, required: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("rank-deficient system: {0}")]
    RankDeficient(String),

    #[error("undefined metric: {0}")]
    Undefined(String),

    #[error("scene geometry: {0}")]
    Geometry(String),

    #[error("format: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Wav(#[from] hound::Error),
}

impl Error {
    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
