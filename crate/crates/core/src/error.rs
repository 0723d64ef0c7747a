use thiserror::Error;

pub type Result<T, E = CmError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CmError {
    #[error("mode count must be at least 1")]
    ZeroModes,
    #[error("matrix must be square with even dimension, got {rows}x{cols}")]
    BadShape { rows: usize, cols: usize },
    #[error("matrix dimension {dim} does not match {modes} modes")]
    ModeMismatch { modes: usize, dim: usize },
    #[error("matrix is not symmetric (entry ({row},{col}) deviates by {deviation:.3e})")]
    NotSymmetric {
        row: usize,
        col: usize,
        deviation: f64,
    },
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("matrix is not a bona fide covariance matrix (min symplectic eigenvalue {min_nu:.12})")]
    NotBonaFide { min_nu: f64 },
    #[error("mode index {index} out of range for {modes} modes")]
    ModeOutOfRange { index: usize, modes: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("symplectic eigenvalues failed to pair: {0:.3e} vs {1:.3e}")]
    UnpairedSpectrum(f64, f64),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("malformed covariance matrix file: {0}")]
    Json(#[from] serde_json::Error),
}
