use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix shape is invalid: {0}")]
    BadShape(String),
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is not Hermitian (‖x − x*‖ = {defect:e})")]
    NotHermitian { defect: f64 },
    #[error("matrix is not unitary (‖u*u − 1‖ = {defect:e})")]
    NotUnitary { defect: f64 },
    #[error("operator is not nonexpansive (norm {norm})")]
    NotNonexpansive { norm: f64 },
    #[error("lambda must be nonnegative, got {0}")]
    NegativeLambda(f64),
    #[error("invalid grid: {0}")]
    BadGrid(String),
    #[error("invalid ensemble spec: {0}")]
    BadSpec(String),
    #[error("malformed matrix file: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
