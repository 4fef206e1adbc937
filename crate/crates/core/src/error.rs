use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("label {label} at index {index} is outside 0..{class_count}")]
    LabelOutOfRange {
        index: usize,
        label: usize,
        class_count: usize,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("non-finite value in {what} at row {row}, column {col}")]
    NonFinite {
        what: &'static str,
        row: usize,
        col: usize,
    },
    #[error("empty {0}")]
    Empty(&'static str),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("matrix is not symmetric: {0}")]
    NotSymmetric(String),
    #[error("constraint matrix is not positive definite after adding ridge {ridge:e}; try a larger ridge")]
    NotPositiveDefinite { ridge: f64 },
    #[error("kernel bandwidth is undefined: {0}")]
    Bandwidth(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    /// True for failures originating in the linear algebra rather than in the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NotPositiveDefinite { .. } | Error::Numerical(_) | Error::NotSymmetric(_)
        )
    }
}
