use thiserror::Error;

/// Errors produced by dataset construction, graph building and the solvers.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on an argument was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A value failed a structural validation check.
    #[error("validation failed: {0}")]
    Validation(String),

    /// A CSV cell could not be parsed. Positions are 1-based.
    #[error("parse error at row {row}, column {col}: {message}")]
    Parse { row: usize, col: usize, message: String },

    /// Cholesky factorization hit a non-positive pivot.
    #[error("matrix is not positive definite: pivot {pivot} is non-positive")]
    Singular { pivot: usize },

    /// An iterative solver ran out of its iteration budget.
    #[error("failed to converge within the iteration budget (residual {residual:e})")]
    NoConvergence { residual: f64 },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
