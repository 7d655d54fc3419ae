use thiserror::Error;

/// Errors shared by the whole crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A band/coefficient index fell outside `0..=N`.
    #[error("index {index} out of range for multiplet size N = {n}")]
    IndexOutOfRange { index: usize, n: usize },

    /// `lambda = 1/c` was requested with the pole on the real axis.
    #[error("lambda = 1/c is undefined: c = 0")]
    LambdaUndefined,

    /// A caller-supplied value failed a precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The dense eigensolver did not converge; the offending matrix is
    /// carried along row-major for diagnosis.
    #[error("eigensolver failed on a {size}x{size} matrix: {matrix:?}")]
    Eigensolver { size: usize, matrix: Vec<f64> },

    /// The all-real predicate never produced a usable bracket; the scan
    /// trace records every (d, all_real) probe made.
    #[error("no reality bracket found; scan trace: {trace:?}")]
    BracketFailure { trace: Vec<(f64, bool)> },

    /// A zero overlap between left and right unperturbed vectors.
    #[error("degenerate normalization: zero overlap at level {level}")]
    DegenerateNormalization { level: usize },

    /// The overlap matrix could not be inverted.
    #[error("singular overlap matrix")]
    SingularOverlap,

    /// An operator lies outside the span of the requested generator set;
    /// `residual_entries` lists the nonzero entries (row, col, value) of
    /// the residual operator matrix.
    #[error("operator not in generator span ({} residual entries)", residual_entries.len())]
    NotInSpan {
        residual_entries: Vec<(usize, usize, String)>,
    },

    /// Numerical integration broke down (overflow, NaN, step underflow).
    #[error("integration error: {0}")]
    Integration(String),
}

pub type Result<T> = std::result::Result<T, Error>;
