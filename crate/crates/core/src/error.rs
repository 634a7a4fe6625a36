use thiserror::Error;

/// Text that does not denote a scalar.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseScalarError {
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("malformed rational {0:?} (expected \"p\" or \"p/q\")")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{op}: dimension mismatch ({detail})")]
    DimensionMismatch { op: &'static str, detail: String },

    #[error("{op}: expected a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("{op}: precondition violated: {detail}")]
    Precondition { op: &'static str, detail: String },

    #[error("component in degree {degree} is not invertible")]
    Singular { degree: i32 },

    #[error("not a homotopy equivalence: induced map on H^{degree} is not invertible")]
    NotHomotopyEquivalence { degree: i32 },

    #[error(
        "graded dimensions differ in degree {degree} (source {source_dim}, target {target_dim})"
    )]
    GradedDimMismatch {
        degree: i32,
        source_dim: usize,
        target_dim: usize,
    },

    #[error("zero value where a nonzero scalar is required: {0}")]
    ZeroValue(String),

    #[error("not a 1-cocycle: {0}")]
    NotACocycle(String),

    #[error("groupoid mismatch: {0}")]
    GroupoidMismatch(String),

    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("inconsistent representation: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
