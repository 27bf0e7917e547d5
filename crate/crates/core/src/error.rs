use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("polyhedron is unbounded")]
    Unbounded,

    #[error("polytope is not full-dimensional (dimension {dim} in ambient dimension {ambient})")]
    NotFullDimensional { dim: i64, ambient: usize },

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid die: {0}")]
    InvalidDie(String),

    #[error("coordinatewise comparison is not strict at face {face}")]
    Boundary { face: usize },

    #[error("invalid sigma word {0:?}")]
    InvalidSigma(String),

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("inconsistent probabilities: {0}")]
    Consistency(String),
}
