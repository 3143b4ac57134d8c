use thiserror::Error;

/// Errors produced by the face-cover library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("vector must be nonzero")]
    ZeroVector,

    #[error("zero matrix must have at least one row and one column")]
    EmptyMatrix,

    #[error("line {line}: malformed row: {reason}")]
    MalformedRow { line: usize, reason: String },

    #[error("duplicate row on lines {first} and {second}")]
    DuplicateRow { first: usize, second: usize },

    #[error("{what} = {value} exceeds limit {limit}")]
    LimitExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("column {column} is constant")]
    ConstantColumn { column: usize },

    #[error("function is not proper")]
    NotProper,

    #[error("arity mismatch: expected {expected} variables, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("invalid conjunction: {0}")]
    InvalidConjunction(String),

    #[error("decomposition hypothesis fails: {0}")]
    DecompositionHypothesisFails(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

impl Error {
    /// Stable machine-readable name of the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::ZeroVector => "zero_vector",
            Error::EmptyMatrix => "empty_matrix",
            Error::MalformedRow { .. } => "malformed_row",
            Error::DuplicateRow { .. } => "duplicate_row",
            Error::LimitExceeded { .. } => "limit_exceeded",
            Error::ConstantColumn { .. } => "constant_column",
            Error::NotProper => "not_proper",
            Error::ArityMismatch { .. } => "arity_mismatch",
            Error::InvalidConjunction(_) => "invalid_conjunction",
            Error::DecompositionHypothesisFails(_) => "decomposition_hypothesis_fails",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::PreconditionViolated(_) => "precondition_violated",
            Error::ResourceLimit(_) => "resource_limit",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
