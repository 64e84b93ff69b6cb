use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("relation ideal not verified nilpotent within path length {bound}: {remaining} paths of length {len} survive")]
    NilpotencyBoundExceeded {
        bound: usize,
        len: usize,
        remaining: usize,
    },

    #[error("invalid relation {index}: {reason}")]
    InvalidRelation { index: usize, reason: String },

    #[error("modules live over different algebras")]
    AlgebraMismatch,

    #[error("sequence is not exact: {0}")]
    NotExact(String),

    #[error("middle term is not in add(M): {0}")]
    NotInAddM(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("chain map lift failed: {0}")]
    LiftFailed(String),

    #[error("closure failure: {0}")]
    ClosureFailure(String),

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("solution not unique: {0}")]
    NonUniqueSolution(String),

    #[error("unsupported characteristic: {0}")]
    UnsupportedCharacteristic(String),

    #[error("semisimple quotient is not split over the ground field: {0}")]
    NonSplitSemisimpleQuotient(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation error in {field}: {reason}")]
    Validation { field: String, reason: String },

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub fn validation(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
