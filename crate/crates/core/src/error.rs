use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generator index {index} out of range for free group of rank {rank}")]
    IndexOutOfRange { index: i64, rank: usize },

    #[error("free group has no distinguished lambda generator")]
    LambdaUnset,

    #[error("words are not conjugate: {0}")]
    NotConjugate(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("field mismatch: expected F_{expected}, got F_{got}")]
    FieldMismatch { expected: u32, got: u32 },

    #[error("computation exceeded the size cap of {cap}")]
    CapExceeded { cap: usize },

    #[error("group has nontrivial center (order {order})")]
    CenterNotTrivial { order: String },

    #[error("target group is not centerless")]
    NotCenterless,

    #[error("vector is not fixed by the action")]
    NotActionFixed,

    #[error("element is not a member of the group")]
    NotMember,

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("convention failure: {0}")]
    Convention(String),
}

pub type Result<T> = std::result::Result<T, Error>;
