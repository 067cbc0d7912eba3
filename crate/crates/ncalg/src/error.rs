use scalars::ScalarError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NcError {
    #[error("alphabet mismatch: {0} vs {1} generators")]
    Alphabet(usize, usize),
    #[error("truncation mismatch: order {0} vs order {1}")]
    Order(usize, usize),
    #[error("constant term must be {expected}")]
    ConstantTerm { expected: &'static str },
    #[error("series is not a Lie element: degree {degree} has residual {residual:e}")]
    NotLie { degree: usize, residual: f64 },
    #[error("letter {letter} out of range for an alphabet of size {k}")]
    Letter { letter: usize, k: usize },
    #[error("word of length {len} exceeds truncation order {order}")]
    WordTooLong { len: usize, order: usize },
    #[error("malformed series JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
