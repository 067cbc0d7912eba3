use ncalg::NcError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TangentError {
    #[error("arity mismatch: {0} vs {1}")]
    Arity(usize, usize),
    #[error("truncation mismatch: order {0} vs order {1}")]
    Order(usize, usize),
    #[error("index {index} out of range for arity {arity}")]
    Index { index: usize, arity: usize },
    #[error("not a permutation of 1..={0}")]
    Permutation(usize),
    #[error("automorphism is not unipotent: component {0} has constant term different from 1")]
    NotUnipotent(usize),
    #[error("not in t3 image: degree {degree} has residual {residual:e}")]
    NotInT3 { degree: usize, residual: f64 },
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Nc(#[from] NcError),
}
