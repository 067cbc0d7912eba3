use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScalarError {
    #[error("floating-point value is NaN or infinite")]
    NonFinite,
    #[error("polynomial degree {degree} exceeds the declared bound {bound}")]
    DegreeBound { degree: usize, bound: usize },
    #[error("malformed scalar JSON: {0}")]
    Json(String),
}
