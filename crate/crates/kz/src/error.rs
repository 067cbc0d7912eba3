use ncalg::NcError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KzError {
    #[error("index {0:?} is not admissible (need s_1 >= 2 and all parts >= 1)")]
    NotAdmissible(Vec<u32>),
    #[error("recurrence step m = {0} is not invertible")]
    Recurrence(usize),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("f1^-1 f0 is not constant: residual {residual:e} exceeds {tol:e}")]
    Constancy { residual: f64, tol: f64 },
    #[error("non-finite coefficient in the KZ associator")]
    NonFinite,
    #[error(transparent)]
    Nc(#[from] NcError),
}
