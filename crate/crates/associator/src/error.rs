use ncalg::NcError;
use scalars::ScalarError;
use tangent::TangentError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AssocError {
    #[error("not group-like: shuffle residual {residual:e} exceeds {tol:e}")]
    NotGrouplike { residual: f64, tol: f64 },
    #[error("constant term must be 1")]
    ConstantTerm,
    #[error("series must be in two generators, got {0}")]
    Alphabet(usize),
    #[error("log is not a Lie series: residual {residual:e} exceeds {tol:e}")]
    NotLie { residual: f64, tol: f64 },
    #[error("result not in T3: {0}")]
    NotInT3(TangentError),
    #[error("central anomaly: central coefficient {alpha:e} exceeds {tol:e}")]
    CentralAnomaly { alpha: f64, tol: f64 },
    #[error("twist generator must start in degree >= 2")]
    TwistDegree,
    #[error("truncation {order} too small for generator degree {degree}")]
    Truncation { order: usize, degree: usize },
    #[error("family degrees must be odd and >= 3, got {0}")]
    FamilyDegree(usize),
    #[error("degree-3 response of the flow vanishes; cannot pin the normalization")]
    DegenerateFlow,
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Nc(#[from] NcError),
    #[error(transparent)]
    Tangent(#[from] TangentError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
