use graphcx::GcError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfintError {
    #[error("point {0} is a singular point of the integrand")]
    Singular(String),
    #[error("coincident points: {0}")]
    Coincident(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("quadrature did not reach tolerance {tol:e}: estimate {value}, error {error:e} after {nodes} nodes")]
    Tolerance {
        value: String,
        error: f64,
        tol: f64,
        nodes: usize,
    },
    #[error("non-finite integrand value at w = {0}")]
    NonFinite(String),
    #[error("fit residual {0:e} is too large")]
    Fit(f64),
    #[error("graph with {vertices} vertices and {edges} edges does not give a top-degree form (need edges = 2 vertices - 4)")]
    Degree { vertices: usize, edges: usize },
    #[error(transparent)]
    Graph(#[from] GcError),
}
