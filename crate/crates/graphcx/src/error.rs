use ncalg::NcError;
use tangent::TangentError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GcError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    Vertex { vertex: usize, n: usize },
    #[error("graphs are limited to {max} vertices, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error("input is not closed: the differential has {terms} nonzero terms")]
    NotCocycle { terms: usize },
    #[error("input has degree {0}, expected 0")]
    Degree(i64),
    #[error("graph is not 1-vertex irreducible")]
    Reducible,
    #[error("projection is not in the image of grt: residual {0}")]
    NotGrt(f64),
    #[error("unknown built-in graph {0:?}")]
    UnknownGraph(String),
    #[error("malformed graph JSON: {0}")]
    Json(String),
    #[error("expected series in 2 letters, got {0}")]
    Alphabet(usize),
    #[error("truncation orders differ: {0} and {1}")]
    Order(usize, usize),
    #[error(transparent)]
    Nc(#[from] NcError),
    #[error(transparent)]
    Tangent(#[from] TangentError),
}
