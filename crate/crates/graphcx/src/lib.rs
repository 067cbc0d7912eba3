//! Kontsevich's graph complex with odd edges, its Lie bracket and
//! differential, and the map from degree-zero cocycles to `grt_1`.

mod error;
mod graph;
mod lie;
mod lincomb;
mod ops;

pub use error::GcError;
pub use graph::{builtin, enumerate_gc, ExtGraph2, GcGraph, Graph, MAX_VERTICES};
pub use lie::{grt_basis, grt_check, ihara_bracket, phi_map, pi_project, GrtElem, GrtResiduals};
pub use lincomb::GraphLinComb;
pub use ops::{
    differential, divergence, ext_differential, gamma1_compositions, gc_bracket, pre_lie,
    pre_lie_graph, psi_map, psi_prop_residual,
};
