//! Numerical configuration-space integrals.
//!
//! The propagator family `ω^t` on the upper half-plane, the dilogarithm
//! and the function `F(w)`, the tetrahedron weight, the one-internal-vertex
//! connection coefficient and the pointwise form `β̃^t_Γ`. Plane integrals
//! use a deterministic adaptive Gauss–Legendre scheme in log-polar charts
//! around every singular point.

mod dilog;
mod error;
mod propagator;
mod quad;
mod weights;

pub use dilog::{dilog, f_function};
pub use error::ConfintError;
pub use propagator::{
    propagator_diagonal_expansion, propagator_omega, propagator_phi, DiagonalFit, PropagatorEval,
};
pub use quad::{integrate_plane, PlaneIntegral, QuadratureSpec, Region, WeightResult};
pub use weights::{
    at_one_vertex_coefficient, beta_tilde_pointwise, tetra_prefactor, tetra_scaling,
    tetra_type1_fundamental_domain, tetra_type1_halves, tetra_type1_integral, tetra_weight,
    tetra_weight_from, AtCoefficient, TETRA_SYMMETRY_FACTOR,
};
