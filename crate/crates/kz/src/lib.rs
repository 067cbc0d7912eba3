//! The KZ associator computed from its defining ODE.
//!
//! [`phi_kz`] solves `df/dz = (1/2πi)(X/z + Y/(z − 1)) f` by Frobenius
//! series at both singular points and returns the constant `f_1⁻¹ f_0`.
//! [`mzv`] evaluates multiple zeta values for independent spot checks.

mod error;
mod fuchs;
mod mzv;

pub use error::KzError;
pub use fuchs::{
    anti_kz, kz_connection, kz_regularized_solution, phi_kz, transition, FuchsSeries, PhiKz, Point,
};
pub use mzv::{mzv, mzv_direct, MzvIndex, MzvValue};
