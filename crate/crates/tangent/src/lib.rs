//! Tangential derivations and automorphisms of free Lie algebras.
//!
//! [`TDerElem`] is a tangential derivation `u = (u_1, …, u_k)` acting by
//! `X_i ↦ [X_i, u_i]`; [`TAutElem`] is the group of tangential automorphisms
//! `X_i ↦ g_i⁻¹ X_i g_i`. The Drinfeld–Kohno generators `t_ij`, the
//! simplicial insertion maps and permutations act on both, and the image of
//! `t_3` can be split into its central and free parts.

mod center;
mod error;
mod taut;
mod tder;

pub use center::{center_decompose_t3, CenterSplit};
pub use error::TangentError;
pub use taut::{exp_tder, log_taut, TAutElem};
pub use tder::{lie_eval, TDerElem};

use ncalg::LieSeries;
use scalars::Scalar;

/// Component `i` of the derivation, as a Lie series.
pub fn tder_component<S: Scalar>(u: &TDerElem<S>, i: usize) -> Result<LieSeries<S>, TangentError> {
    if i == 0 || i > u.arity() {
        return Err(TangentError::Index {
            index: i,
            arity: u.arity(),
        });
    }
    Ok(LieSeries::from_nc_exact(u.component_nc(i)))
}

/// Applies a derivation to a Lie series in the same generators.
pub fn tder_apply<S: Scalar>(
    u: &TDerElem<S>,
    l: &LieSeries<S>,
) -> Result<LieSeries<S>, TangentError> {
    if l.alphabet() != u.arity() {
        return Err(TangentError::Arity(u.arity(), l.alphabet()));
    }
    Ok(u.apply_lie(l))
}

/// `[u, v]` in tder.
pub fn tder_bracket<S: Scalar>(
    u: &TDerElem<S>,
    v: &TDerElem<S>,
) -> Result<TDerElem<S>, TangentError> {
    u.try_bracket(v)
}

/// `t_ij ∈ tder_k`.
pub fn tk_generator<S: Scalar>(
    i: usize,
    j: usize,
    k: usize,
    n: usize,
) -> Result<TDerElem<S>, TangentError> {
    TDerElem::tk_generator(i, j, k, n)
}

/// Composition `g ∘ h`.
pub fn taut_compose<S: Scalar>(
    g: &TAutElem<S>,
    h: &TAutElem<S>,
) -> Result<TAutElem<S>, TangentError> {
    g.compose(h)
}
