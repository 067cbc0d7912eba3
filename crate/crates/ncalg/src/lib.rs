//! Truncated noncommutative power series and free Lie algebras.
//!
//! [`NCSeries`] stores a series in `k` noncommuting generators up to a fixed
//! word length, over any [`scalars::Scalar`] ring. [`LieSeries`] stores free
//! Lie algebra elements in the Lyndon basis. Truncation is a hard parameter:
//! every operation silently drops words longer than the order.

mod error;
mod lie;
mod lyndon;
mod series;
mod word;

pub use error::NcError;
pub use lie::{lie_to_nc, nc_project_lie, render_word, LieSeries};
pub use lyndon::{expand, lyndon_basis, lyndon_table, witt_dimension, Bracketing, LyndonTable};
pub use series::{int, NCSeries};
pub use word::{index_word, pow, word_index, word_to_string, words_of_length, Word};

use scalars::Scalar;

/// `a · b`, rejecting mismatched alphabets or orders.
pub fn nc_mul<S: Scalar>(a: &NCSeries<S>, b: &NCSeries<S>) -> Result<NCSeries<S>, NcError> {
    a.try_mul(b)
}

/// `a + b`, rejecting mismatched alphabets or orders.
pub fn nc_add<S: Scalar>(a: &NCSeries<S>, b: &NCSeries<S>) -> Result<NCSeries<S>, NcError> {
    a.try_add(b)
}

pub fn nc_scale<S: Scalar>(a: &NCSeries<S>, c: &S) -> NCSeries<S> {
    a.scale(c)
}

pub fn nc_exp<S: Scalar>(a: &NCSeries<S>) -> Result<NCSeries<S>, NcError> {
    a.exp()
}

pub fn nc_log<S: Scalar>(g: &NCSeries<S>) -> Result<NCSeries<S>, NcError> {
    g.log()
}

/// Shuffle group-likeness residual; see [`NCSeries::grouplike_residual`].
pub fn is_grouplike<S: Scalar>(g: &NCSeries<S>) -> f64 {
    g.grouplike_residual()
}

/// Algebra homomorphism extending generator images; overflow is truncated.
pub fn substitute<S: Scalar>(
    a: &NCSeries<S>,
    images: &[NCSeries<S>],
) -> Result<NCSeries<S>, NcError> {
    a.substitute(images)
}

/// Lie homomorphism extending generator images given as Lie series.
pub fn substitute_lie<S: Scalar>(
    a: &LieSeries<S>,
    images: &[LieSeries<S>],
) -> Result<LieSeries<S>, NcError> {
    let nc: Vec<NCSeries<S>> = images.iter().map(|l| l.to_nc()).collect();
    Ok(LieSeries::from_nc_exact(&a.to_nc().substitute(&nc)?))
}

/// `log(exp(a) exp(b))`.
pub fn bch<S: Scalar>(a: &NCSeries<S>, b: &NCSeries<S>) -> Result<NCSeries<S>, NcError> {
    a.exp()?.try_mul(&b.exp()?)?.log()
}
