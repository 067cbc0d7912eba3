//! Coefficient rings used by the series arithmetic.
//!
//! Every ring implements [`Scalar`]: a commutative ring that is also a
//! module over the rationals, with a magnitude used for residual reports and
//! a JSON encoding. Implementations are provided for [`Rational`] (exact,
//! arbitrary precision), `f64`, [`Complex64`], [`PolyInT`] (polynomials in the
//! interpolation parameter `t`) and [`Dual`] (first-order perturbations).

mod dual;
mod error;
mod poly;
mod rational;

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

pub use num_complex::Complex64;
pub use serde_json::Value;

pub use dual::Dual;
pub use error::ScalarError;
pub use poly::{poly_definite_integral, poly_multiply_integrate_nested, PolyInT};
pub use rational::{q, qi, rational_from_json, rational_to_f64, rational_to_json, Rational};

/// A commutative ring containing the rationals.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Image of a rational number under the structure map `Q -> Self`.
    fn from_rational(x: &Rational) -> Self;
    /// Size of the element, used for residuals: `|x|` for numbers, the
    /// largest coefficient size for composite rings.
    fn mag(&self) -> f64;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self, ScalarError>;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&qi(n))
    }

    /// Multiplication by a rational number.
    fn scale_q(&self, x: &Rational) -> Self {
        self.clone() * Self::from_rational(x)
    }

    /// `self += a * b`.
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a.clone() * b.clone();
    }

    /// False when a floating component is NaN or infinite.
    fn is_finite(&self) -> bool {
        true
    }

    /// `self / other`, or `None` when `other` is not invertible.
    fn checked_div(&self, other: &Self) -> Option<Self>;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn from_rational(x: &Rational) -> Self {
        rational_to_f64(x)
    }
    fn mag(&self) -> f64 {
        self.abs()
    }
    fn to_json(&self) -> Value {
        serde_json::json!(self)
    }
    fn from_json(v: &Value) -> Result<Self, ScalarError> {
        let x = v
            .as_f64()
            .ok_or_else(|| ScalarError::Json(format!("expected a number, got {v}")))?;
        checked_f64(x)
    }
    fn scale_q(&self, x: &Rational) -> Self {
        self * rational_to_f64(x)
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }

    fn checked_div(&self, other: &Self) -> Option<Self> {
        (*other != 0.0).then(|| self / other)
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn from_rational(x: &Rational) -> Self {
        Complex64::new(rational_to_f64(x), 0.0)
    }
    fn mag(&self) -> f64 {
        self.norm()
    }
    fn to_json(&self) -> Value {
        serde_json::json!([self.re, self.im])
    }
    fn from_json(v: &Value) -> Result<Self, ScalarError> {
        match v {
            Value::Array(a) if a.len() == 2 => {
                let re = f64::from_json(&a[0])?;
                let im = f64::from_json(&a[1])?;
                Ok(Complex64::new(re, im))
            }
            Value::Number(_) => Ok(Complex64::new(f64::from_json(v)?, 0.0)),
            _ => Err(ScalarError::Json(format!("expected [re, im], got {v}"))),
        }
    }
    fn scale_q(&self, x: &Rational) -> Self {
        self * rational_to_f64(x)
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
    fn checked_div(&self, other: &Self) -> Option<Self> {
        (!Scalar::is_zero(other)).then(|| self / other)
    }
}

/// Rejects NaN and infinities.
pub fn checked_f64(x: f64) -> Result<f64, ScalarError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(ScalarError::NonFinite)
    }
}

/// Rejects complex numbers with a NaN or infinite component.
pub fn checked_complex(z: Complex64) -> Result<Complex64, ScalarError> {
    if z.is_finite() {
        Ok(z)
    } else {
        Err(ScalarError::NonFinite)
    }
}
