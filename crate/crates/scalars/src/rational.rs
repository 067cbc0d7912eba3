use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::{Scalar, ScalarError};

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// The rational `n / d`. Panics when `d == 0`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Nearest double. Falls back to a digit-wise quotient when numerator or
/// denominator overflow `f64`.
pub fn rational_to_f64(x: &Rational) -> f64 {
    if let Some(v) = x.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let n = x.numer().to_string();
    let d = x.denom().to_string();
    let shift = n.len().max(d.len()).saturating_sub(300) as i32;
    let cut = |s: &str| -> f64 {
        let keep = s.len() as i32 - shift;
        if keep <= 0 {
            0.0
        } else {
            s[..keep as usize].parse::<f64>().unwrap_or(0.0)
        }
    };
    cut(&n) / cut(&d)
}

/// JSON form `[numerator, denominator]`, both as decimal strings.
pub fn rational_to_json(x: &Rational) -> Value {
    Value::Array(vec![
        Value::String(x.numer().to_string()),
        Value::String(x.denom().to_string()),
    ])
}

pub fn rational_from_json(v: &Value) -> Result<Rational, ScalarError> {
    let bad = || ScalarError::Json(format!("expected [num, den] strings, got {v}"));
    let a = v.as_array().ok_or_else(bad)?;
    if a.len() != 2 {
        return Err(bad());
    }
    let parse = |x: &Value| -> Result<BigInt, ScalarError> {
        match x {
            Value::String(s) => s.parse::<BigInt>().map_err(|_| bad()),
            Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(bad),
            _ => Err(bad()),
        }
    };
    let n = parse(&a[0])?;
    let d = parse(&a[1])?;
    if d.is_zero() {
        return Err(ScalarError::Json("zero denominator".into()));
    }
    Ok(Rational::new(n, d))
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational(x: &Rational) -> Self {
        x.clone()
    }
    fn mag(&self) -> f64 {
        rational_to_f64(&self.abs())
    }
    fn to_json(&self) -> Value {
        rational_to_json(self)
    }
    fn from_json(v: &Value) -> Result<Self, ScalarError> {
        rational_from_json(v)
    }
    fn scale_q(&self, x: &Rational) -> Self {
        self * x
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        if !Zero::is_zero(a) && !Zero::is_zero(b) {
            *self += a * b;
        }
    }
    fn checked_div(&self, other: &Self) -> Option<Self> {
        (!Zero::is_zero(other)).then(|| self / other)
    }
}
