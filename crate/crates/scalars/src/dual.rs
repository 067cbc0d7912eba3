use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde_json::Value;

use crate::{Rational, Scalar, ScalarError};

/// `primal + tangent·ε` with `ε² = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Dual<S> {
    pub primal: S,
    pub tangent: S,
}

impl<S: Scalar> Dual<S> {
    pub fn new(primal: S, tangent: S) -> Self {
        Dual { primal, tangent }
    }

    /// The infinitesimal `ε`.
    pub fn eps() -> Self {
        Dual {
            primal: S::zero(),
            tangent: S::one(),
        }
    }

    pub fn real(primal: S) -> Self {
        Dual {
            primal,
            tangent: S::zero(),
        }
    }
}

impl<S: Scalar> From<S> for Dual<S> {
    fn from(s: S) -> Self {
        Dual::real(s)
    }
}

impl<S: Scalar> Add for Dual<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Dual {
            primal: self.primal + rhs.primal,
            tangent: self.tangent + rhs.tangent,
        }
    }
}

impl<S: Scalar> AddAssign for Dual<S> {
    fn add_assign(&mut self, rhs: Self) {
        self.primal += rhs.primal;
        self.tangent += rhs.tangent;
    }
}

impl<S: Scalar> Sub for Dual<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Dual {
            primal: self.primal - rhs.primal,
            tangent: self.tangent - rhs.tangent,
        }
    }
}

impl<S: Scalar> SubAssign for Dual<S> {
    fn sub_assign(&mut self, rhs: Self) {
        self.primal -= rhs.primal;
        self.tangent -= rhs.tangent;
    }
}

impl<S: Scalar> Neg for Dual<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual {
            primal: -self.primal,
            tangent: -self.tangent,
        }
    }
}

impl<S: Scalar> Mul for Dual<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut tangent = self.primal.clone() * rhs.tangent;
        tangent.add_mul(&self.tangent, &rhs.primal);
        Dual {
            primal: self.primal * rhs.primal,
            tangent,
        }
    }
}

impl<S: Scalar> Scalar for Dual<S> {
    fn zero() -> Self {
        Dual::real(S::zero())
    }
    fn one() -> Self {
        Dual::real(S::one())
    }
    fn is_zero(&self) -> bool {
        self.primal.is_zero() && self.tangent.is_zero()
    }
    fn from_rational(x: &Rational) -> Self {
        Dual::real(S::from_rational(x))
    }
    fn mag(&self) -> f64 {
        self.primal.mag().max(self.tangent.mag())
    }
    fn to_json(&self) -> Value {
        serde_json::json!({ "primal": self.primal.to_json(), "tangent": self.tangent.to_json() })
    }
    fn from_json(v: &Value) -> Result<Self, ScalarError> {
        let get = |k: &str| {
            v.get(k)
                .ok_or_else(|| ScalarError::Json(format!("dual number without \"{k}\": {v}")))
        };
        Ok(Dual {
            primal: S::from_json(get("primal")?)?,
            tangent: S::from_json(get("tangent")?)?,
        })
    }
    fn scale_q(&self, x: &Rational) -> Self {
        Dual {
            primal: self.primal.scale_q(x),
            tangent: self.tangent.scale_q(x),
        }
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        self.primal.add_mul(&a.primal, &b.primal);
        self.tangent.add_mul(&a.primal, &b.tangent);
        self.tangent.add_mul(&a.tangent, &b.primal);
    }
    fn is_finite(&self) -> bool {
        self.primal.is_finite() && self.tangent.is_finite()
    }
    /// `(a + bε)/(c + dε) = a/c + (b/c − a d/c²)ε`; needs `c` invertible.
    fn checked_div(&self, other: &Self) -> Option<Self> {
        let primal = self.primal.checked_div(&other.primal)?;
        let num = self.tangent.clone() - primal.clone() * other.tangent.clone();
        let tangent = num.checked_div(&other.primal)?;
        Some(Dual { primal, tangent })
    }
}
