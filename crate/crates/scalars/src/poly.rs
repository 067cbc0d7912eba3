use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde_json::Value;

use crate::{qi, Rational, Scalar, ScalarError};

/// Univariate polynomial in `t` with coefficients in a base ring, lowest
/// power first. Trailing zero coefficients are always trimmed, so the zero
/// polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyInT<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> PolyInT<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyInT { coeffs }
    }

    /// Like [`PolyInT::new`], but rejects polynomials whose degree exceeds
    /// `bound`.
    pub fn bounded(coeffs: Vec<S>, bound: usize) -> Result<Self, ScalarError> {
        let p = Self::new(coeffs);
        match p.degree() {
            Some(d) if d > bound => Err(ScalarError::DegreeBound { degree: d, bound }),
            _ => Ok(p),
        }
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Self::new(vec![S::zero(), S::one()])
    }

    /// `(t (1 - t))^n`, the weight attached to the generator of degree `2n+1`.
    pub fn bump(n: usize) -> Self {
        let base = Self::new(vec![S::zero(), S::one(), -S::one()]);
        let mut out = Self::constant(S::one());
        for _ in 0..n {
            out = out * base.clone();
        }
        out
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    /// Horner evaluation at a point of any ring containing the coefficients.
    pub fn eval_in<R>(&self, x: &R) -> R
    where
        R: Scalar,
        S: Into<R>,
    {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone().into();
        }
        acc
    }

    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn eval_q(&self, x: &Rational) -> S {
        self.eval(&S::from_rational(x))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale_q(&qi(i as i64)))
                .collect(),
        )
    }

    /// The antiderivative vanishing at `t = 0`.
    pub fn antiderivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(S::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push(c.scale_q(&Rational::new(1.into(), (i as i64 + 1).into())));
        }
        Self::new(out)
    }

    /// The antiderivative vanishing at `t = a`.
    pub fn antiderivative_from(&self, a: &Rational) -> Self {
        let p = self.antiderivative();
        let shift = p.eval_q(a);
        p - Self::constant(shift)
    }

    pub fn map<R: Scalar>(&self, f: impl Fn(&S) -> R) -> PolyInT<R> {
        PolyInT::new(self.coeffs.iter().map(f).collect())
    }
}

/// `∫_a^b p(s) ds` by the power rule.
pub fn poly_definite_integral<S: Scalar>(p: &PolyInT<S>, a: &Rational, b: &Rational) -> S {
    let anti = p.antiderivative();
    anti.eval_q(b) - anti.eval_q(a)
}

/// `∫_a^b outer(s1) (∫_a^{s1} inner(s2) ds2) ds1`.
pub fn poly_multiply_integrate_nested<S: Scalar>(
    outer: &PolyInT<S>,
    inner: &PolyInT<S>,
    a: &Rational,
    b: &Rational,
) -> S {
    let inner_anti = inner.antiderivative_from(a);
    poly_definite_integral(&(outer.clone() * inner_anti), a, b)
}

impl<S: Scalar> Add for PolyInT<S> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<S: Scalar> AddAssign for PolyInT<S> {
    fn add_assign(&mut self, rhs: Self) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), S::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
        *self = Self::new(std::mem::take(&mut self.coeffs));
    }
}

impl<S: Scalar> Sub for PolyInT<S> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl<S: Scalar> SubAssign for PolyInT<S> {
    fn sub_assign(&mut self, rhs: Self) {
        *self += -rhs;
    }
}

impl<S: Scalar> Neg for PolyInT<S> {
    type Output = Self;
    fn neg(self) -> Self {
        PolyInT {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<S: Scalar> Mul for PolyInT<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return PolyInT { coeffs: Vec::new() };
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j].add_mul(a, b);
            }
        }
        Self::new(out)
    }
}

impl<S: Scalar> Scalar for PolyInT<S> {
    fn zero() -> Self {
        PolyInT { coeffs: Vec::new() }
    }
    fn one() -> Self {
        Self::constant(S::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_rational(x: &Rational) -> Self {
        Self::constant(S::from_rational(x))
    }
    fn mag(&self) -> f64 {
        self.coeffs.iter().map(|c| c.mag()).fold(0.0, f64::max)
    }
    fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(|c| c.to_json()).collect())
    }
    fn from_json(v: &Value) -> Result<Self, ScalarError> {
        let a = v
            .as_array()
            .ok_or_else(|| ScalarError::Json(format!("expected coefficient array, got {v}")))?;
        Ok(Self::new(
            a.iter().map(S::from_json).collect::<Result<_, _>>()?,
        ))
    }
    fn scale_q(&self, x: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.scale_q(x)).collect())
    }
    fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }
    /// Division by a nonzero constant polynomial.
    fn checked_div(&self, other: &Self) -> Option<Self> {
        if other.coeffs.len() != 1 {
            return None;
        }
        let c = &other.coeffs[0];
        let out = self
            .coeffs
            .iter()
            .map(|a| a.checked_div(c))
            .collect::<Option<Vec<_>>>()?;
        Some(Self::new(out))
    }
}
