use ncalg::NCSeries;
use scalars::{Rational, Scalar, Value};

use crate::error::TangentError;
use crate::tder::{coproduct_images, inverse_permutation, solve_ad, TDerElem};

/// Tangential automorphism `X_i ↦ g_i⁻¹ X_i g_i` of the completed free Lie
/// algebra, with unipotent `g_i` known up to word length `N`.
///
/// The action on generators is then known up to degree `N + 1`, and two
/// elements are equal when these images agree. Elements produced by
/// [`exp_tder`] use the representative `g_i = exp(a_i)` where `a_i` has no
/// pure `X_i`-power terms.
#[derive(Clone, Debug, PartialEq)]
pub struct TAutElem<S> {
    k: usize,
    n: usize,
    g: Vec<NCSeries<S>>,
}

impl<S: Scalar> TAutElem<S> {
    pub fn identity(k: usize, n: usize) -> Self {
        TAutElem {
            k,
            n,
            g: vec![NCSeries::one(k, n); k],
        }
    }

    /// Wraps conjugating series `g_i`; each needs constant term 1.
    pub fn from_components(g: Vec<NCSeries<S>>) -> Result<Self, TangentError> {
        let k = g.len();
        if k == 0 {
            return Err(TangentError::Arity(0, 0));
        }
        let n = g[0].order();
        for (i, gi) in g.iter().enumerate() {
            if gi.alphabet() != k {
                return Err(TangentError::Arity(k, gi.alphabet()));
            }
            if gi.order() != n {
                return Err(TangentError::Order(n, gi.order()));
            }
            if gi.constant_term() != S::one() {
                return Err(TangentError::NotUnipotent(i + 1));
            }
        }
        Ok(TAutElem { k, n, g })
    }

    /// The automorphism with prescribed generator images `X_i + …` of
    /// order `N + 1`, assumed to be conjugates of the generators.
    pub fn from_generator_images(images: &[NCSeries<S>]) -> Result<Self, TangentError> {
        let k = images.len();
        if k == 0 {
            return Err(TangentError::Arity(0, 0));
        }
        let m = images[0].order();
        if m == 0 {
            return Err(TangentError::Order(1, 0));
        }
        let mut g = Vec::with_capacity(k);
        for (i, im) in images.iter().enumerate() {
            if im.alphabet() != k {
                return Err(TangentError::Arity(k, im.alphabet()));
            }
            if im.order() != m {
                return Err(TangentError::Order(m, im.order()));
            }
            g.push(conjugator_for(i + 1, im, m - 1));
        }
        Ok(TAutElem { k, n: m - 1, g })
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[NCSeries<S>] {
        &self.g
    }

    pub fn component(&self, i: usize) -> &NCSeries<S> {
        &self.g[i - 1]
    }

    pub fn map<R: Scalar>(&self, f: impl Fn(&S) -> R) -> TAutElem<R> {
        TAutElem {
            k: self.k,
            n: self.n,
            g: self.g.iter().map(|c| c.map(&f)).collect(),
        }
    }

    pub fn check_compatible(&self, other: &Self) -> Result<(), TangentError> {
        if self.k != other.k {
            return Err(TangentError::Arity(self.k, other.k));
        }
        if self.n != other.n {
            return Err(TangentError::Order(self.n, other.n));
        }
        Ok(())
    }

    /// `g_i⁻¹ X_i g_i` as series of order `m`; exact for `m ≤ N + 1`.
    pub fn images_at(&self, m: usize) -> Vec<NCSeries<S>> {
        (1..=self.k)
            .map(|i| {
                let g = self.g[i - 1].with_order(m);
                let gi = g.inverse_unipotent().expect("unipotent by construction");
                gi.mul(&NCSeries::gen(self.k, m, i)).mul(&g)
            })
            .collect()
    }

    /// Images of the generators at order `N + 1`.
    pub fn generator_images(&self) -> Vec<NCSeries<S>> {
        self.images_at(self.n + 1)
    }

    /// Action on a series over the same alphabet, computed at the series'
    /// own order.
    pub fn act(&self, a: &NCSeries<S>) -> Result<NCSeries<S>, TangentError> {
        if a.alphabet() != self.k {
            return Err(TangentError::Arity(self.k, a.alphabet()));
        }
        Ok(a.substitute(&self.images_at(a.order()))?)
    }

    /// Largest coefficient difference of the generator images.
    pub fn distance(&self, other: &Self) -> f64 {
        self.generator_images()
            .iter()
            .zip(other.generator_images())
            .map(|(a, b)| a.sub(&b).max_abs())
            .fold(0.0, f64::max)
    }

    /// Equality as automorphisms, up to `tol` on the generator images.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.check_compatible(other).is_ok() && self.distance(other) <= tol
    }

    /// `(g ∘ h)(a) = g(h(a))`, realised by `(g∘h)_i = g_i · g(h_i)`.
    pub fn compose(&self, other: &Self) -> Result<Self, TangentError> {
        self.check_compatible(other)?;
        let imgs = self.images_at(self.n);
        let g = self
            .g
            .iter()
            .zip(&other.g)
            .map(|(gi, hi)| Ok(gi.mul(&hi.substitute(&imgs)?)))
            .collect::<Result<Vec<_>, TangentError>>()?;
        Ok(TAutElem {
            k: self.k,
            n: self.n,
            g,
        })
    }

    pub fn inverse(&self) -> Result<Self, TangentError> {
        exp_tder(&log_taut(self)?.neg())
    }

    /// `g^{1,…,k}` in `k+1` generators.
    pub fn pad_right(&self) -> Self {
        let map: Vec<usize> = (1..=self.k).collect();
        let mut g: Vec<NCSeries<S>> = self.g.iter().map(|c| c.relabel(self.k + 1, &map)).collect();
        g.push(NCSeries::one(self.k + 1, self.n));
        TAutElem {
            k: self.k + 1,
            n: self.n,
            g,
        }
    }

    /// `g^{2,…,k+1}` in `k+1` generators.
    pub fn pad_left(&self) -> Self {
        let map: Vec<usize> = (2..=self.k + 1).collect();
        let mut g = vec![NCSeries::one(self.k + 1, self.n)];
        g.extend(self.g.iter().map(|c| c.relabel(self.k + 1, &map)));
        TAutElem {
            k: self.k + 1,
            n: self.n,
            g,
        }
    }

    /// Coproduct in slot `i`: substitute `X_i ↦ X_i + X_{i+1}` and repeat
    /// component `i`.
    pub fn duplicate_slot(&self, i: usize) -> Result<Self, TangentError> {
        if i == 0 || i > self.k {
            return Err(TangentError::Index {
                index: i,
                arity: self.k,
            });
        }
        let imgs = coproduct_images(self.k, self.n, i);
        let mut g = Vec::with_capacity(self.k + 1);
        for (j, c) in self.g.iter().enumerate() {
            let s = c.substitute(&imgs)?;
            if j + 1 == i {
                g.push(s.clone());
            }
            g.push(s);
        }
        Ok(TAutElem {
            k: self.k + 1,
            n: self.n,
            g,
        })
    }

    /// Permutation action, compatible with [`TDerElem::sym_action`].
    pub fn sym_action(&self, sigma: &[usize]) -> Result<Self, TangentError> {
        let inv = inverse_permutation(sigma, self.k)?;
        let g = (0..self.k)
            .map(|i| self.g[sigma[i] - 1].relabel(self.k, &inv))
            .collect();
        Ok(TAutElem {
            k: self.k,
            n: self.n,
            g,
        })
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "arity": self.k,
            "order": self.n,
            "conjugators": self.g.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, TangentError> {
        let g = v
            .get("conjugators")
            .and_then(|c| c.as_array())
            .ok_or_else(|| TangentError::Json("missing \"conjugators\"".into()))?;
        let g: Vec<NCSeries<S>> = g
            .iter()
            .map(NCSeries::from_json)
            .collect::<Result<_, _>>()?;
        Self::from_components(g)
    }
}

/// Exponential of a tangential derivation.
///
/// The generator images `I_i = Σ_n uⁿ(X_i)/n!` are computed at order
/// `N + 1`; then `g_i` solves `X_i g_i = g_i I_i` degree by degree, with no
/// pure `X_i`-power terms. That solution is the group-like `exp(a_i)`.
pub fn exp_tder<S: Scalar>(u: &TDerElem<S>) -> Result<TAutElem<S>, TangentError> {
    let k = u.arity();
    let n = u.order();
    let m = n + 1;
    let gens = u.generator_images(m);
    let mut g = Vec::with_capacity(k);
    for i in 1..=k {
        let mut term = NCSeries::gen(k, m, i);
        let mut img = term.clone();
        for p in 1..=n {
            term = term.apply_derivation(&gens).scale_q(&inv_q(p));
            if term.is_zero() {
                break;
            }
            img.add_assign_ref(&term);
        }
        g.push(img);
    }
    TAutElem::from_generator_images(&g)
}

/// Solves `X_i g = g I` for `g` of order `n` with constant term 1, given
/// `I = X_i + …` of order `n + 1`.
fn conjugator_for<S: Scalar>(i: usize, img: &NCSeries<S>, n: usize) -> NCSeries<S> {
    let k = img.alphabet();
    let mut g = NCSeries::one(k, n);
    for d in 1..=n {
        // degree d+1 part of Σ_{j<d} g^{(j)} I^{(d+1-j)}
        let mut rhs = NCSeries::zero(k, n + 1);
        for j in 0..d {
            let gj = g.homogeneous_part(j).with_order(n + 1);
            let ij = img.homogeneous_part(d + 1 - j);
            rhs.add_assign_ref(&gj.mul(&ij));
        }
        let step = solve_ad(i, &rhs, n);
        let src = step.degree_slice(d).to_vec();
        g.degree_slice_mut(d).clone_from_slice(&src);
    }
    g
}

/// Logarithm of a tangential automorphism, `log g = Σ (−1)^{m+1} (g − 1)^m / m`
/// as an operator, read off from its values on the generators.
pub fn log_taut<S: Scalar>(g: &TAutElem<S>) -> Result<TDerElem<S>, TangentError> {
    let k = g.arity();
    let n = g.order();
    for (i, gi) in g.components().iter().enumerate() {
        if gi.constant_term() != S::one() {
            return Err(TangentError::NotUnipotent(i + 1));
        }
    }
    let imgs = g.generator_images();
    let mut comps = Vec::with_capacity(k);
    for i in 1..=k {
        let mut pw = NCSeries::gen(k, n + 1, i);
        let mut acc = NCSeries::zero(k, n + 1);
        for m in 1..=n {
            pw = pw.substitute(&imgs)?.sub(&pw);
            if pw.is_zero() {
                break;
            }
            let c = inv_q(m);
            let c = if m % 2 == 1 { c } else { -c };
            acc.add_assign_ref(&pw.scale_q(&c));
        }
        comps.push(solve_ad(i, &acc, n));
    }
    Ok(TDerElem::from_nc_unchecked(comps))
}

fn inv_q(m: usize) -> Rational {
    Rational::new(1.into(), (m as i64).into())
}
