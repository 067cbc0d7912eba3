use std::collections::HashMap;

use ncalg::{Bracketing, LieSeries, NCSeries, Word};
use scalars::{Rational, Scalar, Value};

use crate::error::TangentError;

/// Tangential derivation `u = (u_1, …, u_k)` of the free Lie algebra on `k`
/// generators, acting by `u(X_i) = [X_i, u_i]`.
///
/// Components are stored through their associative embedding and are kept in
/// the gauge where `u_i` has no single-letter `X_i` term, which makes the
/// representation faithful.
#[derive(Clone, Debug, PartialEq)]
pub struct TDerElem<S> {
    k: usize,
    n: usize,
    comps: Vec<NCSeries<S>>,
}

impl<S: Scalar> TDerElem<S> {
    pub fn zero(k: usize, n: usize) -> Self {
        TDerElem {
            k,
            n,
            comps: vec![NCSeries::zero(k, n); k],
        }
    }

    /// Builds an element from Lie components, restoring the gauge.
    pub fn from_components(comps: &[LieSeries<S>]) -> Result<Self, TangentError> {
        let k = comps.len();
        if k == 0 {
            return Err(TangentError::Arity(0, 0));
        }
        let n = comps[0].order();
        for c in comps {
            if c.alphabet() != k {
                return Err(TangentError::Arity(k, c.alphabet()));
            }
            if c.order() != n {
                return Err(TangentError::Order(n, c.order()));
            }
        }
        Ok(Self::from_nc_unchecked(
            comps.iter().map(|c| c.to_nc()).collect(),
        ))
    }

    /// Builds an element from associative series that are Lie by
    /// construction; the gauge is restored.
    pub fn from_nc_unchecked(comps: Vec<NCSeries<S>>) -> Self {
        let k = comps.len();
        let n = comps[0].order();
        let mut u = TDerElem { k, n, comps };
        u.fix_gauge();
        u
    }

    /// Image of the Drinfeld–Kohno generator `t_ij`: `X_j` in slot `i`,
    /// `X_i` in slot `j`, zero elsewhere.
    pub fn tk_generator(i: usize, j: usize, k: usize, n: usize) -> Result<Self, TangentError> {
        for idx in [i, j] {
            if idx == 0 || idx > k {
                return Err(TangentError::Index {
                    index: idx,
                    arity: k,
                });
            }
        }
        if i == j {
            return Err(TangentError::Index { index: i, arity: k });
        }
        let mut u = Self::zero(k, n);
        u.comps[i - 1] = NCSeries::gen(k, n, j);
        u.comps[j - 1] = NCSeries::gen(k, n, i);
        Ok(u)
    }

    /// `c = Σ_{i<j} t_ij`.
    pub fn central_element(k: usize, n: usize) -> Self {
        let mut c = Self::zero(k, n);
        for i in 1..=k {
            for j in (i + 1)..=k {
                c = c.add(&Self::tk_generator(i, j, k, n).expect("valid indices"));
            }
        }
        c
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn component_nc(&self, i: usize) -> &NCSeries<S> {
        &self.comps[i - 1]
    }

    pub fn components_nc(&self) -> &[NCSeries<S>] {
        &self.comps
    }

    pub fn components(&self) -> Vec<LieSeries<S>> {
        self.comps.iter().map(LieSeries::from_nc_exact).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn max_abs(&self) -> f64 {
        self.comps.iter().map(|c| c.max_abs()).fold(0.0, f64::max)
    }

    /// Largest coefficient difference.
    pub fn distance(&self, other: &Self) -> f64 {
        self.sub(other).max_abs()
    }

    pub fn map<R: Scalar>(&self, f: impl Fn(&S) -> R) -> TDerElem<R> {
        TDerElem {
            k: self.k,
            n: self.n,
            comps: self.comps.iter().map(|c| c.map(&f)).collect(),
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

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.sub(b))
    }

    pub fn neg(&self) -> Self {
        TDerElem {
            k: self.k,
            n: self.n,
            comps: self.comps.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        TDerElem {
            k: self.k,
            n: self.n,
            comps: self.comps.iter().map(|x| x.scale(c)).collect(),
        }
    }

    pub fn scale_q(&self, c: &Rational) -> Self {
        TDerElem {
            k: self.k,
            n: self.n,
            comps: self.comps.iter().map(|x| x.scale_q(c)).collect(),
        }
    }

    /// Keeps component degrees `≤ m`.
    pub fn truncated(&self, m: usize) -> Self {
        TDerElem {
            k: self.k,
            n: self.n,
            comps: self.comps.iter().map(|x| x.truncated(m)).collect(),
        }
    }

    /// The same element at another truncation order.
    pub fn with_order(&self, n: usize) -> Self {
        TDerElem {
            k: self.k,
            n,
            comps: self.comps.iter().map(|x| x.with_order(n)).collect(),
        }
    }

    /// `u(X_i) = [X_i, u_i]`, as series of order `m` (use `m = N + 1` to keep
    /// the full action of an order-`N` element).
    pub fn generator_images(&self, m: usize) -> Vec<NCSeries<S>> {
        (1..=self.k)
            .map(|i| {
                let x = NCSeries::gen(self.k, m, i);
                x.bracket(&self.comps[i - 1].with_order(m))
            })
            .collect()
    }

    /// Derivation action on a series of any order over the same alphabet.
    pub fn apply_nc(&self, a: &NCSeries<S>) -> NCSeries<S> {
        a.apply_derivation(&self.generator_images(a.order()))
    }

    /// Derivation action on a Lie series.
    pub fn apply_lie(&self, l: &LieSeries<S>) -> LieSeries<S> {
        LieSeries::from_nc_exact(&self.apply_nc(&l.to_nc()))
    }

    /// `[u, v]_i = u(v_i) − v(u_i) + [u_i, v_i]`, then gauge-fixed.
    pub fn bracket(&self, other: &Self) -> Self {
        assert!(self.check_compatible(other).is_ok(), "tder shape mismatch");
        let ui = self.generator_images(self.n);
        let vi = other.generator_images(self.n);
        let comps = (0..self.k)
            .map(|i| {
                let a = self.comps[i].clone();
                let b = other.comps[i].clone();
                b.apply_derivation(&ui)
                    .sub(&a.apply_derivation(&vi))
                    .add(&a.bracket(&b))
            })
            .collect();
        Self::from_nc_unchecked(comps)
    }

    pub fn try_bracket(&self, other: &Self) -> Result<Self, TangentError> {
        self.check_compatible(other)?;
        Ok(self.bracket(other))
    }

    /// Largest coefficient of `Σ_i [X_i, u_i]`.
    pub fn sder_residual(&self) -> f64 {
        let mut s = NCSeries::zero(self.k, self.n + 1);
        for im in self.generator_images(self.n + 1) {
            s.add_assign_ref(&im);
        }
        s.max_abs()
    }

    /// Membership in the special derivations: `Σ_i [X_i, u_i] = 0`.
    pub fn is_sder(&self) -> bool {
        self.sder_residual() == 0.0
    }

    /// `u^{1,…,k}`: the same components in `k+1` generators, last slot zero.
    pub fn pad_right(&self) -> Self {
        let map: Vec<usize> = (1..=self.k).collect();
        let mut comps: Vec<NCSeries<S>> = self
            .comps
            .iter()
            .map(|c| c.relabel(self.k + 1, &map))
            .collect();
        comps.push(NCSeries::zero(self.k + 1, self.n));
        Self::from_nc_unchecked(comps)
    }

    /// `u^{2,…,k+1}`: first slot zero, components with `X_i ↦ X_{i+1}`.
    pub fn pad_left(&self) -> Self {
        let map: Vec<usize> = (2..=self.k + 1).collect();
        let mut comps = vec![NCSeries::zero(self.k + 1, self.n)];
        comps.extend(self.comps.iter().map(|c| c.relabel(self.k + 1, &map)));
        Self::from_nc_unchecked(comps)
    }

    /// `u^{1,…,i i+1,…,k+1}`: substitute `X_i ↦ X_i + X_{i+1}` (shifting
    /// later generators up) and repeat component `i`.
    pub fn duplicate_slot(&self, i: usize) -> Result<Self, TangentError> {
        if i == 0 || i > self.k {
            return Err(TangentError::Index {
                index: i,
                arity: self.k,
            });
        }
        let imgs = coproduct_images(self.k, self.n, i);
        let mut comps = Vec::with_capacity(self.k + 1);
        for (j, c) in self.comps.iter().enumerate() {
            let s = c.substitute(&imgs)?;
            if j + 1 == i {
                comps.push(s.clone());
            }
            comps.push(s);
        }
        Ok(Self::from_nc_unchecked(comps))
    }

    /// Right action of a permutation, `u^σ(a) = (u(a^σ))^{σ⁻¹}` with
    /// `a^σ(X_1,…,X_k) = a(X_{σ(1)},…,X_{σ(k)})`. `sigma` is one-line
    /// notation, `sigma[i-1] = σ(i)`.
    pub fn sym_action(&self, sigma: &[usize]) -> Result<Self, TangentError> {
        let inv = inverse_permutation(sigma, self.k)?;
        let comps = (0..self.k)
            .map(|i| self.comps[sigma[i] - 1].relabel(self.k, &inv))
            .collect();
        Ok(Self::from_nc_unchecked(comps))
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "arity": self.k,
            "order": self.n,
            "components": self.components().iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, TangentError> {
        let comps = v
            .get("components")
            .and_then(|c| c.as_array())
            .ok_or_else(|| TangentError::Json("missing \"components\"".into()))?;
        let lie: Vec<LieSeries<S>> = comps
            .iter()
            .map(LieSeries::from_json)
            .collect::<Result<_, _>>()?;
        Self::from_components(&lie)
    }

    fn fix_gauge(&mut self) {
        for i in 0..self.k {
            if self.n >= 1 {
                self.comps[i].degree_slice_mut(1)[i] = S::zero();
            }
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&NCSeries<S>, &NCSeries<S>) -> NCSeries<S>) -> Self {
        assert!(self.check_compatible(other).is_ok(), "tder shape mismatch");
        TDerElem {
            k: self.k,
            n: self.n,
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

/// Images `X_j ↦ X_j` (j < i), `X_i ↦ X_i + X_{i+1}`, `X_j ↦ X_{j+1}` (j > i)
/// in `k+1` generators.
pub(crate) fn coproduct_images<S: Scalar>(k: usize, n: usize, i: usize) -> Vec<NCSeries<S>> {
    (1..=k)
        .map(|j| {
            if j < i {
                NCSeries::gen(k + 1, n, j)
            } else if j == i {
                NCSeries::gen(k + 1, n, i).add(&NCSeries::gen(k + 1, n, i + 1))
            } else {
                NCSeries::gen(k + 1, n, j + 1)
            }
        })
        .collect()
}

pub(crate) fn inverse_permutation(sigma: &[usize], k: usize) -> Result<Vec<usize>, TangentError> {
    if sigma.len() != k {
        return Err(TangentError::Permutation(k));
    }
    let mut inv = vec![0; k];
    for (i, &s) in sigma.iter().enumerate() {
        if s == 0 || s > k || inv[s - 1] != 0 {
            return Err(TangentError::Permutation(k));
        }
        inv[s - 1] = i + 1;
    }
    Ok(inv)
}

/// Evaluates a Lie series in `m` letters on `m` tangential derivations,
/// reading each Lyndon basis element as its bracketing in tder.
pub fn lie_eval<S: Scalar>(
    l: &LieSeries<S>,
    images: &[TDerElem<S>],
) -> Result<TDerElem<S>, TangentError> {
    if images.len() != l.alphabet() {
        return Err(TangentError::Arity(l.alphabet(), images.len()));
    }
    for im in images {
        images[0].check_compatible(im)?;
    }
    let mut memo: HashMap<Word, TDerElem<S>> = HashMap::new();
    let mut out = TDerElem::zero(images[0].k, images[0].n);
    for (w, b, c) in l.terms() {
        if w.len() > images[0].n {
            continue;
        }
        let v = eval_bracketing(&b, images, &mut memo).1;
        out = out.add(&v.scale(&c));
    }
    Ok(out)
}

pub(crate) fn eval_bracketing<S: Scalar>(
    b: &Bracketing,
    images: &[TDerElem<S>],
    memo: &mut HashMap<Word, TDerElem<S>>,
) -> (Word, TDerElem<S>) {
    match b {
        Bracketing::Letter(a) => (vec![*a], images[*a as usize - 1].clone()),
        Bracketing::Bracket(l, r) => {
            let (wl, vl) = eval_bracketing(l, images, memo);
            let (wr, vr) = eval_bracketing(r, images, memo);
            let mut w = wl;
            w.extend(wr);
            if let Some(v) = memo.get(&w) {
                return (w, v.clone());
            }
            let v = vl.bracket(&vr);
            memo.insert(w.clone(), v.clone());
            (w, v)
        }
    }
}

/// Solves `[X_x, a] = t` for `a` (zero constant term, no pure `X_x^m` words)
/// assuming `t` lies in the image of `ad(X_x)`; `t` has order `N+1` and the
/// result order `N`.
///
/// For `v = w X^m` with `w` not ending in `X`, the solution is
/// `a(v) = Σ_{j=0}^{m} t(X^{j+1} w X^{m−j})`.
pub(crate) fn solve_ad<S: Scalar>(x: usize, t: &NCSeries<S>, n: usize) -> NCSeries<S> {
    let k = t.alphabet();
    let xl = x as u8;
    let mut a = NCSeries::zero(k, n);
    for d in 1..=n.min(t.order().saturating_sub(1)) {
        let src = t.degree_slice(d + 1);
        let dst = a.degree_slice_mut(d);
        for (idx, slot) in dst.iter_mut().enumerate() {
            let v = ncalg::index_word(idx, d, k);
            let m = v.iter().rev().take_while(|&&c| c == xl).count();
            if m == d {
                continue;
            }
            let w = &v[..d - m];
            let mut acc = S::zero();
            for j in 0..=m {
                let mut word = vec![xl; j + 1];
                word.extend_from_slice(w);
                word.extend(std::iter::repeat(xl).take(m - j));
                let c = &src[ncalg::word_index(&word, k)];
                if !c.is_zero() {
                    acc += c.clone();
                }
            }
            *slot = acc;
        }
    }
    a
}
