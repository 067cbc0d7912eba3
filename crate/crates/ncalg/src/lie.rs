//! Free Lie algebra elements in Lyndon coordinates.

use scalars::{Scalar, Value};

use crate::error::NcError;
use crate::lyndon::{lyndon_table, Bracketing};
use crate::series::{inv, NCSeries};
use crate::word::{pow, Word};

/// Truncated element of the free Lie algebra on `k` generators.
///
/// `coords[d]` lists the coefficients of the Lyndon basis of degree `d`, in
/// the order of [`crate::lyndon::LyndonTable::words`]; `coords[0]` is empty.
#[derive(Clone, Debug, PartialEq)]
pub struct LieSeries<S> {
    k: usize,
    n: usize,
    coords: Vec<Vec<S>>,
}

impl<S: Scalar> LieSeries<S> {
    pub fn zero(k: usize, n: usize) -> Self {
        let coords = (0..=n)
            .map(|d| {
                if d == 0 {
                    Vec::new()
                } else {
                    vec![S::zero(); lyndon_table(k, d).len()]
                }
            })
            .collect();
        LieSeries { k, n, coords }
    }

    pub fn gen(k: usize, n: usize, i: usize) -> Self {
        let mut s = Self::zero(k, n);
        if n >= 1 {
            s.coords[1][i - 1] = S::one();
        }
        s
    }

    pub fn alphabet(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn degree_coords(&self, d: usize) -> &[S] {
        &self.coords[d]
    }

    pub fn degree_coords_mut(&mut self, d: usize) -> &mut [S] {
        &mut self.coords[d]
    }

    /// Coefficient of the basis element indexed by a Lyndon word.
    pub fn coeff(&self, w: &[u8]) -> Option<S> {
        if w.is_empty() || w.len() > self.n {
            return None;
        }
        let t = lyndon_table(self.k, w.len());
        t.position_of(w).map(|p| self.coords[w.len()][p].clone())
    }

    pub fn set_coeff(&mut self, w: &[u8], c: S) -> Result<(), NcError> {
        if w.is_empty() || w.len() > self.n {
            return Err(NcError::WordTooLong {
                len: w.len(),
                order: self.n,
            });
        }
        let t = lyndon_table(self.k, w.len());
        let p = t
            .position_of(w)
            .ok_or_else(|| NcError::Json(format!("{w:?} is not a Lyndon word")))?;
        self.coords[w.len()][p] = c;
        Ok(())
    }

    /// Nonzero coordinates as `(Lyndon word, bracketing, coefficient)`.
    pub fn terms(&self) -> Vec<(Word, Bracketing, S)> {
        let mut out = Vec::new();
        for d in 1..=self.n {
            let t = lyndon_table(self.k, d);
            for (p, c) in self.coords[d].iter().enumerate() {
                if !c.is_zero() {
                    out.push((t.words[p].clone(), t.brackets[p].clone(), c.clone()));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|v| v.iter().all(|c| c.is_zero()))
    }

    pub fn max_abs(&self) -> f64 {
        self.coords
            .iter()
            .flat_map(|v| v.iter().map(|c| c.mag()))
            .fold(0.0, f64::max)
    }

    pub fn map<R: Scalar>(&self, f: impl Fn(&S) -> R) -> LieSeries<R> {
        LieSeries {
            k: self.k,
            n: self.n,
            coords: self
                .coords
                .iter()
                .map(|v| v.iter().map(&f).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c.clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn scale_q(&self, c: &scalars::Rational) -> Self {
        self.map(|x| x.scale_q(c))
    }

    /// Lie bracket, computed through the associative embedding.
    pub fn bracket(&self, other: &Self) -> Self {
        let a = self.to_nc();
        let b = other.to_nc();
        Self::from_nc_exact(&a.bracket(&b))
    }

    /// Keeps only degrees `≤ m`.
    pub fn truncated(&self, m: usize) -> Self {
        let mut s = self.clone();
        for d in (m + 1)..=self.n {
            s.coords[d].iter_mut().for_each(|c| *c = S::zero());
        }
        s
    }

    pub fn homogeneous_part(&self, d: usize) -> Self {
        let mut s = Self::zero(self.k, self.n);
        if d >= 1 && d <= self.n {
            s.coords[d] = self.coords[d].clone();
        }
        s
    }

    /// Embedding into the free associative algebra.
    pub fn to_nc(&self) -> NCSeries<S> {
        let mut out = NCSeries::zero(self.k, self.n);
        for d in 1..=self.n {
            let t = lyndon_table(self.k, d);
            let slot = out.degree_slice_mut(d);
            for (p, c) in self.coords[d].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for &(idx, m) in &t.expansions[p] {
                    slot[idx] += c.scale_q(&scalars::qi(m));
                }
            }
        }
        out
    }

    /// Reads off Lyndon coordinates of a series assumed to be Lie, and
    /// returns them with the largest magnitude of the non-Lie remainder.
    ///
    /// The expansion of each basis element starts with its own Lyndon word
    /// and otherwise contains only larger words, so the coordinates follow
    /// from forward substitution over the Lyndon words in increasing order.
    pub fn from_nc_with_residual(a: &NCSeries<S>) -> (Self, f64) {
        let k = a.alphabet();
        let n = a.order();
        let mut out = Self::zero(k, n);
        let mut residual = a.constant_term().mag();
        for d in 1..=n {
            let t = lyndon_table(k, d);
            let mut rem: Vec<S> = a.degree_slice(d).to_vec();
            for p in 0..t.len() {
                let lead = t.expansions[p][0].0;
                let c = rem[lead].clone();
                if c.is_zero() {
                    continue;
                }
                for &(idx, m) in &t.expansions[p] {
                    rem[idx] -= c.scale_q(&scalars::qi(m));
                }
                out.coords[d][p] = c;
            }
            residual = rem.iter().map(|c| c.mag()).fold(residual, f64::max);
        }
        (out, residual)
    }

    /// Coordinates of a series that is Lie by construction (no check).
    pub fn from_nc_exact(a: &NCSeries<S>) -> Self {
        Self::from_nc_with_residual(a).0
    }

    /// Coordinates of a Lie series; errors when some degree carries a
    /// non-Lie remainder above `tol` (use 0 for exact rings).
    pub fn from_nc(a: &NCSeries<S>, tol: f64) -> Result<Self, NcError> {
        let (out, _) = Self::from_nc_with_residual(a);
        let back = out.to_nc();
        for d in 0..=a.order() {
            let r = a
                .degree_slice(d)
                .iter()
                .zip(back.degree_slice(d))
                .map(|(x, y)| (x.clone() - y.clone()).mag())
                .fold(0.0, f64::max);
            if r > tol {
                return Err(NcError::NotLie {
                    degree: d,
                    residual: r,
                });
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .into_iter()
            .map(|(w, b, c)| {
                serde_json::json!({ "word": w, "bracket": b.render(self.k), "coeff": c.to_json() })
            })
            .collect();
        serde_json::json!({ "alphabet": self.k, "order": self.n, "basis": "lyndon", "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self, NcError> {
        let get_usize = |key: &str| {
            v.get(key)
                .and_then(|x| x.as_u64())
                .map(|x| x as usize)
                .ok_or_else(|| NcError::Json(format!("missing integer \"{key}\"")))
        };
        let k = get_usize("alphabet")?;
        let n = get_usize("order")?;
        let mut s = Self::zero(k, n);
        let terms = v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| NcError::Json("missing \"terms\"".into()))?;
        for t in terms {
            let w: Word = t
                .get("word")
                .and_then(|w| w.as_array())
                .ok_or_else(|| NcError::Json("term without word".into()))?
                .iter()
                .map(|a| a.as_u64().map(|a| a as u8))
                .collect::<Option<_>>()
                .ok_or_else(|| NcError::Json("letters must be integers".into()))?;
            crate::series::check_word(&w, k)?;
            let c = S::from_json(
                t.get("coeff")
                    .ok_or_else(|| NcError::Json("term without coeff".into()))?,
            )?;
            s.set_coeff(&w, c)?;
        }
        Ok(s)
    }

    fn zip(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        assert_eq!(
            (self.k, self.n),
            (other.k, other.n),
            "Lie series shape mismatch"
        );
        LieSeries {
            k: self.k,
            n: self.n,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
                .collect(),
        }
    }
}

/// Embedding of a Lie series into the free associative algebra.
pub fn lie_to_nc<S: Scalar>(l: &LieSeries<S>) -> NCSeries<S> {
    l.to_nc()
}

/// Dynkin–Specht–Wever projection: each word `w` of length `d` goes to
/// `(1/d)` times its left-iterated bracketing `[…[[w_1,w_2],w_3],…,w_d]`.
/// It restricts to the identity on Lie elements.
pub fn nc_project_lie<S: Scalar>(a: &NCSeries<S>) -> Result<LieSeries<S>, NcError> {
    if !a.constant_term().is_zero() {
        return Err(NcError::ConstantTerm { expected: "0" });
    }
    let k = a.alphabet();
    let n = a.order();
    let mut dyn_series = NCSeries::zero(k, n);
    for d in 1..=n {
        let r = left_iterated(a.degree_slice(d), d, k);
        let slot = dyn_series.degree_slice_mut(d);
        for (x, y) in slot.iter_mut().zip(r) {
            *x = y.scale_q(&inv(d));
        }
    }
    Ok(LieSeries::from_nc_exact(&dyn_series))
}

/// Homogeneous left-iterated bracketing map on a degree-`d` slice.
fn left_iterated<S: Scalar>(a: &[S], d: usize, k: usize) -> Vec<S> {
    if d == 1 {
        return a.to_vec();
    }
    let mut out = vec![S::zero(); pow(k, d)];
    let low = pow(k, d - 1);
    for x in 0..k {
        // right quotient by the letter x
        let quotient: Vec<S> = (0..low).map(|i| a[i * k + x].clone()).collect();
        if quotient.iter().all(|c| c.is_zero()) {
            continue;
        }
        let r = left_iterated(&quotient, d - 1, k);
        for (i, c) in r.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out[i * k + x] += c.clone();
            out[x * low + i] -= c.clone();
        }
    }
    out
}

/// Renders a word of a Lie or associative series.
pub fn render_word(w: &[u8], k: usize) -> String {
    crate::word::word_to_string(w, k)
}
