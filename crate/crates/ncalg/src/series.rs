use scalars::{qi, Rational, Scalar, Value};

use crate::error::NcError;
use crate::word::{index_word, pow, word_index, Word};

/// Truncated series in `k` noncommuting generators, dense by degree.
///
/// `deg[d]` holds the coefficients of all `k^d` words of length `d`, indexed
/// as in [`crate::word`]. Words longer than the order are never stored;
/// every operation drops them.
#[derive(Clone, Debug, PartialEq)]
pub struct NCSeries<S> {
    k: usize,
    n: usize,
    deg: Vec<Vec<S>>,
}

impl<S: Scalar> NCSeries<S> {
    pub fn zero(k: usize, n: usize) -> Self {
        assert!(k >= 1, "alphabet must be nonempty");
        let deg = (0..=n).map(|d| vec![S::zero(); pow(k, d)]).collect();
        NCSeries { k, n, deg }
    }

    pub fn one(k: usize, n: usize) -> Self {
        Self::constant(k, n, S::one())
    }

    pub fn constant(k: usize, n: usize, c: S) -> Self {
        let mut s = Self::zero(k, n);
        s.deg[0][0] = c;
        s
    }

    /// The generator `X_i` (1-based).
    pub fn gen(k: usize, n: usize, i: usize) -> Self {
        let mut s = Self::zero(k, n);
        assert!((1..=k).contains(&i), "generator {i} out of range 1..={k}");
        if n >= 1 {
            s.deg[1][i - 1] = S::one();
        }
        s
    }

    /// Single word with coefficient; silently zero when longer than `n`.
    pub fn monomial(k: usize, n: usize, w: &[u8], c: S) -> Self {
        let mut s = Self::zero(k, n);
        if w.len() <= n {
            s.deg[w.len()][word_index(w, k)] = c;
        }
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, S)>>(
        k: usize,
        n: usize,
        terms: I,
    ) -> Result<Self, NcError> {
        let mut s = Self::zero(k, n);
        for (w, c) in terms {
            check_word(&w, k)?;
            if w.len() <= n {
                s.deg[w.len()][word_index(&w, k)] += c;
            }
        }
        Ok(s)
    }

    pub fn alphabet(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn degree_slice(&self, d: usize) -> &[S] {
        &self.deg[d]
    }

    pub fn degree_slice_mut(&mut self, d: usize) -> &mut [S] {
        &mut self.deg[d]
    }

    pub fn coeff(&self, w: &[u8]) -> S {
        if w.len() > self.n {
            return S::zero();
        }
        self.deg[w.len()][word_index(w, self.k)].clone()
    }

    pub fn set_coeff(&mut self, w: &[u8], c: S) {
        if w.len() <= self.n {
            self.deg[w.len()][word_index(w, self.k)] = c;
        }
    }

    pub fn constant_term(&self) -> S {
        self.deg[0][0].clone()
    }

    /// Nonzero terms in order of length, then lexicographically.
    pub fn terms(&self) -> impl Iterator<Item = (Word, &S)> + '_ {
        self.deg.iter().enumerate().flat_map(move |(d, v)| {
            v.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(i, c)| (index_word(i, d, self.k), c))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.deg.iter().all(|v| v.iter().all(|c| c.is_zero()))
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.deg
            .iter()
            .flat_map(|v| v.iter().map(|c| c.mag()))
            .fold(0.0, f64::max)
    }

    /// Largest coefficient magnitude in word lengths `lo..=hi`.
    pub fn max_abs_in(&self, lo: usize, hi: usize) -> f64 {
        (lo..=hi.min(self.n))
            .flat_map(|d| self.deg[d].iter().map(|c| c.mag()))
            .fold(0.0, f64::max)
    }

    /// Lowest word length carrying a nonzero coefficient.
    pub fn min_degree(&self) -> Option<usize> {
        (0..=self.n).find(|&d| self.deg[d].iter().any(|c| !c.is_zero()))
    }

    pub fn is_finite(&self) -> bool {
        self.deg.iter().all(|v| v.iter().all(|c| c.is_finite()))
    }

    /// Only the words of length `d`.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        let mut s = Self::zero(self.k, self.n);
        if d <= self.n {
            s.deg[d] = self.deg[d].clone();
        }
        s
    }

    /// Same series viewed at another truncation order (padding or dropping).
    pub fn with_order(&self, n: usize) -> Self {
        let mut s = Self::zero(self.k, n);
        for d in 0..=n.min(self.n) {
            s.deg[d] = self.deg[d].clone();
        }
        s
    }

    /// Drops word lengths above `m` while keeping the declared order.
    pub fn truncated(&self, m: usize) -> Self {
        let mut s = self.clone();
        for d in (m + 1)..=self.n {
            s.deg[d].iter_mut().for_each(|c| *c = S::zero());
        }
        s
    }

    pub fn map<R: Scalar>(&self, f: impl Fn(&S) -> R) -> NCSeries<R> {
        NCSeries {
            k: self.k,
            n: self.n,
            deg: self
                .deg
                .iter()
                .map(|v| v.iter().map(&f).collect())
                .collect(),
        }
    }

    pub fn check_compatible(&self, other: &Self) -> Result<(), NcError> {
        if self.k != other.k {
            return Err(NcError::Alphabet(self.k, other.k));
        }
        if self.n != other.n {
            return Err(NcError::Order(self.n, other.n));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, NcError> {
        self.check_compatible(other)?;
        Ok(self.add(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, NcError> {
        self.check_compatible(other)?;
        Ok(self.mul(other))
    }

    /// Sum; panics on mismatched alphabets or orders (see [`Self::try_add`]).
    pub fn add(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut s = self.clone();
        s.add_assign_ref(other);
        s
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        self.assert_compatible(other);
        for (a, b) in self.deg.iter_mut().zip(&other.deg) {
            for (x, y) in a.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x += y.clone();
                }
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut s = self.clone();
        for (a, b) in s.deg.iter_mut().zip(&other.deg) {
            for (x, y) in a.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= y.clone();
                }
            }
        }
        s
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c.clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|x| {
            if x.is_zero() {
                S::zero()
            } else {
                x.clone() * c.clone()
            }
        })
    }

    pub fn scale_q(&self, c: &Rational) -> Self {
        self.map(|x| if x.is_zero() { S::zero() } else { x.scale_q(c) })
    }

    /// Concatenation product, truncated at the common order.
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = Self::zero(self.k, self.n);
        mul_into(&mut out.deg, &self.deg, &other.deg, self.n);
        out
    }

    /// `[a, b] = ab − ba`.
    pub fn bracket(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// `exp(a)`; requires a zero constant term.
    pub fn exp(&self) -> Result<Self, NcError> {
        if !self.constant_term().is_zero() {
            return Err(NcError::ConstantTerm { expected: "0" });
        }
        let mut out = Self::one(self.k, self.n);
        let mut pw = Self::one(self.k, self.n);
        for m in 1..=self.n {
            pw = pw
                .mul(self)
                .scale_q(&Rational::new(1.into(), (m as i64).into()));
            if pw.is_zero() {
                break;
            }
            out.add_assign_ref(&pw);
        }
        Ok(out)
    }

    /// `log(g)`; requires constant term 1.
    pub fn log(&self) -> Result<Self, NcError> {
        if self.constant_term() != S::one() {
            return Err(NcError::ConstantTerm { expected: "1" });
        }
        let mut x = self.clone();
        x.deg[0][0] = S::zero();
        let mut out = Self::zero(self.k, self.n);
        let mut pw = Self::one(self.k, self.n);
        for m in 1..=self.n {
            pw = pw.mul(&x);
            if pw.is_zero() {
                break;
            }
            let sign = if m % 2 == 1 { 1 } else { -1 };
            out.add_assign_ref(&pw.scale_q(&Rational::new(sign.into(), (m as i64).into())));
        }
        Ok(out)
    }

    /// Multiplicative inverse of a series with constant term 1.
    pub fn inverse_unipotent(&self) -> Result<Self, NcError> {
        if self.constant_term() != S::one() {
            return Err(NcError::ConstantTerm { expected: "1" });
        }
        let mut x = self.neg();
        x.deg[0][0] = S::zero();
        let mut out = Self::one(self.k, self.n);
        let mut pw = Self::one(self.k, self.n);
        for _ in 1..=self.n {
            pw = pw.mul(&x);
            if pw.is_zero() {
                break;
            }
            out.add_assign_ref(&pw);
        }
        Ok(out)
    }

    /// Algebra homomorphism determined by `X_i ↦ images[i-1]`; the images
    /// may live in another alphabet but must share the order. Words above
    /// the order are dropped.
    pub fn substitute(&self, images: &[NCSeries<S>]) -> Result<NCSeries<S>, NcError> {
        if images.len() != self.k {
            return Err(NcError::Alphabet(self.k, images.len()));
        }
        let tk = images[0].k;
        let tn = images[0].n;
        for im in images {
            if im.k != tk {
                return Err(NcError::Alphabet(tk, im.k));
            }
            if im.n != tn {
                return Err(NcError::Order(tn, im.n));
            }
        }
        let min_deg = images
            .iter()
            .map(|im| im.min_degree().unwrap_or(usize::MAX))
            .min();
        let min_deg = min_deg.unwrap_or(usize::MAX);
        let mut out = NCSeries::zero(tk, tn);
        subst_rec(self, images, 0, 0, tn, min_deg, &mut out.deg);
        Ok(out)
    }

    /// Renames letter `i` to `map[i-1]` in an alphabet of size `new_k`.
    pub fn relabel(&self, new_k: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.k);
        let mut out = NCSeries::zero(new_k, self.n);
        for d in 0..=self.n {
            for (i, c) in self.deg[d].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let w = index_word(i, d, self.k);
                let v: Word = w.iter().map(|&a| map[a as usize - 1] as u8).collect();
                out.deg[d][word_index(&v, new_k)] += c.clone();
            }
        }
        out
    }

    /// Applies the derivation `X_i ↦ images[i-1]` (Leibniz rule); images
    /// share the alphabet and order of `self`.
    pub fn apply_derivation(&self, images: &[NCSeries<S>]) -> Self {
        assert_eq!(images.len(), self.k);
        let k = self.k;
        let n = self.n;
        let mut out = Self::zero(k, n);
        for (d, coeffs) in self.deg.iter().enumerate().skip(1) {
            for (i, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                // letter at position j (0-based from the left)
                for j in 0..d {
                    let right_len = d - j - 1;
                    let suffix = i % pow(k, right_len);
                    let letter = (i / pow(k, right_len)) % k;
                    let prefix = i / pow(k, right_len + 1);
                    let g = &images[letter];
                    for e in 0..=(n + 1).saturating_sub(d).min(n) {
                        let nd = d - 1 + e;
                        if nd > n {
                            break;
                        }
                        let base = prefix * pow(k, e);
                        let shift = pow(k, right_len);
                        for (v, gc) in g.deg[e].iter().enumerate() {
                            if gc.is_zero() {
                                continue;
                            }
                            let idx = (base + v) * shift + suffix;
                            out.deg[nd][idx].add_mul(c, gc);
                        }
                    }
                }
            }
        }
        out
    }

    /// Deshuffle coproduct residual: the largest `|c(u)c(v) − ⟨Δ g, u⊗v⟩|`
    /// over all pairs with `|u| + |v| ≤ N`, where the pairing is the sum of
    /// `c(w)` over the shuffles `w` of `u` and `v`.
    pub fn grouplike_residual(&self) -> f64 {
        let k = self.k;
        let n = self.n;
        // blocks[du][dv] holds Δ coefficients for |u| = du, |v| = dv
        let mut blocks: Vec<Vec<Vec<S>>> = (0..=n)
            .map(|du| {
                (0..=(n - du))
                    .map(|dv| vec![S::zero(); pow(k, du) * pow(k, dv)])
                    .collect()
            })
            .collect();
        for d in 0..=n {
            for (i, c) in self.deg[d].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let w = index_word(i, d, k);
                for mask in 0u32..(1u32 << d) {
                    let (mut iu, mut iv, mut du) = (0usize, 0usize, 0usize);
                    for (pos, &a) in w.iter().enumerate() {
                        if mask & (1 << pos) != 0 {
                            iu = iu * k + (a as usize - 1);
                            du += 1;
                        } else {
                            iv = iv * k + (a as usize - 1);
                        }
                    }
                    let dv = d - du;
                    blocks[du][dv][iu * pow(k, dv) + iv] += c.clone();
                }
            }
        }
        let mut worst = 0.0f64;
        for du in 0..=n {
            for dv in 0..=(n - du) {
                let nv = pow(k, dv);
                for iu in 0..pow(k, du) {
                    for iv in 0..nv {
                        let prod = self.deg[du][iu].clone() * self.deg[dv][iv].clone();
                        let r = (prod - blocks[du][dv][iu * nv + iv].clone()).mag();
                        worst = worst.max(r);
                    }
                }
            }
        }
        worst
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(w, c)| serde_json::json!({ "word": w, "coeff": c.to_json() }))
            .collect();
        serde_json::json!({ "alphabet": self.k, "order": self.n, "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self, NcError> {
        let field = |key: &str| {
            v.get(key)
                .ok_or_else(|| NcError::Json(format!("missing \"{key}\"")))
        };
        let k = field("alphabet")?
            .as_u64()
            .ok_or_else(|| NcError::Json("alphabet must be an integer".into()))?
            as usize;
        let n = field("order")?
            .as_u64()
            .ok_or_else(|| NcError::Json("order must be an integer".into()))?
            as usize;
        if k == 0 {
            return Err(NcError::Json("alphabet must be positive".into()));
        }
        let terms = field("terms")?
            .as_array()
            .ok_or_else(|| NcError::Json("terms must be an array".into()))?;
        let mut s = Self::zero(k, n);
        for t in terms {
            let w: Word = t
                .get("word")
                .and_then(|w| w.as_array())
                .ok_or_else(|| NcError::Json("term without word".into()))?
                .iter()
                .map(|a| a.as_u64().map(|a| a as u8))
                .collect::<Option<_>>()
                .ok_or_else(|| NcError::Json("letters must be integers".into()))?;
            check_word(&w, k)?;
            if w.len() > n {
                return Err(NcError::WordTooLong {
                    len: w.len(),
                    order: n,
                });
            }
            let c = S::from_json(
                t.get("coeff")
                    .ok_or_else(|| NcError::Json("term without coeff".into()))?,
            )?;
            s.deg[w.len()][word_index(&w, k)] += c;
        }
        Ok(s)
    }

    fn assert_compatible(&self, other: &Self) {
        if let Err(e) = self.check_compatible(other) {
            panic!("{e}");
        }
    }
}

/// `(1/m!)`-free helper: the rational `1/m`.
pub(crate) fn inv(m: usize) -> Rational {
    Rational::new(1.into(), (m as i64).into())
}

pub(crate) fn check_word(w: &[u8], k: usize) -> Result<(), NcError> {
    for &a in w {
        if a == 0 || a as usize > k {
            return Err(NcError::Letter {
                letter: a as usize,
                k,
            });
        }
    }
    Ok(())
}

fn mul_into<S: Scalar>(out: &mut [Vec<S>], a: &[Vec<S>], b: &[Vec<S>], n: usize) {
    for (d1, av) in a.iter().enumerate().take(n + 1) {
        if av.iter().all(|c| c.is_zero()) {
            continue;
        }
        for d2 in 0..=(n - d1) {
            let bv = &b[d2];
            let nb = bv.len();
            let nz: Vec<(usize, &S)> = bv
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            if nz.is_empty() {
                continue;
            }
            let target = &mut out[d1 + d2];
            for (i, x) in av.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let base = i * nb;
                for &(j, y) in &nz {
                    target[base + j].add_mul(x, y);
                }
            }
        }
    }
}

/// Adds `φ(p \ A)`, truncated at word length `budget`, into `out`, where
/// `p` is the prefix with length `plen` and index `pidx`.
fn subst_rec<S: Scalar>(
    a: &NCSeries<S>,
    images: &[NCSeries<S>],
    plen: usize,
    pidx: usize,
    budget: usize,
    min_deg: usize,
    out: &mut [Vec<S>],
) {
    let k = a.k;
    // constant term of the quotient: coefficient of the prefix itself
    let c = &a.deg[plen][pidx];
    if !c.is_zero() {
        out[0][0] += c.clone();
    }
    if plen == a.n {
        return;
    }
    if min_deg == usize::MAX || min_deg > budget {
        // every further letter vanishes or overshoots the budget
        return;
    }
    let child_budget = budget - min_deg;
    let tk = images[0].k;
    let tn = images[0].n;
    for (x, img) in images.iter().enumerate() {
        let child = pidx * k + x;
        // skip empty subtrees quickly
        if subtree_is_zero(a, plen + 1, child) {
            continue;
        }
        let mut sub: Vec<Vec<S>> = (0..=tn).map(|d| vec![S::zero(); pow(tk, d)]).collect();
        subst_rec(a, images, plen + 1, child, child_budget, min_deg, &mut sub);
        // out += img · sub, truncated at budget
        let mut prod: Vec<Vec<S>> = (0..=tn).map(|d| vec![S::zero(); pow(tk, d)]).collect();
        mul_into(&mut prod, &img.deg, &sub, budget.min(tn));
        for (o, p) in out.iter_mut().zip(prod) {
            for (x, y) in o.iter_mut().zip(p) {
                if !y.is_zero() {
                    *x += y;
                }
            }
        }
    }
}

fn subtree_is_zero<S: Scalar>(a: &NCSeries<S>, len: usize, idx: usize) -> bool {
    let k = a.k;
    for d in len..=a.n {
        let span = pow(k, d - len);
        let start = idx * span;
        if a.deg[d][start..start + span].iter().any(|c| !c.is_zero()) {
            return false;
        }
    }
    true
}

/// Convenience: the integer `m` as a scalar.
pub fn int<S: Scalar>(m: i64) -> S {
    S::from_rational(&qi(m))
}
