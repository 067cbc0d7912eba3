use crate::error::KzError;

/// Admissible composition `(s_1, …, s_k)` with `s_1 ≥ 2`, indexing
/// `ζ(s_1,…,s_k) = Σ_{n_1 > … > n_k ≥ 1} n_1^{−s_1} ⋯ n_k^{−s_k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MzvIndex(Vec<u32>);

impl MzvIndex {
    pub fn new(s: Vec<u32>) -> Result<Self, KzError> {
        if s.is_empty() || s[0] < 2 || s.iter().any(|&x| x == 0) {
            return Err(KzError::NotAdmissible(s));
        }
        Ok(MzvIndex(s))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Cache key such as `"2,1"`.
    pub fn key(&self) -> String {
        self.0
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Numeric value with a bound on the truncation error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MzvValue {
    pub value: f64,
    pub error_bound: f64,
}

/// Letters of the iterated-integral word: `false` for `dt/t`, `true` for
/// `dt/(1−t)`, listed from the outermost (closest to 1) integration.
fn word_of(s: &[u32]) -> Vec<bool> {
    let mut w = Vec::new();
    for &si in s {
        w.extend(std::iter::repeat(false).take(si as usize - 1));
        w.push(true);
    }
    w
}

/// Composition of a word ending in `dt/(1−t)`.
fn composition_of(w: &[bool]) -> Vec<u32> {
    let mut out = Vec::new();
    let mut run = 1;
    for &a in w {
        if a {
            out.push(run);
            run = 1;
        } else {
            run += 1;
        }
    }
    out
}

/// `Li_{n_1,…,n_r}(p) = Σ_{m_1 > … > m_r ≥ 1} p^{m_1} / (m_1^{n_1} ⋯ m_r^{n_r})`
/// summed to `m_1 ≤ terms`, with the tail bound
/// `p^{terms+1}/(1−p) · (1 + ln terms)^{r−1}`.
fn multiple_polylog(n: &[u32], p: f64, terms: usize) -> (f64, f64) {
    if n.is_empty() {
        return (1.0, 0.0);
    }
    let r = n.len();
    // inner[m] = Σ over m > m_2 > … of the deeper factors
    let mut inner = vec![1.0; terms + 1];
    for depth in (1..r).rev() {
        let mut next = vec![0.0; terms + 1];
        let mut acc = 0.0;
        for m in 1..=terms {
            next[m] = acc;
            acc += inner[m] / (m as f64).powi(n[depth] as i32);
        }
        inner = next;
    }
    let mut sum = 0.0;
    let mut pw = 1.0;
    for m in 1..=terms {
        pw *= p;
        sum += pw * inner[m] / (m as f64).powi(n[0] as i32);
    }
    let tail =
        p.powi(terms as i32 + 1) / (1.0 - p) * (1.0 + (terms as f64).ln()).powi(r as i32 - 1);
    (sum, tail)
}

/// Multiple zeta value by splitting the iterated integral at `1/2`.
///
/// For a word `a_1 ⋯ a_w`, `ζ = Σ_j I(½→1; a_1⋯a_j) · I(0→½; a_{j+1}⋯a_w)`.
/// The second factor is a multiple polylogarithm at `½`; the first becomes
/// one after `t ↦ 1 − t`, which reverses the word and swaps the two forms.
/// Admissibility keeps both factors finite.
pub fn mzv(idx: &MzvIndex, tol: f64) -> MzvValue {
    let w = word_of(idx.parts());
    let mut terms = 32;
    loop {
        let mut value = 0.0;
        let mut err = 0.0;
        for j in 0..=w.len() {
            let dual: Vec<bool> = w[..j].iter().rev().map(|&a| !a).collect();
            let (a, ea) = multiple_polylog(&composition_of(&dual), 0.5, terms);
            let (b, eb) = multiple_polylog(&composition_of(&w[j..]), 0.5, terms);
            value += a * b;
            err += ea * b.abs() + eb * a.abs() + ea * eb;
        }
        // floating rounding in the nested sums
        err += 1e-15 * value.abs() * w.len() as f64;
        if err <= tol || terms >= 4096 {
            return MzvValue {
                value,
                error_bound: err,
            };
        }
        terms *= 2;
    }
}

/// `ζ(s_1,…,s_k)` by direct nested summation over `n_1 ≤ terms`, without
/// acceleration. Slow; intended for small cross-checks.
pub fn mzv_direct(s: &[u32], terms: usize) -> f64 {
    let mut inner = vec![1.0; terms + 1];
    for depth in (1..s.len()).rev() {
        let mut next = vec![0.0; terms + 1];
        let mut acc = 0.0;
        for m in 1..=terms {
            next[m] = acc;
            acc += inner[m] / (m as f64).powi(s[depth] as i32);
        }
        inner = next;
    }
    // sum smallest terms first
    (1..=terms)
        .rev()
        .map(|m| inner[m] / (m as f64).powi(s[0] as i32))
        .sum()
}
