//! Lyndon words, their standard factorizations and bracket expansions.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::word::{pow, word_index, Word};

/// Binary bracketing of a Lyndon word by standard factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bracketing {
    Letter(u8),
    Bracket(Box<Bracketing>, Box<Bracketing>),
}

impl Bracketing {
    pub fn render(&self, k: usize) -> String {
        match self {
            Bracketing::Letter(a) => {
                if k <= 2 {
                    if *a == 1 {
                        "X".into()
                    } else {
                        "Y".into()
                    }
                } else {
                    format!("X{a}")
                }
            }
            Bracketing::Bracket(l, r) => format!("[{},{}]", l.render(k), r.render(k)),
        }
    }
}

/// Lyndon basis of the degree-`d` part of the free Lie algebra on `k`
/// generators.
#[derive(Debug)]
pub struct LyndonTable {
    pub k: usize,
    pub d: usize,
    /// Lyndon words in increasing lexicographic order.
    pub words: Vec<Word>,
    pub brackets: Vec<Bracketing>,
    /// Expansion of each bracketing into words of length `d`, as
    /// `(word index, coefficient)` pairs sorted by index. The first entry is
    /// the Lyndon word itself with coefficient 1.
    pub expansions: Vec<Vec<(usize, i64)>>,
    position: HashMap<usize, usize>,
}

impl LyndonTable {
    fn build(k: usize, d: usize) -> Self {
        let words = lyndon_words(k, d);
        let mut brackets = Vec::with_capacity(words.len());
        let mut expansions = Vec::with_capacity(words.len());
        let mut position = HashMap::new();
        for (p, w) in words.iter().enumerate() {
            let b = standard_bracketing(w);
            let mut exp: HashMap<usize, i64> = HashMap::new();
            for (v, c) in expand(&b) {
                *exp.entry(word_index(&v, k)).or_insert(0) += c;
            }
            let mut exp: Vec<(usize, i64)> = exp.into_iter().filter(|(_, c)| *c != 0).collect();
            exp.sort_unstable();
            debug_assert_eq!(exp.first(), Some(&(word_index(w, k), 1)));
            brackets.push(b);
            expansions.push(exp);
            position.insert(word_index(w, k), p);
        }
        LyndonTable {
            k,
            d,
            words,
            brackets,
            expansions,
            position,
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Position of a Lyndon word (by its word index) in the table.
    pub fn position_of_index(&self, idx: usize) -> Option<usize> {
        self.position.get(&idx).copied()
    }

    pub fn position_of(&self, w: &[u8]) -> Option<usize> {
        if w.len() != self.d {
            return None;
        }
        self.position_of_index(word_index(w, self.k))
    }
}

/// Shared, lazily built table for `(k, d)`.
pub fn lyndon_table(k: usize, d: usize) -> Arc<LyndonTable> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<LyndonTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("lyndon cache poisoned").get(&(k, d)) {
        return t.clone();
    }
    let t = Arc::new(LyndonTable::build(k, d));
    cache
        .lock()
        .expect("lyndon cache poisoned")
        .entry((k, d))
        .or_insert(t)
        .clone()
}

/// All Lyndon words of length `d` over `1..=k` with their bracketings.
pub fn lyndon_basis(k: usize, d: usize) -> Vec<(Word, Bracketing)> {
    let t = lyndon_table(k, d);
    t.words
        .iter()
        .cloned()
        .zip(t.brackets.iter().cloned())
        .collect()
}

/// Necklace-polynomial count `(1/d) Σ_{e | d} μ(e) k^{d/e}`.
pub fn witt_dimension(k: usize, d: usize) -> usize {
    let mut total: i64 = 0;
    for e in 1..=d {
        if d % e == 0 {
            total += mobius(e) * pow(k, d / e) as i64;
        }
    }
    (total / d as i64) as usize
}

fn mobius(mut n: usize) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Duval's algorithm restricted to length exactly `d`.
fn lyndon_words(k: usize, d: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if d == 0 || k == 0 {
        return out;
    }
    let mut w: Vec<u8> = vec![1];
    loop {
        if w.len() == d {
            out.push(w.clone());
        }
        // extend periodically to length d
        let m = w.len();
        while w.len() < d {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&(k as u8)) {
            w.pop();
        }
        match w.last_mut() {
            None => break,
            Some(last) => *last += 1,
        }
    }
    out
}

fn is_lyndon(w: &[u8]) -> bool {
    (1..w.len()).all(|i| {
        w < &w[i..] && {
            let mut rot = w[i..].to_vec();
            rot.extend_from_slice(&w[..i]);
            w < rot.as_slice()
        }
    })
}

fn standard_bracketing(w: &[u8]) -> Bracketing {
    if w.len() == 1 {
        return Bracketing::Letter(w[0]);
    }
    // the right factor is the longest proper suffix that is Lyndon
    let split = (1..w.len())
        .find(|&i| is_lyndon(&w[i..]))
        .expect("a Lyndon word of length ≥ 2 has a Lyndon proper suffix");
    Bracketing::Bracket(
        Box::new(standard_bracketing(&w[..split])),
        Box::new(standard_bracketing(&w[split..])),
    )
}

/// Word expansion of a bracketing.
pub fn expand(b: &Bracketing) -> Vec<(Word, i64)> {
    match b {
        Bracketing::Letter(a) => vec![(vec![*a], 1)],
        Bracketing::Bracket(l, r) => {
            let el = expand(l);
            let er = expand(r);
            let mut out = Vec::with_capacity(2 * el.len() * er.len());
            for (u, a) in &el {
                for (v, b) in &er {
                    let mut uv = u.clone();
                    uv.extend_from_slice(v);
                    out.push((uv, a * b));
                    let mut vu = v.clone();
                    vu.extend_from_slice(u);
                    out.push((vu, -a * b));
                }
            }
            out
        }
    }
}
