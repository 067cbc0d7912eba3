//! Words over the alphabet `1..=k`, interned as base-`k` integers.
//!
//! A word `a_1 … a_d` has index `Σ (a_j − 1) k^{d−j}`, so for words of a fixed
//! length the numeric order of indices is the lexicographic order.

/// A word; letters are 1-based generator indices.
pub type Word = Vec<u8>;

pub fn pow(k: usize, d: usize) -> usize {
    k.pow(d as u32)
}

pub fn word_index(w: &[u8], k: usize) -> usize {
    w.iter().fold(0, |acc, &a| acc * k + (a as usize - 1))
}

pub fn index_word(mut idx: usize, d: usize, k: usize) -> Word {
    let mut w = vec![0u8; d];
    for slot in w.iter_mut().rev() {
        *slot = (idx % k) as u8 + 1;
        idx /= k;
    }
    w
}

/// All words of length `d` in lexicographic order.
pub fn words_of_length(k: usize, d: usize) -> impl Iterator<Item = Word> {
    (0..pow(k, d)).map(move |i| index_word(i, d, k))
}

/// Renders a word with `x, y` for two letters and `X1, X2, …` otherwise.
pub fn word_to_string(w: &[u8], k: usize) -> String {
    if w.is_empty() {
        return "1".into();
    }
    if k <= 2 {
        w.iter().map(|&a| if a == 1 { 'X' } else { 'Y' }).collect()
    } else {
        w.iter()
            .map(|a| format!("X{a}"))
            .collect::<Vec<_>>()
            .join("·")
    }
}
