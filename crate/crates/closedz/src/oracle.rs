//! Slow reference implementations.
//!
//! Everything here is a direct transcription of a definition: nested scans,
//! no failure functions, no Z-arrays, no shared state with the fast paths.
//! The test suites compare the optimized implementations against these.

use crate::word::{Letter, Word};

fn matches_at(host: &[Letter], q: usize, pat: &[Letter]) -> bool {
    q + pat.len() <= host.len() && &host[q..q + pat.len()] == pat
}

/// 1-based start positions of `pat` in `host` by direct comparison.
pub fn occurrence_positions(host: &Word, pat: &Word) -> Vec<usize> {
    assert!(!pat.is_empty(), "oracle occurrence scan needs a non-empty factor");
    let (h, p) = (host.letters(), pat.letters());
    (0..h.len().saturating_sub(p.len() - 1))
        .filter(|&q| matches_at(h, q, p))
        .map(|q| q + 1)
        .collect()
}

pub fn count_occurrences(host: &Word, pat: &Word) -> usize {
    occurrence_positions(host, pat).len()
}

/// Border lengths by comparing every proper prefix with the equally long suffix.
pub fn border_lengths(w: &Word) -> Vec<usize> {
    let s = w.letters();
    (1..s.len())
        .filter(|&l| s[..l] == s[s.len() - l..])
        .collect()
}

/// Closed by the definition: a single letter, or some border occurs exactly
/// twice in the word.
pub fn is_closed(w: &Word) -> bool {
    if w.len() == 1 {
        return true;
    }
    if w.is_empty() {
        return false;
    }
    border_lengths(w)
        .into_iter()
        .any(|l| count_occurrences(w, &w.sub(0..l)) == 2)
}

/// The border occurring exactly twice, when one exists.
pub fn closed_border(w: &Word) -> Option<Word> {
    border_lengths(w)
        .into_iter()
        .map(|l| w.sub(0..l))
        .find(|b| count_occurrences(w, b) == 2)
}

/// Longest palindromic suffix by scanning suffix lengths downward.
pub fn palindromic_closure(w: &Word) -> Word {
    let s = w.letters();
    let v_len = (0..=s.len())
        .rev()
        .find(|&l| Word::from(&s[s.len() - l..]).is_palindrome())
        .unwrap_or(0);
    let mut out = w.clone();
    for a in s[..s.len() - v_len].iter().rev() {
        out.push(*a);
    }
    out
}

/// Occurrences of every prefix length are computed against `text[..=end]`
/// boundaries on demand; this is the "occurs exactly once in (emitted)(candidate)"
/// test spelled out.
fn occurs_once_up_to(text: &[Letter], pat_start: usize, pat_len: usize, end: usize) -> bool {
    let pat = &text[pat_start..pat_start + pat_len];
    let mut count = 0;
    for q in 0..=end.saturating_sub(pat_len) {
        if matches_at(&text[..end], q, pat) {
            count += 1;
            if count > 1 {
                return false;
            }
        }
    }
    count == 1
}

fn word_at(text: &[Letter], start: usize, len: usize) -> Word {
    Word::from(&text[start..start + len])
}

/// Greedy z-like factorization of a finite text. Each factor is the shortest
/// prefix of the remainder that `accept`s and occurs exactly once in the
/// emitted text followed by the candidate itself. Stops at `max_factors` when
/// given. Returns the factors and whether the final factor satisfied the
/// predicate (false when the text ran out mid-search).
fn z_like(
    text: &Word,
    max_factors: Option<usize>,
    accept: impl Fn(&Word) -> bool,
) -> (Vec<Word>, bool) {
    let t = text.letters();
    let mut factors = Vec::new();
    let mut p = 0;
    let mut complete = true;
    while p < t.len() && max_factors.map_or(true, |k| factors.len() < k) {
        let mut found = None;
        for len in 1..=t.len() - p {
            let cand = word_at(t, p, len);
            if accept(&cand) && occurs_once_up_to(t, p, len, p + len) {
                found = Some(len);
                break;
            }
        }
        match found {
            Some(len) => {
                factors.push(word_at(t, p, len));
                p += len;
            }
            None => {
                factors.push(word_at(t, p, t.len() - p));
                complete = false;
                break;
            }
        }
    }
    (factors, complete)
}

pub fn z_factorization(text: &Word, max_factors: Option<usize>) -> (Vec<Word>, bool) {
    z_like(text, max_factors, |_| true)
}

pub fn closed_z_factorization(text: &Word, max_factors: Option<usize>) -> (Vec<Word>, bool) {
    z_like(text, max_factors, is_closed)
}

pub fn palindromic_z_factorization(text: &Word, max_factors: Option<usize>) -> (Vec<Word>, bool) {
    z_like(text, max_factors, |w| w.is_palindrome())
}

/// Crochemore factorization: the longest prefix of the remainder with an
/// occurrence starting strictly before the current position (overlap with the
/// factor itself allowed), or a fresh single letter.
pub fn c_factorization(text: &Word) -> Vec<Word> {
    let t = text.letters();
    let mut factors = Vec::new();
    let mut p = 0;
    while p < t.len() {
        let mut best = 0;
        for len in 1..=t.len() - p {
            if (0..p).any(|q| matches_at(t, q, &t[p..p + len])) {
                best = len;
            } else {
                break;
            }
        }
        let len = best.max(1);
        factors.push(word_at(t, p, len));
        p += len;
    }
    factors
}

/// Closed Crochemore factorization, primary candidate rule: the longest
/// closed prefix of the remainder with an occurrence starting strictly
/// before the current position; fresh single letter when none exists.
pub fn closed_c_factorization(text: &Word) -> Vec<Word> {
    let t = text.letters();
    let mut factors = Vec::new();
    let mut p = 0;
    while p < t.len() {
        let mut best = None;
        for len in 1..=t.len() - p {
            let cand = word_at(t, p, len);
            if is_closed(&cand) && (0..p).any(|q| matches_at(t, q, cand.letters())) {
                best = Some(len);
            }
        }
        let len = best.unwrap_or(1);
        factors.push(word_at(t, p, len));
        p += len;
    }
    factors
}

/// Closed Crochemore factorization, alternative candidate rule: the longest
/// closed prefix occurring at least twice in (emitted)(candidate); fresh
/// single letter when none exists.
pub fn closed_c_factorization_alt(text: &Word) -> Vec<Word> {
    let t = text.letters();
    let mut factors = Vec::new();
    let mut p = 0;
    while p < t.len() {
        let mut best = None;
        for len in 1..=t.len() - p {
            let cand = word_at(t, p, len);
            if !is_closed(&cand) {
                continue;
            }
            let end = p + len;
            let count = (0..=end - len)
                .filter(|&q| matches_at(&t[..end], q, cand.letters()))
                .count();
            if count >= 2 {
                best = Some(len);
            }
        }
        let len = best.unwrap_or(1);
        factors.push(word_at(t, p, len));
        p += len;
    }
    factors
}

/// oc bits of a finite word: bit `k` (1-based) says whether the length-`k`
/// prefix is closed.
pub fn oc_bits(w: &Word, n: usize) -> Vec<bool> {
    assert!(n <= w.len());
    (1..=n).map(|k| is_closed(&w.sub(0..k))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn hand_checked_values() {
        assert_eq!(occurrence_positions(&w("01001"), &w("01")), vec![1, 4]);
        assert_eq!(border_lengths(&w("00100")), vec![1, 2]);
        assert!(is_closed(&w("00100")));
        assert_eq!(closed_border(&w("00100")), Some(w("00")));
        assert!(!is_closed(&w("0100")));
        assert_eq!(palindromic_closure(&w("0102")), w("0102010"));
    }

    #[test]
    fn z_factorization_of_a_fibonacci_prefix() {
        // First factors of the Fibonacci word: 0, 1, 00, 101, 00100.
        let text = w("0100101001001010010100100101001001");
        let (factors, _) = z_factorization(&text, Some(5));
        let got: Vec<String> = factors.iter().map(|f| f.to_string()).collect();
        assert_eq!(got, vec!["0", "1", "00", "101", "00100"]);
    }

    #[test]
    fn c_factorization_of_squares() {
        let factors = c_factorization(&w("00"));
        let got: Vec<String> = factors.iter().map(|f| f.to_string()).collect();
        assert_eq!(got, vec!["0", "0"]);
    }
}
