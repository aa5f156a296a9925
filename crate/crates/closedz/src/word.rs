//! Letters, finite words, borders, occurrence counting, palindromic closure,
//! return words, and the closed-word predicate.
//!
//! A word `w` is *closed* when it is a single letter, or when it has a border
//! (a word that is both a proper prefix and a proper suffix) occurring exactly
//! twice in `w`. Such a border is called the frontier of `w`; equivalently `w`
//! is the frontier's complete first return. Occurrence positions are 1-based
//! everywhere in the public API; in-memory indices are 0-based.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::{Error, Result};

/// A letter over an alphabet `A_m = {0, .., m-1}` with `m <= 36`.
///
/// Letters render as `0-9` then `a-z`, one character per letter.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u8);

impl Letter {
    /// Largest supported alphabet size.
    pub const MAX_ALPHABET: u8 = 36;

    pub fn new(value: u8) -> Result<Self> {
        if value < Self::MAX_ALPHABET {
            Ok(Letter(value))
        } else {
            Err(Error::LetterValue(value as u32))
        }
    }

    /// Internal constructor for values already known to be below 36.
    pub(crate) fn unchecked(value: u8) -> Self {
        debug_assert!(value < Self::MAX_ALPHABET);
        Letter(value)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn to_char(self) -> char {
        if self.0 < 10 {
            (b'0' + self.0) as char
        } else {
            (b'a' + self.0 - 10) as char
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            '0'..='9' => Ok(Letter(c as u8 - b'0')),
            'a'..='z' => Ok(Letter(c as u8 - b'a' + 10)),
            _ => Err(Error::LetterChar(c)),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A finite word. The alphabet size is not stored; operations that need it
/// take `m` explicitly and validate letters against it.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Single-letter word.
    pub fn single(a: Letter) -> Self {
        Word(vec![a])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Letter at 0-based index `i`; panics when out of range.
    pub fn letter(&self, i: usize) -> Letter {
        self.0[i]
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn push(&mut self, a: Letter) {
        self.0.push(a);
    }

    pub fn push_word(&mut self, w: &Word) {
        self.0.extend_from_slice(&w.0);
    }

    /// Concatenation of `parts` in order.
    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a Word>) -> Word {
        let mut out = Word::new();
        for p in parts {
            out.push_word(p);
        }
        out
    }

    /// The subword over the 0-based half-open index range.
    pub fn sub(&self, r: Range<usize>) -> Word {
        Word(self.0[r].to_vec())
    }

    pub fn reversed(&self) -> Word {
        let mut v = self.0.clone();
        v.reverse();
        Word(v)
    }

    pub fn is_palindrome(&self) -> bool {
        let s = &self.0;
        (0..s.len() / 2).all(|i| s[i] == s[s.len() - 1 - i])
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.0.ends_with(&suffix.0)
    }

    /// Left quotient: `self` with `prefix` removed, when `prefix` is a prefix.
    pub fn strip_prefix_word(&self, prefix: &Word) -> Option<Word> {
        self.0.strip_prefix(&prefix.0[..]).map(|rest| Word(rest.to_vec()))
    }

    /// Right quotient: `self` with `suffix` removed, when `suffix` is a suffix.
    pub fn strip_suffix_word(&self, suffix: &Word) -> Option<Word> {
        self.0.strip_suffix(&suffix.0[..]).map(|rest| Word(rest.to_vec()))
    }

    /// `(w)^+`: the shortest palindrome having `w` as a prefix.
    ///
    /// With `w = uv`, `v` the longest palindromic suffix of `w`, the closure
    /// is `u v u^R`.
    pub fn palindromic_closure(&self) -> Word {
        let v_len = longest_palindromic_suffix(&self.0);
        let u = &self.0[..self.0.len() - v_len];
        let mut out = self.0.clone();
        out.extend(u.iter().rev().copied());
        Word(out)
    }

    /// All 1-based start positions of `factor` in `self`, in increasing order.
    /// Overlapping occurrences count separately.
    pub fn occurrences(&self, factor: &Word) -> Result<OccurrenceList> {
        if factor.is_empty() {
            return Err(Error::EmptyPattern);
        }
        let positions = kmp_positions(&self.0, &factor.0)
            .into_iter()
            .map(|p| p + 1)
            .collect();
        Ok(OccurrenceList { positions })
    }

    pub fn count_occurrences(&self, factor: &Word) -> Result<usize> {
        if factor.is_empty() {
            return Err(Error::EmptyPattern);
        }
        Ok(kmp_count(&self.0, &factor.0))
    }

    pub fn contains_factor(&self, factor: &Word) -> Result<bool> {
        Ok(self.count_occurrences(factor)? > 0)
    }

    /// Lengths `l` with `0 < l < |w|` such that the length-`l` prefix equals
    /// the length-`l` suffix, in increasing order.
    pub fn border_lengths(&self) -> Vec<usize> {
        if self.0.is_empty() {
            return Vec::new();
        }
        let fail = failure_function(&self.0);
        let mut out = Vec::new();
        let mut l = fail[self.0.len() - 1];
        while l > 0 {
            out.push(l);
            l = fail[l - 1];
        }
        out.reverse();
        out
    }

    /// Length of the longest border (0 when borderless or `|w| <= 1`).
    pub fn longest_border_len(&self) -> usize {
        if self.0.len() < 2 {
            return 0;
        }
        failure_function(&self.0)[self.0.len() - 1]
    }

    /// Whether the word is closed. Single letters are closed; the empty word
    /// is not. For `|w| >= 2` this tests the longest border, which occurs
    /// exactly twice iff some border does (a shorter doubly-occurring border
    /// would also occur inside every occurrence of the longest one).
    pub fn is_closed(&self) -> bool {
        match self.0.len() {
            0 => false,
            1 => true,
            n => {
                let b = failure_function(&self.0)[n - 1];
                b > 0 && kmp_count(&self.0, &self.0[..b]) == 2
            }
        }
    }

    /// The frontier of a closed word of length >= 2: its unique border with
    /// exactly two occurrences. `None` for open words and single letters.
    pub fn closed_border(&self) -> Option<Word> {
        if self.0.len() < 2 {
            return None;
        }
        let b = failure_function(&self.0)[self.0.len() - 1];
        if b > 0 && kmp_count(&self.0, &self.0[..b]) == 2 {
            Some(Word(self.0[..b].to_vec()))
        } else {
            None
        }
    }

    /// Return words of `v` in `self`: for consecutive occurrences at `p` and
    /// `q`, the factor starting at `p` and ending just before `q`. Deduplicated
    /// in order of first appearance. Needs at least two occurrences.
    pub fn return_words(&self, v: &Word) -> Result<Vec<Word>> {
        let occ = self.occurrences(v)?;
        if occ.count() < 2 {
            return Err(Error::TooFewOccurrences { found: occ.count() });
        }
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for pair in occ.positions.windows(2) {
            let r = self.sub(pair[0] - 1..pair[1] - 1);
            if seen.insert(r.clone()) {
                out.push(r);
            }
        }
        Ok(out)
    }
}

impl From<&[Letter]> for Word {
    fn from(s: &[Letter]) -> Self {
        Word(s.to_vec())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.0 {
            write!(f, "{}", a.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars().map(Letter::from_char).collect::<Result<_>>().map(Word)
    }
}

/// 1-based start positions of a factor, strictly increasing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OccurrenceList {
    positions: Vec<usize>,
}

impl OccurrenceList {
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn count(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// A finite or unbounded producer of letters, addressed through a growing
/// materialized prefix.
pub trait LetterSource {
    /// Letters produced so far.
    fn materialized(&self) -> &[Letter];

    /// Makes at least `n` letters available when possible; returns how many
    /// letters are now materialized (below `n` only for exhausted finite
    /// sources).
    fn materialize(&mut self, n: usize) -> usize;
}

impl LetterSource for Word {
    fn materialized(&self) -> &[Letter] {
        self.letters()
    }

    fn materialize(&mut self, _n: usize) -> usize {
        self.len()
    }
}

/// Incremental closed-prefix scanner: after each pushed letter it reports
/// whether the whole scanned prefix is closed.
///
/// It maintains the KMP failure function plus, for every prefix length, the
/// number of occurrences of that prefix in the scanned word. The prefix of
/// length `k >= 2` is closed iff its longest border `b` is non-zero and the
/// length-`b` prefix has occurrence count exactly 2. A pass over `n` letters
/// costs `O(n)` amortized plus the border-chain walks, which stay short on
/// the aperiodic words this crate targets.
#[derive(Default)]
pub struct ClosedPrefixScanner {
    letters: Vec<Letter>,
    fail: Vec<usize>,
    prefix_occ: Vec<u32>,
}

impl ClosedPrefixScanner {
    pub fn new() -> Self {
        ClosedPrefixScanner {
            letters: Vec::new(),
            fail: Vec::new(),
            // Entry 0 is unused padding so prefix_occ[l] is the length-l prefix.
            prefix_occ: vec![0],
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Longest border length of the scanned prefix.
    pub fn longest_border(&self) -> usize {
        self.fail.last().copied().unwrap_or(0)
    }

    /// Pushes a letter; returns whether the scanned prefix is now closed.
    pub fn push(&mut self, a: Letter) -> bool {
        let i = self.letters.len();
        self.letters.push(a);
        let mut k = if i == 0 { 0 } else { self.fail[i - 1] };
        while k > 0 && self.letters[k] != a {
            k = self.fail[k - 1];
        }
        if i > 0 && self.letters[k] == a {
            k += 1;
        }
        self.fail.push(k);

        // Every border of the new prefix (and the prefix itself) ends here.
        self.prefix_occ.push(0);
        let n = i + 1;
        let mut l = n;
        while l > 0 {
            self.prefix_occ[l] += 1;
            l = self.fail[l - 1];
        }

        let b = self.fail[n - 1];
        n == 1 || (b > 0 && self.prefix_occ[b] == 2)
    }
}

/// `fail[i]`: length of the longest proper border of `s[..=i]`.
pub(crate) fn failure_function<T: PartialEq>(s: &[T]) -> Vec<usize> {
    let mut fail = vec![0usize; s.len()];
    let mut k = 0;
    for i in 1..s.len() {
        while k > 0 && s[i] != s[k] {
            k = fail[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i] = k;
    }
    fail
}

/// 0-based start positions of `pat` in `host` (KMP).
pub(crate) fn kmp_positions<T: PartialEq>(host: &[T], pat: &[T]) -> Vec<usize> {
    debug_assert!(!pat.is_empty());
    let mut out = Vec::new();
    if pat.len() > host.len() {
        return out;
    }
    let fail = failure_function(pat);
    let mut k = 0;
    for (i, c) in host.iter().enumerate() {
        while k > 0 && *c != pat[k] {
            k = fail[k - 1];
        }
        if *c == pat[k] {
            k += 1;
        }
        if k == pat.len() {
            out.push(i + 1 - k);
            k = fail[k - 1];
        }
    }
    out
}

pub(crate) fn kmp_count<T: PartialEq>(host: &[T], pat: &[T]) -> usize {
    debug_assert!(!pat.is_empty());
    if pat.len() > host.len() {
        return 0;
    }
    let fail = failure_function(pat);
    let mut count = 0;
    let mut k = 0;
    for c in host {
        while k > 0 && *c != pat[k] {
            k = fail[k - 1];
        }
        if *c == pat[k] {
            k += 1;
        }
        if k == pat.len() {
            count += 1;
            k = fail[k - 1];
        }
    }
    count
}

/// `z[i]`: length of the longest common prefix of `s` and `s[i..]`.
pub(crate) fn z_array<T: PartialEq>(s: &[T]) -> Vec<usize> {
    let n = s.len();
    let mut z = vec![0usize; n];
    if n == 0 {
        return z;
    }
    z[0] = n;
    let (mut l, mut r) = (0usize, 0usize);
    for i in 1..n {
        let mut k = if i < r { z[i - l].min(r - i) } else { 0 };
        while i + k < n && s[k] == s[i + k] {
            k += 1;
        }
        z[i] = k;
        if i + k > r {
            l = i;
            r = i + k;
        }
    }
    z
}

/// Length of the longest palindromic suffix of `s`.
///
/// A length-`l` suffix of `s` is a palindrome iff it equals the length-`l`
/// prefix of `s` reversed, so the failure function of `rev(s) # s` yields it
/// directly. Single letters make the result always >= 1 for non-empty `s`.
pub(crate) fn longest_palindromic_suffix(s: &[Letter]) -> usize {
    if s.is_empty() {
        return 0;
    }
    // Letters are < 36, so 0xFF is a safe separator.
    let mut buf: Vec<u8> = Vec::with_capacity(2 * s.len() + 1);
    buf.extend(s.iter().rev().map(|a| a.value()));
    buf.push(0xFF);
    buf.extend(s.iter().map(|a| a.value()));
    *failure_function(&buf).last().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn letter_chars_round_trip() {
        for v in 0..36 {
            let a = Letter::new(v).unwrap();
            assert_eq!(Letter::from_char(a.to_char()).unwrap(), a);
        }
        assert_eq!(Letter::new(10).unwrap().to_char(), 'a');
        assert_eq!(Letter::new(35).unwrap().to_char(), 'z');
        assert!(Letter::new(36).is_err());
        assert!(Letter::from_char('A').is_err());
    }

    #[test]
    fn word_display_parse_round_trip() {
        for s in ["", "0", "0102", "00100", "0z9a"] {
            assert_eq!(w(s).to_string(), s);
        }
        assert!("01x!".parse::<Word>().is_err());
    }

    #[test]
    fn reverse_and_palindromes() {
        assert_eq!(w("0102").reversed(), w("2010"));
        assert_eq!(w("").reversed(), w(""));
        assert!(w("").is_palindrome());
        assert!(w("0").is_palindrome());
        assert!(w("010").is_palindrome());
        assert!(!w("0102").is_palindrome());
    }

    #[test]
    fn palindromic_closure_examples() {
        assert_eq!(w("01").palindromic_closure(), w("010"));
        assert_eq!(w("0102").palindromic_closure(), w("0102010"));
        assert_eq!(w("").palindromic_closure(), w(""));
        assert_eq!(w("00").palindromic_closure(), w("00"));
        // (u_2 . 1)^+ = u_3 over A_2.
        assert_eq!(w("01").palindromic_closure(), w("010"));
    }

    #[test]
    fn occurrences_positions_are_one_based() {
        let occ = w("01001").occurrences(&w("01")).unwrap();
        assert_eq!(occ.positions(), &[1, 4]);
        assert_eq!(occ.count(), 2);
        let occ = w("0102010").occurrences(&w("010")).unwrap();
        assert_eq!(occ.positions(), &[1, 5]);
        // Overlapping occurrences all count.
        let occ = w("0000").occurrences(&w("00")).unwrap();
        assert_eq!(occ.positions(), &[1, 2, 3]);
        assert!(w("01").occurrences(&w("")).is_err());
        assert!(w("0").occurrences(&w("01")).unwrap().is_empty());
    }

    #[test]
    fn border_lengths_examples() {
        assert_eq!(w("00100").border_lengths(), vec![1, 2]);
        assert_eq!(w("01001").border_lengths(), vec![2]);
        assert_eq!(w("0102").border_lengths(), Vec::<usize>::new());
        assert_eq!(w("0").border_lengths(), Vec::<usize>::new());
        assert_eq!(w("").border_lengths(), Vec::<usize>::new());
    }

    #[test]
    fn closed_words() {
        assert!(w("0").is_closed());
        assert!(!w("").is_closed());
        assert!(!w("01").is_closed());
        assert!(w("00").is_closed());
        assert!(w("00100").is_closed());
        assert_eq!(w("00100").closed_border(), Some(w("00")));
        assert_eq!(w("0102").closed_border(), None);
        assert_eq!(w("0").closed_border(), None);
        // "01001010010" is the palindromic prefix u_5 of the Fibonacci word;
        // closed, with doubly-occurring border u_4.
        let u5 = w("01001010010");
        assert!(u5.is_closed());
        let b = u5.closed_border().unwrap();
        assert_eq!(b, w("010010"));
        assert_eq!(u5.count_occurrences(&b).unwrap(), 2);
        // The 5th Fibonacci word is open: every border recurs internally.
        let f5 = w("0100101001001");
        assert!(!f5.is_closed());
        assert_eq!(f5.closed_border(), None);
    }

    #[test]
    fn return_words_examples() {
        assert_eq!(w("00100").return_words(&w("00")).unwrap(), vec![w("001")]);
        // Return words of "0" in a Fibonacci prefix, in order of first appearance.
        let rw = w("01001010010").return_words(&w("0")).unwrap();
        assert_eq!(rw, vec![w("01"), w("0")]);
        assert!(matches!(
            w("00100").return_words(&w("001")),
            Err(Error::TooFewOccurrences { found: 1 })
        ));
    }

    #[test]
    fn complete_return_words_are_closed() {
        // v followed by its return word's host occurrence: r . v must be closed.
        let host = w("01001010010010100101001001");
        for v in ["0", "01", "010", "0100101"] {
            let v = w(v);
            for r in host.return_words(&v).unwrap() {
                let mut complete = r.clone();
                complete.push_word(&v);
                assert!(complete.is_closed(), "complete return {complete} of {v}");
            }
        }
    }

    #[test]
    fn scanner_matches_is_closed() {
        let host = w("0102010010201010201001020102010");
        let mut scanner = ClosedPrefixScanner::new();
        for k in 1..=host.len() {
            let closed = scanner.push(host.letter(k - 1));
            assert_eq!(closed, host.sub(0..k).is_closed(), "prefix length {k}");
        }
    }

    #[test]
    fn quotients() {
        assert_eq!(w("0102").strip_prefix_word(&w("01")), Some(w("02")));
        assert_eq!(w("0102").strip_prefix_word(&w("02")), None);
        assert_eq!(w("0102").strip_suffix_word(&w("02")), Some(w("01")));
        assert_eq!(w("0102").strip_suffix_word(&w("")), Some(w("0102")));
    }

    fn arb_word(max_m: u8, max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(0..max_m, 0..=max_len)
            .prop_map(|v| v.into_iter().map(Letter::unchecked).collect())
    }

    proptest! {
        #[test]
        fn occurrences_match_naive(host in arb_word(3, 40), pat in arb_word(3, 6)) {
            prop_assume!(!pat.is_empty());
            let fast = host.occurrences(&pat).unwrap();
            prop_assert_eq!(fast.positions(), &oracle::occurrence_positions(&host, &pat)[..]);
        }

        #[test]
        fn borders_match_naive(word in arb_word(3, 40)) {
            prop_assert_eq!(word.border_lengths(), oracle::border_lengths(&word));
        }

        #[test]
        fn closed_matches_naive(word in arb_word(2, 24)) {
            prop_assert_eq!(word.is_closed(), oracle::is_closed(&word));
            prop_assert_eq!(word.closed_border(), oracle::closed_border(&word));
        }

        #[test]
        fn closure_matches_naive(word in arb_word(3, 32)) {
            let fast = word.palindromic_closure();
            prop_assert_eq!(&fast, &oracle::palindromic_closure(&word));
            prop_assert!(fast.is_palindrome());
            prop_assert!(fast.starts_with(&word));
        }

        #[test]
        fn closure_is_idempotent(word in arb_word(4, 24)) {
            let once = word.palindromic_closure();
            prop_assert_eq!(once.palindromic_closure(), once);
        }

        #[test]
        fn reverse_is_an_involution(word in arb_word(36, 40)) {
            prop_assert_eq!(word.reversed().reversed(), word);
        }
    }
}
