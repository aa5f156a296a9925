//! Greedy factorization schemes.
//!
//! All five schemes scan left to right and cut one factor at a time:
//!
//! - `z`: the shortest prefix of the remainder that occurs exactly once in the
//!   emitted text extended by that prefix (Ziv-Lempel).
//! - `cz`: the shortest such prefix that is also closed.
//! - `pz`: the shortest such prefix that is also a palindrome.
//! - `c`: the longest prefix of the remainder occurring starting strictly
//!   earlier, or a fresh single letter (Crochemore).
//! - `cc`: the closed variant of `c`; two candidate definitions are exposed
//!   through [`CcMode`] (they are expected to coincide and the verification
//!   suite reports both).
//!
//! `z`/`cz`/`pz` run over any [`LetterSource`], so infinite fixed-point streams
//! work with a factor-count budget; `c`/`cc` take finite words. A factorization
//! truncated mid-factor by the end of a finite source or a letter budget keeps
//! the partial factor and is flagged `complete = false`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::word::{z_array, ClosedPrefixScanner, Letter, LetterSource, Word};
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Scheme {
    Z,
    Cz,
    Pz,
    C,
    Cc,
}

impl Scheme {
    pub fn tag(self) -> &'static str {
        match self {
            Scheme::Z => "z",
            Scheme::Cz => "cz",
            Scheme::Pz => "pz",
            Scheme::C => "c",
            Scheme::Cc => "cc",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "z" => Ok(Scheme::Z),
            "cz" => Ok(Scheme::Cz),
            "pz" => Ok(Scheme::Pz),
            "c" => Ok(Scheme::C),
            "cc" => Ok(Scheme::Cc),
            other => Err(Error::SchemeParse(other.to_string())),
        }
    }
}

/// How much of the source to factorize: a factor count (the natural unit for
/// infinite streams) or a cap on consumed letters (the natural unit for finite
/// words).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Budget {
    Factors(usize),
    Letters(usize),
}

/// Candidate definitions of the closed `c`-factor.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum CcMode {
    /// Longest closed prefix of the remainder occurring starting strictly
    /// before the current position; fresh single letter when none does.
    #[default]
    LongestClosed,
    /// Longest closed prefix occurring at least twice in the emitted text
    /// extended by the candidate; fresh single letter when none does.
    Alternative,
}

impl CcMode {
    pub fn tag(self) -> &'static str {
        match self {
            CcMode::LongestClosed => "cc-longest-closed",
            CcMode::Alternative => "cc-alternative",
        }
    }
}

impl fmt::Display for CcMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for CcMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cc-longest-closed" => Ok(CcMode::LongestClosed),
            "cc-alternative" => Ok(CcMode::Alternative),
            other => Err(Error::ModeParse(other.to_string())),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factorization {
    pub scheme: Scheme,
    pub factors: Vec<Word>,
    /// False when the final factor was truncated by the end of a finite
    /// source or a letter budget.
    pub complete: bool,
}

impl Factorization {
    /// Total number of letters across all factors.
    pub fn total_len(&self) -> usize {
        self.factors.iter().map(Word::len).sum()
    }

    /// Concatenation of the factors: the consumed prefix of the source.
    pub fn word(&self) -> Word {
        Word::concat(&self.factors)
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.factors.iter().map(Word::len).collect()
    }

    pub fn report(&self, m: Option<u8>) -> FactorizationReport {
        FactorizationReport {
            m,
            scheme: self.scheme.tag().to_string(),
            complete: self.complete,
            factors: self
                .factors
                .iter()
                .enumerate()
                .map(|(index, w)| FactorEntry {
                    index,
                    word: w.to_string(),
                    length: w.len(),
                })
                .collect(),
        }
    }

    pub fn from_report(report: &FactorizationReport) -> Result<Factorization> {
        let scheme: Scheme = report.scheme.parse()?;
        let mut factors = Vec::with_capacity(report.factors.len());
        for entry in &report.factors {
            let w: Word = entry.word.parse()?;
            if w.len() != entry.length {
                return Err(Error::ConstructionMismatch {
                    expected: format!(
                        "factor {} length {} to match its {}-letter word",
                        entry.index,
                        entry.length,
                        w.len()
                    ),
                });
            }
            factors.push(w);
        }
        Ok(Factorization { scheme, factors, complete: report.complete })
    }
}

/// Serialization form of a [`Factorization`]; `m` records the alphabet of the
/// source when it was an m-bonacci stream, and is null for file input.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FactorizationReport {
    pub m: Option<u8>,
    pub scheme: String,
    pub complete: bool,
    pub factors: Vec<FactorEntry>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FactorEntry {
    pub index: usize,
    pub word: String,
    pub length: usize,
}

/// lcp of `text[p..]` against every earlier start: entry `q < p` holds the
/// length of the longest common prefix of `text[p..]` and `text[q..]`.
fn earlier_lcps(text: &[Letter], p: usize) -> Vec<usize> {
    let s = &text[p..];
    let mut x: Vec<u16> = Vec::with_capacity(s.len() + 1 + text.len());
    x.extend(s.iter().map(|a| a.value() as u16));
    x.push(u16::MAX);
    x.extend(text.iter().map(|a| a.value() as u16));
    let z = z_array(&x);
    (0..p).map(|q| z[s.len() + 1 + q]).collect()
}

/// Longest prefix of `text[p..]` occurring at some start `q < p` (overlap into
/// the candidate region allowed). `clipped` is true when a longer text could
/// raise the value: some best match ran into the end of `text`, or the whole
/// remainder matched.
fn l_max(text: &[Letter], p: usize) -> (usize, bool) {
    let s_len = text.len() - p;
    let mut best = 0;
    let mut clipped = false;
    for (q, lcp) in earlier_lcps(text, p).into_iter().enumerate() {
        if lcp > best {
            best = lcp;
        }
        if q + lcp == text.len() {
            clipped = true;
        }
    }
    (best, clipped || best == s_len)
}

/// A factor is a prefix `u` of the remainder occurring exactly once in
/// `emitted . u`; occurrences starting earlier are exactly those counted by
/// [`l_max`], so `u` qualifies iff `|u|` exceeds it.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum ZKind {
    Plain,
    Closed,
    Palindromic,
}

impl ZKind {
    fn scheme(self) -> Scheme {
        match self {
            ZKind::Plain => Scheme::Z,
            ZKind::Closed => Scheme::Cz,
            ZKind::Palindromic => Scheme::Pz,
        }
    }

    /// Shortest qualifying factor length within `text[p..]`, given the final
    /// `l_max` bound, or None when the remainder has no qualifying prefix.
    fn shortest(self, text: &[Letter], p: usize, bound: usize) -> Option<usize> {
        let s = &text[p..];
        match self {
            ZKind::Plain => (bound < s.len()).then_some(bound + 1),
            ZKind::Closed => {
                let mut scanner = ClosedPrefixScanner::new();
                for (i, &a) in s.iter().enumerate() {
                    let closed = scanner.push(a);
                    if i + 1 > bound && closed {
                        return Some(i + 1);
                    }
                }
                None
            }
            ZKind::Palindromic => {
                // Prefix of length l is a palindrome iff the reversal of s,
                // from offset |s|-l, matches s for exactly l letters.
                let mut x: Vec<u16> = Vec::with_capacity(2 * s.len() + 1);
                x.extend(s.iter().map(|a| a.value() as u16));
                x.push(u16::MAX);
                x.extend(s.iter().rev().map(|a| a.value() as u16));
                let z = z_array(&x);
                (bound + 1..=s.len()).find(|&l| z[2 * s.len() + 1 - l] == l)
            }
        }
    }
}

fn budget_limits(budget: Budget) -> Result<(usize, usize)> {
    match budget {
        Budget::Factors(0) | Budget::Letters(0) => Err(Error::EmptyBudget),
        Budget::Factors(k) => Ok((k, usize::MAX)),
        Budget::Letters(cap) => Ok((usize::MAX, cap)),
    }
}

fn run_z_like<S: LetterSource>(source: &mut S, kind: ZKind, budget: Budget) -> Result<Factorization> {
    let (max_factors, letter_cap) = budget_limits(budget)?;
    let mut factors: Vec<Word> = Vec::new();
    let mut complete = true;
    let mut p = 0usize;
    while factors.len() < max_factors {
        // Search horizon over the remainder, doubled whenever the verdict
        // could still change with more text in view.
        let mut window = 64usize.max(factors.last().map_or(0, Word::len) * 2);
        let found = loop {
            let want = letter_cap.min(p.saturating_add(window));
            let achieved = source.materialize(want);
            let text = &source.materialized()[..achieved.min(letter_cap)];
            // The source is done giving when it fell short of the request;
            // the cap is a hard ceiling either way.
            let can_grow = achieved >= want && text.len() < letter_cap;
            if p == text.len() && !can_grow {
                break None; // source exactly consumed at a factor boundary
            }
            let (bound, clipped) = l_max(text, p);
            if clipped && can_grow {
                window = window.saturating_mul(2);
                continue;
            }
            match kind.shortest(text, p, bound) {
                Some(l) => break Some(Word::from(&text[p..p + l])),
                None if can_grow => window = window.saturating_mul(2),
                None => {
                    // Exhausted mid-factor: keep the partial remainder.
                    if p < text.len() {
                        factors.push(Word::from(&text[p..]));
                        p = text.len();
                    }
                    complete = false;
                    break None;
                }
            }
        };
        match found {
            Some(f) => {
                p += f.len();
                factors.push(f);
            }
            None => break,
        }
    }
    Ok(Factorization { scheme: kind.scheme(), factors, complete })
}

pub fn z_factorize<S: LetterSource>(source: &mut S, budget: Budget) -> Result<Factorization> {
    run_z_like(source, ZKind::Plain, budget)
}

pub fn closed_z_factorize<S: LetterSource>(source: &mut S, budget: Budget) -> Result<Factorization> {
    run_z_like(source, ZKind::Closed, budget)
}

pub fn palindromic_z_factorize<S: LetterSource>(
    source: &mut S,
    budget: Budget,
) -> Result<Factorization> {
    run_z_like(source, ZKind::Palindromic, budget)
}

/// Crochemore factorization of a finite word: each factor is the longest
/// prefix of the remainder occurring starting strictly earlier, or the next
/// letter when it has not occurred before.
pub fn c_factorize(w: &Word) -> Factorization {
    let text = w.letters();
    let mut factors = Vec::new();
    let mut p = 0;
    while p < text.len() {
        let (bound, _) = l_max(text, p);
        let l = bound.max(1);
        factors.push(Word::from(&text[p..p + l]));
        p += l;
    }
    Factorization { scheme: Scheme::C, factors, complete: true }
}

/// Closed Crochemore factorization of a finite word under the chosen
/// candidate definition; see [`CcMode`].
pub fn closed_c_factorize(w: &Word, mode: CcMode) -> Factorization {
    let text = w.letters();
    let mut factors = Vec::new();
    let mut p = 0;
    while p < text.len() {
        let l = match mode {
            CcMode::LongestClosed => {
                let (bound, _) = l_max(text, p);
                let mut scanner = ClosedPrefixScanner::new();
                let mut best = 0;
                for i in 0..bound {
                    if scanner.push(text[p + i]) {
                        best = i + 1;
                    }
                }
                best.max(1)
            }
            CcMode::Alternative => {
                // Literal reading: count occurrences of each closed candidate
                // in the emitted text extended by the candidate. A candidate
                // of length l starting at q <= p lies inside text[..p+l] iff
                // q <= p, so the count is 1 + #{q < p : lcp(q) >= l}.
                let s_len = text.len() - p;
                let lcps = earlier_lcps(text, p);
                let mut at_least = vec![0usize; s_len + 2];
                for lcp in lcps {
                    at_least[lcp.min(s_len)] += 1;
                }
                for l in (0..=s_len).rev().skip(1) {
                    at_least[l] += at_least[l + 1];
                }
                let mut scanner = ClosedPrefixScanner::new();
                let mut best = 0;
                for i in 0..s_len {
                    let closed = scanner.push(text[p + i]);
                    if closed && 1 + at_least[i + 1] >= 2 {
                        best = i + 1;
                    }
                }
                best.max(1)
            }
        };
        factors.push(Word::from(&text[p..p + l]));
        p += l;
    }
    Factorization { scheme: Scheme::Cc, factors, complete: true }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{mbonacci_stream, singular};
    use crate::oracle;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn words(items: &[&str]) -> Vec<Word> {
        items.iter().map(|s| w(s)).collect()
    }

    #[test]
    fn fibonacci_z_factors_are_the_singular_words() {
        let mut stream = mbonacci_stream(2).unwrap();
        let f = z_factorize(&mut stream, Budget::Factors(7)).unwrap();
        assert!(f.complete);
        let expect: Vec<Word> = (-1..=5).map(|n| (*singular(n).unwrap()).clone()).collect();
        assert_eq!(f.factors, expect);
    }

    #[test]
    fn single_letter_word_under_every_scheme() {
        let word = w("0");
        for scheme in [Scheme::Z, Scheme::Cz, Scheme::Pz] {
            let mut src = word.clone();
            let f = run_z_like(
                &mut src,
                match scheme {
                    Scheme::Z => ZKind::Plain,
                    Scheme::Cz => ZKind::Closed,
                    _ => ZKind::Palindromic,
                },
                Budget::Letters(1),
            )
            .unwrap();
            assert_eq!(f.factors, words(&["0"]), "{scheme}");
            assert!(f.complete);
        }
        assert_eq!(c_factorize(&word).factors, words(&["0"]));
        assert_eq!(closed_c_factorize(&word, CcMode::LongestClosed).factors, words(&["0"]));
        assert_eq!(closed_c_factorize(&word, CcMode::Alternative).factors, words(&["0"]));
    }

    #[test]
    fn closed_z_of_small_streams() {
        let mut tri = mbonacci_stream(3).unwrap();
        let f = closed_z_factorize(&mut tri, Budget::Factors(6)).unwrap();
        assert_eq!(
            f.factors,
            words(&["0", "1", "020", "1001", "02010102", "010010201020100"])
        );

        let mut fib = mbonacci_stream(2).unwrap();
        let f = closed_z_factorize(&mut fib, Budget::Factors(6)).unwrap();
        assert_eq!(f.factors, words(&["0", "1", "00", "101", "00100", "10100101"]));

        let mut five = mbonacci_stream(5).unwrap();
        let f = closed_z_factorize(&mut five, Budget::Factors(6)).unwrap();
        assert_eq!(
            f.factors[3..],
            words(&["10301", "0201040102", "0103010201001020103"])[..]
        );
    }

    #[test]
    fn emitted_factors_occur_exactly_once_in_the_emitted_prefix() {
        for m in [2u8, 3] {
            for kind in [ZKind::Plain, ZKind::Closed, ZKind::Palindromic] {
                let mut stream = mbonacci_stream(m).unwrap();
                let f = run_z_like(&mut stream, kind, Budget::Factors(8)).unwrap();
                let mut emitted = Word::new();
                for factor in &f.factors {
                    emitted.push_word(factor);
                    assert_eq!(
                        emitted.count_occurrences(factor).unwrap(),
                        1,
                        "kind {kind:?}, m {m}, factor {factor}"
                    );
                }
            }
        }
    }

    #[test]
    fn scheme_postconditions_hold() {
        let mut stream = mbonacci_stream(4).unwrap();
        let f = closed_z_factorize(&mut stream, Budget::Factors(10)).unwrap();
        assert!(f.factors.iter().all(Word::is_closed));

        let mut stream = mbonacci_stream(4).unwrap();
        let f = palindromic_z_factorize(&mut stream, Budget::Factors(10)).unwrap();
        assert!(f.factors.iter().all(Word::is_palindrome));
    }

    #[test]
    fn letter_budget_truncates_and_flags() {
        // Fibonacci prefix of length 7 = "0100101"; cz = 0 | 1 | 00 | 101,
        // exactly 7 letters, so the cut is clean...
        let mut fib = mbonacci_stream(2).unwrap();
        let f = closed_z_factorize(&mut fib, Budget::Letters(7)).unwrap();
        assert!(f.complete);
        assert_eq!(f.factors, words(&["0", "1", "00", "101"]));

        // ...while one letter more lands mid-factor and truncates.
        let mut fib = mbonacci_stream(2).unwrap();
        let f = closed_z_factorize(&mut fib, Budget::Letters(8)).unwrap();
        assert!(!f.complete);
        assert_eq!(f.factors, words(&["0", "1", "00", "101", "0"]));
        assert_eq!(f.total_len(), 8);
    }

    #[test]
    fn zero_budget_is_rejected() {
        let mut fib = mbonacci_stream(2).unwrap();
        assert!(matches!(
            z_factorize(&mut fib, Budget::Factors(0)),
            Err(Error::EmptyBudget)
        ));
        assert!(matches!(
            z_factorize(&mut fib, Budget::Letters(0)),
            Err(Error::EmptyBudget)
        ));
    }

    #[test]
    fn c_factorization_examples() {
        assert_eq!(c_factorize(&w("00")).factors, words(&["0", "0"]));
        let fib13 = w("0100101001001");
        assert_eq!(
            c_factorize(&fib13).lengths(),
            oracle::c_factorization(&fib13).iter().map(Word::len).collect::<Vec<_>>()
        );
    }

    #[test]
    fn cc_modes_agree_on_structured_input() {
        let mut stream = mbonacci_stream(3).unwrap();
        stream.materialize(4096);
        let prefix = stream.prefix_word(4096);
        let a = closed_c_factorize(&prefix, CcMode::LongestClosed);
        let b = closed_c_factorize(&prefix, CcMode::Alternative);
        assert_eq!(a.factors, b.factors);
        assert!(a.factors.iter().all(Word::is_closed));
        assert_eq!(a.total_len(), 4096);
    }

    #[test]
    fn report_round_trips_and_matches_schema() {
        let mut tri = mbonacci_stream(3).unwrap();
        let f = closed_z_factorize(&mut tri, Budget::Factors(3)).unwrap();
        let report = f.report(Some(3));
        let json = serde_json::to_string(&report).unwrap();
        assert_eq!(
            json,
            "{\"m\":3,\"scheme\":\"cz\",\"complete\":true,\"factors\":[\
             {\"index\":0,\"word\":\"0\",\"length\":1},\
             {\"index\":1,\"word\":\"1\",\"length\":1},\
             {\"index\":2,\"word\":\"020\",\"length\":3}]}"
        );
        let parsed: FactorizationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(serde_json::to_string(&parsed).unwrap(), json);
        assert_eq!(Factorization::from_report(&parsed).unwrap(), f);

        let file_report = f.report(None);
        assert!(serde_json::to_string(&file_report).unwrap().starts_with("{\"m\":null,"));
    }

    #[test]
    fn from_report_rejects_inconsistent_lengths() {
        let report = FactorizationReport {
            m: None,
            scheme: "z".into(),
            complete: true,
            factors: vec![FactorEntry { index: 0, word: "01".into(), length: 3 }],
        };
        assert!(matches!(
            Factorization::from_report(&report),
            Err(Error::ConstructionMismatch { .. })
        ));
        let report = FactorizationReport {
            m: None,
            scheme: "zz".into(),
            complete: true,
            factors: vec![],
        };
        assert!(matches!(Factorization::from_report(&report), Err(Error::SchemeParse(_))));
    }

    fn arb_word(max_m: u8, max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(0..max_m, 1..=max_len)
            .prop_map(|v| v.into_iter().map(Letter::unchecked).collect())
    }

    proptest! {
        #[test]
        fn z_like_schemes_match_the_oracle(word in arb_word(4, 60)) {
            let cap = Budget::Letters(word.len());
            for kind in [ZKind::Plain, ZKind::Closed, ZKind::Palindromic] {
                let f = run_z_like(&mut word.clone(), kind, cap).unwrap();
                let (expect, complete) = match kind {
                    ZKind::Plain => oracle::z_factorization(&word, None),
                    ZKind::Closed => oracle::closed_z_factorization(&word, None),
                    ZKind::Palindromic => oracle::palindromic_z_factorization(&word, None),
                };
                prop_assert_eq!(&f.factors, &expect, "kind {:?} on {}", kind, word);
                prop_assert_eq!(f.complete, complete);
                prop_assert_eq!(f.word(), word.clone());
            }
        }

        #[test]
        fn c_and_cc_match_the_oracle(word in arb_word(3, 50)) {
            prop_assert_eq!(c_factorize(&word).factors, oracle::c_factorization(&word));
            prop_assert_eq!(
                closed_c_factorize(&word, CcMode::LongestClosed).factors,
                oracle::closed_c_factorization(&word)
            );
            prop_assert_eq!(
                closed_c_factorize(&word, CcMode::Alternative).factors,
                oracle::closed_c_factorization_alt(&word)
            );
        }

        #[test]
        fn factor_budget_is_a_prefix_of_the_full_run(word in arb_word(3, 40), k in 1usize..6) {
            let full = run_z_like(&mut word.clone(), ZKind::Closed, Budget::Letters(word.len())).unwrap();
            let head = run_z_like(&mut word.clone(), ZKind::Closed, Budget::Factors(k)).unwrap();
            let take = k.min(full.factors.len());
            prop_assert_eq!(&head.factors[..], &full.factors[..take]);
            // A factor budget truncates mid-factor only when the run reaches
            // the full factorization's own truncated tail.
            prop_assert!(head.complete || (k >= full.factors.len() && !full.complete));
        }
    }
}
