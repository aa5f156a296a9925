//! oc-sequences and prefix classification.
//!
//! The oc-sequence of a word has a 1 in position `n` exactly when the length-`n`
//! prefix is closed. For m-bonacci words the sequence is structured: prefixes
//! split into type-1 (closed) and type-2 (open) runs delimited by the
//! palindromic-prefix ladder `|u_n|`, and for Tribonacci the whole sequence has
//! a closed form driven by the Tribonacci numbers.

use crate::families::{self, LengthFamily};
use crate::word::{ClosedPrefixScanner, LetterSource};
use crate::{check_alphabet, Result};

/// oc-sequence bits, 1-indexed by prefix length.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OcSequence {
    bits: Vec<bool>,
}

impl OcSequence {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        OcSequence { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Bit for the length-`n` prefix, `1 <= n <= len`.
    pub fn bit(&self, n: usize) -> bool {
        self.bits[n - 1]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn to_bit_string(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    /// Lengths of maximal 1-blocks, in order; a final block may be truncated
    /// by the end of the computed range.
    pub fn runs_of_ones(&self) -> Vec<usize> {
        let mut runs = Vec::new();
        let mut current = 0usize;
        for &b in &self.bits {
            if b {
                current += 1;
            } else if current > 0 {
                runs.push(current);
                current = 0;
            }
        }
        if current > 0 {
            runs.push(current);
        }
        runs
    }
}

/// oc-sequence of the first `n` prefixes of the source (fewer if a finite
/// source runs out). The scan extends one border computation per letter, so a
/// full pass is near-linear rather than one `is_closed` per prefix.
pub fn oc<S: LetterSource>(source: &mut S, n: usize) -> OcSequence {
    let have = source.materialize(n).min(n);
    let mut scanner = ClosedPrefixScanner::new();
    let bits = source.materialized()[..have]
        .iter()
        .map(|&a| scanner.push(a))
        .collect();
    OcSequence { bits }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PrefixKind {
    /// Closed: `|u_n| + |t_n| < L <= |u_{n+1}|`.
    Type1,
    /// Open: `|u_n| < L <= |u_n| + |t_n|`.
    Type2,
    /// The length-1 prefix, closed; `t_1` is undefined so the classifier
    /// special-cases it.
    SingleLetter,
}

/// Where a prefix length lands in the palindromic-prefix ladder.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrefixClass {
    /// The `n` with `|u_n| < L <= |u_{n+1}|`.
    pub n_of_w: i64,
    pub kind: PrefixKind,
}

impl PrefixClass {
    pub fn is_closed(&self) -> bool {
        !matches!(self.kind, PrefixKind::Type2)
    }
}

/// Classify the length-`length` prefix of the m-bonacci word by the ladder
/// inequalities, without materializing anything.
pub fn classify_prefix(m: u8, length: u128) -> Result<PrefixClass> {
    check_alphabet(m)?;
    assert!(length >= 1, "prefixes have length at least 1");
    let mut n = 1i64;
    while families::lengths(m, LengthFamily::U, n + 1)? < length {
        n += 1;
    }
    if n == 1 {
        debug_assert_eq!(length, 1);
        return Ok(PrefixClass { n_of_w: 1, kind: PrefixKind::SingleLetter });
    }
    let u_n = families::lengths(m, LengthFamily::U, n)?;
    let kind = if u_n + families::t_len(m, n)? < length {
        PrefixKind::Type1
    } else {
        PrefixKind::Type2
    };
    Ok(PrefixClass { n_of_w: n, kind })
}

/// The closed form of the Tribonacci oc-sequence: `10` followed by the blocks
/// `1^{T_i} 0^{T_{i-1} + T_i}` for `i >= 0`, where `T_{-1} = T_0 = 1`,
/// `T_1 = 2`, and `T_i = T_{i-1} + T_{i-2} + T_{i-3}`.
pub fn tribonacci_oc_closed_form(n: usize) -> OcSequence {
    let mut bits = Vec::with_capacity(n);
    bits.push(true);
    if n >= 2 {
        bits.push(false);
    }
    let mut t = [1usize, 1, 2]; // T_{i-1}, T_i, T_{i+1} rolling
    while bits.len() < n {
        let (prev, cur) = (t[0], t[1]);
        bits.extend(std::iter::repeat(true).take(cur));
        bits.extend(std::iter::repeat(false).take(prev + cur));
        t = [t[1], t[2], t[0] + t[1] + t[2]];
    }
    bits.truncate(n);
    OcSequence { bits }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::mbonacci_stream;
    use crate::oracle;
    use crate::word::Word;

    const TRIBONACCI_OC_24: &str = "101001100011110000001111";

    #[test]
    fn tribonacci_oc_table_row() {
        let mut stream = mbonacci_stream(3).unwrap();
        assert_eq!(oc(&mut stream, 24).to_bit_string(), TRIBONACCI_OC_24);
    }

    #[test]
    fn oc_of_any_word_starts_with_one() {
        let mut word: Word = "2101".parse().unwrap();
        let seq = oc(&mut word, 1);
        assert_eq!(seq.to_bit_string(), "1");
        assert!(seq.bit(1));
    }

    #[test]
    fn oc_matches_the_naive_oracle() {
        for m in 2..=4u8 {
            let mut stream = mbonacci_stream(m).unwrap();
            let prefix = stream.prefix_word(200);
            let fast = oc(&mut stream, 200);
            let naive = oracle::oc_bits(&prefix, 200);
            assert_eq!(fast.bits(), &naive[..], "m = {m}");
        }
    }

    #[test]
    fn finite_sources_clamp() {
        let mut word: Word = "00".parse().unwrap();
        assert_eq!(oc(&mut word, 10).to_bit_string(), "11");
    }

    #[test]
    fn run_lengths() {
        let seq = tribonacci_oc_closed_form(24);
        assert_eq!(seq.to_bit_string(), TRIBONACCI_OC_24);
        assert_eq!(seq.runs_of_ones(), vec![1, 1, 2, 4, 4]);
        assert_eq!(
            OcSequence::from_bits(vec![true, false, false]).runs_of_ones(),
            vec![1]
        );
        assert!(OcSequence::from_bits(vec![false]).runs_of_ones().is_empty());
    }

    #[test]
    fn closed_form_matches_the_scan() {
        let mut stream = mbonacci_stream(3).unwrap();
        assert_eq!(oc(&mut stream, 3000), tribonacci_oc_closed_form(3000));
    }

    #[test]
    fn classifier_examples() {
        let c = classify_prefix(3, 4).unwrap();
        assert_eq!((c.n_of_w, c.kind), (3, PrefixKind::Type2));
        let c = classify_prefix(3, 6).unwrap();
        assert_eq!((c.n_of_w, c.kind), (3, PrefixKind::Type1));
        for m in 2..=5 {
            let c = classify_prefix(m, 1).unwrap();
            assert_eq!((c.n_of_w, c.kind), (1, PrefixKind::SingleLetter));
            assert!(c.is_closed());
        }
    }

    #[test]
    fn classifier_agrees_with_the_oc_scan() {
        for m in 2..=5u8 {
            let mut stream = mbonacci_stream(m).unwrap();
            let seq = oc(&mut stream, 600);
            for length in 1..=600usize {
                let class = classify_prefix(m, length as u128).unwrap();
                assert_eq!(
                    class.is_closed(),
                    seq.bit(length),
                    "m = {m}, length = {length}, class {class:?}"
                );
            }
        }
    }
}
