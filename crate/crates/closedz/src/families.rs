//! The word families attached to the m-bonacci morphism.
//!
//! Fix `m >= 2` and write `phi` for the m-bonacci morphism. The families are
//!
//! - `h_n`: the m-bonacci prefixes, `h_n = phi^n(0)`; `h_{-1}` is the single
//!   letter `m-1`, which makes the reversal and tail identities below hold
//!   uniformly.
//! - `u_n`: the palindromic prefixes of the m-bonacci word, `u_1` empty.
//! - `w_n`: the Fibonacci singular words (`m = 2` only).
//! - `z_n`: the factors of the closed Ziv-Lempel factorization.
//! - `P_n = z_0 z_1 .. z_{n-1}`: the corresponding prefixes.
//! - `t_n`: the tail words with `h_{n-1}^R = t_n h_{n-2}^R`.
//!
//! Generators memoize by `(m, n)` and hand out shared `Arc<Word>`s; construction
//! refuses to materialize words longer than [`MATERIALIZE_CAP`] letters.
//! Lengths are also available through pure integer recurrences ([`lengths`]),
//! which never materialize words.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use once_cell::sync::Lazy;

use crate::morphism::{phi, FixedPointStream};
use crate::word::{Letter, Word};
use crate::{check_alphabet, Error, Result};

/// Materialization guard for family generators, in letters.
pub const MATERIALIZE_CAP: u128 = 100_000_000;

/// The modular markers used throughout the family constructions, extended to
/// negative `n` with euclidean remainders.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModMark {
    /// `n mod m`, as a letter.
    pub underline: Letter,
    /// Empty when `m` divides `n`, otherwise the letter `n mod m`.
    pub double_underline: Word,
    /// The word `0` when `m` divides `n`, otherwise empty.
    pub hat: Word,
}

pub fn mod_marks(m: u8, n: i64) -> Result<ModMark> {
    check_alphabet(m)?;
    let r = n.rem_euclid(m as i64) as u8;
    let underline = Letter::unchecked(r);
    Ok(ModMark {
        underline,
        double_underline: if r == 0 { Word::new() } else { Word::single(underline) },
        hat: if r == 0 { Word::single(Letter::unchecked(0)) } else { Word::new() },
    })
}

fn underline(m: u8, n: i64) -> Letter {
    Letter::unchecked(n.rem_euclid(m as i64) as u8)
}

/// The word `0` when `m | n`, otherwise empty.
fn hat(m: u8, n: i64) -> Word {
    if n.rem_euclid(m as i64) == 0 {
        Word::single(Letter::unchecked(0))
    } else {
        Word::new()
    }
}

type Cache = Lazy<RwLock<HashMap<(u8, i64), Arc<Word>>>>;

static H_CACHE: Cache = Lazy::new(Default::default);
static U_CACHE: Cache = Lazy::new(Default::default);
static Z_CACHE: Cache = Lazy::new(Default::default);
static P_CACHE: Cache = Lazy::new(Default::default);
static T_CACHE: Cache = Lazy::new(Default::default);
static W_CACHE: Cache = Lazy::new(Default::default);

/// Read-mostly memo table: concurrent readers, serialized insertion.
fn memoized(
    cache: &Cache,
    key: (u8, i64),
    build: impl FnOnce() -> Result<Word>,
) -> Result<Arc<Word>> {
    if let Some(hit) = cache.read().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let word = Arc::new(build()?);
    Ok(cache.write().unwrap().entry(key).or_insert(word).clone())
}

fn require_min(family: &'static str, n: i64, min: i64) -> Result<()> {
    if n < min {
        Err(Error::IndexOutOfRange { family, n, min })
    } else {
        Ok(())
    }
}

fn guard_cap(family: &'static str, m: u8, n: i64, len: impl FnOnce() -> Result<u128>) -> Result<()> {
    let need = len()?;
    if need > MATERIALIZE_CAP {
        Err(Error::WordTooLong { family, n, need, cap: MATERIALIZE_CAP })
    } else {
        let _ = m;
        Ok(())
    }
}

/// `h_n` for `n >= -1`: `h_{-1} = (m-1)`, `h_0 = 0`,
/// `h_n = h_{n-1} .. h_0 . n` for `1 <= n <= m-1`, and
/// `h_n = h_{n-1} .. h_{n-m}` for `n >= m`.
pub fn h(m: u8, n: i64) -> Result<Arc<Word>> {
    check_alphabet(m)?;
    require_min("h", n, -1)?;
    guard_cap("h", m, n, || h_len(m, n))?;
    memoized(&H_CACHE, (m, n), || {
        Ok(match n {
            -1 => Word::single(Letter::unchecked(m - 1)),
            0 => Word::single(Letter::unchecked(0)),
            n if n <= (m - 1) as i64 => {
                let mut out = Word::new();
                for k in (0..n).rev() {
                    out.push_word(&*h(m, k)?);
                }
                out.push(Letter::unchecked(n as u8));
                out
            }
            n => {
                let mut out = Word::new();
                for k in (n - m as i64..n).rev() {
                    out.push_word(&*h(m, k)?);
                }
                out
            }
        })
    })
}

/// The palindromic prefix `u_n` for `n >= 1`: `u_1` empty, `u_n = h_{n-2} u_{n-1}`.
pub fn u(m: u8, n: i64) -> Result<Arc<Word>> {
    check_alphabet(m)?;
    require_min("u", n, 1)?;
    guard_cap("u", m, n, || u_len(m, n))?;
    memoized(&U_CACHE, (m, n), || {
        if n == 1 {
            return Ok(Word::new());
        }
        let mut out = (*h(m, n - 2)?).clone();
        out.push_word(&*u(m, n - 1)?);
        Ok(out)
    })
}

/// The Fibonacci singular word `w_n` for `n >= -2` (alphabet `A_2`):
/// `w_{-2}` empty, `w_{-1} = 0`, `w_0 = 1`, and `w_n = a f_n b^{-1}` where
/// `ab` is the final 2-letter factor of the Fibonacci word `f_n = h_n`.
pub fn singular(n: i64) -> Result<Arc<Word>> {
    require_min("w", n, -2)?;
    guard_cap("w", 2, n, || h_len(2, n.max(0)))?;
    memoized(&W_CACHE, (2, n), || {
        Ok(match n {
            -2 => Word::new(),
            -1 => Word::single(Letter::unchecked(0)),
            0 => Word::single(Letter::unchecked(1)),
            n => {
                let f = h(2, n)?;
                let a = f.letter(f.len() - 2);
                let mut out = Word::single(a);
                out.push_word(&f.sub(0..f.len() - 1));
                out
            }
        })
    })
}

/// The closed Ziv-Lempel factor `z_n` for `n >= 0`, by the closed-form
/// products of reversed `h`-words:
///
/// - `z_0 = 0`, `z_1 = 1`, `z_2 = 00` over `A_2` and `020` otherwise;
/// - `m = 2`, `n >= 3`: `(n-3 mod 2)^{-1} h_{n-3}^R h_{n-2}^R . (n-2 mod 2)`;
/// - `m >= 3`, `3 <= n <= m-1`:
///   `(n-3)^{-1} h_{n-3}^R h_{n-2}^R . n . h_0^R .. h_{n-3}^R . (n-2)`;
/// - `m >= 3`, `n >= m`:
///   `(n-3 mod m)^{-1} h_{n-3}^R h_{n-2}^R h_{n-m}^R .. h_{n-3}^R . (n-2 mod m)`.
pub fn z(m: u8, n: i64) -> Result<Arc<Word>> {
    check_alphabet(m)?;
    require_min("z", n, 0)?;
    guard_cap("z", m, n, || z_len(m, n))?;
    memoized(&Z_CACHE, (m, n), || {
        Ok(match n {
            0 => Word::single(Letter::unchecked(0)),
            1 => Word::single(Letter::unchecked(1)),
            2 => {
                if m == 2 {
                    "00".parse().unwrap()
                } else {
                    "020".parse().unwrap()
                }
            }
            n => {
                let lead = underline(m, n - 3);
                let head = h(m, n - 3)?.reversed();
                let mut out = head
                    .strip_prefix_word(&Word::single(lead))
                    .ok_or_else(|| Error::ConstructionMismatch {
                        expected: format!("start h_{}^R with the letter {}", n - 3, lead),
                    })?;
                out.push_word(&h(m, n - 2)?.reversed());
                if m >= 3 && n <= (m - 1) as i64 {
                    out.push(Letter::unchecked(n as u8));
                    for i in 0..=n - 3 {
                        out.push_word(&h(m, i)?.reversed());
                    }
                } else if m >= 3 {
                    for i in n - m as i64..=n - 3 {
                        out.push_word(&h(m, i)?.reversed());
                    }
                }
                out.push(underline(m, n - 2));
                out
            }
        })
    })
}

/// `z_n` rebuilt through the morphic recursion
/// `z_n = hat(n-3)^{-1} phi(z_{n-1}) hat(n-2)` for `n >= 2`, starting from
/// `z_1 = 1`. Independent of [`z`]; the two routes are cross-checked by the
/// verification suite.
pub fn z_via_phi(m: u8, n: i64) -> Result<Word> {
    check_alphabet(m)?;
    require_min("z", n, 0)?;
    guard_cap("z", m, n, || z_len(m, n))?;
    if n == 0 {
        return Ok(Word::single(Letter::unchecked(0)));
    }
    let phi_m = phi(m)?;
    let mut cur = Word::single(Letter::unchecked(1));
    for k in 2..=n {
        let image = phi_m.apply(&cur)?;
        let head = hat(m, k - 3);
        let mut next = image.strip_prefix_word(&head).ok_or_else(|| {
            Error::ConstructionMismatch {
                expected: format!("start phi(z_{}) with {}", k - 1, head),
            }
        })?;
        next.push_word(&hat(m, k - 2));
        cur = next;
    }
    Ok(cur)
}

/// `P_n = z_0 z_1 .. z_{n-1}` for `n >= 0`.
pub fn p(m: u8, n: i64) -> Result<Arc<Word>> {
    check_alphabet(m)?;
    require_min("P", n, 0)?;
    guard_cap("P", m, n, || p_len(m, n))?;
    memoized(&P_CACHE, (m, n), || {
        if n == 0 {
            return Ok(Word::new());
        }
        let mut out = (*p(m, n - 1)?).clone();
        out.push_word(&*z(m, n - 1)?);
        Ok(out)
    })
}

/// `P_n` rebuilt through `P_n = phi(P_{n-1}) hat(n-3)` for `n >= 3`, from the
/// bases `P_0` empty, `P_1 = 0`, `P_2 = 01`. Independent of [`p`].
pub fn p_via_phi(m: u8, n: i64) -> Result<Word> {
    check_alphabet(m)?;
    require_min("P", n, 0)?;
    guard_cap("P", m, n, || p_len(m, n))?;
    let bases = ["", "0", "01"];
    if n <= 2 {
        return bases[n as usize].parse();
    }
    let phi_m = phi(m)?;
    let mut cur: Word = "01".parse().unwrap();
    for k in 3..=n {
        let mut next = phi_m.apply(&cur)?;
        next.push_word(&hat(m, k - 3));
        cur = next;
    }
    Ok(cur)
}

/// The tail word `t_n` for `n >= 2`, with `h_{n-1}^R = t_n h_{n-2}^R`:
/// `t_n = (n-1) h_0^R .. h_{n-3}^R` for `2 <= n <= m-1` and
/// `t_n = h_{n-m-1}^R h_{n-m}^R .. h_{n-3}^R` for `n >= m`.
pub fn t(m: u8, n: i64) -> Result<Arc<Word>> {
    check_alphabet(m)?;
    require_min("t", n, 2)?;
    guard_cap("t", m, n, || t_len(m, n))?;
    memoized(&T_CACHE, (m, n), || {
        let mut out = Word::new();
        if n <= (m - 1) as i64 {
            out.push(Letter::unchecked((n - 1) as u8));
            for i in 0..=n - 3 {
                out.push_word(&h(m, i)?.reversed());
            }
        } else {
            for i in n - m as i64 - 1..=n - 3 {
                out.push_word(&h(m, i)?.reversed());
            }
        }
        Ok(out)
    })
}

/// The predicted frontier of `z_n` for `n >= 2`:
/// `(n-3 mod m)^{-1} h_{n-3}^R . (n-2 mod m)`.
pub fn z_frontier(m: u8, n: i64) -> Result<Word> {
    check_alphabet(m)?;
    require_min("z", n, 2)?;
    let head = h(m, n - 3)?.reversed();
    let lead = underline(m, n - 3);
    let mut out = head
        .strip_prefix_word(&Word::single(lead))
        .ok_or_else(|| Error::ConstructionMismatch {
            expected: format!("start h_{}^R with the letter {}", n - 3, lead),
        })?;
    out.push(underline(m, n - 2));
    Ok(out)
}

/// A stream over the m-bonacci word, the fixed point of `phi_m` from 0.
pub fn mbonacci_stream(m: u8) -> Result<FixedPointStream> {
    phi(m)?.fixed_point(Letter::unchecked(0))
}

/// Families whose lengths are available without materializing words.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LengthFamily {
    H,
    U,
    Z,
    P,
}

/// Length of the family member, through pure integer recurrences.
pub fn lengths(m: u8, family: LengthFamily, n: i64) -> Result<u128> {
    check_alphabet(m)?;
    match family {
        LengthFamily::H => {
            require_min("h", n, -1)?;
            h_len(m, n)
        }
        LengthFamily::U => {
            require_min("u", n, 1)?;
            u_len(m, n)
        }
        LengthFamily::Z => {
            require_min("z", n, 0)?;
            z_len(m, n)
        }
        LengthFamily::P => {
            require_min("P", n, 0)?;
            p_len(m, n)
        }
    }
}

fn overflow(family: &'static str, n: i64) -> Error {
    Error::LengthOverflow { family, n }
}

/// `|h_{-1}|..|h_n|` as a vector (index `k+1` holds `|h_k|`).
fn h_len_ladder(m: u8, n: i64) -> Result<Vec<u128>> {
    let mut lens: Vec<u128> = vec![1, 1]; // h_{-1}, h_0
    for k in 1..=n {
        let len = if k <= (m - 1) as i64 {
            lens[1..]
                .iter()
                .try_fold(1u128, |acc, l| acc.checked_add(*l))
                .ok_or_else(|| overflow("h", n))?
        } else {
            lens[lens.len() - m as usize..]
                .iter()
                .try_fold(0u128, |acc, l| acc.checked_add(*l))
                .ok_or_else(|| overflow("h", n))?
        };
        lens.push(len);
    }
    Ok(lens)
}

fn h_len(m: u8, n: i64) -> Result<u128> {
    Ok(*h_len_ladder(m, n)?.last().unwrap())
}

fn u_len(m: u8, n: i64) -> Result<u128> {
    let h = h_len_ladder(m, n - 2)?;
    let mut len = 0u128;
    for k in 2..=n {
        len = len
            .checked_add(h[(k - 2 + 1) as usize])
            .ok_or_else(|| overflow("u", n))?;
    }
    Ok(len)
}

fn z_len(m: u8, n: i64) -> Result<u128> {
    match n {
        0 | 1 => Ok(1),
        2 => Ok(if m == 2 { 2 } else { 3 }),
        n => {
            let h = h_len_ladder(m, n - 2)?;
            let hl = |k: i64| h[(k + 1) as usize];
            let mut len = hl(n - 3)
                .checked_add(hl(n - 2))
                .ok_or_else(|| overflow("z", n))?;
            if m >= 3 && n <= (m - 1) as i64 {
                // The inserted letter n plus h_0^R..h_{n-3}^R plus the final letter,
                // minus the removed leading letter.
                len = len.checked_add(1).ok_or_else(|| overflow("z", n))?;
                for i in 0..=n - 3 {
                    len = len.checked_add(hl(i)).ok_or_else(|| overflow("z", n))?;
                }
            } else if m >= 3 {
                for i in n - m as i64..=n - 3 {
                    len = len.checked_add(hl(i)).ok_or_else(|| overflow("z", n))?;
                }
            }
            Ok(len)
        }
    }
}

fn p_len(m: u8, n: i64) -> Result<u128> {
    let mut len = 0u128;
    for k in 0..n {
        len = len
            .checked_add(z_len(m, k)?)
            .ok_or_else(|| overflow("P", n))?;
    }
    Ok(len)
}

/// `|t_n|`, following the branch structure of [`t`].
pub(crate) fn t_len(m: u8, n: i64) -> Result<u128> {
    require_min("t", n, 2)?;
    let h = h_len_ladder(m, n - 3)?;
    let hl = |k: i64| h[(k + 1) as usize];
    let mut len = 0u128;
    if n <= (m - 1) as i64 {
        len = 1;
        for i in 0..=n - 3 {
            len = len.checked_add(hl(i)).ok_or_else(|| overflow("t", n))?;
        }
    } else {
        for i in n - m as i64 - 1..=n - 3 {
            len = len.checked_add(hl(i)).ok_or_else(|| overflow("t", n))?;
        }
    }
    Ok(len)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn h_spot_values() {
        assert_eq!(*h(2, -1).unwrap(), w("1"));
        assert_eq!(*h(5, -1).unwrap(), w("4"));
        assert_eq!(*h(2, 5).unwrap(), w("0100101001001"));
        assert_eq!(*h(3, 5).unwrap(), w("010201001020101020100102"));
        assert_eq!(*h(4, 5).unwrap(), w("01020103010201001020103010201"));
        assert_eq!(*h(5, 5).unwrap(), w("0102010301020104010201030102010"));
    }

    #[test]
    fn h_is_a_prefix_chain_of_the_fixed_point() {
        for m in 2..=5u8 {
            let mut stream = mbonacci_stream(m).unwrap();
            for n in 0..=12 {
                let hn = h(m, n).unwrap();
                assert_eq!(
                    *hn,
                    stream.prefix_word(hn.len()),
                    "h_{n} over A_{m} vs fixed point"
                );
                assert_eq!(hn.len() as u128, lengths(m, LengthFamily::H, n).unwrap());
            }
        }
    }

    #[test]
    fn u_spot_values_and_phi_recursion() {
        assert_eq!(*u(3, 1).unwrap(), w(""));
        assert_eq!(*u(3, 2).unwrap(), w("0"));
        assert_eq!(*u(5, 6).unwrap(), w("0102010301020104010201030102010"));
        let phi_m = phi(4).unwrap();
        for n in 2..=12 {
            let mut expect = phi_m.apply(&u(4, n - 1).unwrap()).unwrap();
            expect.push(Letter::unchecked(0));
            assert_eq!(*u(4, n).unwrap(), expect, "u_{n} = phi(u_{}) 0", n - 1);
        }
    }

    #[test]
    fn u_is_palindromic() {
        for m in 2..=5u8 {
            for n in 1..=12 {
                assert!(u(m, n).unwrap().is_palindrome(), "u_{n} over A_{m}");
            }
        }
    }

    #[test]
    fn singular_words() {
        let expect = ["", "0", "1", "00", "101", "00100", "10100101", "0010010100100"];
        for (i, s) in expect.iter().enumerate() {
            assert_eq!(*singular(i as i64 - 2).unwrap(), w(s), "w_{}", i as i64 - 2);
        }
        // w_n = w_{n-2} w_{n-3} w_{n-2} for n >= 1.
        for n in 1..=14 {
            let direct = singular(n).unwrap();
            let side = Word::concat([
                &*singular(n - 2).unwrap(),
                &*singular(n - 3).unwrap(),
                &*singular(n - 2).unwrap(),
            ]);
            assert_eq!(*direct, side, "w_{n} recursion");
        }
    }

    #[test]
    fn z_spot_values() {
        assert_eq!(*z(2, 2).unwrap(), w("00"));
        assert_eq!(*z(3, 2).unwrap(), w("020"));
        assert_eq!(*z(3, 4).unwrap(), w("02010102"));
        assert_eq!(*z(4, 3).unwrap(), w("10301"));
        assert_eq!(*z(4, 5).unwrap(), w("010301020101020103"));
        assert_eq!(*z(5, 4).unwrap(), w("0201040102"));
        assert_eq!(*z(5, 5).unwrap(), w("0103010201001020103"));
    }

    #[test]
    fn z_closed_form_agrees_with_the_phi_recursion() {
        for m in 2..=5u8 {
            for n in 0..=14 {
                assert_eq!(
                    *z(m, n).unwrap(),
                    z_via_phi(m, n).unwrap(),
                    "z_{n} over A_{m}"
                );
            }
        }
    }

    #[test]
    fn p_is_a_prefix_of_the_fixed_point_and_matches_phi_recursion() {
        for m in 2..=5u8 {
            let mut stream = mbonacci_stream(m).unwrap();
            for n in 0..=12 {
                let pn = p(m, n).unwrap();
                assert_eq!(*pn, stream.prefix_word(pn.len()), "P_{n} over A_{m}");
                assert_eq!(*pn, p_via_phi(m, n).unwrap());
                assert_eq!(pn.len() as u128, lengths(m, LengthFamily::P, n).unwrap());
            }
        }
    }

    #[test]
    fn t_spot_values_and_tail_identity() {
        assert_eq!(*t(2, 2).unwrap(), w("1"));
        assert_eq!(*t(3, 2).unwrap(), w("1"));
        assert_eq!(*t(3, 3).unwrap(), w("20"));
        assert_eq!(*t(4, 4).unwrap(), w("3010"));
        for m in 2..=5u8 {
            for n in 2..=12 {
                let mut rhs = (*t(m, n).unwrap()).clone();
                rhs.push_word(&h(m, n - 2).unwrap().reversed());
                assert_eq!(h(m, n - 1).unwrap().reversed(), rhs, "h_{}^R = t_{n} h_{}^R", n - 1, n - 2);
                assert_eq!(t(m, n).unwrap().len() as u128, t_len(m, n).unwrap());
            }
        }
    }

    #[test]
    fn z_frontier_matches_the_computed_closed_border() {
        for m in 2..=5u8 {
            for n in 2..=12 {
                let zn = z(m, n).unwrap();
                assert_eq!(
                    zn.closed_border(),
                    Some(z_frontier(m, n).unwrap()),
                    "frontier of z_{n} over A_{m}"
                );
            }
        }
    }

    #[test]
    fn mod_mark_table() {
        let table = [
            (2, vec!["", "1", "", "1", "", "1", "", "1", "", "1"]),
            (3, vec!["", "1", "2", "", "1", "2", "", "1", "2", ""]),
            (4, vec!["", "1", "2", "3", "", "1", "2", "3", "", "1"]),
            (5, vec!["", "1", "2", "3", "4", "", "1", "2", "3", "4"]),
        ];
        for (m, row) in table {
            for (n, expect) in row.iter().enumerate() {
                let marks = mod_marks(m, n as i64).unwrap();
                assert_eq!(marks.double_underline, w(expect), "m={m} n={n}");
                assert_eq!(marks.underline.value(), n as u8 % m);
                assert_eq!(marks.hat.is_empty(), n as u8 % m != 0);
            }
        }
        // Euclidean extension: -1 mod m = m-1.
        assert_eq!(mod_marks(3, -1).unwrap().underline.value(), 2);
        assert!(mod_marks(3, -1).unwrap().hat.is_empty());
        assert!(!mod_marks(3, -3).unwrap().hat.is_empty());
    }

    #[test]
    fn lengths_match_materialized_words() {
        for m in 2..=5u8 {
            for n in 0..=15 {
                assert_eq!(
                    lengths(m, LengthFamily::Z, n).unwrap(),
                    z(m, n).unwrap().len() as u128
                );
                if n >= 1 {
                    assert_eq!(
                        lengths(m, LengthFamily::U, n).unwrap(),
                        u(m, n).unwrap().len() as u128
                    );
                }
            }
        }
    }

    #[test]
    fn index_bounds_are_enforced() {
        assert!(matches!(h(3, -2), Err(Error::IndexOutOfRange { family: "h", .. })));
        assert!(matches!(u(3, 0), Err(Error::IndexOutOfRange { family: "u", .. })));
        assert!(matches!(z(3, -1), Err(Error::IndexOutOfRange { family: "z", .. })));
        assert!(matches!(t(3, 1), Err(Error::IndexOutOfRange { family: "t", .. })));
        assert!(matches!(singular(-3), Err(Error::IndexOutOfRange { family: "w", .. })));
        assert!(matches!(p(3, -1), Err(Error::IndexOutOfRange { family: "P", .. })));
        assert!(h(1, 0).is_err());
        assert!(h(37, 0).is_err());
    }

    #[test]
    fn materialization_is_capped_but_lengths_still_work() {
        assert!(matches!(h(2, 150), Err(Error::WordTooLong { family: "h", .. })));
        assert!(lengths(2, LengthFamily::H, 150).unwrap() > MATERIALIZE_CAP);
        assert!(matches!(
            lengths(2, LengthFamily::H, 2000),
            Err(Error::LengthOverflow { .. })
        ));
    }
}
