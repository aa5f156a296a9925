//! Combinatorics on words for the m-bonacci family: word generation,
//! closed/palindromic Ziv-Lempel factorizations, and oc-sequences.
//!
//! A finite word is *closed* if it is a single letter or has a border that
//! occurs exactly twice in it (once as a prefix, once as a suffix, never
//! inside). This crate builds the classical word families attached to the
//! m-bonacci morphism 0 -> 01, 1 -> 02, ..., (m-1) -> 0 and exposes the
//! greedy factorizations whose factors are pinned down by those families:
//!
//! - [`word`]: letters, words, borders, occurrence counting, palindromic
//!   closure, return words, and the closed-word predicate.
//! - [`morphism`]: morphisms over small alphabets, composition, fixed-point
//!   streaming, and the m-bonacci morphism family (phi, psi, mu).
//! - [`families`]: the words h_n, u_n, w_n (Fibonacci singular words), z_n,
//!   P_n, t_n, with memoized construction and integer length recurrences.
//! - [`factorize`]: z, cz (closed), pz (palindromic), c (Crochemore), and
//!   cc (closed Crochemore) factorizations over finite words and streams.
//! - [`ocseq`]: the oc-sequence (which prefixes are closed), its run
//!   structure, and prefix classification by the palindromic-prefix ladder.
//! - [`verify`]: an executable property-check harness covering the algebraic
//!   identities the other modules rely on, plus the open length conjecture
//!   for closed Crochemore factors.
//! - [`oracle`]: slow, independent reference implementations used by the
//!   test suites to cross-check the fast paths.
//!
//! The `examples/` directory demonstrates each capability end to end; the
//! `closedz` binary wraps the same entry points in a small CLI.

pub mod families;
pub mod factorize;
pub mod morphism;
pub mod ocseq;
pub mod oracle;
pub mod verify;
pub mod word;

pub use word::{Letter, Word};

/// Errors reported by library operations. Messages name the violated bound.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("alphabet size must be in 2..=36, got {0}")]
    AlphabetSize(u32),
    #[error("letter {letter} is outside the alphabet of size {m}")]
    LetterOutsideAlphabet { letter: u8, m: u8 },
    #[error("letter value must be below 36, got {0}")]
    LetterValue(u32),
    #[error("character {0:?} is not a letter (expected 0-9 or a-z)")]
    LetterChar(char),
    #[error("occurrence counting requires a non-empty factor")]
    EmptyPattern,
    #[error("return words need at least 2 occurrences of the factor, found {found}")]
    TooFewOccurrences { found: usize },
    #[error("morphism must define exactly {m} images, got {images}")]
    ImageCount { m: u8, images: usize },
    #[error("morphism composition needs matching alphabets, got {left} and {right}")]
    AlphabetMismatch { left: u8, right: u8 },
    #[error("morphism is not prolongable on letter {0}: the image must start with the letter and have length >= 2")]
    NotProlongable(u8),
    #[error("morphism is erasing (letter {0} has an empty image), fixed points need non-erasing morphisms")]
    Erasing(u8),
    #[error("word is not in the image of the m-bonacci morphism: {reason} at position {position}")]
    NotDecodable { position: usize, reason: &'static str },
    #[error("morphism line {line}: {reason}")]
    MorphismParse { line: usize, reason: &'static str },
    #[error("index n={n} is out of range for family {family} (minimum {min})")]
    IndexOutOfRange {
        family: &'static str,
        n: i64,
        min: i64,
    },
    #[error("length of {family} at n={n} overflows the length arithmetic")]
    LengthOverflow { family: &'static str, n: i64 },
    #[error("{family} at n={n} would need {need} letters, above the materialization cap of {cap}")]
    WordTooLong {
        family: &'static str,
        n: i64,
        need: u128,
        cap: u128,
    },
    #[error("unknown factorization scheme {0:?} (expected z, cz, pz, c, or cc)")]
    SchemeParse(String),
    #[error("unknown closed-c mode {0:?} (expected cc-longest-closed or cc-alternative)")]
    ModeParse(String),
    #[error(
        "unknown suite {0:?} (expected fibonacci, families, recursions, nonoccurrence, theorem, ocseq, pz, or all)"
    )]
    SuiteParse(String),
    #[error("conjecture scan needs m >= 3 and a factor count >= 2m-1, got m={m} and count={count}")]
    ConjectureParams { m: u8, count: usize },
    #[error("budget must be at least 1")]
    EmptyBudget,
    #[error("factor search passed {cap} letters without finding a valid factor")]
    FactorSearchCap { cap: usize },
    #[error("construction mismatch: expected the word to {expected}")]
    ConstructionMismatch { expected: String },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_alphabet(m: u8) -> Result<()> {
    if (2..=word::Letter::MAX_ALPHABET).contains(&m) {
        Ok(())
    } else {
        Err(Error::AlphabetSize(m as u32))
    }
}
