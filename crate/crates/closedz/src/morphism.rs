//! Morphisms over `A_m`, their composition, fixed-point streaming, and the
//! m-bonacci morphism family.
//!
//! `phi_m` maps `a -> 0(a+1)` for `a < m-1` and `(m-1) -> 0`; its fixed point
//! from 0 is the m-bonacci word. `psi_a` maps `a -> a` and `b -> ab` for
//! `b != a`. `mu_n` is the left-to-right composition
//! `psi_{0 mod m} . psi_{1 mod m} . ... . psi_{(n-1) mod m}` (applied
//! rightmost first), so `mu_n(n mod m)` is the n-th m-bonacci prefix `h_n`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use once_cell::sync::Lazy;

use crate::word::{Letter, LetterSource, Word};
use crate::{check_alphabet, Error, Result};

fn check_letter(a: Letter, m: u8) -> Result<()> {
    if a.value() < m {
        Ok(())
    } else {
        Err(Error::LetterOutsideAlphabet { letter: a.value(), m })
    }
}

/// A morphism `A_m* -> A_m*`, stored as one image word per letter.
#[derive(Clone, PartialEq, Eq)]
pub struct Morphism {
    m: u8,
    images: Vec<Word>,
}

impl Morphism {
    /// Builds a morphism from `images[a]` = image of letter `a`. All image
    /// letters must lie in `A_m`.
    pub fn new(m: u8, images: Vec<Word>) -> Result<Self> {
        check_alphabet(m)?;
        if images.len() != m as usize {
            return Err(Error::ImageCount { m, images: images.len() });
        }
        for img in &images {
            for a in img.letters() {
                check_letter(*a, m)?;
            }
        }
        Ok(Morphism { m, images })
    }

    /// The identity morphism on `A_m`.
    pub fn identity(m: u8) -> Result<Self> {
        check_alphabet(m)?;
        let images = (0..m).map(|a| Word::single(Letter::unchecked(a))).collect();
        Ok(Morphism { m, images })
    }

    pub fn alphabet_size(&self) -> u8 {
        self.m
    }

    pub fn image(&self, a: Letter) -> Result<&Word> {
        check_letter(a, self.m)?;
        Ok(&self.images[a.value() as usize])
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Applies the morphism letter by letter.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        let mut out = Word::new();
        for a in w.letters() {
            out.push_word(self.image(*a)?);
        }
        Ok(out)
    }

    /// Composition `self` after `inner`: applying the result is applying
    /// `inner` first, then `self`.
    pub fn compose(&self, inner: &Morphism) -> Result<Morphism> {
        if self.m != inner.m {
            return Err(Error::AlphabetMismatch { left: self.m, right: inner.m });
        }
        let images = inner
            .images
            .iter()
            .map(|img| self.apply(img))
            .collect::<Result<Vec<_>>>()?;
        Ok(Morphism { m: self.m, images })
    }

    /// Whether `image(a)` starts with `a` and has length at least 2.
    pub fn is_prolongable_on(&self, a: Letter) -> Result<bool> {
        let img = self.image(a)?;
        Ok(img.len() >= 2 && img.first() == Some(a))
    }

    /// Streaming access to the fixed point `morphism^omega(seed)`. Requires a
    /// non-erasing morphism prolongable on `seed`.
    pub fn fixed_point(&self, seed: Letter) -> Result<FixedPointStream> {
        if !self.is_prolongable_on(seed)? {
            return Err(Error::NotProlongable(seed.value()));
        }
        for (a, img) in self.images.iter().enumerate() {
            if img.is_empty() {
                return Err(Error::Erasing(a as u8));
            }
        }
        Ok(FixedPointStream {
            morphism: self.clone(),
            buf: self.images[seed.value() as usize].letters().to_vec(),
            cursor: 1,
        })
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, img) in self.images.iter().enumerate() {
            writeln!(f, "{} -> {}", Letter::unchecked(a as u8), img)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism(m={})", self.m)?;
        for (a, img) in self.images.iter().enumerate() {
            write!(f, " {}->{}", Letter::unchecked(a as u8), img)?;
        }
        Ok(())
    }
}

impl FromStr for Morphism {
    type Err = Error;

    /// Parses the `a -> image` line format. Every letter of `A_m` must get
    /// exactly one line; `m` is one plus the largest mapped letter.
    fn from_str(s: &str) -> Result<Self> {
        let mut map: HashMap<u8, Word> = HashMap::new();
        for (idx, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (lhs, rhs) = line.split_once("->").ok_or(Error::MorphismParse {
                line: idx + 1,
                reason: "expected `letter -> image`",
            })?;
            let lhs = lhs.trim();
            let mut chars = lhs.chars();
            let (Some(c), None) = (chars.next(), chars.next()) else {
                return Err(Error::MorphismParse {
                    line: idx + 1,
                    reason: "left side must be a single letter",
                });
            };
            let a = Letter::from_char(c)?;
            let img: Word = rhs.trim().parse()?;
            if map.insert(a.value(), img).is_some() {
                return Err(Error::MorphismParse {
                    line: idx + 1,
                    reason: "letter mapped twice",
                });
            }
        }
        let m = map.keys().max().map_or(0, |v| v + 1);
        check_alphabet(m)?;
        let images = (0..m)
            .map(|a| {
                map.remove(&a).ok_or(Error::MorphismParse {
                    line: 0,
                    reason: "every letter below the largest mapped letter needs an image",
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(m, images)
    }
}

/// Lazily materialized prefix of a morphism fixed point.
///
/// The buffer is only ever extended in place: the fixed point satisfies
/// `X = morphism(X)`, so appending `image(buf[cursor])` and advancing the
/// cursor keeps `buf` a prefix of `X`. The cursor always trails the buffer
/// end, so extension never stalls.
pub struct FixedPointStream {
    morphism: Morphism,
    buf: Vec<Letter>,
    cursor: usize,
}

impl FixedPointStream {
    pub fn alphabet_size(&self) -> u8 {
        self.morphism.alphabet_size()
    }

    /// The first `n` letters as a word.
    pub fn prefix_word(&mut self, n: usize) -> Word {
        self.materialize(n);
        Word::from(&self.buf[..n])
    }

    /// Letter at 0-based index `i`.
    pub fn letter_at(&mut self, i: usize) -> Letter {
        self.materialize(i + 1);
        self.buf[i]
    }
}

impl LetterSource for FixedPointStream {
    fn materialized(&self) -> &[Letter] {
        &self.buf
    }

    fn materialize(&mut self, n: usize) -> usize {
        while self.buf.len() < n {
            let a = self.buf[self.cursor];
            // Image letters were validated at construction.
            let img = &self.morphism.images[a.value() as usize];
            self.buf.extend_from_slice(img.letters());
            self.cursor += 1;
        }
        self.buf.len()
    }
}

/// The m-bonacci morphism `a -> 0(a+1)` for `a < m-1`, `(m-1) -> 0`.
pub fn phi(m: u8) -> Result<Morphism> {
    check_alphabet(m)?;
    let images = (0..m)
        .map(|a| {
            if a + 1 < m {
                Word::from_letters(vec![Letter::unchecked(0), Letter::unchecked(a + 1)])
            } else {
                Word::single(Letter::unchecked(0))
            }
        })
        .collect();
    Ok(Morphism { m, images })
}

/// The epistandard morphism `psi_a`: `a -> a`, `b -> ab` for `b != a`.
pub fn psi(m: u8, a: Letter) -> Result<Morphism> {
    check_alphabet(m)?;
    check_letter(a, m)?;
    let images = (0..m)
        .map(|b| {
            if b == a.value() {
                Word::single(a)
            } else {
                Word::from_letters(vec![a, Letter::unchecked(b)])
            }
        })
        .collect();
    Ok(Morphism { m, images })
}

static MU_CACHE: Lazy<RwLock<HashMap<(u8, u64), Arc<Morphism>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// `mu_n = psi_{0 mod m} . psi_{1 mod m} . ... . psi_{(n-1) mod m}`, memoized.
/// `mu_0` is the identity.
pub fn mu(m: u8, n: u64) -> Result<Arc<Morphism>> {
    check_alphabet(m)?;
    if let Some(hit) = MU_CACHE.read().unwrap().get(&(m, n)) {
        return Ok(hit.clone());
    }
    // Find the largest cached stage below n, then extend: mu_k = mu_{k-1} . psi_{(k-1) mod m}.
    let mut k = n;
    let mut cur = loop {
        if k == 0 {
            break Arc::new(Morphism::identity(m)?);
        }
        if let Some(hit) = MU_CACHE.read().unwrap().get(&(m, k)) {
            break hit.clone();
        }
        k -= 1;
    };
    while k < n {
        let step = psi(m, Letter::unchecked((k % m as u64) as u8))?;
        cur = Arc::new(cur.compose(&step)?);
        k += 1;
        MU_CACHE.write().unwrap().entry((m, k)).or_insert_with(|| cur.clone());
    }
    Ok(cur)
}

/// Inverts `phi_m` on its image. The code `{0, 01, .., 0(m-1)}` puts a 0 at
/// the start of every codeword and nowhere else, so the decomposition is
/// unique: each 0 starts a codeword, a following non-zero letter `c` decodes
/// to `c-1`, a following 0 (or the word end) decodes the lone 0 to `m-1`.
pub fn decode_phi(m: u8, w: &Word) -> Result<Word> {
    check_alphabet(m)?;
    let s = w.letters();
    let mut out = Word::new();
    let mut i = 0;
    while i < s.len() {
        check_letter(s[i], m)?;
        if s[i].value() != 0 {
            return Err(Error::NotDecodable {
                position: i + 1,
                reason: "expected a codeword to start with 0",
            });
        }
        match s.get(i + 1) {
            Some(c) if c.value() != 0 => {
                check_letter(*c, m)?;
                out.push(Letter::unchecked(c.value() - 1));
                i += 2;
            }
            _ => {
                out.push(Letter::unchecked(m - 1));
                i += 1;
            }
        }
    }
    Ok(out)
}
