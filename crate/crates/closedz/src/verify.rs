//! Named property checks over the word families, runnable as suites.
//!
//! Every check sweeps a grid of `(m, n)` cases, m-outer and n-inner, and
//! reports the first (smallest) failing case as a counterexample. Cases whose
//! words would exceed the configured length cap are skipped, and a check with
//! skipped cases is marked skipped rather than silently passed. Checks are
//! independent, deterministic, and safe to run in any order.

use std::any::Any;
use std::collections::BTreeSet;
use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::factorize::{self, Budget, CcMode};
use crate::families::{self, LengthFamily};
use crate::morphism::{mu, phi, psi, Morphism};
use crate::ocseq;
use crate::oracle;
use crate::word::{z_array, ClosedPrefixScanner, Letter, Word};
use crate::{Error, Result};

/// Check groups, selectable from the command line.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Fibonacci,
    Families,
    Recursions,
    Nonoccurrence,
    Theorem,
    Ocseq,
    Pz,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Fibonacci => "fibonacci",
            Suite::Families => "families",
            Suite::Recursions => "recursions",
            Suite::Nonoccurrence => "nonoccurrence",
            Suite::Theorem => "theorem",
            Suite::Ocseq => "ocseq",
            Suite::Pz => "pz",
            Suite::All => "all",
        }
    }

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fibonacci" => Ok(Suite::Fibonacci),
            "families" => Ok(Suite::Families),
            "recursions" => Ok(Suite::Recursions),
            "nonoccurrence" => Ok(Suite::Nonoccurrence),
            "theorem" => Ok(Suite::Theorem),
            "ocseq" => Ok(Suite::Ocseq),
            "pz" => Ok(Suite::Pz),
            "all" => Ok(Suite::All),
            other => Err(Error::SuiteParse(other.to_string())),
        }
    }
}

/// Grid bounds and resource limits for a verification run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub m_lo: u8,
    pub m_hi: u8,
    /// Upper `n` for identity checks (word-equality sweeps).
    pub max_n: i64,
    /// Upper `n` for factor-search checks, which scan quadratically.
    pub factor_max_n: i64,
    /// No materialized word may exceed this many letters; larger cases skip.
    pub length_cap: u128,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn new(m_lo: u8, m_hi: u8) -> Self {
        RunConfig {
            m_lo,
            m_hi,
            max_n: 20,
            factor_max_n: 14,
            length_cap: 1_000_000,
            threads: None,
        }
    }

    /// Apply the `CLOSEDZ_LENGTH_CAP` environment override when it parses.
    pub fn with_env_cap(mut self) -> Self {
        if let Some(cap) = std::env::var("CLOSEDZ_LENGTH_CAP")
            .ok()
            .and_then(|v| v.parse::<u128>().ok())
        {
            self.length_cap = cap;
        }
        self
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    ReportOnly,
    Skipped,
}

/// The smallest failing case of a check.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Counterexample {
    pub m: u8,
    pub n: i64,
    pub detail: String,
}

/// Outcome of one named property over its `(m, n)` grid.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub id: String,
    pub suite: String,
    pub m_range: (u8, u8),
    pub n_range: (i64, i64),
    pub status: CheckStatus,
    pub counterexample: Option<Counterexample>,
    pub detail: Option<String>,
}

impl PropertyCheck {
    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Fail
    }
}

/// True when any check failed; report-only and skipped never count.
pub fn any_failed(checks: &[PropertyCheck]) -> bool {
    checks.iter().any(PropertyCheck::failed)
}

/// One status line per check, with counterexamples and details indented.
pub fn render_text(checks: &[PropertyCheck]) -> String {
    let mut out = String::new();
    for c in checks {
        let status = match c.status {
            CheckStatus::Pass => "PASS  ",
            CheckStatus::Fail => "FAIL  ",
            CheckStatus::ReportOnly => "REPORT",
            CheckStatus::Skipped => "SKIP  ",
        };
        out.push_str(&format!(
            "{status} {} [{}] m={}..{} n={}..{}\n",
            c.id, c.suite, c.m_range.0, c.m_range.1, c.n_range.0, c.n_range.1
        ));
        if let Some(ce) = &c.counterexample {
            out.push_str(&format!(
                "       counterexample m={} n={}: {}\n",
                ce.m, ce.n, ce.detail
            ));
        }
        if let Some(d) = &c.detail {
            out.push_str(&format!("       {d}\n"));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Harness plumbing.

/// Per-case verdict inside a sweep. `FailAt` overrides the grid `n` in the
/// counterexample, for checks whose natural failure coordinate is a prefix
/// length or factor index rather than the grid point.
enum Case {
    Pass,
    Fail(String),
    FailAt(i64, String),
    Skip(String),
}

enum Outcome {
    Pass,
    Fail(Counterexample),
    Report(String),
    Skip(String),
}

struct CheckRun {
    m_range: (u8, u8),
    n_range: (i64, i64),
    outcome: Outcome,
}

struct CheckDef {
    id: &'static str,
    suite: Suite,
    run: fn(&RunConfig) -> CheckRun,
}

fn sweep(
    m_range: (u8, u8),
    n_range: (i64, i64),
    mut case: impl FnMut(u8, i64) -> Result<Case>,
) -> CheckRun {
    let mut skip: Option<String> = None;
    for m in m_range.0..=m_range.1 {
        for n in n_range.0..=n_range.1 {
            let verdict = match case(m, n) {
                Ok(v) => v,
                Err(Error::WordTooLong { need, cap, .. }) => {
                    Case::Skip(format!("needs {need} letters, above the cap of {cap}"))
                }
                Err(Error::LengthOverflow { family, n }) => {
                    Case::Skip(format!("|{family}_{n}| overflows the length arithmetic"))
                }
                Err(e) => Case::Fail(e.to_string()),
            };
            match verdict {
                Case::Pass => {}
                Case::Fail(detail) => {
                    return CheckRun {
                        m_range,
                        n_range,
                        outcome: Outcome::Fail(Counterexample { m, n, detail }),
                    }
                }
                Case::FailAt(at, detail) => {
                    return CheckRun {
                        m_range,
                        n_range,
                        outcome: Outcome::Fail(Counterexample { m, n: at, detail }),
                    }
                }
                Case::Skip(reason) => {
                    if skip.is_none() {
                        skip = Some(format!("m={m} n={n}: {reason}"));
                    }
                }
            }
        }
    }
    CheckRun {
        m_range,
        n_range,
        outcome: match skip {
            Some(reason) => Outcome::Skip(reason),
            None => Outcome::Pass,
        },
    }
}

/// Fibonacci-only checks run on the fixed alphabet m = 2.
fn fib_sweep(
    cfg: &RunConfig,
    n_range: (i64, i64),
    mut case: impl FnMut(i64) -> Result<Case>,
) -> CheckRun {
    if cfg.m_lo > 2 {
        return CheckRun {
            m_range: (2, 2),
            n_range,
            outcome: Outcome::Skip("needs m = 2 in the m range".to_string()),
        };
    }
    sweep((2, 2), n_range, |_, n| case(n))
}

fn m_span(cfg: &RunConfig) -> (u8, u8) {
    (cfg.m_lo, cfg.m_hi)
}

fn fam_label(fam: LengthFamily) -> &'static str {
    match fam {
        LengthFamily::H => "h",
        LengthFamily::U => "u",
        LengthFamily::Z => "z",
        LengthFamily::P => "P",
    }
}

/// Skip-case when any listed family word would exceed the length cap.
fn cap_guard(cfg: &RunConfig, m: u8, needs: &[(LengthFamily, i64)]) -> Result<Option<Case>> {
    for &(fam, n) in needs {
        let len = families::lengths(m, fam, n)?;
        if len > cfg.length_cap {
            return Ok(Some(Case::Skip(format!(
                "|{}_{}| = {} letters, above the length cap of {}",
                fam_label(fam),
                n,
                len,
                cfg.length_cap
            ))));
        }
    }
    Ok(None)
}

fn und(m: u8, n: i64) -> Letter {
    Letter::unchecked(n.rem_euclid(m as i64) as u8)
}

fn snip(w: &Word) -> String {
    if w.len() <= 40 {
        w.to_string()
    } else {
        format!("{}... ({} letters)", w.sub(0..40), w.len())
    }
}

fn panic_message(payload: Box<dyn Any + Send>) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "opaque panic payload".to_string()
    }
}

fn run_def(def: &CheckDef, cfg: &RunConfig) -> PropertyCheck {
    let run = catch_unwind(AssertUnwindSafe(|| (def.run)(cfg))).unwrap_or_else(|payload| CheckRun {
        m_range: m_span(cfg),
        n_range: (0, 0),
        outcome: Outcome::Fail(Counterexample {
            m: 0,
            n: 0,
            detail: format!("check panicked: {}", panic_message(payload)),
        }),
    });
    let (status, counterexample, detail) = match run.outcome {
        Outcome::Pass => (CheckStatus::Pass, None, None),
        Outcome::Fail(ce) => (CheckStatus::Fail, Some(ce), None),
        Outcome::Report(d) => (CheckStatus::ReportOnly, None, Some(d)),
        Outcome::Skip(reason) => (CheckStatus::Skipped, None, Some(reason)),
    };
    PropertyCheck {
        id: def.id.to_string(),
        suite: def.suite.name().to_string(),
        m_range: run.m_range,
        n_range: run.n_range,
        status,
        counterexample,
        detail,
    }
}

/// Run every check of the suite over the configured grid. Results come back
/// sorted by check id, so the report is independent of scheduling.
pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Vec<PropertyCheck> {
    assert!(
        2 <= cfg.m_lo && cfg.m_lo <= cfg.m_hi && cfg.m_hi <= 36,
        "m range must satisfy 2 <= lo <= hi <= 36"
    );
    let defs: Vec<&CheckDef> = ALL_CHECKS.iter().filter(|d| suite.includes(d.suite)).collect();
    let run_all = || defs.par_iter().map(|def| run_def(def, cfg)).collect::<Vec<_>>();
    let mut checks = match cfg.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(run_all),
            Err(_) => run_all(),
        },
        None => run_all(),
    };
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    checks
}

// ---------------------------------------------------------------------------
// Fibonacci suite: the singular words w_n.

/// w_n never occurs inside w_{n+1}.
fn chk_fib_singular_not_factor_of_next(cfg: &RunConfig) -> CheckRun {
    fib_sweep(cfg, (-1, cfg.factor_max_n), |n| {
        let w = families::singular(n)?;
        let next = families::singular(n + 1)?;
        Ok(if next.contains_factor(&w)? {
            Case::Fail(format!("w_{n} = {} occurs in w_{}", snip(&w), n + 1))
        } else {
            Case::Pass
        })
    })
}

/// w_n = w_{n-2} w_{n-3} w_{n-2} for n >= 1.
fn chk_fib_singular_recurrence(cfg: &RunConfig) -> CheckRun {
    fib_sweep(cfg, (1, cfg.max_n), |n| {
        let lhs = families::singular(n)?;
        let rhs = Word::concat([
            &*families::singular(n - 2)?,
            &*families::singular(n - 3)?,
            &*families::singular(n - 2)?,
        ]);
        Ok(if *lhs == rhs {
            Case::Pass
        } else {
            Case::Fail(format!(
                "w_{n} = {} but the three-term product gives {}",
                snip(&lhs),
                snip(&rhs)
            ))
        })
    })
}

/// Every w_n is a palindrome.
fn chk_fib_singular_palindrome(cfg: &RunConfig) -> CheckRun {
    fib_sweep(cfg, (-2, cfg.max_n), |n| {
        Ok(if families::singular(n)?.is_palindrome() {
            Case::Pass
        } else {
            Case::Fail(format!("w_{n} is not a palindrome"))
        })
    })
}

/// w_n never occurs inside w_{-1} w_0 ... w_{n-1}.
fn chk_fib_singular_not_factor_of_product(cfg: &RunConfig) -> CheckRun {
    fib_sweep(cfg, (-1, cfg.factor_max_n), |n| {
        let w = families::singular(n)?;
        let mut host = Word::new();
        for j in -1..n {
            host.push_word(&*families::singular(j)?);
        }
        Ok(if host.contains_factor(&w)? {
            Case::Fail(format!("w_{n} occurs in the product of w_(-1)..w_{}", n - 1))
        } else {
            Case::Pass
        })
    })
}

/// Every w_n with n >= -1 is closed, by both the incremental test and the
/// quadratic one.
fn chk_fib_singular_closed(cfg: &RunConfig) -> CheckRun {
    fib_sweep(cfg, (-1, cfg.max_n), |n| {
        let w = families::singular(n)?;
        Ok(match (w.is_closed(), oracle::is_closed(&w)) {
            (true, true) => Case::Pass,
            (fast, naive) => Case::Fail(format!(
                "w_{n}: fast is_closed = {fast}, naive is_closed = {naive}"
            )),
        })
    })
}

/// The z-factorization of the Fibonacci word is (w_{-1}, w_0, w_1, ...).
fn chk_fib_z_factors_are_singular(cfg: &RunConfig) -> CheckRun {
    fib_sweep(cfg, (-1, cfg.factor_max_n), |n| {
        if n > -1 {
            return Ok(Case::Pass);
        }
        let count = (cfg.factor_max_n + 2) as usize;
        let fz = factorize::z_factorize(&mut families::mbonacci_stream(2)?, Budget::Factors(count))?;
        if !fz.complete {
            return Ok(Case::Fail("factor budget left a truncated factor".to_string()));
        }
        for (j, f) in fz.factors.iter().enumerate() {
            let expect = families::singular(j as i64 - 1)?;
            if f != &*expect {
                return Ok(Case::FailAt(
                    j as i64 - 1,
                    format!("z-factor {} is {} but w_{} = {}", j, snip(f), j as i64 - 1, snip(&expect)),
                ));
            }
        }
        Ok(Case::Pass)
    })
}

/// No factorization u1 u2 u3 of w_n w_{n+1} or w_{n+1} w_n with
/// 0 < |u1| < F_n and 0 < |u3| < F_{n+1} has a singular middle u2.
fn chk_fib_singular_window(cfg: &RunConfig) -> CheckRun {
    fib_sweep(cfg, (1, cfg.factor_max_n), |n| {
        let wn = families::singular(n)?;
        let wn1 = families::singular(n + 1)?;
        let (f_n, f_n1) = (wn.len(), wn1.len());
        for (host, order) in [
            (Word::concat([&*wn, &*wn1]), "w_n w_{n+1}"),
            (Word::concat([&*wn1, &*wn]), "w_{n+1} w_n"),
        ] {
            let total = host.len();
            let mut k = -1i64;
            loop {
                let wk = families::singular(k)?;
                if wk.len() > total {
                    break;
                }
                // Occurrence positions are 1-based.
                for &i in host.occurrences(&wk)?.positions() {
                    let u1 = i - 1;
                    let u3 = total - (u1 + wk.len());
                    if u1 >= 1 && u1 < f_n && u3 >= 1 && u3 < f_n1 {
                        return Ok(Case::Fail(format!(
                            "{order} splits as lengths ({u1}, {}, {u3}) with singular middle w_{k}",
                            wk.len()
                        )));
                    }
                }
                k += 1;
            }
        }
        Ok(Case::Pass)
    })
}

/// The closed z-factorization of the Fibonacci word is (w_{-1}, w_0, ...),
/// by the streaming engine and by the quadratic factorizer.
fn chk_fib_closed_z_equals_singular(cfg: &RunConfig) -> CheckRun {
    fib_sweep(cfg, (-1, cfg.factor_max_n), |n| {
        if n > -1 {
            return Ok(Case::Pass);
        }
        let count = (cfg.factor_max_n + 2) as usize;
        let fast =
            factorize::closed_z_factorize(&mut families::mbonacci_stream(2)?, Budget::Factors(count))?;
        for (j, f) in fast.factors.iter().enumerate() {
            let expect = families::singular(j as i64 - 1)?;
            if f != &*expect {
                return Ok(Case::FailAt(
                    j as i64 - 1,
                    format!("closed z-factor {} is {} but w_{} = {}", j, snip(f), j as i64 - 1, snip(&expect)),
                ));
            }
        }
        let prefix = fast.word();
        let (naive, complete) = oracle::closed_z_factorization(&prefix, Some(count));
        if !complete || naive != fast.factors {
            return Ok(Case::Fail(
                "quadratic factorizer disagrees with the streaming engine".to_string(),
            ));
        }
        Ok(Case::Pass)
    })
}

/// The singular words are the two-letter-alphabet z words: w_{n-1} = z_n.
fn chk_fib_singular_equals_z_words(cfg: &RunConfig) -> CheckRun {
    fib_sweep(cfg, (0, cfg.max_n), |n| {
        let w = families::singular(n - 1)?;
        let z = families::z(2, n)?;
        Ok(if w == z {
            Case::Pass
        } else {
            Case::Fail(format!("w_{} = {} but z_{n} = {}", n - 1, snip(&w), snip(&z)))
        })
    })
}

// ---------------------------------------------------------------------------
// Families suite: h_n, u_n, and the morphism identities.

/// h_n^R starts with (n mod m) 0 when m does not divide n, otherwise with 01.
fn chk_h_reversal_initial_letters(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (1, cfg.max_n), |m, n| {
        if let Some(case) = cap_guard(cfg, m, &[(LengthFamily::H, n)])? {
            return Ok(case);
        }
        let hr = families::h(m, n)?.reversed();
        let u = und(m, n);
        let expect = if u.value() == 0 {
            Word::from_letters(vec![Letter::unchecked(0), Letter::unchecked(1)])
        } else {
            Word::from_letters(vec![u, Letter::unchecked(0)])
        };
        Ok(if hr.starts_with(&expect) {
            Case::Pass
        } else {
            Case::Fail(format!("h_{n}^R = {} does not start with {expect}", snip(&hr)))
        })
    })
}

/// h_n is the image of the letter n mod m under mu_n.
fn chk_h_is_mu_image(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (0, cfg.max_n), |m, n| {
        if let Some(case) = cap_guard(cfg, m, &[(LengthFamily::H, n)])? {
            return Ok(case);
        }
        let image = mu(m, n as u64)?.image(und(m, n))?.clone();
        let h = families::h(m, n)?;
        Ok(if image == *h {
            Case::Pass
        } else {
            Case::Fail(format!("mu_{n}({}) = {} but h_{n} = {}", und(m, n), snip(&image), snip(&h)))
        })
    })
}

/// u_{n+1} is the palindromic closure of u_n followed by the letter
/// (n-1) mod m.
fn chk_palindromic_prefix_closure_step(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (1, cfg.max_n), |m, n| {
        if let Some(case) = cap_guard(cfg, m, &[(LengthFamily::U, n + 1)])? {
            return Ok(case);
        }
        let mut seed = (*families::u(m, n)?).clone();
        seed.push(und(m, n - 1));
        let closure = seed.palindromic_closure();
        let expect = families::u(m, n + 1)?;
        Ok(if closure == *expect {
            Case::Pass
        } else {
            Case::Fail(format!(
                "(u_{n} . {})^+ = {} but u_{} = {}",
                und(m, n - 1),
                snip(&closure),
                n + 1,
                snip(&expect)
            ))
        })
    })
}

/// u_{n+1} = h_{n-1} u_n.
fn chk_palindromic_prefix_h_step(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (1, cfg.max_n), |m, n| {
        if let Some(case) = cap_guard(cfg, m, &[(LengthFamily::U, n + 1)])? {
            return Ok(case);
        }
        let rhs = Word::concat([&*families::h(m, n - 1)?, &*families::u(m, n)?]);
        Ok(if rhs == *families::u(m, n + 1)? {
            Case::Pass
        } else {
            Case::Fail(format!("h_{} u_{n} differs from u_{}", n - 1, n + 1))
        })
    })
}

/// u_n = h_0^R h_1^R ... h_{n-2}^R for n >= 2.
fn chk_palindromic_prefix_reversal_product(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (2, cfg.max_n), |m, n| {
        if let Some(case) = cap_guard(cfg, m, &[(LengthFamily::U, n)])? {
            return Ok(case);
        }
        let mut rhs = Word::new();
        for i in 0..=n - 2 {
            rhs.push_word(&families::h(m, i)?.reversed());
        }
        Ok(if rhs == *families::u(m, n)? {
            Case::Pass
        } else {
            Case::Fail(format!("the reversal product differs from u_{n}"))
        })
    })
}

/// h_n extends u_{n+1} by the letter n below the alphabet bound, and equals
/// u_{n+1} with the tail u_{n+1-m} removed from n = m on.
fn chk_h_from_palindromic_prefix(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (1, cfg.max_n), |m, n| {
        if let Some(case) = cap_guard(cfg, m, &[(LengthFamily::U, n + 1), (LengthFamily::H, n)])? {
            return Ok(case);
        }
        let h = families::h(m, n)?;
        let u_next = families::u(m, n + 1)?;
        let rhs = if n <= (m - 1) as i64 {
            let mut w = (*u_next).clone();
            w.push(Letter::unchecked(n as u8));
            w
        } else {
            match u_next.strip_suffix_word(&*families::u(m, n + 1 - m as i64)?) {
                Some(w) => w,
                None => {
                    return Ok(Case::Fail(format!(
                        "u_{} is not a suffix of u_{}",
                        n + 1 - m as i64,
                        n + 1
                    )))
                }
            }
        };
        Ok(if rhs == *h {
            Case::Pass
        } else {
            Case::Fail(format!("h_{n} = {} but the ladder form gives {}", snip(&h), snip(&rhs)))
        })
    })
}

/// psi_k doubles positions: for x with only the last letter possibly equal to
/// k, the image has |x| occurrences of k at the odd positions and carries
/// every other letter to twice its position.
fn chk_psi_image_positions(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (1, 40), |m, t| {
        let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9 ^ ((m as u64) << 32) ^ t as u64);
        let k = rng.gen_range(0..m);
        let len = rng.gen_range(1..=60usize);
        let mut letters = Vec::with_capacity(len);
        for _ in 0..len - 1 {
            let v = rng.gen_range(0..m - 1);
            letters.push(Letter::unchecked(if v >= k { v + 1 } else { v }));
        }
        letters.push(Letter::unchecked(rng.gen_range(0..m)));
        let x = Word::from_letters(letters);
        let kp = {
            let v = rng.gen_range(0..m - 1);
            Letter::unchecked(if v >= k { v + 1 } else { v })
        };
        let k = Letter::unchecked(k);
        let y = psi(m, k)?.apply(&x)?;

        let want_len = if x.last() == Some(k) { 2 * len - 1 } else { 2 * len };
        if y.len() != want_len {
            return Ok(Case::Fail(format!(
                "psi_{k}({}) has length {} instead of {want_len}",
                snip(&x),
                y.len()
            )));
        }
        let k_positions: Vec<usize> =
            y.letters().iter().enumerate().filter(|(_, &a)| a == k).map(|(i, _)| i).collect();
        let want_k: Vec<usize> = (0..len).map(|i| 2 * i).collect();
        if k_positions != want_k {
            return Ok(Case::Fail(format!("occurrences of {k} in psi_{k}({}) moved", snip(&x))));
        }
        let kp_positions: Vec<usize> =
            y.letters().iter().enumerate().filter(|(_, &a)| a == kp).map(|(i, _)| i).collect();
        let want_kp: Vec<usize> = x
            .letters()
            .iter()
            .enumerate()
            .filter(|(_, &a)| a == kp)
            .map(|(i, _)| 2 * i + 1)
            .collect();
        Ok(if kp_positions == want_kp {
            Case::Pass
        } else {
            Case::Fail(format!("occurrences of {kp} in psi_{k}({}) moved", snip(&x)))
        })
    })
}

/// Composition of psi over the window [a, b], applying the index-b morphism
/// first; the empty window is the identity.
fn compose_psi_window(m: u8, a: i64, b: i64) -> Result<Morphism> {
    let mut acc = Morphism::identity(m)?;
    for i in a..=b {
        acc = acc.compose(&psi(m, und(m, i))?)?;
    }
    Ok(acc)
}

/// The psi window over [n-m+1, n-1] applied to the letter (n-m+1) mod m
/// equals the product of its right-truncated sub-windows applied to the
/// stepped letters.
fn chk_psi_composition_product(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (2, cfg.max_n), |m, n| {
        if n < m as i64 {
            return Ok(Case::Pass);
        }
        let window = m as u128 * (1u128 << (m - 1).min(64));
        if window > cfg.length_cap {
            return Ok(Case::Skip(format!(
                "composed psi images may reach {window} letters, above the cap"
            )));
        }
        let a = n - m as i64 + 1;
        let lhs = compose_psi_window(m, a, n - 1)?.apply(&Word::single(und(m, a)))?;
        let mut rhs = Word::new();
        for j in 2..=m as i64 {
            let piece = compose_psi_window(m, a, n - j)?.apply(&Word::single(und(m, n - j + 1)))?;
            rhs.push_word(&piece);
        }
        Ok(if lhs == rhs {
            Case::Pass
        } else {
            Case::Fail(format!("window image {} differs from product {}", snip(&lhs), snip(&rhs)))
        })
    })
}

/// mu_n carries the letter (n-m+1) mod m to h_{n-1} h_{n-2} ... h_{n-m+1}.
fn chk_mu_window_product(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (2, cfg.max_n), |m, n| {
        if n < m as i64 {
            return Ok(Case::Pass);
        }
        if let Some(case) = cap_guard(cfg, m, &[(LengthFamily::H, n)])? {
            return Ok(case);
        }
        let image = mu(m, n as u64)?.image(und(m, n - m as i64 + 1))?.clone();
        let mut rhs = Word::new();
        for i in (n - m as i64 + 1..=n - 1).rev() {
            rhs.push_word(&*families::h(m, i)?);
        }
        Ok(if image == rhs {
            Case::Pass
        } else {
            Case::Fail(format!(
                "mu_{n}({}) = {} differs from the h product {}",
                und(m, n - m as i64 + 1),
                snip(&image),
                snip(&rhs)
            ))
        })
    })
}

/// mu_{n-1} carries the letter n to u_n n, for 1 <= n <= m-1.
fn chk_mu_of_next_letter(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (1, cfg.m_hi as i64 - 1), |m, n| {
        if n > (m - 1) as i64 {
            return Ok(Case::Pass);
        }
        let image = mu(m, (n - 1) as u64)?.image(Letter::unchecked(n as u8))?.clone();
        let mut expect = (*families::u(m, n)?).clone();
        expect.push(Letter::unchecked(n as u8));
        Ok(if image == expect {
            Case::Pass
        } else {
            Case::Fail(format!("mu_{}({n}) = {} but u_{n} {n} = {}", n - 1, snip(&image), snip(&expect)))
        })
    })
}

/// h_n^R is phi(h_{n-1}^R) 0 with the leading 0 removed.
fn chk_h_reversal_phi_step(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (1, cfg.max_n), |m, n| {
        if let Some(case) = cap_guard(cfg, m, &[(LengthFamily::H, n)])? {
            return Ok(case);
        }
        let mut image = phi(m)?.apply(&families::h(m, n - 1)?.reversed())?;
        image.push(Letter::unchecked(0));
        let rhs = match image.strip_prefix_word(&Word::single(Letter::unchecked(0))) {
            Some(w) => w,
            None => return Ok(Case::Fail(format!("phi(h_{}^R) does not start with 0", n - 1))),
        };
        Ok(if rhs == families::h(m, n)?.reversed() {
            Case::Pass
        } else {
            Case::Fail(format!("the phi step does not reproduce h_{n}^R"))
        })
    })
}

/// u_n = phi(u_{n-1}) 0.
fn chk_palindromic_prefix_phi_step(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (2, cfg.max_n), |m, n| {
        if let Some(case) = cap_guard(cfg, m, &[(LengthFamily::U, n)])? {
            return Ok(case);
        }
        let mut rhs = phi(m)?.apply(&*families::u(m, n - 1)?)?;
        rhs.push(Letter::unchecked(0));
        Ok(if rhs == *families::u(m, n)? {
            Case::Pass
        } else {
            Case::Fail(format!("phi(u_{}) 0 differs from u_{n}", n - 1))
        })
    })
}

/// |z_n| satisfies the order-m linear recurrence from n = m+1 on.
fn chk_z_length_recurrence(cfg: &RunConfig) -> CheckRun {
    let n_hi = cfg.max_n.max(25);
    sweep(m_span(cfg), (3, n_hi), |m, n| {
        if n < m as i64 + 1 {
            return Ok(Case::Pass);
        }
        let lhs = families::lengths(m, LengthFamily::Z, n)?;
        let mut sum = 0u128;
        for k in 1..=m as i64 {
            sum += families::lengths(m, LengthFamily::Z, n - k)?;
        }
        Ok(if lhs == sum {
            Case::Pass
        } else {
            Case::Fail(format!("|z_{n}| = {lhs} but the window sum is {sum}"))
        })
    })
}

/// z_n ends with (n-2) mod m, and starts with 1 exactly when m divides n-3.
fn chk_z_boundary_letters(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (2, cfg.max_n), |m, n| {
        if let Some(case) = cap_guard(cfg, m, &[(LengthFamily::Z, n)])? {
            return Ok(case);
        }
        let z = families::z(m, n)?;
        let want_last = und(m, n - 2);
        if z.last() != Some(want_last) {
            return Ok(Case::Fail(format!("z_{n} ends with {:?}, not {want_last}", z.last())));
        }
        let want_first = if (n - 3).rem_euclid(m as i64) == 0 {
            Letter::unchecked(1)
        } else {
            Letter::unchecked(0)
        };
        Ok(if z.first() == Some(want_first) {
            Case::Pass
        } else {
            Case::Fail(format!("z_{n} starts with {:?}, not {want_first}", z.first()))
        })
    })
}

/// The phi images {0, 01, ..., 0(m-1)} form a code: no short word admits two
/// distinct factorizations over them.
fn chk_phi_images_form_a_code(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (0, 0), |m, _| {
        let max_len = match m {
            2 => 12usize,
            3 => 9,
            4..=6 => 6,
            _ => 4,
        };
        let mut w = vec![0u8; 1];
        for len in 1..=max_len {
            w.truncate(0);
            w.resize(len, 0);
            loop {
                // Count factorizations over {0} and {0x : x != 0}, capped at 2.
                let mut dp = vec![0u32; len + 1];
                dp[0] = 1;
                for i in 1..=len {
                    let mut c = if w[i - 1] == 0 { dp[i - 1] } else { 0 };
                    if i >= 2 && w[i - 2] == 0 && w[i - 1] != 0 {
                        c += dp[i - 2];
                    }
                    dp[i] = c.min(2);
                }
                if dp[len] > 1 {
                    let word = Word::from_letters(w.iter().map(|&v| Letter::unchecked(v)).collect());
                    return Ok(Case::FailAt(
                        len as i64,
                        format!("{word} has two factorizations over the phi images"),
                    ));
                }
                // Odometer step over the alphabet.
                let mut i = len;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    if w[i] + 1 < m {
                        w[i] += 1;
                        break;
                    }
                    w[i] = 0;
                }
                if w.iter().all(|&v| v == 0) {
                    break;
                }
            }
        }
        Ok(Case::Pass)
    })
}

/// phi sends the letter n mod m to 0 followed by the non-zero residue marker
/// of n+1.
fn chk_phi_of_letter(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (0, cfg.max_n), |m, n| {
        let image = phi(m)?.image(und(m, n))?.clone();
        let mut expect = Word::single(Letter::unchecked(0));
        expect.push_word(&families::mod_marks(m, n + 1)?.double_underline);
        Ok(if image == expect {
            Case::Pass
        } else {
            Case::Fail(format!("phi({}) = {image}, expected {expect}", und(m, n)))
        })
    })
}

// ---------------------------------------------------------------------------
// Recursions suite: the two constructions of z_n and P_n agree.

/// The direct z_n construction matches the phi recursion route.
fn chk_z_phi_recursion(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (2, cfg.max_n.min(18)), |m, n| {
        if let Some(case) = cap_guard(cfg, m, &[(LengthFamily::Z, n)])? {
            return Ok(case);
        }
        let direct = families::z(m, n)?;
        let via_phi = families::z_via_phi(m, n)?;
        Ok(if *direct == via_phi {
            Case::Pass
        } else {
            Case::Fail(format!(
                "direct z_{n} = {} but the phi recursion gives {}",
                snip(&direct),
                snip(&via_phi)
            ))
        })
    })
}

/// The factor-concatenation P_n matches the phi recursion route.
fn chk_p_phi_recursion(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (0, cfg.max_n), |m, n| {
        if let Some(case) = cap_guard(cfg, m, &[(LengthFamily::P, n)])? {
            return Ok(case);
        }
        let direct = families::p(m, n)?;
        let via_phi = families::p_via_phi(m, n)?;
        Ok(if *direct == via_phi {
            Case::Pass
        } else {
            Case::Fail(format!("direct P_{n} differs from the phi recursion route"))
        })
    })
}

/// P_n is a prefix of the fixed point and |P_n| grows strictly.
fn chk_p_prefix_ladder(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (0, cfg.max_n), |m, n| {
        if let Some(case) = cap_guard(cfg, m, &[(LengthFamily::P, n)])? {
            return Ok(case);
        }
        let p = families::p(m, n)?;
        if n >= 1 && p.len() as u128 <= families::lengths(m, LengthFamily::P, n - 1)? {
            return Ok(Case::Fail(format!("|P_{n}| does not exceed |P_{}|", n - 1)));
        }
        let prefix = families::mbonacci_stream(m)?.prefix_word(p.len());
        Ok(if prefix == *p {
            Case::Pass
        } else {
            Case::Fail(format!("P_{n} is not a prefix of the fixed point"))
        })
    })
}

/// h_n and u_n are prefixes of the fixed point.
fn chk_h_u_prefixes_of_fixed_point(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (0, cfg.max_n), |m, n| {
        if let Some(case) = cap_guard(cfg, m, &[(LengthFamily::H, n), (LengthFamily::U, n.max(1))])? {
            return Ok(case);
        }
        let h = families::h(m, n)?;
        let mut stream = families::mbonacci_stream(m)?;
        if stream.prefix_word(h.len()) != *h {
            return Ok(Case::Fail(format!("h_{n} is not a prefix of the fixed point")));
        }
        if n >= 1 {
            let u = families::u(m, n)?;
            if stream.prefix_word(u.len()) != *u {
                return Ok(Case::Fail(format!("u_{n} is not a prefix of the fixed point")));
            }
        }
        Ok(Case::Pass)
    })
}

// ---------------------------------------------------------------------------
// Nonoccurrence suite: the factor-avoidance facts behind the main theorem.

/// The border seed (n-3 letter)^{-1} h_{n-3}^R (n-2 letter) never occurs in
/// u_{n-1}.
fn chk_frontier_seed_not_in_prior_prefix(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (3, cfg.factor_max_n), |m, n| {
        if let Some(case) = cap_guard(cfg, m, &[(LengthFamily::U, n - 1)])? {
            return Ok(case);
        }
        let v = families::z_frontier(m, n)?;
        Ok(if families::u(m, n - 1)?.contains_factor(&v)? {
            Case::Fail(format!("{} occurs in u_{}", snip(&v), n - 1))
        } else {
            Case::Pass
        })
    })
}

/// z_n never occurs in z_{n+1}.
fn chk_z_not_factor_of_next(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (0, cfg.factor_max_n), |m, n| {
        if let Some(case) = cap_guard(cfg, m, &[(LengthFamily::Z, n + 1)])? {
            return Ok(case);
        }
        Ok(if families::z(m, n + 1)?.contains_factor(&*families::z(m, n)?)? {
            Case::Fail(format!("z_{n} occurs in z_{}", n + 1))
        } else {
            Case::Pass
        })
    })
}

/// z_n never occurs in z_{n-1} z_n with the last letter removed.
fn chk_z_no_earlier_occurrence_nearby(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (1, cfg.factor_max_n), |m, n| {
        if let Some(case) = cap_guard(cfg, m, &[(LengthFamily::Z, n + 1)])? {
            return Ok(case);
        }
        let z = families::z(m, n)?;
        let host = Word::concat([&*families::z(m, n - 1)?, &*z]);
        let host = host.sub(0..host.len() - 1);
        Ok(if host.contains_factor(&z)? {
            Case::Fail(format!("z_{n} recurs inside z_{} z_{n} without its last letter", n - 1))
        } else {
            Case::Pass
        })
    })
}

/// z_n never occurs in the emitted prefix P_n.
fn chk_z_not_factor_of_emitted_prefix(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (1, cfg.factor_max_n), |m, n| {
        if let Some(case) = cap_guard(cfg, m, &[(LengthFamily::P, n)])? {
            return Ok(case);
        }
        Ok(if families::p(m, n)?.contains_factor(&*families::z(m, n)?)? {
            Case::Fail(format!("z_{n} occurs in P_{n}"))
        } else {
            Case::Pass
        })
    })
}

/// The stem (n-3 letter)^{-1} h_{n-3}^R never occurs in u_{n-3}.
fn chk_h_reversal_stem_not_in_u(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (4, cfg.factor_max_n), |m, n| {
        if let Some(case) = cap_guard(cfg, m, &[(LengthFamily::H, n - 3), (LengthFamily::U, n - 3)])? {
            return Ok(case);
        }
        let hr = families::h(m, n - 3)?.reversed();
        let stem = match hr.strip_prefix_word(&Word::single(und(m, n - 3))) {
            Some(w) => w,
            None => {
                return Ok(Case::Fail(format!("h_{}^R does not start with {}", n - 3, und(m, n - 3))))
            }
        };
        Ok(if families::u(m, n - 3)?.contains_factor(&stem)? {
            Case::Fail(format!("{} occurs in u_{}", snip(&stem), n - 3))
        } else {
            Case::Pass
        })
    })
}

// ---------------------------------------------------------------------------
// Theorem suite: the closed z-factorization of the fixed point.

/// Every z_n is closed, with the predicted doubly-occurring border from n = 2.
fn chk_z_factors_are_closed(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (0, cfg.max_n), |m, n| {
        if let Some(case) = cap_guard(cfg, m, &[(LengthFamily::Z, n)])? {
            return Ok(case);
        }
        let z = families::z(m, n)?;
        if !z.is_closed() {
            return Ok(Case::Fail(format!("z_{n} = {} is open", snip(&z))));
        }
        if n >= 2 {
            let border = z.closed_border();
            let frontier = families::z_frontier(m, n)?;
            if border.as_ref() != Some(&frontier) {
                return Ok(Case::Fail(format!(
                    "z_{n} has doubly-occurring border {:?}, expected {}",
                    border.map(|b| snip(&b)),
                    snip(&frontier)
                )));
            }
        }
        Ok(Case::Pass)
    })
}

/// The streaming closed z-factorization of the fixed point emits exactly
/// (z_0, z_1, z_2, ...); the quadratic factorizer agrees on a shorter run.
fn chk_closed_z_equals_z_words(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (0, cfg.factor_max_n), |m, n| {
        if n > 0 {
            return Ok(Case::Pass);
        }
        let count = (cfg.factor_max_n + 1) as usize;
        if let Some(case) = cap_guard(cfg, m, &[(LengthFamily::P, count as i64)])? {
            return Ok(case);
        }
        let fast =
            factorize::closed_z_factorize(&mut families::mbonacci_stream(m)?, Budget::Factors(count))?;
        for (j, f) in fast.factors.iter().enumerate() {
            let expect = families::z(m, j as i64)?;
            if f != &*expect {
                return Ok(Case::FailAt(
                    j as i64,
                    format!("closed z-factor {j} is {} but z_{j} = {}", snip(f), snip(&expect)),
                ));
            }
        }
        let naive_count = (if m == 2 { 14usize } else { 10 }).min(count);
        let prefix = (*families::p(m, naive_count as i64)?).clone();
        let (naive, complete) = oracle::closed_z_factorization(&prefix, Some(naive_count));
        if !complete || naive[..] != fast.factors[..naive_count] {
            return Ok(Case::Fail(
                "quadratic factorizer disagrees with the streaming engine".to_string(),
            ));
        }
        Ok(Case::Pass)
    })
}

/// z_n occurs exactly once in P_{n+1}: nowhere earlier than its own emission.
fn chk_z_no_earlier_full_occurrence(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (0, cfg.max_n), |m, n| {
        if let Some(case) = cap_guard(cfg, m, &[(LengthFamily::P, n + 1)])? {
            return Ok(case);
        }
        let count = families::p(m, n + 1)?.count_occurrences(&*families::z(m, n)?)?;
        Ok(if count == 1 {
            Case::Pass
        } else {
            Case::Fail(format!("z_{n} occurs {count} times in P_{}", n + 1))
        })
    })
}

/// Every closed proper prefix of z_n already occurs in P_n. Occurrence of the
/// longest such prefix implies occurrence of all shorter ones.
fn chk_z_closed_proper_prefixes_occur_earlier(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (0, cfg.max_n), |m, n| {
        if let Some(case) = cap_guard(cfg, m, &[(LengthFamily::P, n), (LengthFamily::Z, n)])? {
            return Ok(case);
        }
        let z = families::z(m, n)?;
        let p = families::p(m, n)?;
        let mut longest_closed_proper = 0usize;
        let mut scanner = ClosedPrefixScanner::new();
        for &a in z.letters() {
            if scanner.push(a) && scanner.len() < z.len() {
                longest_closed_proper = scanner.len();
            }
        }
        if longest_closed_proper == 0 {
            return Ok(Case::Pass);
        }
        let mut text: Vec<u16> = z.letters().iter().map(|a| a.value() as u16).collect();
        text.push(u16::MAX);
        text.extend(p.letters().iter().map(|a| a.value() as u16));
        let marks = z_array(&text);
        let longest_match = marks[z.len() + 1..].iter().copied().max().unwrap_or(0);
        Ok(if longest_closed_proper <= longest_match {
            Case::Pass
        } else {
            Case::Fail(format!(
                "the closed prefix of z_{n} with {longest_closed_proper} letters never occurs in P_{n} \
                 (longest prefix match there: {longest_match})"
            ))
        })
    })
}

/// The return words of u_{j+1} in the fixed point are exactly the mu_j images
/// of the letters.
fn chk_return_words_of_palindromic_prefixes(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (1, cfg.factor_max_n), |m, j| {
        if let Some(case) = cap_guard(cfg, m, &[(LengthFamily::U, j + 3)])? {
            return Ok(case);
        }
        let target = families::u(m, j + 1)?;
        let expected: BTreeSet<Vec<u8>> = mu(m, j as u64)?
            .images()
            .iter()
            .map(|w| w.letters().iter().map(|a| a.value()).collect())
            .collect();
        let mut window = usize::try_from(families::lengths(m, LengthFamily::U, j + 3)?).unwrap_or(usize::MAX);
        loop {
            let prefix = families::mbonacci_stream(m)?.prefix_word(window);
            let observed: BTreeSet<Vec<u8>> = match prefix.return_words(&target) {
                Ok(words) => words
                    .iter()
                    .map(|w| w.letters().iter().map(|a| a.value()).collect())
                    .collect(),
                Err(Error::TooFewOccurrences { .. }) => BTreeSet::new(),
                Err(e) => return Err(e),
            };
            if let Some(extra) = observed.difference(&expected).next() {
                let word = Word::from_letters(extra.iter().map(|&v| Letter::unchecked(v)).collect());
                return Ok(Case::Fail(format!(
                    "{} is a return word of u_{} but not a mu_{j} letter image",
                    snip(&word),
                    j + 1
                )));
            }
            if observed == expected {
                return Ok(Case::Pass);
            }
            if window as u128 >= cfg.length_cap {
                return Ok(Case::Skip(format!(
                    "only {} of {} return words of u_{} appear within the length cap",
                    observed.len(),
                    expected.len(),
                    j + 1
                )));
            }
            window = usize::try_from((window as u128 * 2).min(cfg.length_cap)).unwrap_or(usize::MAX);
        }
    })
}

// ---------------------------------------------------------------------------
// Ocseq suite: closed and open prefixes of the fixed point.

/// The ladder classification of prefix lengths agrees with the direct
/// closedness bit for every prefix up to 10^4.
fn chk_prefix_classification_matches_oc(cfg: &RunConfig) -> CheckRun {
    let n_max = 10_000usize.min(usize::try_from(cfg.length_cap).unwrap_or(usize::MAX));
    sweep(m_span(cfg), (1, n_max as i64), |m, l| {
        if l > 1 {
            return Ok(Case::Pass);
        }
        let seq = ocseq::oc(&mut families::mbonacci_stream(m)?, n_max);
        for len in 1..=n_max {
            let classified = ocseq::classify_prefix(m, len as u128)?.is_closed();
            if classified != seq.bit(len) {
                return Ok(Case::FailAt(
                    len as i64,
                    format!(
                        "prefix length {len}: ladder classification says closed={classified}, \
                         the border scan says closed={}",
                        seq.bit(len)
                    ),
                ));
            }
        }
        Ok(Case::Pass)
    })
}

/// u_n is closed for n >= 2, and from n = 3 its doubly-occurring border is
/// u_{n-1}.
fn chk_palindromic_prefixes_are_closed(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (2, cfg.max_n), |m, n| {
        if let Some(case) = cap_guard(cfg, m, &[(LengthFamily::U, n)])? {
            return Ok(case);
        }
        let u = families::u(m, n)?;
        if !u.is_closed() {
            return Ok(Case::Fail(format!("u_{n} is open")));
        }
        if n >= 3 {
            let border = u.closed_border();
            let expect = families::u(m, n - 1)?;
            if border.as_ref() != Some(&*expect) {
                return Ok(Case::Fail(format!(
                    "u_{n} has doubly-occurring border {:?}, expected u_{}",
                    border.map(|b| snip(&b)),
                    n - 1
                )));
            }
        }
        Ok(Case::Pass)
    })
}

/// The ladder steps: h_{n-1}^R = t_n h_{n-2}^R and u_{n+1} = u_n t_n h_{n-2}^R,
/// with the length bookkeeping to match.
fn chk_u_ladder_step(cfg: &RunConfig) -> CheckRun {
    sweep(m_span(cfg), (2, cfg.max_n), |m, n| {
        if let Some(case) = cap_guard(cfg, m, &[(LengthFamily::U, n + 1)])? {
            return Ok(case);
        }
        let t = families::t(m, n)?;
        let h_prev = families::h(m, n - 2)?.reversed();
        let lhs = families::h(m, n - 1)?.reversed();
        if lhs != Word::concat([&*t, &h_prev]) {
            return Ok(Case::Fail(format!("h_{}^R differs from t_{n} h_{}^R", n - 1, n - 2)));
        }
        let ladder = Word::concat([&*families::u(m, n)?, &*t, &h_prev]);
        if ladder != *families::u(m, n + 1)? {
            return Ok(Case::Fail(format!("u_{n} t_{n} h_{}^R differs from u_{}", n - 2, n + 1)));
        }
        let sum = families::lengths(m, LengthFamily::U, n)?
            + t.len() as u128
            + families::lengths(m, LengthFamily::H, n - 2)?;
        Ok(if sum == families::lengths(m, LengthFamily::U, n + 1)? {
            Case::Pass
        } else {
            Case::Fail(format!("|u_{n}| + |t_{n}| + |h_{}| differs from |u_{}|", n - 2, n + 1))
        })
    })
}

/// Reports whether the 1-run lengths of the oc-sequence equal (|h_i|) read
/// literally, or only after the initial run of length 1.
fn chk_oc_run_lengths_vs_h(cfg: &RunConfig) -> CheckRun {
    let n_max = 100_000usize.min(usize::try_from(cfg.length_cap).unwrap_or(usize::MAX));
    let mut lines = Vec::new();
    for m in cfg.m_lo..=cfg.m_hi {
        let mut stream = match families::mbonacci_stream(m) {
            Ok(s) => s,
            Err(e) => {
                return CheckRun {
                    m_range: m_span(cfg),
                    n_range: (1, n_max as i64),
                    outcome: Outcome::Fail(Counterexample { m, n: 0, detail: e.to_string() }),
                }
            }
        };
        let seq = ocseq::oc(&mut stream, n_max);
        let mut runs = seq.runs_of_ones();
        if seq.len() > 0 && seq.bit(seq.len()) {
            runs.pop();
        }
        let h_len = |i: usize| families::lengths(m, LengthFamily::H, i as i64).unwrap_or(u128::MAX);
        let literal = runs.iter().enumerate().all(|(i, &r)| r as u128 == h_len(i));
        let shifted = runs.first() == Some(&1)
            && runs[1..].iter().enumerate().all(|(i, &r)| r as u128 == h_len(i));
        lines.push(format!("m={m} literal={literal} shifted={shifted} runs={}", runs.len()));
    }
    CheckRun {
        m_range: m_span(cfg),
        n_range: (1, n_max as i64),
        outcome: Outcome::Report(lines.join("; ")),
    }
}

/// The block closed form of the three-letter oc-sequence matches the computed
/// sequence letter-for-letter.
fn chk_tribonacci_oc_closed_form(cfg: &RunConfig) -> CheckRun {
    let n_max = 10_000usize.min(usize::try_from(cfg.length_cap).unwrap_or(usize::MAX));
    if !(cfg.m_lo..=cfg.m_hi).contains(&3) {
        return CheckRun {
            m_range: (3, 3),
            n_range: (1, n_max as i64),
            outcome: Outcome::Skip("needs m = 3 in the m range".to_string()),
        };
    }
    sweep((3, 3), (1, n_max as i64), |_, l| {
        if l > 1 {
            return Ok(Case::Pass);
        }
        let computed = ocseq::oc(&mut families::mbonacci_stream(3)?, n_max);
        let closed_form = ocseq::tribonacci_oc_closed_form(n_max);
        for len in 1..=n_max {
            if computed.bit(len) != closed_form.bit(len) {
                return Ok(Case::FailAt(
                    len as i64,
                    format!("oc bit {len} is {} computed, {} in closed form", computed.bit(len), closed_form.bit(len)),
                ));
            }
        }
        Ok(Case::Pass)
    })
}

// ---------------------------------------------------------------------------
// Pz suite: palindromic factor lengths.

fn pz_factor_lengths(m: u8, count: usize) -> Result<Vec<usize>> {
    let f = factorize::palindromic_z_factorize(&mut families::mbonacci_stream(m)?, Budget::Factors(count))?;
    if !f.complete {
        return Err(Error::FactorSearchCap { cap: f.total_len() });
    }
    Ok(f.lengths())
}

/// The palindromic factor lengths satisfy the order-m window recurrence from
/// n = m-1 on: exactly for even m, with a (-1)^n correction for odd m.
fn chk_pz_length_recurrence(cfg: &RunConfig) -> CheckRun {
    let count = 20usize;
    sweep(m_span(cfg), (0, count as i64 - 1), |m, n| {
        if n > 0 {
            return Ok(Case::Pass);
        }
        let lens = pz_factor_lengths(m, count)?;
        if lens.iter().sum::<usize>() as u128 > cfg.length_cap {
            return Ok(Case::Skip(format!(
                "{} palindromic factors span more letters than the cap",
                count
            )));
        }
        for i in (m as i64 - 1)..count as i64 {
            let mut window = 0i128;
            for k in 1..=m as i64 {
                if i - k >= 0 {
                    window += lens[(i - k) as usize] as i128;
                }
            }
            let expected = if m % 2 == 0 {
                window
            } else if i % 2 == 0 {
                window + 1
            } else {
                window - 1
            };
            if lens[i as usize] as i128 != expected {
                return Ok(Case::FailAt(
                    i,
                    format!(
                        "palindromic factor {i} has {} letters, the window recurrence predicts {expected}",
                        lens[i as usize]
                    ),
                ));
            }
        }
        Ok(Case::Pass)
    })
}

/// For even m the palindromic factor lengths should equal |z_n| from n = m-1;
/// this length agreement is checked factor by factor.
fn chk_pz_cz_length_agreement_even_m(cfg: &RunConfig) -> CheckRun {
    let count = 20usize;
    if !(cfg.m_lo..=cfg.m_hi).any(|m| m % 2 == 0) {
        return CheckRun {
            m_range: m_span(cfg),
            n_range: (0, count as i64 - 1),
            outcome: Outcome::Skip("no even m in the range".to_string()),
        };
    }
    sweep(m_span(cfg), (0, count as i64 - 1), |m, n| {
        if m % 2 != 0 || n > 0 {
            return Ok(Case::Pass);
        }
        let lens = pz_factor_lengths(m, count)?;
        if lens.iter().sum::<usize>() as u128 > cfg.length_cap {
            return Ok(Case::Skip(format!(
                "{} palindromic factors span more letters than the cap",
                count
            )));
        }
        for i in (m as i64 - 1)..count as i64 {
            let z_len = families::lengths(m, LengthFamily::Z, i)?;
            if lens[i as usize] as u128 != z_len {
                return Ok(Case::FailAt(
                    i,
                    format!(
                        "|z_{i}| = {z_len} but palindromic factor {i} has {} letters",
                        lens[i as usize]
                    ),
                ));
            }
        }
        Ok(Case::Pass)
    })
}

// ---------------------------------------------------------------------------
// Check registry.

static ALL_CHECKS: &[CheckDef] = &[
    CheckDef { id: "fib-singular-not-factor-of-next", suite: Suite::Fibonacci, run: chk_fib_singular_not_factor_of_next },
    CheckDef { id: "fib-singular-recurrence", suite: Suite::Fibonacci, run: chk_fib_singular_recurrence },
    CheckDef { id: "fib-singular-palindrome", suite: Suite::Fibonacci, run: chk_fib_singular_palindrome },
    CheckDef { id: "fib-singular-not-factor-of-product", suite: Suite::Fibonacci, run: chk_fib_singular_not_factor_of_product },
    CheckDef { id: "fib-singular-closed", suite: Suite::Fibonacci, run: chk_fib_singular_closed },
    CheckDef { id: "fib-z-factors-are-singular", suite: Suite::Fibonacci, run: chk_fib_z_factors_are_singular },
    CheckDef { id: "fib-singular-window", suite: Suite::Fibonacci, run: chk_fib_singular_window },
    CheckDef { id: "fib-closed-z-equals-singular", suite: Suite::Fibonacci, run: chk_fib_closed_z_equals_singular },
    CheckDef { id: "fib-singular-equals-z-words", suite: Suite::Fibonacci, run: chk_fib_singular_equals_z_words },
    CheckDef { id: "h-reversal-initial-letters", suite: Suite::Families, run: chk_h_reversal_initial_letters },
    CheckDef { id: "h-is-mu-image", suite: Suite::Families, run: chk_h_is_mu_image },
    CheckDef { id: "palindromic-prefix-closure-step", suite: Suite::Families, run: chk_palindromic_prefix_closure_step },
    CheckDef { id: "palindromic-prefix-h-step", suite: Suite::Families, run: chk_palindromic_prefix_h_step },
    CheckDef { id: "palindromic-prefix-reversal-product", suite: Suite::Families, run: chk_palindromic_prefix_reversal_product },
    CheckDef { id: "h-from-palindromic-prefix", suite: Suite::Families, run: chk_h_from_palindromic_prefix },
    CheckDef { id: "psi-image-length-and-positions", suite: Suite::Families, run: chk_psi_image_positions },
    CheckDef { id: "psi-composition-product-identity", suite: Suite::Families, run: chk_psi_composition_product },
    CheckDef { id: "mu-window-product", suite: Suite::Families, run: chk_mu_window_product },
    CheckDef { id: "mu-of-next-letter", suite: Suite::Families, run: chk_mu_of_next_letter },
    CheckDef { id: "h-reversal-phi-step", suite: Suite::Families, run: chk_h_reversal_phi_step },
    CheckDef { id: "palindromic-prefix-phi-step", suite: Suite::Families, run: chk_palindromic_prefix_phi_step },
    CheckDef { id: "z-length-recurrence", suite: Suite::Families, run: chk_z_length_recurrence },
    CheckDef { id: "z-boundary-letters", suite: Suite::Families, run: chk_z_boundary_letters },
    CheckDef { id: "phi-images-form-a-code", suite: Suite::Families, run: chk_phi_images_form_a_code },
    CheckDef { id: "phi-of-letter-identity", suite: Suite::Families, run: chk_phi_of_letter },
    CheckDef { id: "z-phi-recursion", suite: Suite::Recursions, run: chk_z_phi_recursion },
    CheckDef { id: "p-phi-recursion", suite: Suite::Recursions, run: chk_p_phi_recursion },
    CheckDef { id: "p-prefix-ladder", suite: Suite::Recursions, run: chk_p_prefix_ladder },
    CheckDef { id: "h-u-prefixes-of-fixed-point", suite: Suite::Recursions, run: chk_h_u_prefixes_of_fixed_point },
    CheckDef { id: "frontier-seed-not-in-prior-palindromic-prefix", suite: Suite::Nonoccurrence, run: chk_frontier_seed_not_in_prior_prefix },
    CheckDef { id: "z-not-factor-of-next", suite: Suite::Nonoccurrence, run: chk_z_not_factor_of_next },
    CheckDef { id: "z-no-earlier-occurrence-in-neighborhood", suite: Suite::Nonoccurrence, run: chk_z_no_earlier_occurrence_nearby },
    CheckDef { id: "z-not-factor-of-emitted-prefix", suite: Suite::Nonoccurrence, run: chk_z_not_factor_of_emitted_prefix },
    CheckDef { id: "h-reversal-stem-not-in-u", suite: Suite::Nonoccurrence, run: chk_h_reversal_stem_not_in_u },
    CheckDef { id: "z-factors-are-closed", suite: Suite::Theorem, run: chk_z_factors_are_closed },
    CheckDef { id: "closed-z-equals-z-words", suite: Suite::Theorem, run: chk_closed_z_equals_z_words },
    CheckDef { id: "z-no-earlier-full-occurrence", suite: Suite::Theorem, run: chk_z_no_earlier_full_occurrence },
    CheckDef { id: "z-closed-proper-prefixes-occur-earlier", suite: Suite::Theorem, run: chk_z_closed_proper_prefixes_occur_earlier },
    CheckDef { id: "return-words-of-palindromic-prefixes", suite: Suite::Theorem, run: chk_return_words_of_palindromic_prefixes },
    CheckDef { id: "prefix-classification-matches-oc", suite: Suite::Ocseq, run: chk_prefix_classification_matches_oc },
    CheckDef { id: "palindromic-prefixes-are-closed", suite: Suite::Ocseq, run: chk_palindromic_prefixes_are_closed },
    CheckDef { id: "u-ladder-step-sum", suite: Suite::Ocseq, run: chk_u_ladder_step },
    CheckDef { id: "oc-run-lengths-vs-h", suite: Suite::Ocseq, run: chk_oc_run_lengths_vs_h },
    CheckDef { id: "tribonacci-oc-closed-form", suite: Suite::Ocseq, run: chk_tribonacci_oc_closed_form },
    CheckDef { id: "pz-length-recurrence", suite: Suite::Pz, run: chk_pz_length_recurrence },
    CheckDef { id: "pz-cz-length-agreement-even-m", suite: Suite::Pz, run: chk_pz_cz_length_agreement_even_m },
];

// ---------------------------------------------------------------------------
// Conjecture scan.

/// One comparison row of the closed c-factorization scan.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ConjectureRow {
    pub i: usize,
    pub factor_len: usize,
    pub h_len: u128,
    pub equal: bool,
}

/// Closed c-factor lengths of the fixed point, stabilized by doubling the
/// analyzed prefix until two consecutive runs agree on the first `count`
/// factors with at least one factor to spare.
fn stable_cc_lengths(m: u8, count: usize, mode: CcMode) -> Result<Vec<usize>> {
    let mut window = 1usize << 15;
    let mut prev: Option<Vec<usize>> = None;
    loop {
        let prefix = families::mbonacci_stream(m)?.prefix_word(window);
        let lens = factorize::closed_c_factorize(&prefix, mode).lengths();
        if lens.len() > count {
            if let Some(p) = &prev {
                if p.len() > count && p[..count] == lens[..count] {
                    return Ok(lens[..count].to_vec());
                }
            }
        }
        prev = Some(lens);
        if window >= 1 << 23 {
            return Err(Error::FactorSearchCap { cap: window });
        }
        window *= 2;
    }
}

/// Compare |c_i| with |h_{i-m+1}| for i >= 2m-1 under the chosen closed
/// c-factor definition.
pub fn conjecture_rows(m: u8, factor_count: usize, mode: CcMode) -> Result<Vec<ConjectureRow>> {
    crate::check_alphabet(m)?;
    if m < 3 || factor_count < 2 * m as usize - 1 {
        return Err(Error::ConjectureParams { m, count: factor_count });
    }
    let lens = stable_cc_lengths(m, factor_count, mode)?;
    let mut rows = Vec::new();
    for i in (2 * m as usize - 1)..factor_count {
        let h_len = families::lengths(m, LengthFamily::H, i as i64 - m as i64 + 1)?;
        rows.push(ConjectureRow {
            i,
            factor_len: lens[i],
            h_len,
            equal: lens[i] as u128 == h_len,
        });
    }
    Ok(rows)
}

/// The conjecture scan as a report-only check: the row table lands in the
/// detail field and never fails the run.
pub fn check_conjecture(m: u8, factor_count: usize, mode: CcMode) -> Result<PropertyCheck> {
    let rows = conjecture_rows(m, factor_count, mode)?;
    let all_equal = rows.iter().all(|r| r.equal);
    let table = rows
        .iter()
        .map(|r| {
            format!(
                "i={} |c_i|={} |h_{}|={} equal={}",
                r.i,
                r.factor_len,
                r.i as i64 - m as i64 + 1,
                r.h_len,
                r.equal
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    Ok(PropertyCheck {
        id: format!("conjecture-{}", mode.tag()),
        suite: "conjecture".to_string(),
        m_range: (m, m),
        n_range: (2 * m as i64 - 1, factor_count as i64 - 1),
        status: CheckStatus::ReportOnly,
        counterexample: None,
        detail: Some(format!("all_equal={all_equal}; {table}")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_cfg(m_lo: u8, m_hi: u8) -> RunConfig {
        let mut cfg = RunConfig::new(m_lo, m_hi);
        cfg.max_n = 9;
        cfg.factor_max_n = 7;
        cfg
    }

    fn assert_all_pass(checks: &[PropertyCheck]) {
        for c in checks {
            assert!(
                matches!(c.status, CheckStatus::Pass | CheckStatus::ReportOnly),
                "{} unexpectedly {:?}: {:?} {:?}",
                c.id,
                c.status,
                c.counterexample,
                c.detail
            );
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in [
            Suite::Fibonacci,
            Suite::Families,
            Suite::Recursions,
            Suite::Nonoccurrence,
            Suite::Theorem,
            Suite::Ocseq,
            Suite::Pz,
            Suite::All,
        ] {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!("x".parse::<Suite>(), Err(Error::SuiteParse(_))));
    }

    #[test]
    fn fibonacci_suite_passes() {
        assert_all_pass(&run_suite(Suite::Fibonacci, &small_cfg(2, 2)));
    }

    #[test]
    fn fibonacci_suite_skips_without_m2() {
        let checks = run_suite(Suite::Fibonacci, &small_cfg(3, 3));
        assert!(checks.iter().all(|c| c.status == CheckStatus::Skipped));
    }

    #[test]
    fn families_and_recursions_pass_on_small_grid() {
        assert_all_pass(&run_suite(Suite::Families, &small_cfg(2, 4)));
        assert_all_pass(&run_suite(Suite::Recursions, &small_cfg(2, 4)));
    }

    #[test]
    fn nonoccurrence_and_theorem_pass_on_small_grid() {
        assert_all_pass(&run_suite(Suite::Nonoccurrence, &small_cfg(2, 4)));
        assert_all_pass(&run_suite(Suite::Theorem, &small_cfg(2, 4)));
    }

    #[test]
    fn ocseq_suite_passes_and_reports_shifted_indexing() {
        let checks = run_suite(Suite::Ocseq, &small_cfg(2, 3));
        assert_all_pass(&checks);
        let runs = checks.iter().find(|c| c.id == "oc-run-lengths-vs-h").unwrap();
        assert_eq!(runs.status, CheckStatus::ReportOnly);
        let detail = runs.detail.as_deref().unwrap();
        assert!(detail.contains("literal=false"), "{detail}");
        assert!(detail.contains("shifted=true"), "{detail}");
    }

    #[test]
    fn pz_suite_passes_for_m_2_and_3() {
        assert_all_pass(&run_suite(Suite::Pz, &small_cfg(2, 3)));
    }

    #[test]
    fn pz_length_agreement_diverges_for_m_4() {
        let checks = run_suite(Suite::Pz, &small_cfg(4, 4));
        let agree = checks.iter().find(|c| c.id == "pz-cz-length-agreement-even-m").unwrap();
        assert_eq!(agree.status, CheckStatus::Fail);
        let ce = agree.counterexample.as_ref().unwrap();
        assert_eq!((ce.m, ce.n), (4, 4));
        // The window recurrence itself still holds there.
        let rec = checks.iter().find(|c| c.id == "pz-length-recurrence").unwrap();
        assert_eq!(rec.status, CheckStatus::Pass);
    }

    #[test]
    fn run_suite_is_deterministic() {
        let cfg = small_cfg(2, 3);
        let a = run_suite(Suite::Nonoccurrence, &cfg);
        let b = run_suite(Suite::Nonoccurrence, &cfg);
        assert_eq!(a, b);
    }

    #[test]
    fn failing_checks_carry_smallest_counterexamples() {
        // A cap of zero makes every capped case skip rather than fail.
        let mut cfg = small_cfg(2, 2);
        cfg.length_cap = 0;
        let checks = run_suite(Suite::Nonoccurrence, &cfg);
        for c in &checks {
            assert_eq!(c.status, CheckStatus::Skipped, "{}", c.id);
            assert!(c.counterexample.is_none());
        }
    }

    #[test]
    fn property_checks_serialize_round_trip() {
        let checks = run_suite(Suite::Pz, &small_cfg(2, 2));
        let json = serde_json::to_string(&checks).unwrap();
        let back: Vec<PropertyCheck> = serde_json::from_str(&json).unwrap();
        assert_eq!(checks, back);
    }

    #[test]
    fn conjecture_report_is_internally_consistent() {
        let check = check_conjecture(3, 8, CcMode::LongestClosed).unwrap();
        assert_eq!(check.status, CheckStatus::ReportOnly);
        assert_eq!(check.n_range, (5, 7));
        let rows = conjecture_rows(3, 8, CcMode::LongestClosed).unwrap();
        assert_eq!(rows.len(), 3);
        for r in &rows {
            assert_eq!(r.equal, r.factor_len as u128 == r.h_len);
        }
    }

    #[test]
    fn conjecture_rejects_bad_parameters() {
        assert!(matches!(
            conjecture_rows(2, 20, CcMode::LongestClosed),
            Err(Error::ConjectureParams { .. })
        ));
        assert!(matches!(
            conjecture_rows(3, 4, CcMode::LongestClosed),
            Err(Error::ConjectureParams { .. })
        ));
    }

    #[test]
    fn render_text_includes_counterexamples() {
        let checks = run_suite(Suite::Pz, &small_cfg(4, 4));
        let text = render_text(&checks);
        assert!(text.contains("FAIL"));
        assert!(text.contains("counterexample m=4 n=4"));
    }
}
