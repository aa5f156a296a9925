//! Thin command-line front end over the `closedz` library.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use closedz::factorize::{self, Budget, CcMode, Factorization, Scheme};
use closedz::families;
use closedz::ocseq;
use closedz::verify::{self, CheckStatus, RunConfig, Suite};
use closedz::Word;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] closedz::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Parser)]
#[command(name = "closedz", version, about = "Word families, closed and palindromic \
factorizations, and oc-sequences of m-bonacci words")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// Prefix of the m-bonacci fixed point; takes --length.
    FixedPoint,
    /// The recurrence words h_n, n >= -1.
    H,
    /// The palindromic prefixes u_n, n >= 1.
    U,
    /// The singular words w_n, n >= -2 (two-letter alphabet only).
    W,
    /// The closed z-factors z_n, n >= 0.
    Z,
    /// The emitted prefixes P_n = z_0 ... z_{n-1}, n >= 0.
    P,
    /// The ladder links t_n, n >= 2.
    T,
}

impl Family {
    fn tag(self) -> &'static str {
        match self {
            Family::FixedPoint => "fixed-point",
            Family::H => "h",
            Family::U => "u",
            Family::W => "w",
            Family::Z => "z",
            Family::P => "p",
            Family::T => "t",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print one word of a family, or a fixed-point prefix.
    Generate {
        /// Alphabet size, 2..=36.
        #[arg(long)]
        m: u8,
        #[arg(long, value_enum)]
        family: Family,
        /// Index into the family.
        #[arg(long, allow_negative_numbers = true)]
        n: Option<i64>,
        /// Prefix length, for --family fixed-point.
        #[arg(long)]
        length: Option<usize>,
    },
    /// Factorize the m-bonacci fixed point or a finite word from a file.
    Factorize {
        /// Factorization scheme: z, cz, pz, c, or cc.
        #[arg(long, value_parser = Scheme::from_str)]
        scheme: Scheme,
        /// Stream the m-bonacci fixed point with this alphabet size.
        #[arg(long, conflicts_with = "input")]
        m: Option<u8>,
        /// Read the finite input word from a file (letters 0-9a-z,
        /// whitespace ignored).
        #[arg(long, required_unless_present = "m")]
        input: Option<PathBuf>,
        /// Stop after this many factors.
        #[arg(long, conflicts_with = "letters")]
        count: Option<usize>,
        /// Stop after consuming this many letters.
        #[arg(long)]
        letters: Option<usize>,
        /// Closed-c variant, for --scheme cc.
        #[arg(long, value_parser = CcMode::from_str, default_value = "cc-longest-closed")]
        mode: CcMode,
    },
    /// Print the oc-sequence of the m-bonacci word: bit n says whether the
    /// length-n prefix is closed.
    Oc {
        /// Alphabet size, 2..=36.
        #[arg(long)]
        m: u8,
        /// Number of prefixes to classify.
        #[arg(long)]
        length: usize,
        /// Print the run lengths of 1s instead of the bit string.
        #[arg(long)]
        runs: bool,
    },
    /// Run a property-check suite over a grid of alphabets.
    Verify {
        /// Suite: fibonacci, families, recursions, nonoccurrence, theorem,
        /// ocseq, pz, or all.
        #[arg(long, value_parser = Suite::from_str, default_value = "all")]
        suite: Suite,
        /// Inclusive alphabet range: a single value or lo..hi.
        #[arg(long, value_parser = parse_m_range, default_value = "2..5")]
        m: (u8, u8),
        /// Depth for factor-search checks, which scan quadratically.
        #[arg(long, default_value_t = 14)]
        max_n: i64,
        /// Depth for word-identity checks.
        #[arg(long, default_value_t = 20)]
        identity_max_n: i64,
        /// Skip cases needing words longer than this many letters
        /// (also settable via CLOSEDZ_LENGTH_CAP).
        #[arg(long)]
        length_cap: Option<u128>,
        /// Worker threads; defaults to one per core.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Compare closed c-factor lengths of the fixed point against |h_{i-m+1}|.
    Conjecture {
        /// Alphabet size, 3..=36.
        #[arg(long)]
        m: u8,
        /// How many leading factors to stabilize.
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Closed-c variant: cc-longest-closed or cc-alternative.
        #[arg(long, value_parser = CcMode::from_str, default_value = "cc-longest-closed")]
        mode: CcMode,
    },
}

fn parse_m_range(s: &str) -> Result<(u8, u8), String> {
    let parse = |part: &str| {
        part.parse::<u8>()
            .map_err(|_| format!("expected an alphabet size, got {part:?}"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b)?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if !(2 <= lo && lo <= hi && hi <= 36) {
        return Err(format!(
            "alphabet range must satisfy 2 <= lo <= hi <= 36, got {lo}..{hi}"
        ));
    }
    Ok((lo, hi))
}

/// Minimal CSV quoting: wrap fields containing separators or quotes.
fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn read_input_word(path: &PathBuf) -> CliResult<Word> {
    let raw = std::fs::read_to_string(path)?;
    let compact: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
    Ok(compact.parse::<Word>()?)
}

fn cmd_generate(
    format: Format,
    m: u8,
    family: Family,
    n: Option<i64>,
    length: Option<usize>,
) -> CliResult<ExitCode> {
    let word: Word = match family {
        Family::FixedPoint => {
            if n.is_some() {
                return Err(usage("family fixed-point takes --length, not --n"));
            }
            let len =
                length.ok_or_else(|| usage("family fixed-point needs --length"))?;
            families::mbonacci_stream(m)?.prefix_word(len)
        }
        _ => {
            if length.is_some() {
                return Err(usage(format!("family {} takes --n, not --length", family.tag())));
            }
            let n = n.ok_or_else(|| usage(format!("family {} needs --n", family.tag())))?;
            match family {
                Family::H => (*families::h(m, n)?).clone(),
                Family::U => (*families::u(m, n)?).clone(),
                Family::W => {
                    if m != 2 {
                        return Err(usage(format!("family w needs m = 2 (got m={m})")));
                    }
                    (*families::singular(n)?).clone()
                }
                Family::Z => (*families::z(m, n)?).clone(),
                Family::P => (*families::p(m, n)?).clone(),
                Family::T => (*families::t(m, n)?).clone(),
                Family::FixedPoint => unreachable!(),
            }
        }
    };
    match format {
        Format::Text => println!("{word}"),
        Format::Csv => {
            println!("family,m,n,length,word");
            println!(
                "{},{},{},{},{}",
                family.tag(),
                m,
                n.map(|v| v.to_string()).unwrap_or_default(),
                word.len(),
                word
            );
        }
        Format::Json => {
            let obj = json!({
                "family": family.tag(),
                "m": m,
                "n": n,
                "length": word.len(),
                "word": word.to_string(),
            });
            println!("{}", serde_json::to_string_pretty(&obj)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_factorize(
    format: Format,
    scheme: Scheme,
    m: Option<u8>,
    input: Option<PathBuf>,
    count: Option<usize>,
    letters: Option<usize>,
    mode: CcMode,
) -> CliResult<ExitCode> {
    let f: Factorization = match scheme {
        Scheme::C | Scheme::Cc => {
            let path = input.ok_or_else(|| {
                usage(format!(
                    "scheme {} is defined on finite words only; use --input",
                    scheme.tag()
                ))
            })?;
            if count.is_some() || letters.is_some() {
                return Err(usage(format!(
                    "scheme {} always factorizes the whole input; drop --count/--letters",
                    scheme.tag()
                )));
            }
            let w = read_input_word(&path)?;
            match scheme {
                Scheme::C => factorize::c_factorize(&w),
                _ => factorize::closed_c_factorize(&w, mode),
            }
        }
        _ => {
            let budget = match (count, letters) {
                (Some(c), _) => Budget::Factors(c),
                (None, Some(l)) => Budget::Letters(l),
                (None, None) if input.is_some() => Budget::Letters(usize::MAX),
                (None, None) => Budget::Factors(10),
            };
            match (input, m) {
                (Some(path), _) => {
                    let mut w = read_input_word(&path)?;
                    let budget = match budget {
                        Budget::Letters(l) => Budget::Letters(l.min(w.len())),
                        b => b,
                    };
                    match scheme {
                        Scheme::Z => factorize::z_factorize(&mut w, budget)?,
                        Scheme::Cz => factorize::closed_z_factorize(&mut w, budget)?,
                        _ => factorize::palindromic_z_factorize(&mut w, budget)?,
                    }
                }
                (None, Some(m)) => {
                    let mut stream = families::mbonacci_stream(m)?;
                    match scheme {
                        Scheme::Z => factorize::z_factorize(&mut stream, budget)?,
                        Scheme::Cz => factorize::closed_z_factorize(&mut stream, budget)?,
                        _ => factorize::palindromic_z_factorize(&mut stream, budget)?,
                    }
                }
                (None, None) => unreachable!("clap enforces --m or --input"),
            }
        }
    };
    let report = f.report(m);
    match format {
        Format::Text => {
            println!(
                "# scheme={} factors={} letters={} complete={}",
                report.scheme,
                f.factors.len(),
                f.total_len(),
                f.complete
            );
            for entry in &report.factors {
                println!("{}\t{}\t{}", entry.index, entry.length, entry.word);
            }
        }
        Format::Csv => {
            println!("index,length,word");
            for entry in &report.factors {
                println!("{},{},{}", entry.index, entry.length, entry.word);
            }
        }
        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_oc(format: Format, m: u8, length: usize, runs: bool) -> CliResult<ExitCode> {
    let mut stream = families::mbonacci_stream(m)?;
    let seq = ocseq::oc(&mut stream, length);
    let run_list = seq.runs_of_ones();
    match format {
        Format::Text => {
            if runs {
                let parts: Vec<String> = run_list.iter().map(|r| r.to_string()).collect();
                println!("{}", parts.join(","));
            } else {
                println!("{}", seq.to_bit_string());
            }
        }
        Format::Csv => {
            if runs {
                println!("index,run");
                for (i, r) in run_list.iter().enumerate() {
                    println!("{i},{r}");
                }
            } else {
                println!("n,closed");
                for n in 1..=seq.len() {
                    println!("{n},{}", u8::from(seq.bit(n)));
                }
            }
        }
        Format::Json => {
            let obj = json!({
                "m": m,
                "length": seq.len(),
                "bits": seq.to_bit_string(),
                "runs": run_list,
            });
            println!("{}", serde_json::to_string_pretty(&obj)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn status_tag(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "fail",
        CheckStatus::ReportOnly => "report-only",
        CheckStatus::Skipped => "skipped",
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    format: Format,
    suite: Suite,
    m: (u8, u8),
    max_n: i64,
    identity_max_n: i64,
    length_cap: Option<u128>,
    threads: Option<usize>,
) -> CliResult<ExitCode> {
    let mut cfg = RunConfig::new(m.0, m.1).with_env_cap();
    cfg.factor_max_n = max_n;
    cfg.max_n = identity_max_n;
    if let Some(cap) = length_cap {
        cfg.length_cap = cap;
    }
    cfg.threads = threads;
    let checks = verify::run_suite(suite, &cfg);
    match format {
        Format::Text => {
            print!("{}", verify::render_text(&checks));
            let count = |s: CheckStatus| checks.iter().filter(|c| c.status == s).count();
            println!(
                "total={} pass={} fail={} report-only={} skipped={}",
                checks.len(),
                count(CheckStatus::Pass),
                count(CheckStatus::Fail),
                count(CheckStatus::ReportOnly),
                count(CheckStatus::Skipped)
            );
        }
        Format::Csv => {
            println!("id,suite,m_lo,m_hi,n_lo,n_hi,status,ce_m,ce_n,detail");
            for c in &checks {
                let (ce_m, ce_n, ce_detail) = match &c.counterexample {
                    Some(ce) => (ce.m.to_string(), ce.n.to_string(), ce.detail.clone()),
                    None => (String::new(), String::new(), String::new()),
                };
                let detail = c.detail.clone().unwrap_or(ce_detail);
                println!(
                    "{},{},{},{},{},{},{},{},{},{}",
                    c.id,
                    c.suite,
                    c.m_range.0,
                    c.m_range.1,
                    c.n_range.0,
                    c.n_range.1,
                    status_tag(c.status),
                    ce_m,
                    ce_n,
                    csv_field(&detail)
                );
            }
        }
        Format::Json => println!("{}", serde_json::to_string_pretty(&checks)?),
    }
    Ok(if verify::any_failed(&checks) {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_conjecture(format: Format, m: u8, count: usize, mode: CcMode) -> CliResult<ExitCode> {
    let rows = verify::conjecture_rows(m, count, mode)?;
    let all_equal = rows.iter().all(|r| r.equal);
    match format {
        Format::Text => {
            println!("# m={m} mode={} factors={count}", mode.tag());
            for r in &rows {
                println!(
                    "i={} |c_i|={} |h_{}|={} equal={}",
                    r.i,
                    r.factor_len,
                    r.i as i64 - m as i64 + 1,
                    r.h_len,
                    r.equal
                );
            }
            println!("all_equal={all_equal}");
            println!("errors: none");
        }
        Format::Csv => {
            println!("i,factor_len,h_len,equal");
            for r in &rows {
                println!("{},{},{},{}", r.i, r.factor_len, r.h_len, r.equal);
            }
        }
        Format::Json => {
            let obj = json!({
                "m": m,
                "mode": mode.tag(),
                "count": count,
                "all_equal": all_equal,
                "rows": rows,
            });
            println!("{}", serde_json::to_string_pretty(&obj)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    let format = cli.format;
    match cli.command {
        Command::Generate { m, family, n, length } => cmd_generate(format, m, family, n, length),
        Command::Factorize { scheme, m, input, count, letters, mode } => {
            cmd_factorize(format, scheme, m, input, count, letters, mode)
        }
        Command::Oc { m, length, runs } => cmd_oc(format, m, length, runs),
        Command::Verify { suite, m, max_n, identity_max_n, length_cap, threads } => {
            cmd_verify(format, suite, m, max_n, identity_max_n, length_cap, threads)
        }
        Command::Conjecture { m, count, mode } => cmd_conjecture(format, m, count, mode),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m_range_parses_single_values_and_spans() {
        assert_eq!(parse_m_range("3").unwrap(), (3, 3));
        assert_eq!(parse_m_range("2..5").unwrap(), (2, 5));
        assert!(parse_m_range("1..5").unwrap_err().contains("2 <= lo"));
        assert!(parse_m_range("5..2").is_err());
        assert!(parse_m_range("x").is_err());
    }

    #[test]
    fn csv_fields_quote_separators() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }

    #[test]
    fn cli_declares_consistent_arguments() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
