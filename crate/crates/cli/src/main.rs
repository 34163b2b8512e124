//! `fpl`: exact counts, link-pattern distributions, identity checks and
//! tiling counts from the command line.

mod cache;

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fpl_core::{
    count_class, count_cssc, count_formula_a, count_memoized, count_qcsscpp, pattern_counts, refined_polynomial, run,
    Identity, Method, Status, SymmetryClass, VerificationReport,
};
use serde::Serialize;

use cache::{Cache, CacheKey};

#[derive(Parser)]
#[command(name = "fpl", version, about = "Exact enumeration of symmetric fully-packed loops and their link patterns")]
struct Cli {
    /// Worker threads for enumeration (defaults to all cores).
    #[arg(long, global = true, value_name = "K")]
    jobs: Option<usize>,
    /// Cache directory; overrides FPL_CACHE_DIR and the user cache path.
    #[arg(long, global = true, value_name = "PATH")]
    cache_dir: Option<PathBuf>,
    /// Neither read nor write cached results.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct JsonOut {
    /// Emit JSON, to PATH if given and to stdout otherwise.
    #[arg(long, value_name = "PATH", num_args = 0..=1)]
    json: Option<Option<PathBuf>>,
}

#[derive(Subcommand)]
enum Command {
    /// Number of ASMs (equivalently FPLs) of a size and symmetry class.
    Count {
        #[arg(long)]
        size: usize,
        #[arg(long, value_parser = parse_class)]
        class: SymmetryClass,
        /// Coefficients by the column of the 1 in the first row.
        #[arg(long, conflicts_with = "formula_only")]
        refined: bool,
        /// Use the product formula instead of enumerating the class.
        #[arg(long)]
        formula_only: bool,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Per-link-pattern counts, sorted by word.
    Patterns {
        #[arg(long)]
        size: usize,
        #[arg(long, value_parser = parse_class)]
        class: SymmetryClass,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Check an identity over a range of size parameters.
    Verify {
        #[arg(value_parser = parse_identity)]
        identity: Identity,
        /// A single value `k` or an inclusive range `a..b`.
        #[arg(long, value_parser = parse_range, conflicts_with = "max_n")]
        n: Option<(usize, usize)>,
        /// Check from the smallest meaningful value up to K.
        #[arg(long, value_name = "K")]
        max_n: Option<usize>,
        /// Run sizes above the identity's ceiling.
        #[arg(long)]
        force: bool,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Rotation-invariant rhombus tilings of hexagons.
    Tilings {
        #[arg(value_enum)]
        kind: TilingKind,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_method, default_value = "brute")]
        method: Method,
        #[command(flatten)]
        out: JsonOut,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TilingKind {
    /// Hexagon of side 2n, invariant under the 60-degree rotation.
    Cssc,
    /// Hexagon of side 2n+1 with a central unit hole, same symmetry.
    Qcsscpp,
}

fn parse_class(s: &str) -> Result<SymmetryClass, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_identity(s: &str) -> Result<Identity, String> {
    s.parse()
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("invalid size parameter {t:?}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            if a > b {
                return Err(format!("empty range {s}"));
            }
            Ok((a, b))
        }
        None => num(s).map(|k| (k, k)),
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Brute => "brute",
        Method::Ciucu => "ciucu",
        Method::Lgv => "lgv",
        Method::Formula => "formula",
    }
}

/// Failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure { code: 1, message: e.to_string() }
    }
}

#[derive(Serialize)]
struct CountRecord {
    kind: &'static str,
    size: usize,
    class: &'static str,
    method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    count: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coefficients: Option<Vec<String>>,
}

#[derive(Serialize)]
struct PatternRow {
    word: String,
    count: String,
}

#[derive(Serialize)]
struct PatternsRecord {
    kind: &'static str,
    size: usize,
    class: &'static str,
    total: String,
    rows: Vec<PatternRow>,
}

#[derive(Serialize)]
struct TilingRecord {
    kind: &'static str,
    family: &'static str,
    n: usize,
    side: usize,
    method: &'static str,
    count: String,
}

fn emit<T: Serialize>(out: &JsonOut, record: &T, text: impl FnOnce() -> String) -> Result<(), Failure> {
    match &out.json {
        None => println!("{}", text()),
        Some(None) => println!("{}", serde_json::to_string_pretty(record)?),
        Some(Some(path)) => {
            fs::write(path, serde_json::to_string_pretty(record)? + "\n")?;
            println!("{}", text());
        }
    }
    Ok(())
}

/// `A_HT(2m)` for the quarter-turn and `A_HT(2n+1)` for the quasi-quarter-turn
/// factorizations.
fn formula_count(size: usize, class: SymmetryClass) -> Result<String, Failure> {
    class.check_size(size)?;
    let value = match class {
        SymmetryClass::Plain => count_formula_a(size),
        SymmetryClass::HalfTurn => count_memoized(size, class)?,
        SymmetryClass::QuarterTurn => {
            let a = count_formula_a(size / 4);
            count_memoized(size / 2, SymmetryClass::HalfTurn)? * &a * &a
        }
        SymmetryClass::QuasiQuarterTurn => {
            let n = (size - 2) / 4;
            count_memoized(size / 2, SymmetryClass::HalfTurn)? * count_formula_a(n + 1) * count_formula_a(n)
        }
    };
    Ok(value.to_string())
}

fn cmd_count(cache: &Cache, size: usize, class: SymmetryClass, refined: bool, formula_only: bool, out: &JsonOut) -> Result<(), Failure> {
    class.check_size(size)?;
    let name = class.short_name();
    let record = if refined {
        let coefficients: Vec<String> = cache.get_or_compute(CacheKey::new("count", size, name, "refined"), || {
            let p = refined_polynomial(size, class)?;
            Ok::<_, Failure>(p.coefficients.iter().map(|c| c.to_string()).collect())
        })?;
        CountRecord { kind: "count", size, class: name, method: "enumeration", count: None, coefficients: Some(coefficients) }
    } else {
        let method = if formula_only { "formula" } else { "enumeration" };
        let count: String = cache.get_or_compute(CacheKey::new("count", size, name, method), || {
            if formula_only {
                formula_count(size, class)
            } else {
                Ok(count_class(size, class)?.to_string())
            }
        })?;
        CountRecord { kind: "count", size, class: name, method, count: Some(count), coefficients: None }
    };
    emit(out, &record, || match (&record.count, &record.coefficients) {
        (Some(c), _) => c.clone(),
        (None, Some(cs)) => cs.iter().enumerate().map(|(k, c)| format!("y^{k}  {c}")).collect::<Vec<_>>().join("\n"),
        (None, None) => unreachable!("a count record carries a count or coefficients"),
    })
}

fn cmd_patterns(cache: &Cache, size: usize, class: SymmetryClass, out: &JsonOut) -> Result<(), Failure> {
    class.check_size(size)?;
    let name = class.short_name();
    let (counts, total): (BTreeMap<String, String>, String) =
        cache.get_or_compute(CacheKey::new("patterns", size, name, "all"), || {
            let d = pattern_counts(size, class)?;
            Ok::<_, Failure>((d.counts.iter().map(|(w, c)| (w.clone(), c.to_string())).collect(), d.total.to_string()))
        })?;
    let rows: Vec<PatternRow> = counts.into_iter().map(|(word, count)| PatternRow { word, count }).collect();
    let record = PatternsRecord { kind: "patterns", size, class: name, total, rows };
    emit(out, &record, || {
        let width = record.rows.iter().map(|r| r.word.len()).max().unwrap_or(0).max(5);
        let digits = record.total.len();
        let mut lines: Vec<String> = record.rows.iter().map(|r| format!("{:width$}  {:>digits$}", r.word, r.count)).collect();
        lines.push(format!("{:width$}  {:>digits$}", "total", record.total));
        lines.join("\n")
    })
}

fn cmd_verify(identity: Identity, range: (usize, usize), force: bool, out: &JsonOut) -> Result<(), Failure> {
    let reports: Vec<VerificationReport> = (range.0..=range.1).map(|k| run(identity, k, force)).collect();
    match &out.json {
        None => {}
        Some(None) => println!("{}", serde_json::to_string_pretty(&reports)?),
        Some(Some(path)) => fs::write(path, serde_json::to_string_pretty(&reports)? + "\n")?,
    }
    if !matches!(out.json, Some(None)) {
        for r in &reports {
            println!("{}", r.render());
        }
    }
    if let Some(bad) = reports.iter().find(|r| r.status == Status::Refuted) {
        let detail = match &bad.witness {
            Some(w) => format!("{} has {} vs {}", w.word, w.lhs, w.rhs),
            None => format!("{} vs {}", bad.lhs.as_deref().unwrap_or("?"), bad.rhs.as_deref().unwrap_or("?")),
        };
        return Err(Failure { code: 2, message: format!("{identity} refuted at {}: {detail}", bad.size) });
    }
    Ok(())
}

fn cmd_tilings(cache: &Cache, kind: TilingKind, n: usize, method: Method, out: &JsonOut) -> Result<(), Failure> {
    let (family, side) = match kind {
        TilingKind::Cssc => ("cssc", 2 * n),
        TilingKind::Qcsscpp => ("qcsscpp", 2 * n + 1),
    };
    let count: String = cache.get_or_compute(CacheKey::new("tilings", side, family, method_name(method)), || {
        let c = match (kind, method) {
            (TilingKind::Cssc, Method::Brute) => count_cssc(side)?,
            (TilingKind::Cssc, Method::Formula) => fpl_core::tilings::cssc_formula(side)?,
            (TilingKind::Cssc, m) => {
                return Err(Failure::from(format!("method {} applies only to qcsscpp", method_name(m))));
            }
            (TilingKind::Qcsscpp, m) => count_qcsscpp(side, m)?,
        };
        Ok(c.to_string())
    })?;
    let record = TilingRecord { kind: "tilings", family, n, side, method: method_name(method), count };
    emit(out, &record, || record.count.clone())
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    if let Some(k) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(k).build_global()?;
    }
    let cache = Cache::resolve(cli.cache_dir, cli.no_cache);
    match cli.command {
        Command::Count { size, class, refined, formula_only, out } => {
            cmd_count(&cache, size, class, refined, formula_only, &out)
        }
        Command::Patterns { size, class, out } => cmd_patterns(&cache, size, class, &out),
        Command::Verify { identity, n, max_n, force, out } => {
            let range = match (n, max_n) {
                (Some(r), _) => r,
                (None, Some(k)) => (identity.minimum(), k),
                (None, None) => (identity.minimum(), identity.ceiling()),
            };
            cmd_verify(identity, range, force, &out)
        }
        Command::Tilings { kind, n, method, out } => cmd_tilings(&cache, kind, n, method, &out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
