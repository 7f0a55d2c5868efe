//! Command-line front end. Exit codes: 0 all checks pass, 1 some check
//! failed, 2 usage or precondition error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use crate::congruences::{
    self, scan, CheckKind, CheckResult, Engine, IncRange, ScanReport, ScanSpec,
};
use crate::error::Error;
use crate::fastmod;
use crate::oracles;
use crate::sequences::{self, NarayanaRoute, SchroederMethod};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Largest `--max-n` accepted by `oracle`, per target.
pub const ORACLE_CAP_SCHROEDER: u64 = 1000;
pub const ORACLE_CAP_DIAGONALS: u64 = 40;

#[derive(Debug, Parser)]
#[command(name = "schroeder-lab", version, about = "Schröder number arithmetic laboratory")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a prefix of a sequence.
    Seq {
        #[arg(value_enum)]
        name: SeqName,
        #[arg(long)]
        count: Option<u64>,
        /// Route: catalan-sum, binomial-sum, narayana-sum, gf, path-dp
        /// (schroeder, little-schroeder) or division, difference (narayana-row).
        #[arg(long)]
        method: Option<String>,
        /// Row index for narayana-row.
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, value_enum, default_value_t = SeqFormat::Csv)]
        format: SeqFormat,
    },
    /// Run a single check.
    Verify {
        #[arg(value_enum)]
        check: CheckArg,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        alpha: Option<u64>,
        #[arg(long, alias = "j")]
        k: Option<u64>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long = "n-max")]
        n_max: Option<u64>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Jsonl)]
        format: ReportFormat,
    },
    /// Run a check over parameter ranges (`a..b`, inclusive).
    Scan {
        #[arg(value_enum)]
        check: CheckArg,
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, alias = "j")]
        k: Option<String>,
        /// Comma-separated odd primes for kummer-euler.
        #[arg(long, value_delimiter = ',')]
        p: Vec<u64>,
        #[arg(long, value_enum, default_value_t = EngineArg::Exact)]
        engine: EngineArg,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Jsonl)]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare brute-force counts with the formulas.
    Oracle {
        #[arg(value_enum)]
        target: OracleTarget,
        #[arg(long = "max-n")]
        max_n: u64,
    },
    /// Time S_1..S_n mod 2^m on the word kernel.
    Bench {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        reps: u32,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SeqName {
    Schroeder,
    LittleSchroeder,
    Catalan,
    Euler,
    NarayanaRow,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SeqFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Jsonl,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum EngineArg {
    Exact,
    Fastmod,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OracleTarget {
    Schroeder,
    Narayana,
    Euler,
    Diagonals,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CheckArg {
    Theorem1,
    Theorem2,
    Little,
    SternEuler,
    KummerEuler,
    TVanishing,
    TShift,
    BinomialShift,
    Smallk,
    C2alpha,
    EquivalenceIff,
}

impl From<CheckArg> for CheckKind {
    fn from(c: CheckArg) -> Self {
        match c {
            CheckArg::Theorem1 => CheckKind::Theorem1,
            CheckArg::Theorem2 => CheckKind::Theorem2,
            CheckArg::Little => CheckKind::Little,
            CheckArg::SternEuler => CheckKind::SternEuler,
            CheckArg::KummerEuler => CheckKind::KummerEuler,
            CheckArg::TVanishing => CheckKind::TVanishing,
            CheckArg::TShift => CheckKind::TShift,
            CheckArg::BinomialShift => CheckKind::BinomialShift,
            CheckArg::Smallk => CheckKind::SmallK,
            CheckArg::C2alpha => CheckKind::C2Alpha,
            CheckArg::EquivalenceIff => CheckKind::EquivalenceIff,
        }
    }
}

/// Failure modes of a subcommand.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult = Result<u8, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn required<T>(v: Option<T>, flag: &str, check: &str) -> Result<T, CliError> {
    v.ok_or_else(|| usage(format!("{check} requires --{flag}")))
}

fn cmd_seq(
    name: SeqName,
    count: Option<u64>,
    method: Option<String>,
    n: Option<u64>,
    format: SeqFormat,
    out: &mut dyn Write,
) -> CliResult {
    let schroeder_method = |m: &Option<String>| -> Result<SchroederMethod, CliError> {
        match m {
            None => Ok(SchroederMethod::CatalanSum),
            Some(s) => s
                .parse()
                .map_err(|_| usage(format!("unknown method `{s}` for this sequence"))),
        }
    };
    let no_method = |m: &Option<String>| -> Result<(), CliError> {
        match m {
            None => Ok(()),
            Some(s) => Err(usage(format!("unknown method `{s}` for this sequence"))),
        }
    };
    let positive = |c: Option<u64>| -> Result<u64, CliError> {
        match c {
            Some(c) if c >= 1 => Ok(c),
            Some(_) => Err(usage("--count must be >= 1")),
            None => Err(usage("seq requires --count")),
        }
    };
    let table = match name {
        SeqName::Schroeder => {
            sequences::schroeder_table(positive(count)?, schroeder_method(&method)?)
        }
        SeqName::LittleSchroeder => {
            sequences::little_schroeder_table(positive(count)?, schroeder_method(&method)?)
        }
        SeqName::Catalan => {
            no_method(&method)?;
            sequences::catalan_table(positive(count)?)
        }
        SeqName::Euler => {
            no_method(&method)?;
            sequences::euler_table(positive(count)?)
        }
        SeqName::NarayanaRow => {
            let row = required(n, "n", "narayana-row")?;
            if row == 0 {
                return Err(usage("narayana-row requires --n >= 1"));
            }
            let route = match method.as_deref() {
                None | Some("division") => NarayanaRoute::Division,
                Some("difference") => NarayanaRoute::Difference,
                Some(s) => return Err(usage(format!("unknown method `{s}` for narayana-row"))),
            };
            let count = match count {
                None => row,
                c => positive(c)?,
            };
            sequences::narayana_row_table(row, count, route)?
        }
    };
    match format {
        SeqFormat::Csv => table.write_csv(&mut *out)?,
        SeqFormat::Json => writeln!(out, "{}", table.to_json())?,
    }
    Ok(EXIT_PASS)
}

fn write_results(
    results: &[CheckResult],
    report: Option<&ScanReport>,
    format: ReportFormat,
    out: &mut dyn Write,
) -> io::Result<()> {
    match format {
        ReportFormat::Jsonl => {
            for r in results {
                serde_json::to_writer(&mut *out, r)?;
                out.write_all(b"\n")?;
            }
        }
        ReportFormat::Csv => congruences::write_results_csv(results, &mut *out)?,
        ReportFormat::Json => {
            let owned;
            let report = match report {
                Some(r) => r,
                None => {
                    owned = ScanReport::from_results(results.to_vec());
                    &owned
                }
            };
            serde_json::to_writer(&mut *out, report)?;
            out.write_all(b"\n")?;
        }
    }
    out.flush()
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    check: CheckKind,
    n: Option<u64>,
    alpha: Option<u64>,
    k: Option<u64>,
    p: Option<u64>,
    n_max: Option<u64>,
    format: ReportFormat,
    out: &mut dyn Write,
) -> CliResult {
    let name = check.as_str();
    let n_of = || required(n, "n", name);
    let a_of = || required(alpha, "alpha", name);
    let k_of = || required(k, "k", name);
    let results: Vec<CheckResult> = match check {
        CheckKind::Theorem1 => vec![congruences::verify_theorem1(n_of()?, a_of()?)?],
        CheckKind::Theorem2 => vec![congruences::verify_theorem2(n_of()?, a_of()?)?],
        CheckKind::Little => vec![congruences::verify_little_schroeder(n_of()?, a_of()?)?],
        CheckKind::SternEuler => vec![congruences::verify_stern_euler(n_of()?, a_of()?)?],
        CheckKind::KummerEuler => {
            vec![congruences::verify_kummer_euler(n_of()?, required(p, "p", name)?)?]
        }
        CheckKind::TVanishing => vec![congruences::verify_t_vanishing(n_of()?, k_of()?)?],
        CheckKind::TShift => vec![congruences::verify_t_shift(n_of()?, k_of()?, a_of()?)?],
        CheckKind::BinomialShift => {
            vec![congruences::verify_binomial_shift(n_of()?, k_of()?, a_of()?)?]
        }
        CheckKind::SmallK => congruences::verify_t_smallk_expansions(n_of()?, a_of()?)?,
        CheckKind::C2Alpha => congruences::verify_c2alpha_vanishing(k_of()?, a_of()?)?,
        CheckKind::EquivalenceIff => {
            let n_max = n_max.or(n).ok_or_else(|| usage("equivalence-iff requires --n-max"))?;
            congruences::verify_equivalence_iff(n_max, a_of()?)?.results
        }
    };
    write_results(&results, None, format, out)?;
    Ok(if results.iter().all(|r| r.pass) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    })
}

fn parse_range(s: &Option<String>) -> Result<Option<IncRange>, CliError> {
    s.as_deref()
        .map(|s| s.parse::<IncRange>().map_err(CliError::from))
        .transpose()
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(
    check: CheckKind,
    n: Option<String>,
    alpha: Option<String>,
    k: Option<String>,
    p: Vec<u64>,
    engine: Engine,
    jobs: usize,
    format: ReportFormat,
    out_path: Option<PathBuf>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult {
    if jobs == 0 {
        return Err(usage("--jobs must be >= 1"));
    }
    let spec = ScanSpec {
        check,
        n: parse_range(&n)?,
        alpha: parse_range(&alpha)?,
        k: parse_range(&k)?,
        primes: p,
        engine,
        jobs,
    };
    let start = Instant::now();
    let report = scan(&spec)?;
    let elapsed = start.elapsed().as_secs_f64();
    match out_path {
        Some(path) => {
            let mut file = BufWriter::new(File::create(&path)?);
            write_results(&report.results, Some(&report), format, &mut file)?;
        }
        None => write_results(&report.results, Some(&report), format, out)?,
    }
    writeln!(
        err,
        "scan {} engine={} {} elapsed_s={elapsed:.3}",
        check,
        engine.as_str(),
        report.summary()
    )?;
    Ok(if report.all_pass() { EXIT_PASS } else { EXIT_FAIL })
}

fn cmd_oracle(target: OracleTarget, max_n: u64, out: &mut dyn Write) -> CliResult {
    let mut compared = 0u64;
    let mut mismatches: Vec<String> = Vec::new();
    let mut record = |ok: bool, what: String| {
        compared += 1;
        if !ok {
            mismatches.push(what);
        }
    };
    let name = match target {
        OracleTarget::Schroeder => {
            if max_n > ORACLE_CAP_SCHROEDER {
                return Err(usage(format!(
                    "oracle schroeder: --max-n is capped at {ORACLE_CAP_SCHROEDER}"
                )));
            }
            let paths = oracles::schroeder_paths_dp_table(max_n);
            let gf = sequences::schroeder_via_gf(max_n);
            for (n, by_paths) in paths.iter().enumerate() {
                let n64 = n as u64;
                let formulas = [
                    sequences::schroeder_via_catalan_sum(n64),
                    sequences::schroeder_via_binomial_sum(n64),
                    sequences::schroeder_via_narayana_sum(n64),
                    gf[n].clone(),
                ];
                record(formulas.iter().all(|f| f == by_paths), format!("S_{n}"));
            }
            "schroeder"
        }
        OracleTarget::Narayana => {
            if max_n > oracles::DYCK_ENUMERATION_CAP {
                return Err(usage(format!(
                    "oracle narayana: --max-n is capped at {}",
                    oracles::DYCK_ENUMERATION_CAP
                )));
            }
            for n in 1..=max_n {
                let hist = oracles::peak_histogram(n);
                for k in 1..=n {
                    let ok = BigInt::from(hist[k as usize]) == sequences::narayana(n, k)
                        && sequences::narayana(n, k) == sequences::narayana_by_difference(n, k);
                    record(ok, format!("N({n},{k})"));
                }
            }
            "narayana"
        }
        OracleTarget::Euler => {
            if max_n > oracles::PERMUTATION_ENUMERATION_CAP {
                return Err(usage(format!(
                    "oracle euler: --max-n is capped at {}",
                    oracles::PERMUTATION_ENUMERATION_CAP
                )));
            }
            let e = sequences::euler_numbers(max_n);
            for len in (0..=max_n).step_by(2) {
                let count = oracles::alternating_permutation_count(len)?;
                let value = &e[len as usize];
                let magnitude = if len % 4 == 0 { value.clone() } else { -value.clone() };
                record(BigInt::from(count) == magnitude, format!("E_{len}"));
            }
            "euler"
        }
        OracleTarget::Diagonals => {
            if max_n > ORACLE_CAP_DIAGONALS {
                return Err(usage(format!(
                    "oracle diagonals: --max-n is capped at {ORACLE_CAP_DIAGONALS}"
                )));
            }
            for n in 0..=max_n {
                let mut total = BigInt::from(0);
                for d in 0..=n {
                    let k = n - d;
                    let by_paths = oracles::schroeder_paths_by_diagonals(n, d);
                    let formula = crate::arith::binomial(n + k, 2 * k as i64) * sequences::catalan(k);
                    record(by_paths == formula, format!("n={n} d={d}"));
                    total += by_paths;
                }
                record(total == sequences::schroeder(n), format!("sum n={n}"));
            }
            "diagonals"
        }
    };
    let summary = serde_json::json!({
        "target": name,
        "max_n": max_n,
        "compared": compared,
        "mismatches": mismatches,
    });
    writeln!(out, "{summary}")?;
    Ok(if mismatches.is_empty() { EXIT_PASS } else { EXIT_FAIL })
}

fn cmd_bench(n: u64, m: u32, reps: u32, out: &mut dyn Write) -> CliResult {
    let report = fastmod::bench(n, m, reps)?;
    serde_json::to_writer(&mut *out, &report).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(EXIT_PASS)
}

/// Dispatch a parsed command, writing results to `out` and diagnostics to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let result = match cli.command {
        Command::Seq {
            name,
            count,
            method,
            n,
            format,
        } => cmd_seq(name, count, method, n, format, out),
        Command::Verify {
            check,
            n,
            alpha,
            k,
            p,
            n_max,
            format,
        } => cmd_verify(check.into(), n, alpha, k, p, n_max, format, out),
        Command::Scan {
            check,
            n,
            alpha,
            k,
            p,
            engine,
            jobs,
            format,
            out: out_path,
        } => {
            let engine = match engine {
                EngineArg::Exact => Engine::Exact,
                EngineArg::Fastmod => Engine::Fastmod,
            };
            cmd_scan(check.into(), n, alpha, k, p, engine, jobs, format, out_path, out, err)
        }
        Command::Oracle { target, max_n } => cmd_oracle(target, max_n, out),
        Command::Bench { n, m, reps } => cmd_bench(n, m, reps, out),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "io error: {e}");
            EXIT_USAGE
        }
    }
}

/// Entry point for the binary.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = BufWriter::new(stdout.lock());
    let code = run(cli, &mut out, &mut stderr.lock());
    let _ = out.flush();
    ExitCode::from(code)
}
