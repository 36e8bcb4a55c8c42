use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pisano_core::analysis::{
    CsvSink, Flag, JsonSink, NullSink, ReportSink, ScanError, ScanRecord, ScanSummary, Scanner,
    Suite,
};
use pisano_core::numth::DEFAULT_SEED;
use pisano_core::pisano::period_bound;
use pisano_core::theorems::{fib_index_period, fibonacci_primitive_root};
use pisano_core::{
    classify_prime, fib_pair, Factorization, PeriodEngine, PrimeClass, DEFAULT_ORACLE_CAP,
};

const EXIT_DOMAIN: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_ASSERTION: u8 = 3;

const ORACLE_CAP_VAR: &str = "PISANO_ORACLE_CAP";

#[derive(Parser)]
#[command(
    name = "pisano",
    version,
    about = "Periods of the Fibonacci and Lucas sequences modulo m"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Period of the Fibonacci (or Lucas) sequence modulo m
    Period {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        #[arg(long)]
        lucas: bool,
        #[arg(long)]
        json: bool,
    },
    /// F_n and F_{n+1} modulo m
    Fib {
        n: u64,
        #[arg(long = "mod", value_parser = clap::value_parser!(u64).range(1..))]
        modulus: u64,
    },
    /// Residue class of a prime and the bound its period divides
    Classify { p: u64 },
    /// Roots of g^2 = g + 1 modulo p and whether one is a primitive root
    Fpr { p: u64 },
    /// h(F_m) against 2m (m even) or 4m (m odd)
    FibIndex { m: u64 },
    /// Range scans with optional CSV/JSON reports
    Scan {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        limit: u64,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, value_enum)]
        emit: Option<Emit>,
        /// Report file, or a directory when --suite all
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        threads: Option<u64>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Ratio,
    Irreducible,
    Lucas,
    Filters,
    Wall,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Ratio => vec![Suite::Ratio],
            SuiteArg::Irreducible => vec![Suite::Irreducible],
            SuiteArg::Lucas => vec![Suite::Lucas],
            SuiteArg::Filters => vec![Suite::Filters],
            SuiteArg::Wall => vec![Suite::Wall],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Csv,
    Json,
}

impl Emit {
    fn extension(self) -> &'static str {
        match self {
            Emit::Csv => "csv",
            Emit::Json => "json",
        }
    }
}

/// A failed command: exit code plus message for stderr.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn domain(e: impl ToString) -> Self {
        Failure {
            code: EXIT_DOMAIN,
            message: e.to_string(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<ScanError> for Failure {
    fn from(e: ScanError) -> Self {
        Failure::domain(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = matches!(cli.command, Command::Period { json: true, .. });
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            if json {
                let kind = if f.code == EXIT_USAGE {
                    "usage"
                } else {
                    "domain"
                };
                println!(
                    "{}",
                    serde_json::json!({ "error": f.message, "kind": kind })
                );
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn oracle_cap() -> Result<u64, Failure> {
    match std::env::var(ORACLE_CAP_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::usage(format!(
                "{ORACLE_CAP_VAR} must be a non-negative integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_ORACLE_CAP),
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Period { m, lucas, json } => cmd_period(m, lucas, json),
        Command::Fib { n, modulus } => {
            let pair = fib_pair(n, modulus).map_err(Failure::domain)?;
            println!("{} {}", pair.lo, pair.hi);
            Ok(0)
        }
        Command::Classify { p } => cmd_classify(p),
        Command::Fpr { p } => cmd_fpr(p),
        Command::FibIndex { m } => cmd_fib_index(m),
        Command::Scan {
            limit,
            suite,
            emit,
            out,
            seed,
            threads,
        } => cmd_scan(limit, suite, emit, out, seed, threads),
    }
}

#[derive(Serialize)]
struct PeriodJson<'a> {
    #[serde(flatten)]
    record: &'a ScanRecord,
    sequence: &'static str,
    factorization: Option<&'a Factorization>,
}

fn cmd_period(m: u64, lucas: bool, json: bool) -> Result<u8, Failure> {
    let engine = PeriodEngine::new(DEFAULT_SEED, oracle_cap()?);
    let breakdown = engine.pisano_breakdown(m).map_err(Failure::domain)?;
    let result = if lucas {
        engine.lucas_period(m).map_err(Failure::domain)?
    } else {
        breakdown.result
    };
    let mut record = ScanRecord::new(m, result.period, result.method, breakdown.classes());
    if !lucas && u128::from(result.period) == 6 * u128::from(m) {
        record.set_flag(Flag::RatioSix);
    }
    if result.lift_adjusted {
        record.set_flag(Flag::LiftGuardTriggered);
    }
    let sequence = if lucas { "lucas" } else { "fibonacci" };

    if json {
        let out = PeriodJson {
            record: &record,
            sequence,
            factorization: breakdown.factorization.as_ref(),
        };
        println!("{}", serde_json::to_string(&out).expect("serializable"));
    } else {
        let name = if lucas { "h_L" } else { "h" };
        println!("{name}({m}) = {}", result.period);
        println!("method: {}", result.method.as_str());
        match &breakdown.factorization {
            Some(f) => println!("factorization: {f}"),
            None => println!("factorization: 1"),
        }
        println!("ratio: {}", record.ratio());
    }
    Ok(0)
}

fn cmd_classify(p: u64) -> Result<u8, Failure> {
    let class = classify_prime(p).map_err(Failure::domain)?;
    let bound = period_bound(p).map_err(Failure::domain)?.bound;
    match class {
        PrimeClass::Irreducible => println!("irreducible (h | 2p+2 = {bound})"),
        PrimeClass::Split => println!("split (h | p-1 = {bound})"),
        PrimeClass::SpecialFive => println!("special five (h(5) = {bound})"),
        PrimeClass::SpecialTwo => println!("special two (h(2) = {bound})"),
    }
    Ok(0)
}

fn cmd_fpr(p: u64) -> Result<u8, Failure> {
    let r = fibonacci_primitive_root(p).map_err(Failure::domain)?;
    let roots: Vec<String> = r.roots.iter().map(u64::to_string).collect();
    println!("roots: {}", roots.join(", "));
    for (g, order) in r.roots.iter().zip(&r.orders) {
        let tag = if *order == p - 1 {
            " (primitive root)"
        } else {
            ""
        };
        println!("order({g}) = {order}{tag}");
    }
    println!("has_fpr: {}", r.has_fpr);
    let h = pisano_core::prime_period(p)
        .map_err(Failure::domain)?
        .period;
    if h == p - 1 {
        println!("h({p}) = p - 1 = {h}");
    } else {
        println!("h({p}) = {h}");
    }
    Ok(0)
}

fn cmd_fib_index(m: u64) -> Result<u8, Failure> {
    let o = fib_index_period(m).map_err(Failure::domain)?;
    let verdict = if o.matches() { "OK" } else { "MISMATCH" };
    println!(
        "F_{} = {}: predicted {}, computed {}, {verdict}",
        o.index, o.fib_value, o.predicted, o.computed.period
    );
    Ok(if o.matches() { 0 } else { EXIT_ASSERTION })
}

fn cmd_scan(
    limit: u64,
    suite: SuiteArg,
    emit: Option<Emit>,
    out: Option<PathBuf>,
    seed: u64,
    threads: Option<u64>,
) -> Result<u8, Failure> {
    let suites = suite.suites();
    if out.is_none() && emit.is_some() && suites.len() > 1 {
        return Err(Failure::usage(
            "--emit without --out needs a single --suite",
        ));
    }
    let scanner = Scanner::new(PeriodEngine::new(seed, oracle_cap()?));

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        pool = pool.num_threads(t as usize);
    }
    let pool = pool
        .build()
        .map_err(|e| Failure::domain(format!("cannot start worker threads: {e}")))?;

    let summaries = pool.install(|| -> Result<Vec<ScanSummary>, Failure> {
        match (&out, emit) {
            (Some(path), emit) => {
                let emit = emit.unwrap_or(Emit::Csv);
                let targets = output_targets(path, &suites, emit)?;
                suites
                    .iter()
                    .zip(targets)
                    .map(|(&s, target)| {
                        let file = File::create(&target).map_err(|e| {
                            Failure::domain(format!("cannot write {}: {e}", target.display()))
                        })?;
                        run_with_sink(&scanner, s, limit, emit, BufWriter::new(file))
                    })
                    .collect()
            }
            (None, Some(emit)) => {
                let stdout = io::stdout().lock();
                Ok(vec![run_with_sink(
                    &scanner, suites[0], limit, emit, stdout,
                )?])
            }
            (None, None) => suites
                .iter()
                .map(|&s| Ok(scanner.run(s, limit, &mut NullSink)?))
                .collect(),
        }
    })?;

    // keep stdout clean for the report when it is going there
    let to_stderr = out.is_none() && emit.is_some();
    for s in &summaries {
        if to_stderr {
            eprintln!("{s}");
        } else {
            println!("{s}");
        }
    }
    Ok(if summaries.iter().all(ScanSummary::passed) {
        0
    } else {
        EXIT_ASSERTION
    })
}

fn output_targets(path: &Path, suites: &[Suite], emit: Emit) -> Result<Vec<PathBuf>, Failure> {
    if suites.len() == 1 {
        return Ok(vec![path.to_path_buf()]);
    }
    fs::create_dir_all(path)
        .map_err(|e| Failure::domain(format!("cannot create {}: {e}", path.display())))?;
    Ok(suites
        .iter()
        .map(|s| path.join(format!("{}.{}", s.as_str(), emit.extension())))
        .collect())
}

fn run_with_sink<W: Write>(
    scanner: &Scanner,
    suite: Suite,
    limit: u64,
    emit: Emit,
    writer: W,
) -> Result<ScanSummary, Failure> {
    let mut sink: Box<dyn ReportSink> = match emit {
        Emit::Csv => Box::new(CsvSink::new(writer)),
        Emit::Json => Box::new(JsonSink::new(writer)),
    };
    Ok(scanner.run(suite, limit, sink.as_mut())?)
}
