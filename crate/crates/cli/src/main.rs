//! `opradius` command-line front end.
//!
//! Standard output carries only the JSON document (or the catalog listing);
//! diagnostics go to standard error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use opradius_core::catalog::catalog_entry;
use opradius_core::{
    catalog_list, evaluate_check, numerical_radius, run_suite, wp_radius, CheckInput, CheckParams, ComplexMatrix,
    Error, FunctionPair, OperatorTuple, OptimizerOptions, SuiteConfig, Verdict,
};

const EXIT_INPUT: u8 = 2;
const EXIT_FLAGS: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;
const EXIT_VIOLATION: u8 = 5;
const EXIT_UNKNOWN_ID: u8 = 6;
const EXIT_NOT_APPLICABLE: u8 = 7;

#[derive(Parser)]
#[command(name = "opradius", version, about = "Numerical radii of complex matrices and operator tuples")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute w, w_e or w_p of a matrix or tuple.
    Compute(ComputeArgs),
    /// Evaluate one catalog entry on the given operands.
    Verify(VerifyArgs),
    /// Run the seeded randomized suite over catalog entries.
    Suite(SuiteArgs),
    /// List catalog entries.
    Catalog(CatalogArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Radius {
    W,
    We,
    Wp,
}

#[derive(clap::Args)]
struct ComputeArgs {
    #[arg(long, value_enum)]
    radius: Radius,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long)]
    check: String,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(clap::Args)]
struct SuiteArgs {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    #[arg(long)]
    trials: Option<usize>,
    /// Comma-separated ids, or `all`.
    #[arg(long, value_delimiter = ',')]
    entries: Option<Vec<String>>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a CSV summary next to `--out`.
    #[arg(long, requires = "out")]
    csv: bool,
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    p: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    q: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    r: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    alpha: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    beta: Option<Vec<f64>>,
}

#[derive(clap::Args)]
struct CatalogArgs {
    #[arg(long)]
    id: Option<String>,
    /// Print JSON instead of tab-separated lines.
    #[arg(long)]
    json: bool,
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl Failure {
    fn new(code: u8, err: impl Into<anyhow::Error>) -> Self {
        Self { code, err: err.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnknownCheck(_) => EXIT_UNKNOWN_ID,
            Error::NotApplicable { .. } => EXIT_NOT_APPLICABLE,
            Error::InvalidExponent(_) | Error::InvalidOptions(_) => EXIT_FLAGS,
            _ => EXIT_INPUT,
        };
        Self::new(code, e)
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_FLAGS } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Compute(a) => compute(a),
        Command::Verify(a) => verify(a),
        Command::Suite(a) => suite(a),
        Command::Catalog(a) => catalog(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(|e| Failure::new(EXIT_INPUT, e))
}

/// Accepts either wire form; a bare matrix becomes a one-element tuple.
fn parse_tuple(text: &str) -> Result<OperatorTuple, Failure> {
    if let Ok(m) = serde_json::from_str::<ComplexMatrix>(text) {
        return Ok(OperatorTuple::single(m));
    }
    serde_json::from_str::<OperatorTuple>(text)
        .context("input is neither a matrix nor a tuple document")
        .map_err(|e| Failure::new(EXIT_INPUT, e))
}

fn print_json(value: &impl serde::Serialize) -> Result<(), Failure> {
    let s = serde_json::to_string_pretty(value).map_err(|e| Failure::new(EXIT_INPUT, e))?;
    emit(&s)
}

/// Writes one line to standard output; a closed pipe is not an error.
fn emit(line: &str) -> Result<(), Failure> {
    match writeln!(std::io::stdout().lock(), "{line}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::new(EXIT_INPUT, e)),
        _ => Ok(()),
    }
}

fn optimizer(restarts: Option<usize>, seed: Option<u64>) -> OptimizerOptions {
    let mut opts = OptimizerOptions::default();
    if let Some(r) = restarts {
        opts.restarts = r;
    }
    if let Some(s) = seed {
        opts.rng_seed = s;
    }
    opts
}

fn compute(a: ComputeArgs) -> Outcome {
    let p = match (a.radius, a.p) {
        (Radius::Wp, None) => return Err(Failure::new(EXIT_FLAGS, anyhow::anyhow!("--radius wp requires --p"))),
        (Radius::Wp, Some(p)) => p,
        (_, Some(_)) => return Err(Failure::new(EXIT_FLAGS, anyhow::anyhow!("--p applies only to --radius wp"))),
        (Radius::We, None) => 2.0,
        (Radius::W, None) => 1.0,
    };
    let opts = optimizer(a.restarts, a.seed);
    opts.validate()?;
    let tuple = parse_tuple(&read_input(&a.input)?)?;
    let est = if a.radius == Radius::W {
        let [m] = tuple.operators() else {
            return Err(Failure::new(
                EXIT_INPUT,
                anyhow::anyhow!("--radius w takes one matrix, input has {} operators", tuple.len()),
            ));
        };
        numerical_radius(m, &opts)?
    } else {
        wp_radius(&tuple, p, &opts)?
    };
    print_json(&est)?;
    Ok(0)
}

/// Operand document forms accepted by `verify`, most specific first.
fn parse_check_input(text: &str) -> Result<CheckInput, Failure> {
    if let Ok(input) = serde_json::from_str::<CheckInput>(text) {
        return Ok(input);
    }
    let primary = parse_tuple(text)
        .map_err(|f| Failure::new(f.code, anyhow::anyhow!("input is not a check, tuple or matrix document")))?;
    Ok(CheckInput { primary: Some(primary), ..CheckInput::default() })
}

fn verify(a: VerifyArgs) -> Outcome {
    let entry = catalog_entry(&a.check)?;
    let mut params: CheckParams = parse_check_input(&read_input(&a.input)?)?.into_params();
    if let Some(p) = a.p {
        params.p = p;
    }
    params.q = a.q;
    if let Some(r) = a.r {
        params.r = r;
    }
    if let Some(alpha) = a.alpha {
        params.alpha = alpha;
    }
    if let Some(beta) = a.beta {
        params.pair = Some(FunctionPair::new(beta)?);
    }
    if let Some(t) = a.tolerance {
        params.tolerance = t;
    }
    params.opts = optimizer(a.restarts, a.seed);
    let report = evaluate_check(entry.id, &params)?;
    print_json(&report)?;
    eprintln!("{}: {:?} (slack {:e})", report.id, report.verdict, report.slack);
    Ok(match report.verdict {
        Verdict::Holds => 0,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
        Verdict::Violation => EXIT_VIOLATION,
    })
}

fn threads_from_env() -> Result<Option<usize>, Failure> {
    match std::env::var("OPRADIUS_THREADS") {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| Failure::new(EXIT_INPUT, anyhow::anyhow!("OPRADIUS_THREADS = {s:?} is not a count"))),
        Err(_) => Ok(None),
    }
}

fn suite(a: SuiteArgs) -> Outcome {
    let mut cfg = SuiteConfig::default();
    if let Some(s) = a.seed {
        cfg.seed = s;
    }
    if let Some(d) = a.dims {
        cfg.dims = d;
    }
    if let Some(t) = a.trials {
        cfg.trials = t;
    }
    if let Some(e) = a.entries {
        cfg.entries = e.into_iter().map(|s| s.trim().to_string()).collect();
    }
    if let Some(t) = a.tolerance {
        cfg.tolerance = t;
    }
    if let Some(r) = a.restarts {
        cfg.restarts = r;
    }
    if let Some(p) = a.p {
        cfg.grid.p = p;
    }
    if a.q.is_some() {
        cfg.grid.q = a.q;
    }
    if let Some(r) = a.r {
        cfg.grid.r = r;
    }
    if let Some(alpha) = a.alpha {
        cfg.grid.alpha = alpha;
    }
    if let Some(beta) = a.beta {
        cfg.grid.beta = beta;
    }
    cfg.output = a.out.clone();
    cfg.threads = threads_from_env()?;
    cfg.validate().map_err(|e| Failure::new(EXIT_INPUT, e))?;

    let report = run_suite(&cfg).map_err(|e| Failure::new(EXIT_INPUT, e))?;
    let json = serde_json::to_string_pretty(&report).map_err(|e| Failure::new(EXIT_INPUT, e))?;
    match &a.out {
        Some(path) => {
            write_file(path, &format!("{json}\n"))?;
            if a.csv {
                write_file(&path.with_extension("csv"), &report.to_csv())?;
            }
        }
        None => emit(&json)?,
    }
    eprintln!(
        "suite: {} checks, {} inconclusive, {} violations",
        report.checks(),
        report.inconclusive(),
        report.violations()
    );
    Ok(if report.violations() > 0 { EXIT_VIOLATION } else { 0 })
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(|e| Failure::new(EXIT_INPUT, e))
}

fn catalog(a: CatalogArgs) -> Outcome {
    let entries: Vec<_> = match &a.id {
        Some(id) => vec![catalog_entry(id)?],
        None => catalog_list().iter().collect(),
    };
    if a.json {
        print_json(&entries)?;
    } else {
        for e in entries {
            emit(&format!("{}\t{}\t{}\t{}", e.id, e.description, e.applicability, e.citation))?;
        }
    }
    Ok(0)
}
