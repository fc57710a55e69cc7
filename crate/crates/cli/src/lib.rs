//! Command-line driver: argument parsing, dispatch, output and the result ledger.
//!
//! Exit statuses: `0` when every check passes, `1` when an identity check
//! fails (the witness is printed), `2` for usage and domain errors.

pub mod bench;
pub mod config;
pub mod ledger;
pub mod output;

use std::io::Write;
use std::path::PathBuf;

use cayley_forge::identity::{check_induction_step, verify_egf, verify_symbolic};
use cayley_forge::sampling::{verify_monte_carlo, DEFAULT_Z_THRESHOLD};
use cayley_forge::tree::prufer_decode;
use cayley_forge::tree::{tree_count, PrueferCodes};
use cayley_forge::{EngineId, EvalPoint, IdentityId};
use clap::{Args, Parser, Subcommand};

pub use config::{OutputFormat, RunConfig};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "cayley-forge", version, about = "Exact verification of weighted tree-counting identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check an identity at one n with one engine.
    Verify(VerifyArgs),
    /// List the labeled trees on [n] in Prüfer order.
    Enumerate(EnumerateArgs),
    /// Run a timing suite: enumerate, degree-seq or egf-eval.
    Bench(BenchArgs),
    /// Monte Carlo estimate of an identity's left-hand side at a point.
    Sample(SampleArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Worker threads for the engines; output does not depend on it.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[arg(long, default_value = "text", value_parser = parse_format)]
    pub format: OutputFormat,
    /// Write the output here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LedgerArgs {
    /// Directory collecting one JSON entry per run.
    #[arg(long, value_name = "DIR", env = "CAYLEY_FORGE_LEDGER")]
    pub ledger: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// cayley-weighted, plane-weighted, plane-weighted-normalized, leroux-miloudi or induction-step.
    #[arg(long, value_parser = parse_identity)]
    pub identity: IdentityId,
    #[arg(long, default_value_t = 5)]
    pub n: usize,
    /// enumerate, degree-seq, egf-eval or monte-carlo.
    #[arg(long, default_value = "enumerate", value_parser = parse_engine)]
    pub engine: EngineId,
    /// Comma-separated exact rationals, e.g. 1,2,5/3.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    pub point: Option<EvalPoint>,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_Z_THRESHOLD)]
    pub z_threshold: f64,
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub ledger: LedgerArgs,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: usize,
    /// Print at most K trees; the total is always the full count.
    #[arg(long, value_name = "K")]
    pub limit: Option<u64>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    pub suite: String,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long, value_parser = parse_identity)]
    pub identity: IdentityId,
    #[arg(long, default_value_t = 5)]
    pub n: usize,
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    pub point: EvalPoint,
    #[arg(long)]
    pub trials: u64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_Z_THRESHOLD)]
    pub z_threshold: f64,
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub ledger: LedgerArgs,
}

fn parse_identity(s: &str) -> Result<IdentityId, String> {
    s.parse().map_err(|e: cayley_forge::Error| e.to_string())
}

fn parse_engine(s: &str) -> Result<EngineId, String> {
    s.parse().map_err(|e: cayley_forge::Error| e.to_string())
}

fn parse_point(s: &str) -> Result<EvalPoint, String> {
    s.parse().map_err(|e: cayley_forge::Error| e.to_string())
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse()
}

impl VerifyArgs {
    pub fn to_config(&self) -> RunConfig {
        RunConfig {
            identity: self.identity,
            n: self.n,
            engine: self.engine,
            point: self.point.clone(),
            trials: self.trials,
            seed: self.seed,
            z_threshold: self.z_threshold,
            output_format: self.common.format,
            output_path: self.common.out.clone(),
            ledger_path: self.ledger.ledger.clone(),
        }
    }
}

/// What a command produced: rendered output, an optional ledger entry and the verdict.
struct Outcome {
    rendered: String,
    ledger_json: Option<String>,
    passed: bool,
}

/// Failure before any verdict: bad flags, domain errors, I/O.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command, returning the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    run_command(cli.command, stdout, stderr)
}

pub fn run_command(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let common = match &command {
        Command::Verify(a) => &a.common,
        Command::Enumerate(a) => &a.common,
        Command::Bench(a) => &a.common,
        Command::Sample(a) => &a.common,
    };
    let (out_path, threads) = (common.out.clone(), common.threads);
    let ledger_dir = match &command {
        Command::Verify(a) => a.ledger.ledger.clone(),
        Command::Sample(a) => a.ledger.ledger.clone(),
        _ => None,
    };

    let result = with_threads(threads, || dispatch(&command)).and_then(|outcome| {
        match &out_path {
            Some(p) => std::fs::write(p, &outcome.rendered)?,
            None => stdout.write_all(outcome.rendered.as_bytes())?,
        }
        if let (Some(dir), Some(json)) = (&ledger_dir, &outcome.ledger_json) {
            ledger::append(dir, json)?;
        }
        Ok(outcome.passed)
    });
    match result {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(UsageError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn with_threads<T: Send>(
    threads: usize,
    f: impl FnOnce() -> Result<T, UsageError> + Send,
) -> Result<T, UsageError> {
    if threads == 0 {
        return Err(UsageError("--threads must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
    pool.install(f)
}

fn dispatch(command: &Command) -> Result<Outcome, UsageError> {
    match command {
        Command::Verify(a) => cmd_verify(&a.to_config()),
        Command::Sample(a) => {
            let config = RunConfig {
                identity: a.identity,
                n: a.n,
                engine: EngineId::MonteCarlo,
                point: Some(a.point.clone()),
                trials: Some(a.trials),
                seed: Some(a.seed),
                z_threshold: a.z_threshold,
                output_format: a.common.format,
                output_path: a.common.out.clone(),
                ledger_path: a.ledger.ledger.clone(),
            };
            cmd_verify(&config)
        }
        Command::Enumerate(a) => cmd_enumerate(a.n, a.limit, a.common.format),
        Command::Bench(a) => cmd_bench(&a.suite, a.common.format),
    }
}

fn cmd_verify(config: &RunConfig) -> Result<Outcome, UsageError> {
    config.validate().map_err(UsageError)?;
    let format = config.output_format;
    let outcome = match config.engine {
        EngineId::Enumerate | EngineId::DegreeSeq => {
            let (report, subchecks) = if config.identity == IdentityId::InductionStep {
                if config.engine != EngineId::Enumerate {
                    return Err(UsageError("induction-step runs on the enumerate engine only".into()));
                }
                let r = check_induction_step(config.n)?;
                (r.report, r.subchecks)
            } else {
                (verify_symbolic(config.identity, config.n, config.engine)?, Vec::new())
            };
            Outcome {
                rendered: output::render_report(&report, &subchecks, format),
                ledger_json: Some(report.to_json()),
                passed: report.passed(),
            }
        }
        EngineId::EgfEval => {
            let pt = config.point.as_ref().expect("validated");
            let report = verify_egf(config.identity, config.n, pt)?;
            Outcome {
                rendered: output::render_report(&report, &[], format),
                ledger_json: Some(report.to_json()),
                passed: report.passed(),
            }
        }
        EngineId::MonteCarlo => {
            let pt = config.point.as_ref().expect("validated");
            let (trials, seed) = (config.trials.expect("validated"), config.seed.expect("validated"));
            let (report, est) =
                verify_monte_carlo(config.identity, config.n, pt, trials, seed, config.z_threshold)?;
            Outcome {
                rendered: output::render_sample(&report, &est, format),
                ledger_json: Some(output::sample_json(&report, &est)),
                passed: report.passed(),
            }
        }
    };
    Ok(outcome)
}

fn cmd_enumerate(n: usize, limit: Option<u64>, format: OutputFormat) -> Result<Outcome, UsageError> {
    let codes = PrueferCodes::all(n)?;
    let trees: Vec<_> = match limit {
        Some(k) => codes.take(usize::try_from(k).unwrap_or(usize::MAX)).map(|c| prufer_decode(&c)).collect(),
        None => codes.map(|c| prufer_decode(&c)).collect(),
    };
    let total = tree_count(n).to_string();
    Ok(Outcome { rendered: output::render_trees(n, &trees, &total, format), ledger_json: None, passed: true })
}

fn cmd_bench(suite: &str, format: OutputFormat) -> Result<Outcome, UsageError> {
    let rows = bench::run_suite(suite).ok_or_else(|| {
        UsageError(format!("unknown suite {suite:?} (expected one of {})", bench::SUITES.join(", ")))
    })??;
    Ok(Outcome {
        rendered: output::render_bench(suite, &rows, format),
        ledger_json: None,
        passed: rows.iter().all(|r| r.check),
    })
}
