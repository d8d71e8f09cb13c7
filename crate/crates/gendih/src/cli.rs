//! Command-line surface. One subcommand per capability; all randomness
//! flows from a single `--seed`, and a missing seed is drawn from
//! entropy and printed so the run stays reproducible.
//!
//! Exit codes: 0 success, 1 verification or write failure, 2 usage,
//! 3 budget refusal.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;

use crate::bounds::{bound_params, majority_window, proportion_condition};
use crate::census::{census_exhaustive, census_sampled, CensusError};
use crate::collisions::{
    cross_group_collision_totals, mean_xa_sampled, triple_class_counts, CollisionError,
    DEFAULT_CROSS_BUDGET, DEFAULT_TRIPLE_BUDGET,
};
use crate::expectation::{expectation_curve, expected_diffset_size_in, EvalMode, ExpectationError};
use crate::group::{GroupError, GroupSpec};
use crate::report::{self, OutputFormat, ReportMeta, Table};
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Default ceiling on enumerated subsets for exhaustive censuses.
pub const DEFAULT_CENSUS_BUDGET: u64 = 10_000_000;

/// Grid slope the curve crossing is printed against.
const CROSSING_SLOPE: f64 = 1.3875;

#[derive(Parser, Debug)]
#[command(
    name = "gendih",
    version,
    about = "Sum-dominance censuses, collision calculus, and difference set \
             expectations on generalized dihedral groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: OutputOptions,
}

#[derive(Args, Debug)]
struct OutputOptions {
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Suppress the timestamp comment line of CSV reports.
    #[arg(long, global = true)]
    no_header: bool,
    /// Worker threads; defaults to all available cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Enumeration budget; each subcommand documents its unit.
    #[arg(long, global = true)]
    budget: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Auto,
    Rational,
    Log,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exhaustive label census over all m-subsets (budget: subsets).
    Census(CensusArgs),
    /// Sampled label census over uniform random m-subsets.
    Sample(SampleArgs),
    /// Mean collision counts over sampled subsets, per m.
    Collisions(CollisionsArgs),
    /// Whole-group triple classification (budget: group triples).
    Triples(TriplesArgs),
    /// Collision totals of the two dihedral groups of order 2n^2
    /// (budget: quadruples per group).
    CrossCollisions(CrossArgs),
    /// Exact expected difference set size for one subset size.
    Expectation(ExpectationArgs),
    /// Expected difference set size across subset sizes, with the
    /// crossing where it reaches n.
    Curve(CurveArgs),
    /// Threshold constants, the proportion table, or a window verdict.
    Bounds(BoundsArgs),
    /// Run the small-scale oracle battery.
    Verify,
}

#[derive(Args, Debug)]
struct CensusArgs {
    /// Abelian part, e.g. Z12 or Z2xZ5.
    #[arg(long)]
    group: String,
    /// Subset size.
    #[arg(long)]
    m: u64,
    /// Restrict to flip counts A..B (inclusive).
    #[arg(long, value_parser = parse_range)]
    k_range: Option<(u64, u64)>,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    m: u64,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    /// Sampling seed; drawn from entropy and printed when absent.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct CollisionsArgs {
    #[arg(long)]
    group: String,
    /// Single subset size; use --m-range for a sweep.
    #[arg(long, conflicts_with = "m_range")]
    m: Option<u64>,
    /// Subset sizes A..B (inclusive).
    #[arg(long, value_parser = parse_range)]
    m_range: Option<(u64, u64)>,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct TriplesArgs {
    #[arg(long)]
    group: String,
}

#[derive(Args, Debug)]
struct CrossArgs {
    /// Cyclic factor size: compares Dih(Z_n x Z_n) with Dih(Z_{n^2}).
    #[arg(long)]
    n: u32,
}

#[derive(Args, Debug)]
struct ExpectationArgs {
    /// Prime rotation count.
    #[arg(long)]
    n: u64,
    #[arg(long)]
    m: u64,
    /// Evaluation arithmetic; auto picks rational up to n = 200.
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    mode: ModeArg,
}

#[derive(Args, Debug)]
struct CurveArgs {
    /// Prime rotation count.
    #[arg(long)]
    n: u64,
    /// Largest subset size; defaults to min(2n, 400).
    #[arg(long)]
    m_max: Option<u64>,
    /// Keep every step-th grid point in the report.
    #[arg(long, default_value_t = 1)]
    step: u64,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    /// Involution count; alone, prints the constant table.
    #[arg(long)]
    j: Option<u64>,
    /// Proportion-condition table over m in A..B (inclusive).
    #[arg(long, value_parser = parse_range)]
    m_range: Option<(u64, u64)>,
    /// Window verdict for n,m,j.
    #[arg(long, value_parser = parse_window)]
    window: Option<(u64, u64, u64)>,
}

fn parse_range(text: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got {text}"))?;
    let lo = lo.trim().parse::<u64>().map_err(|e| e.to_string())?;
    let hi = hi.trim().parse::<u64>().map_err(|e| e.to_string())?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

fn parse_window(text: &str) -> Result<(u64, u64, u64), String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected n,m,j, got {text}"));
    }
    let mut values = [0u64; 3];
    for (slot, part) in values.iter_mut().zip(&parts) {
        *slot = part.trim().parse::<u64>().map_err(|e| e.to_string())?;
    }
    Ok((values[0], values[1], values[2]))
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn budget(message: impl Into<String>) -> Self {
        Failure { code: EXIT_BUDGET, message: message.into() }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<CensusError> for Failure {
    fn from(e: CensusError) -> Self {
        match e {
            CensusError::BudgetExceeded { .. } => Failure::budget(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl From<CollisionError> for Failure {
    fn from(e: CollisionError) -> Self {
        match e {
            CollisionError::BudgetExceeded { .. } => Failure::budget(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl From<ExpectationError> for Failure {
    fn from(e: ExpectationError) -> Self {
        match e {
            ExpectationError::NeedsMonteCarlo { .. } => Failure::budget(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

/// Parses and runs one command line; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = err.print();
            return code;
        }
    };
    if let Some(threads) = cli.output.threads {
        // Ignored when a pool already exists (tests call run repeatedly).
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    match dispatch(&cli.command, &cli.output) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let drawn = rand::thread_rng().gen::<u64>();
        eprintln!("seed: {drawn}");
        drawn
    })
}

fn emit(table: &Table, meta: &ReportMeta, output: &OutputOptions) -> Result<(), Failure> {
    let rendered = match output.format {
        FormatArg::Csv => report::render_csv(table, !output.no_header),
        FormatArg::Json => report::render_json(table, meta),
    };
    match &output.out {
        Some(path) => fs::write(path, rendered).map_err(|e| Failure {
            code: EXIT_FAILURE,
            message: format!("cannot write {}: {e}", path.display()),
        }),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn dispatch(command: &Command, output: &OutputOptions) -> Result<i32, Failure> {
    match command {
        Command::Census(args) => {
            let spec = GroupSpec::parse(&args.group)?;
            let budget = output.budget.unwrap_or(DEFAULT_CENSUS_BUDGET);
            let report = census_exhaustive(&spec, args.m, args.k_range, budget)?;
            let meta = ReportMeta { group: spec.render(), seed: None, mode: "exhaustive".into() };
            emit(&report::census_table(&report), &meta, output)?;
            Ok(EXIT_OK)
        }
        Command::Sample(args) => {
            let spec = GroupSpec::parse(&args.group)?;
            let seed = resolve_seed(args.seed);
            let report = census_sampled(&spec, args.m, args.trials, seed)?;
            let meta = ReportMeta { group: spec.render(), seed: Some(seed), mode: "sampled".into() };
            emit(&report::census_table(&report), &meta, output)?;
            Ok(EXIT_OK)
        }
        Command::Collisions(args) => {
            let spec = GroupSpec::parse(&args.group)?;
            let (lo, hi) = match (args.m, args.m_range) {
                (Some(m), None) => (m, m),
                (None, Some(range)) => range,
                (None, None) => return Err(Failure::usage("need --m or --m-range")),
                (Some(_), Some(_)) => unreachable!("clap forbids the combination"),
            };
            let seed = resolve_seed(args.seed);
            let mut rows = Vec::new();
            for m in lo..=hi {
                let sampled = mean_xa_sampled(&spec, m, args.trials, seed)?;
                rows.push(report::CollisionSweepRow {
                    m,
                    trials: Some(sampled.trials),
                    mean_xa: sampled.mean,
                    stderr: Some(sampled.std_error),
                });
            }
            let meta = ReportMeta { group: spec.render(), seed: Some(seed), mode: "sampled".into() };
            emit(&report::collision_sweep_table(&spec, &rows), &meta, output)?;
            Ok(EXIT_OK)
        }
        Command::Triples(args) => {
            let spec = GroupSpec::parse(&args.group)?;
            let budget = output.budget.unwrap_or(DEFAULT_TRIPLE_BUDGET);
            let counts = triple_class_counts(&spec, budget)?;
            let meta = ReportMeta { group: spec.render(), seed: None, mode: "exact".into() };
            emit(&report::triple_class_table(&spec, &counts), &meta, output)?;
            Ok(EXIT_OK)
        }
        Command::CrossCollisions(args) => {
            let budget = output.budget.unwrap_or(DEFAULT_CROSS_BUDGET);
            let totals = cross_group_collision_totals(args.n, budget)?;
            let meta = ReportMeta {
                group: format!("Z{0}xZ{0}", args.n),
                seed: None,
                mode: "exact".into(),
            };
            emit(&report::cross_collision_table(&totals), &meta, output)?;
            Ok(EXIT_OK)
        }
        Command::Expectation(args) => {
            let mode = resolve_mode(args.mode, args.n);
            let value = expected_diffset_size_in(args.n, args.m, mode)?;
            let meta = ReportMeta {
                group: format!("Z{}", args.n),
                seed: None,
                mode: report::mode_name(mode).into(),
            };
            emit(&report::expectation_table(args.n, args.m, value.value, mode), &meta, output)?;
            Ok(EXIT_OK)
        }
        Command::Curve(args) => {
            let m_max = args.m_max.unwrap_or_else(|| (2 * args.n).min(400));
            let curve = expectation_curve(args.n, m_max, args.step)?;
            let slope = CROSSING_SLOPE * (args.n as f64).sqrt();
            match curve.crossing {
                Some(m) => eprintln!(
                    "crossing: first m with E[|A-A|] >= n is {m}; {CROSSING_SLOPE}*sqrt(n) = {slope:.1}"
                ),
                None => eprintln!(
                    "crossing: not reached by m = {m_max}; {CROSSING_SLOPE}*sqrt(n) = {slope:.1}"
                ),
            }
            let meta = ReportMeta {
                group: format!("Z{}", args.n),
                seed: None,
                mode: report::mode_name(curve.mode).into(),
            };
            emit(&report::curve_table(&curve), &meta, output)?;
            Ok(EXIT_OK)
        }
        Command::Bounds(args) => {
            let meta = ReportMeta { group: String::new(), seed: None, mode: "exact".into() };
            if let Some((n, m, j)) = args.window {
                let verdict = majority_window(n, m, j);
                emit(&report::window_table(&verdict), &meta, output)?;
                return Ok(EXIT_OK);
            }
            if let Some((lo, hi)) = args.m_range {
                if lo == 0 {
                    return Err(Failure::usage("the proportion condition needs m >= 1"));
                }
                if let Some(j) = args.j {
                    let params = bound_params(j);
                    eprintln!(
                        "j={j}: c1={}, c2={}, cj={:.5}, n_min={}",
                        params.c1, params.c2, params.cj, params.n_min
                    );
                }
                let checks: Vec<_> = (lo..=hi).map(proportion_condition).collect();
                emit(&report::proportion_table(&checks), &meta, output)?;
                return Ok(EXIT_OK);
            }
            if let Some(j) = args.j {
                let params = bound_params(j);
                let mut table = Table {
                    columns: &["j", "c1", "c2", "cj_squared", "cj", "n_min"],
                    rows: Vec::new(),
                };
                table.rows.push(vec![
                    serde_json::Value::from(params.j),
                    serde_json::Value::from(params.c1.to_string()),
                    serde_json::Value::from(params.c2.to_string()),
                    serde_json::Value::from(params.cj_squared.to_string()),
                    serde_json::Value::from(params.cj),
                    serde_json::Value::from(params.n_min),
                ]);
                emit(&table, &meta, output)?;
                return Ok(EXIT_OK);
            }
            Err(Failure::usage("bounds needs --j, --m-range, or --window"))
        }
        Command::Verify => {
            let mut stdout = std::io::stdout().lock();
            let ok = verify::run_all(&mut stdout).map_err(|e| Failure {
                code: EXIT_FAILURE,
                message: format!("cannot write verification output: {e}"),
            })?;
            stdout.flush().ok();
            Ok(if ok { EXIT_OK } else { EXIT_FAILURE })
        }
    }
}

fn resolve_mode(mode: ModeArg, n: u64) -> EvalMode {
    match mode {
        ModeArg::Rational => EvalMode::Rational,
        ModeArg::Log => EvalMode::Log,
        ModeArg::Auto => {
            if n <= 200 {
                EvalMode::Rational
            } else {
                EvalMode::Log
            }
        }
    }
}

#[allow(unused)]
fn output_format(arg: FormatArg) -> OutputFormat {
    match arg {
        FormatArg::Csv => OutputFormat::Csv,
        FormatArg::Json => OutputFormat::Json,
    }
}
