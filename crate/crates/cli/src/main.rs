use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use enumfpt::harness::{
    default_enumerator, equivalence_suite, generate, matching_graph, measure, trial_params, BenchRecord, GenParams,
    TrialLimits,
};
use enumfpt::instances::{parse_instance, write_instance};
use enumfpt::problems::{prepare, Prepared};
use enumfpt::{EnumError, Instance, ProblemKind, Solution, SolutionStream};
use serde_json::json;

/// Enumerate all solutions of parameterized problems with bounded delay.
#[derive(Parser)]
#[command(name = "enumfpt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stream every solution of an instance.
    Solve(SolveArgs),
    /// Compare the enumerator against brute force on random instances.
    Check(CheckArgs),
    /// Time enumeration on a family of instances; one JSON line per size.
    Bench(BenchArgs),
    /// Print a random instance in the input format of a problem.
    Generate(GenerateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Lines,
    Ndjson,
}

#[derive(clap::Args)]
struct SolveArgs {
    #[arg(long)]
    problem: ProblemKind,
    /// Instance file, `-` for stdin.
    #[arg(long)]
    input: PathBuf,
    /// Parameter. Not used by `ilp` and `steiner`.
    #[arg(long)]
    k: Option<usize>,
    /// Stop after this many solutions.
    #[arg(long)]
    limit: Option<usize>,
    #[arg(long, value_enum, default_value = "lines")]
    format: Format,
    /// Write a delay report (JSON) to this file.
    #[arg(long)]
    stats: Option<PathBuf>,
    /// Enable the runtime contract checks.
    #[arg(long)]
    verify: bool,
    /// Print the perfect hash family size to stderr (longest-path only).
    #[arg(long)]
    family_size_report: bool,
}

#[derive(clap::Args)]
struct CheckArgs {
    #[arg(long)]
    problem: ProblemKind,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, env = "ENUMFPT_SEED", default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long)]
    max_k: Option<usize>,
    /// Where to write the reproduction bundle on mismatch.
    #[arg(long, default_value = "enumfpt-mismatch.json")]
    bundle: PathBuf,
    /// Duplicate the first solution of every run (self-test of the checker).
    #[arg(long, hide = true)]
    corrupt: bool,
}

#[derive(clap::Args)]
struct BenchArgs {
    #[arg(long)]
    problem: ProblemKind,
    /// `matching` (vertex-cover, k = m) or `random`.
    #[arg(long, default_value = "matching")]
    family: String,
    /// Inclusive size range, e.g. `4..14`.
    #[arg(long, default_value = "4..14")]
    range: String,
    /// Parameter for the `random` family.
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, env = "ENUMFPT_SEED", default_value_t = 1)]
    seed: u64,
}

#[derive(clap::Args)]
struct GenerateArgs {
    #[arg(long)]
    problem: ProblemKind,
    #[arg(long, default_value_t = 6)]
    n: usize,
    #[arg(long, env = "ENUMFPT_SEED", default_value_t = 1)]
    seed: u64,
}

enum Failure {
    Mismatch(anyhow::Error),
    Usage(anyhow::Error),
    Contract(EnumError),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => solve(args),
        Command::Check(args) => check(args),
        Command::Bench(args) => bench(args),
        Command::Generate(args) => {
            let (mut params, _) = trial_params(args.problem, TrialLimits::default_for(args.problem), args.seed);
            params.n = args.n;
            print!("{}", write_instance(&generate(args.problem, &params, args.seed)));
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Contract(e)) => {
            eprintln!("contract violation: {e}");
            ExitCode::from(3)
        }
    }
}

fn read_input(path: &Path) -> anyhow::Result<Vec<u8>> {
    if path == Path::new("-") {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf).context("reading stdin")?;
        Ok(buf)
    } else {
        fs::read(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn needs_k(kind: ProblemKind) -> bool {
    !matches!(kind, ProblemKind::Ilp | ProblemKind::Steiner)
}

fn solve(args: SolveArgs) -> Result<(), Failure> {
    let k = match args.k {
        Some(k) => k,
        None if needs_k(args.problem) => return Err(anyhow!("--k is required for {}", args.problem).into()),
        None => 0,
    };
    let text = read_input(&args.input)?;
    let instance = parse_instance(&text, args.problem).context("invalid instance")?;
    let prepared = prepare(&instance, args.problem, k).map_err(anyhow::Error::from)?;
    if args.family_size_report {
        match &prepared {
            Prepared::LongestPath(spec) => {
                let f = spec.family();
                eprintln!("perfect hash family: n={} k={} colorings={} verification={:?}", f.n, f.k, f.len(), f.verification);
            }
            _ => return Err(anyhow!("--family-size-report applies to longest-path only").into()),
        }
    }
    let mut stream = prepared.stream(args.verify);
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut last = 0u64;
    let mut broken_pipe = false;
    let report = measure_into(&mut stream, args.limit, |sol, index, t| {
        if broken_pipe {
            return;
        }
        let line = match args.format {
            Format::Lines => format!("{sol}\n"),
            Format::Ndjson => format!(
                "{{\"solution\":{},\"index\":{index},\"delay_ns\":{}}}\n",
                serde_json::Value::from(sol.as_str()),
                t - last
            ),
        };
        last = t;
        if out.write_all(line.as_bytes()).and_then(|_| out.flush()).is_err() {
            broken_pipe = true;
        }
    })
    .map_err(Failure::Contract)?;
    if let Some(path) = args.stats {
        let body = serde_json::to_string_pretty(&report).map_err(anyhow::Error::from)?;
        fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

/// Runs `stream` through the harness timer, passing each solution with its
/// index and timestamp to `sink`.
fn measure_into<S: SolutionStream + ?Sized>(
    stream: &mut S,
    limit: Option<usize>,
    mut sink: impl FnMut(&Solution, usize, u64),
) -> Result<enumfpt::harness::DelayReport, EnumError> {
    let mut index = 0;
    enumfpt::harness::measure_with(stream, limit, |s, t| {
        sink(s, index, t);
        index += 1;
    })
}

fn check(args: CheckArgs) -> Result<(), Failure> {
    let mut limits = TrialLimits::default_for(args.problem);
    if let Some(n) = args.max_n {
        limits.max_n = n;
    }
    if let Some(k) = args.max_k {
        limits.max_k = k;
    }
    let start = Instant::now();
    let report = if args.corrupt {
        equivalence_suite(args.problem, args.trials, args.seed, limits, |i: &Instance, kind, k| {
            let mut v = default_enumerator(i, kind, k)?;
            v.extend(v.first().cloned());
            Ok(v)
        })
    } else {
        equivalence_suite(args.problem, args.trials, args.seed, limits, default_enumerator)
    };
    let summary = json!({
        "problem": report.problem,
        "seed": args.seed,
        "trials": report.trials,
        "passed": report.passed,
        "solutions": report.solutions_compared,
        "elapsed_ms": start.elapsed().as_millis() as u64,
        "pass": report.pass(),
    });
    println!("{summary}");
    match report.first_mismatch {
        None => Ok(()),
        Some(m) => {
            let body = serde_json::to_string_pretty(&m).map_err(anyhow::Error::from)?;
            fs::write(&args.bundle, body).with_context(|| format!("writing {}", args.bundle.display()))?;
            Err(Failure::Mismatch(anyhow!(
                "trial {} (seed {}) disagrees with brute force; bundle written to {}",
                m.trial,
                m.seed,
                args.bundle.display()
            )))
        }
    }
}

fn parse_range(s: &str) -> anyhow::Result<(usize, usize)> {
    let (a, b) = s.split_once("..").ok_or_else(|| anyhow!("range must look like `4..14`"))?;
    let lo: usize = a.trim().parse().with_context(|| format!("bad range start `{a}`"))?;
    let hi: usize = b.trim().trim_start_matches('=').parse().with_context(|| format!("bad range end `{b}`"))?;
    if lo > hi {
        bail!("empty range {s}");
    }
    Ok((lo, hi))
}

fn bench(args: BenchArgs) -> Result<(), Failure> {
    let (lo, hi) = parse_range(&args.range)?;
    match args.family.as_str() {
        "matching" if args.problem == ProblemKind::VertexCover => {}
        "matching" => return Err(anyhow!("family `matching` is defined for vertex-cover only").into()),
        "random" => {}
        other => return Err(anyhow!("unknown family `{other}` (expected matching or random)").into()),
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for size in lo..=hi {
        let (instance, k, params, expected) = if args.family == "matching" {
            (Instance::Graph(matching_graph(size)), size, json!({"m": size, "k": size}), Some(1usize << size.min(60)))
        } else {
            let params = GenParams { n: size, ..trial_params(args.problem, TrialLimits::default_for(args.problem), args.seed).0 };
            let inst = generate(args.problem, &params, args.seed);
            (inst, args.k, json!({"n": size, "k": args.k}), None)
        };
        let prepared = prepare(&instance, args.problem, k).map_err(anyhow::Error::from)?;
        let report = measure(&mut prepared.stream(false), None).map_err(Failure::Contract)?;
        let record = BenchRecord {
            problem: args.problem.to_string(),
            seed: args.seed,
            params,
            count: report.solution_count,
            first_ns: report.first_solution_ns,
            max_ns: report.max_delay_ns,
            mean_ns: report.mean_delay_ns,
            pass: expected.is_none_or(|e| e == report.solution_count),
        };
        let line = serde_json::to_string(&record).map_err(anyhow::Error::from)?;
        writeln!(out, "{line}").and_then(|_| out.flush()).map_err(anyhow::Error::from)?;
    }
    Ok(())
}
