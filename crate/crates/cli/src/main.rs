use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use udgsets::{
    bench_run, format_instance, generate_instance, parse_instance, solution_from_json,
    solution_to_json, solve, verify_solution, write_csv, Algorithm, BenchConfig, Distribution,
    Instance, ProblemKind, VerifyReport, DEFAULT_ORACLE_CAP,
};

const EXIT_USAGE: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;

/// Distance-d independent and dominating sets on unit disk graphs.
#[derive(Parser)]
#[command(name = "udgsets", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random instance.
    Gen(GenArgs),
    /// Solve an instance and write the solution as JSON.
    Solve(SolveArgs),
    /// Check a solution file against an instance.
    Verify(VerifyArgs),
    /// Run algorithms over many instances and write a CSV summary.
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: u32,
    #[arg(long)]
    width: f64,
    #[arg(long)]
    height: f64,
    #[arg(long, default_value = "uniform")]
    dist: Distribution,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    problem: ProblemKind,
    #[arg(long)]
    alg: Algorithm,
    /// Shifting parameter, required by `ptas`.
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    out: PathBuf,
    /// Print the feasibility report.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    solution: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// Glob over instance files, e.g. `data/*.txt`.
    #[arg(long)]
    glob: String,
    #[arg(long)]
    problem: ProblemKind,
    /// Comma-separated subset of exact, approx4, ptas.
    #[arg(long, value_delimiter = ',', required = true)]
    algs: Vec<Algorithm>,
    #[arg(long)]
    k: Option<u32>,
    /// Largest instance that still gets a brute-force reference value.
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,
    #[arg(long)]
    csv: PathBuf,
    /// Fill the wall_ms column. Leaves the CSV run-dependent.
    #[arg(long)]
    timing: bool,
}

struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        let error = e.into();
        let code = match error.downcast_ref::<udgsets::Error>() {
            Some(udgsets::Error::Infeasible { .. }) => EXIT_INFEASIBLE,
            _ => EXIT_USAGE,
        };
        Failure { code, error }
    }
}

fn infeasible(msg: String) -> Failure {
    Failure {
        code: EXIT_INFEASIBLE,
        error: anyhow!(msg),
    }
}

fn read_instance(path: &Path) -> anyhow::Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> anyhow::Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn print_report(report: &VerifyReport) {
    // a closed stdout (e.g. piped into `head`) must not turn into a panic
    let mut out = std::io::stdout().lock();
    if report.feasible {
        let _ = writeln!(out, "feasible");
    } else {
        let _ = writeln!(out, "infeasible: {} violation(s)", report.violations.len());
        for v in &report.violations {
            let _ = writeln!(out, "  {v}");
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen(a) => {
            let inst = generate_instance(a.n, a.d, a.width, a.height, a.dist, a.seed)?;
            write_file(&a.out, &format_instance(&inst))?;
        }
        Command::Solve(a) => {
            let inst = read_instance(&a.input)?;
            let solution = solve(&inst, a.problem, a.alg, a.k)?;
            let report = verify_solution(&inst, &solution)?;
            if a.verify {
                print_report(&report);
            }
            if !report.feasible {
                return Err(infeasible(format!(
                    "{} produced an infeasible {} solution; nothing written",
                    a.alg, a.problem
                )));
            }
            write_file(&a.out, &solution_to_json(&solution))?;
            println!(
                "{} {}: value {}",
                a.alg.label(a.problem),
                a.input.display(),
                solution.value()
            );
        }
        Command::Verify(a) => {
            let inst = read_instance(&a.input)?;
            let text = fs::read_to_string(&a.solution)
                .with_context(|| format!("reading {}", a.solution.display()))?;
            let solution = solution_from_json(&text)?;
            let report = verify_solution(&inst, &solution)?;
            print_report(&report);
            if !report.feasible {
                return Err(infeasible(format!(
                    "{} is infeasible",
                    a.solution.display()
                )));
            }
        }
        Command::Bench(a) => {
            let mut paths: Vec<PathBuf> = glob::glob(&a.glob)
                .with_context(|| format!("bad pattern '{}'", a.glob))?
                .collect::<Result<_, _>>()?;
            paths.sort();
            let instances = paths
                .iter()
                .map(|p| {
                    let id = p
                        .file_name()
                        .unwrap_or(p.as_os_str())
                        .to_string_lossy()
                        .into_owned();
                    Ok((id, read_instance(p)?))
                })
                .collect::<anyhow::Result<Vec<_>>>()?;
            let algorithms: Vec<_> = a.algs.iter().map(|&alg| (alg, a.problem)).collect();
            let config = BenchConfig {
                k: a.k,
                oracle_cap: a.oracle_cap,
            };
            let records = bench_run(&instances, &algorithms, &config)?;
            let file = fs::File::create(&a.csv)
                .with_context(|| format!("creating {}", a.csv.display()))?;
            write_csv(&records, BufWriter::new(file), a.timing)?;
            println!(
                "{} record(s) from {} instance(s)",
                records.len(),
                instances.len()
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
