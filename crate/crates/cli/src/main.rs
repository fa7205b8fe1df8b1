//! `ktcolor`: generate instances, run colorers, verify results and sweep the
//! tight construction.
//!
//! Exit status: 0 on success, 1 on runtime or verification failure, 2 on
//! usage errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use ktcolor::experiment::{rows_to_csv, sweep_tight};
use ktcolor::{
    check, gen_random_general, gen_random_unit, gen_tight, omega, run, run_kt_traced, Algorithm,
    ColoringResult, Instance, Rational, TightParams,
};

#[derive(Parser)]
#[command(
    name = "ktcolor",
    version,
    about = "Online interval coloring with exact arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance as JSON Lines.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Color an instance and print the number of distinct colors.
    Run {
        /// kt, ff (first-fit) or opt (offline optimal).
        #[arg(value_parser = parse_algorithm)]
        algo: Algorithm,
        #[arg(short, long)]
        input: PathBuf,
        /// Where to write the result JSON.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Per-arrival trace as JSON Lines (kt only).
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Check a result against its instance and print the report JSON.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        result: PathBuf,
    },
    /// Sweep the tight construction over a range of x and emit CSV.
    Experiment {
        /// Inclusive range `lo:hi`, lo >= 3. `hi < lo` yields no rows.
        #[arg(long, value_parser = parse_x_range)]
        x_range: (u64, u64),
        #[arg(long, value_delimiter = ',', value_parser = parse_algorithm, default_value = "kt,ff,opt")]
        algos: Vec<Algorithm>,
        /// Defaults to standard output.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// The instance on which Kierstead-Trotter uses 3x-3 colors.
    #[command(name = "theorem2")]
    Tight {
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
        x: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Seeded random unit intervals.
    RandomUnit {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_parser = parse_positive)]
        span: Rational,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Seeded random intervals with lengths in (0, max-len].
    RandomGeneral {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_parser = parse_positive)]
        span: Rational,
        #[arg(long, value_parser = parse_positive)]
        max_len: Rational,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse()
}

fn parse_positive(s: &str) -> Result<Rational, String> {
    let r: Rational = s.parse().map_err(|e| format!("{e}"))?;
    if !r.is_positive() {
        return Err(format!("{s} is not positive"));
    }
    Ok(r)
}

fn parse_x_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let lo: u64 = lo.parse().map_err(|e| format!("lower bound: {e}"))?;
    let hi: u64 = hi.parse().map_err(|e| format!("upper bound: {e}"))?;
    if lo < 3 {
        return Err(format!("the construction needs x >= 3, got {lo}"));
    }
    Ok((lo, hi))
}

fn write_instance(instance: &Instance, path: &Path) -> Result<()> {
    instance
        .save(path)
        .with_context(|| format!("writing {}", path.display()))?;
    println!("n={} omega={}", instance.len(), omega(instance).size);
    Ok(())
}

fn load_instance(path: &Path) -> Result<Instance> {
    Instance::load(path).with_context(|| format!("reading instance {}", path.display()))
}

fn execute(command: Command) -> Result<ExitCode> {
    match command {
        Command::Gen { kind } => {
            let (instance, output) = match kind {
                GenKind::Tight { x, output } => (gen_tight(TightParams::new(x)?), output),
                GenKind::RandomUnit {
                    n,
                    seed,
                    span,
                    output,
                } => (gen_random_unit(n, seed, &span)?, output),
                GenKind::RandomGeneral {
                    n,
                    seed,
                    span,
                    max_len,
                    output,
                } => (gen_random_general(n, seed, &span, &max_len)?, output),
            };
            write_instance(&instance, &output)?;
        }
        Command::Run {
            algo,
            input,
            output,
            trace,
        } => {
            let instance = load_instance(&input)?;
            let result = match (&trace, algo) {
                (Some(path), Algorithm::Kt) => {
                    let (result, records) = run_kt_traced(&instance);
                    let mut out = String::new();
                    for r in &records {
                        out.push_str(&serde_json::to_string(r)?);
                        out.push('\n');
                    }
                    fs::write(path, out).with_context(|| format!("writing {}", path.display()))?;
                    result
                }
                (Some(_), _) => bail!("--trace is only available for kt"),
                (None, _) => run(algo, &instance),
            };
            if let Some(path) = &output {
                result
                    .save(path)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            println!("{}", result.distinct_colors());
        }
        Command::Verify { input, result } => {
            let instance = load_instance(&input)?;
            let result = ColoringResult::load(&result)
                .with_context(|| format!("reading result {}", result.display()))?;
            let report = check(&instance, &result)?;
            print!("{}", report.to_json());
            if !report.all_ok() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Experiment {
            x_range: (lo, hi),
            algos,
            csv,
        } => {
            let rows = sweep_tight(lo..=hi, &algos)?;
            let text = rows_to_csv(&rows)?;
            match csv {
                Some(path) => {
                    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?
                }
                None => std::io::stdout().write_all(text.as_bytes())?,
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
