use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use dyndeg_cli::job::{self, JobError, Options};
use dyndeg_cli::run::{run_job, Outcome};
use dyndeg_cli::suites::run_suite;

/// Exact and certified dynamical-degree computations.
#[derive(Parser)]
#[command(name = "dyndeg", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Iterate a rational self-map and report its degree data.
    Degrees(JobArgs),
    /// Certified dynamical degrees of a monomial model.
    Monomial(JobArgs),
    /// Spectral and simplicity analysis of a lattice action.
    Lattice(JobArgs),
    /// Relative degrees along a coordinate projection.
    Relative(JobArgs),
    /// Compare total degrees against the base-fiber product formula.
    CheckProductFormula(JobArgs),
    /// Run a named verification suite.
    Suite {
        /// Suite name, or "all".
        name: String,
        /// Seed for every random choice the suite makes.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct JobArgs {
    /// TOML job description.
    job: PathBuf,
    /// Largest iterate to compute (overrides the job file).
    #[arg(long)]
    n_max: Option<usize>,
    /// Spectral certification tolerance (overrides the job file).
    #[arg(long)]
    tol: Option<f64>,
    /// Seed for every random choice (overrides the job file).
    #[arg(long)]
    seed: Option<u64>,
    /// Abort symbolic work past this many terms (overrides the job file).
    #[arg(long)]
    max_terms: Option<usize>,
    /// Abort symbolic work past this coefficient size (overrides the job file).
    #[arg(long)]
    max_coeff_bits: Option<u64>,
    /// Also write the report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl JobArgs {
    fn overrides(&self) -> Options {
        Options {
            n_max: self.n_max,
            tol: self.tol,
            seed: self.seed,
            max_terms: self.max_terms,
            max_coeff_bits: self.max_coeff_bits,
        }
    }
}

const EXIT_PROPERTY_FAIL: u8 = 2;
const EXIT_TRUNCATED: u8 = 3;
const EXIT_INPUT: u8 = 4;
const EXIT_INTERNAL: u8 = 5;

fn job_command(expected: &str, args: &JobArgs) -> Result<(String, Outcome), JobError> {
    let file = job::load(&args.job)?;
    if file.kind_name() != expected {
        return Err(JobError::Invalid(format!(
            "job kind '{}' does not match the '{expected}' subcommand",
            file.kind_name()
        )));
    }
    run_job(&file, args.overrides())
}

fn write_out(path: &Option<PathBuf>, doc: &str) -> Result<(), JobError> {
    if let Some(path) = path {
        std::fs::write(path, doc)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let (label, result): (&str, Result<(String, Outcome), JobError>) = match &cli.cmd {
        Cmd::Degrees(args) => ("degrees", job_command("degrees", args)),
        Cmd::Monomial(args) => ("monomial", job_command("monomial", args)),
        Cmd::Lattice(args) => ("lattice", job_command("lattice", args)),
        Cmd::Relative(args) => ("relative", job_command("relative", args)),
        Cmd::CheckProductFormula(args) => (
            "check-product-formula",
            job_command("product-formula", args),
        ),
        Cmd::Suite { name, seed, out } => (
            "suite",
            run_suite(name, *seed).and_then(|(doc, pass)| {
                write_out(out, &doc)?;
                let outcome = if pass {
                    Outcome::Complete
                } else {
                    Outcome::PropertyFail
                };
                Ok((doc, outcome))
            }),
        ),
    };
    let code = match result {
        Ok((doc, outcome)) => {
            if let Cmd::Degrees(args)
            | Cmd::Monomial(args)
            | Cmd::Lattice(args)
            | Cmd::Relative(args)
            | Cmd::CheckProductFormula(args) = &cli.cmd
            {
                if let Err(e) = write_out(&args.out, &doc) {
                    eprintln!("dyndeg: cannot write report: {e}");
                    return ExitCode::from(EXIT_INPUT);
                }
            }
            print!("{doc}");
            match outcome {
                Outcome::Complete => ExitCode::SUCCESS,
                Outcome::PropertyFail => ExitCode::from(EXIT_PROPERTY_FAIL),
                Outcome::Truncated => ExitCode::from(EXIT_TRUNCATED),
            }
        }
        Err(e) => {
            eprintln!("dyndeg: {e}");
            if e.is_input() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::from(EXIT_INTERNAL)
            }
        }
    };
    // timing stays on stderr so reports remain byte-reproducible
    eprintln!(
        "dyndeg: {label} finished in {:.3}s",
        started.elapsed().as_secs_f64()
    );
    code
}
