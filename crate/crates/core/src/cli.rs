//! Command-line front end. [`run`] parses arguments, dispatches to
//! [`crate::commands`] and returns the exit code with captured output, so it
//! can be driven from tests as well as from the `fpp` binary.
//!
//! Exit codes: 0 all checks pass, 1 a checked claim failed or an exceptional
//! matrix was found (the report is still written), 2 usage or input error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::algebra::RingSpec;
use crate::commands::{self, Report};
use crate::error::Result;
use crate::fpp::SweepMode;
use crate::gf2::DEFAULT_ENUMERATION_CAP_BITS;
use crate::suite;
use crate::sympow::DEFAULT_POSET_CAP;

#[derive(Debug, Parser)]
#[command(name = "fpp", version, about = "Exact GF(2) Lefschetz numbers, trace identities and symmetric squares")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Inspect a cohomology ring.
    Ring {
        #[command(subcommand)]
        action: RingAction,
    },
    /// Induced traces and Lefschetz number of one generator matrix.
    Lefschetz {
        #[arg(long)]
        ring: RingSpec,
        /// File with one row of 0/1 characters per line.
        #[arg(long)]
        matrix: PathBuf,
        /// Compare with the per-degree reference trace table (rpsum:n=3,k=2 only).
        #[arg(long)]
        table1: bool,
        #[arg(long)]
        json: bool,
    },
    /// Sweep every generator matrix of a ring and certify Lefschetz numbers.
    VerifyFpp {
        #[arg(long)]
        ring: RingSpec,
        /// Default: valid-only for rpsum, all for cp2pow.
        #[arg(long)]
        mode: Option<SweepMode>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check the principal-minor trace claims for every n x n matrix.
    Theorem3 {
        #[arg(long, value_parser = positive)]
        n: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Compare the minor formula with the tensor engine on (CP^2)^n.
    Crosscheck {
        #[arg(long, value_parser = positive)]
        n: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Euler characteristic of a symmetric square.
    Sympow {
        /// Closed formula only.
        #[arg(long, allow_negative_numbers = true, conflicts_with = "complex", required_unless_present = "complex")]
        chi: Option<i64>,
        /// Facet file: one facet per line, whitespace-separated integer vertices.
        #[arg(long)]
        complex: Option<PathBuf>,
        /// Maximum number of product-poset elements.
        #[arg(long, default_value_t = DEFAULT_POSET_CAP, value_parser = positive)]
        poset_cap: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run the full verification suite.
    VerifyAll {
        #[arg(long, value_parser = positive)]
        jobs: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Subcommand)]
enum RingAction {
    /// Generators, graded dimensions, Euler characteristic, relations, axioms.
    Describe {
        #[arg(long)]
        ring: RingSpec,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Worker threads (default: available parallelism). Output does not depend on it.
    #[arg(long, value_parser = positive)]
    jobs: Option<usize>,
    /// Enumeration cap on n^2.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP_BITS, value_parser = positive)]
    enum_cap: usize,
    #[arg(long)]
    json: bool,
}

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn default_jobs(jobs: Option<usize>) -> usize {
    jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn dispatch(command: Command) -> Result<(Report, bool)> {
    Ok(match command {
        Command::Ring {
            action: RingAction::Describe { ring, json },
        } => (commands::ring_describe(ring)?, json),
        Command::Lefschetz {
            ring,
            matrix,
            table1,
            json,
        } => (commands::lefschetz_file(ring, &matrix, table1)?, json),
        Command::VerifyFpp { ring, mode, run } => (
            commands::verify_fpp(ring, mode, default_jobs(run.jobs), run.enum_cap)?,
            run.json,
        ),
        Command::Theorem3 { n, run } => (
            commands::trace_claims(n, default_jobs(run.jobs), run.enum_cap)?,
            run.json,
        ),
        Command::Crosscheck { n, run } => (
            commands::crosscheck(n, default_jobs(run.jobs), run.enum_cap)?,
            run.json,
        ),
        Command::Sympow {
            chi,
            complex,
            poset_cap,
            json,
        } => match (chi, complex) {
            (Some(chi), _) => (commands::sympow_formula(chi)?, json),
            (None, Some(path)) => (commands::sympow_file(&path, poset_cap)?, json),
            (None, None) => unreachable!("clap requires --chi or --complex"),
        },
        Command::VerifyAll { jobs, json } => (suite::verify_all(default_jobs(jobs))?, json),
    })
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let line = rendered
                    .lines()
                    .take_while(|l| !l.trim().is_empty())
                    .map(str::trim)
                    .collect::<Vec<_>>()
                    .join(" ");
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: line + "\n",
                }
            } else {
                Outcome {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((report, json)) => Outcome {
            code: report.exit_code(),
            stdout: if json {
                report.to_json()
            } else {
                report.text().to_string()
            },
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
