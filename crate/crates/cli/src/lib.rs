//! Command-line front end: reads matrices and moment sequences as JSON and
//! writes machine-readable reports.

pub mod commands;
pub mod error;
pub mod json;

use clap::{Parser, Subcommand, ValueEnum};

pub use error::{exit, CliError};

#[derive(Debug, Parser)]
#[command(name = "moment-schur", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundArg {
    /// Upper end is the given last block.
    Given,
    /// Upper end is the canonical bound R.
    Canonical,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Schur complement of A relative to the span of the columns of V.
    Schur {
        /// JSON file with fields "a" and "v", or "-" for stdin.
        input: String,
        /// Relative tolerance for rank, definiteness and range decisions.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Classify a moment sequence and compute its canonical representative.
    Classify {
        /// Sequence file, or "-" for stdin.
        input: String,
        /// Left end of the support interval; selects the Stieltjes path.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        /// Relative tolerance for rank, definiteness and range decisions.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Test whether a candidate last block lies in the extension interval.
    Interval {
        /// Sequence file, or "-" for stdin.
        input: String,
        /// JSON file holding the candidate last block.
        #[arg(long)]
        last: String,
        /// Upper end of the interval.
        #[arg(long, value_enum, default_value_t = BoundArg::Canonical)]
        bound: BoundArg,
        /// Left end of the support interval; selects the Stieltjes path.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        /// Relative tolerance for rank, definiteness and range decisions.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Test whether two sequences belong to the same class.
    ClassTest {
        /// Reference sequence file.
        s: String,
        /// Candidate sequence file.
        r: String,
        /// Left end of the support interval; selects the Stieltjes path.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        /// Relative tolerance for rank, definiteness and range decisions.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

/// Runs a parsed command line and returns the report as JSON text.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let report = commands::execute(&cli.command)?;
    Ok(serde_json::to_string_pretty(&report).expect("reports serialize") + "\n")
}
