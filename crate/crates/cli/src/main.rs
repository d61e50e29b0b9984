//! Batch verification tool for finite-dimensional Hopf algebroids.
//!
//! Exit codes: 0 all checks passed, 1 a verified check failed, 2 input or
//! parse error.

use algebroid_cli::commands;
use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "algebroid",
    about = "Exact verification of finite-dimensional Hopf algebroids: axioms, jets, cotwists and quantization",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify a bialgebroid structure (pair algebroid by default) and the
    /// translation identities.
    Verify {
        /// Algebra file (JSON).
        algebra: PathBuf,
        /// Force the pair Hopf algebroid even when the file carries an
        /// explicit structure.
        #[arg(long)]
        pair: bool,
        /// Use the structure embedded in the file (explicit bialgebroid or
        /// Hopf block). This is the default when one is present.
        #[arg(long, conflicts_with = "pair")]
        custom: bool,
        /// Emit the machine-readable report.
        #[arg(long)]
        json: bool,
        /// Assert the ground field: Q or Fp:<p>.
        #[arg(long)]
        field: Option<String>,
    },
    /// Jet dimension table: ideal chain, jet spaces, splitting and
    /// Hopf-ideal verdicts.
    Jet {
        algebra: PathBuf,
        /// Stabilization cap for the ideal chain.
        #[arg(long, default_value_t = 16)]
        max_k: usize,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        field: Option<String>,
    },
    /// Certify a cocycle and build the cotwisted Hopf algebroid.
    Cotwist {
        algebra: PathBuf,
        cocycle: PathBuf,
        /// Which suites to run: all, groupoid, or hopf-compare.
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, default_value_t = 16)]
        max_k: usize,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        field: Option<String>,
    },
    /// Quantize the jet Hopf algebroid with the file's derivation recipe.
    Quantize {
        algebra: PathBuf,
        /// Deformation parameter (rational, e.g. 1 or 1/2).
        #[arg(long, default_value = "1")]
        theta: String,
        #[arg(long, default_value_t = 16)]
        max_k: usize,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        field: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, json) = match &cli.cmd {
        Cmd::Verify {
            algebra,
            pair,
            custom: _,
            json,
            field,
        } => (commands::cmd_verify(algebra, *pair, field), *json),
        Cmd::Jet {
            algebra,
            max_k,
            json,
            field,
        } => (commands::cmd_jet(algebra, *max_k, field), *json),
        Cmd::Cotwist {
            algebra,
            cocycle,
            checks,
            max_k,
            json,
            field,
        } => {
            if !matches!(checks.as_str(), "all" | "groupoid" | "hopf-compare") {
                eprintln!("error: --checks must be one of all, groupoid, hopf-compare");
                return ExitCode::from(2);
            }
            (
                commands::cmd_cotwist(algebra, cocycle, checks, *max_k, field),
                *json,
            )
        }
        Cmd::Quantize {
            algebra,
            theta,
            max_k,
            json,
            field,
        } => (commands::cmd_quantize(algebra, theta, *max_k, field), *json),
    };

    match result {
        Ok(report) => {
            if json {
                report.print_json();
            } else {
                report.print_text();
            }
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(commands::InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
