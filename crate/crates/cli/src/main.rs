//! duosc — deterministic command-line harness for the constrained
//! two-oscillator library.
//!
//! Subcommands: `validate` (seeded invariant suites, exit 0 only when every
//! suite passes), `correlator` (two-point sweeps by any of five methods),
//! `overlap` (phase-law and suppression sweeps), and `kernel` (position-grid
//! tabulation). Identical invocations produce byte-identical CSV/JSON;
//! timing goes to stderr so it can never perturb the output bytes.
//!
//! Exit codes: 0 success, 1 runtime or validation failure, 2 argument or
//! config error.

mod commands;
mod config;
mod errors;
mod report;

use clap::{Parser, Subcommand};
use errors::CliError;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "duosc",
    version,
    about = "Deterministic two-point sweeps and validation suites for a constrained \
             pair of oscillators",
    after_help = "Exit codes: 0 success, 1 runtime/validation failure, 2 usage error.\n\
                  Wall time is reported on stderr so output bytes stay deterministic."
)]
struct Cli {
    /// Optional key=value file whose keys mirror the long flag names
    /// (for example `mass = 4`); explicit flags always win.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<std::path::PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the seeded validation suites; exit 0 only if every suite passes.
    Validate(commands::validate::Args),
    /// Evaluate the two-point value along a grid of phase separations.
    Correlator(commands::correlator::Args),
    /// Sweep boundary overlaps along the separation, or the suppression
    /// exponent along 2j.
    Overlap(commands::overlap::Args),
    /// Tabulate the sector kernel diagonal and a boundary density on a 2-D
    /// position grid.
    Kernel(commands::kernel::Args),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let table = match cli.config {
        Some(ref path) => match config::ConfigTable::load(path) {
            Ok(table) => table,
            Err(error) => return fail(error),
        },
        None => config::ConfigTable::empty(),
    };
    let result = match cli.command {
        Command::Validate(args) => commands::validate::run(args, &table),
        Command::Correlator(args) => commands::correlator::run(args, &table),
        Command::Overlap(args) => commands::overlap::run(args, &table),
        Command::Kernel(args) => commands::kernel::run(args, &table),
    };
    match result {
        Ok(()) => {
            eprintln!("wall time: {:.3} s", started.elapsed().as_secs_f64());
            ExitCode::SUCCESS
        }
        Err(error) => fail(error),
    }
}

fn fail(error: CliError) -> ExitCode {
    eprintln!("error: {}", error.message());
    ExitCode::from(error.exit_code())
}
