//! Command-line front end for `amphase-core`.
//!
//! Each subcommand evaluates one stage on a grid, writes a CSV or JSON
//! table, and reports through the exit status whether every checked
//! residual stayed below `--tol`:
//!
//! * `0` all residuals below the threshold
//! * `1` at least one residual failed
//! * `2` invalid input, or the output could not be written

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use clap::Parser;

mod commands;
pub mod config;
pub mod output;

pub use commands::{execute, Outcome};
pub use config::{Cli, Command, RunConfig};
pub use output::{write_table, Cell, Table};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_RESIDUAL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] amphase_core::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
    #[error("cannot write CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("cannot write JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// Runs a configuration and writes its table to `config.output.path`, or to
/// `stdout` when no path is set.
pub fn run(config: &RunConfig, stdout: &mut dyn Write) -> Result<Outcome, CliError> {
    let outcome = execute(config)?;
    match &config.output.path {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write_table(config, &outcome.table, &mut w)?;
            w.flush()?;
        }
        None => write_table(config, &outcome.table, &mut *stdout)?,
    }
    Ok(outcome)
}

/// Parses `args` (program name first), runs, and returns the exit status.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render().ansi());
            return e.exit_code();
        }
    };
    let result = RunConfig::from_command(&cli.command).and_then(|config| run(&config, stdout));
    match result {
        Ok(outcome) if outcome.passed => EXIT_PASS,
        Ok(_) => {
            let _ = writeln!(stderr, "amphase: residuals above threshold");
            EXIT_RESIDUAL
        }
        Err(e) => {
            let _ = writeln!(stderr, "amphase: {e}");
            EXIT_INVALID
        }
    }
}
