//! Command-line front end for `isospec`.
//!
//! Each invocation runs one command and writes one artifact plus a
//! `<artifact>.meta.json` sidecar. Exit codes: 0 success, 1 verification
//! failure, 2 validation error, 3 io error, 64 usage error.

pub mod artifact;
pub mod commands;
pub mod config;
pub mod error;
pub mod scan;

use std::ffi::OsString;
use std::time::Instant;

use clap::Parser;

pub use config::{CommandKind, Format, Overrides, Route, RunConfig};
pub use error::{CliError, EXIT_IO, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_VERIFICATION};
pub use scan::{limit_scan, ScanRow};

pub const THREADS_ENV: &str = "ISOSPEC_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "isospec",
    version,
    about = "Isospectral oscillator deformations and their coherent states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandKind,
    #[command(flatten)]
    pub overrides: Overrides,
}

/// Sizes the global rayon pool from `ISOSPEC_THREADS` (unset or 0 means automatic).
pub fn configure_threads() -> Result<(), CliError> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("{THREADS_ENV} must be a non-negative integer, got {v:?}")))?,
        Err(_) => 0,
    };
    // A second initialisation in the same process is harmless.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

/// Resolves the configuration, runs the command and writes its artifact and sidecar.
pub fn run(command: CommandKind, overrides: &Overrides) -> Result<std::path::PathBuf, CliError> {
    let start = Instant::now();
    let cfg = RunConfig::resolve(command, overrides)?;
    let output = cfg.output_path()?;
    let produced = commands::execute(&cfg)?;
    artifact::write_atomic(&output, &produced.bytes)?;
    let code = if produced.violations > 0 {
        EXIT_VERIFICATION
    } else {
        EXIT_OK
    };
    let meta = artifact::RunMetadata::new(&cfg, &output, start.elapsed(), code);
    artifact::write_sidecar(&output, &meta)?;
    if produced.violations > 0 {
        return Err(CliError::Verification(produced.violations));
    }
    Ok(output)
}

/// Full entry point: parses `argv` (program name first) and returns the exit status.
pub fn parse_and_dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = configure_threads().and_then(|()| run(cli.command, &cli.overrides));
    match outcome {
        Ok(path) => {
            println!("wrote {}", path.display());
            EXIT_OK
        }
        Err(e) => {
            eprintln!("isospec: {e}");
            e.exit_code()
        }
    }
}
