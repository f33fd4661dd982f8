//! Front end for `ellipsoidal-core`.
//!
//! Exit codes: 0 on success, 1 on usage or domain errors, 2 when methods
//! disagree during validation.

mod args;
mod render;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use ellipsoidal_core::Error;

pub use args::{Cli, Command, Format};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_DISAGREEMENT: u8 = 2;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "ELLIPSOIDAL_THREADS";

/// Parses `argv`, runs the subcommand and writes its report to `out`.
/// Diagnostics go to stderr.
pub fn run<I, T>(argv: I, out: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return EXIT_USAGE;
    }
    match render::dispatch(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(render::Failure::Core(e @ Error::Disagreement(_))) => {
            eprintln!("error: {e}");
            EXIT_DISAGREEMENT
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got {raw:?}"))?;
    // A second call in the same process finds the pool already built.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}
