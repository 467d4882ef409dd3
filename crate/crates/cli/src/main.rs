//! `idealis`: line arrangements, invariant curves and fat-point containment
//! from the command line.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0  | success; for `containment`, the containment holds |
//! | 1  | internal or I/O error |
//! | 2  | parse or usage error |
//! | 3  | the model is not available over the requested field |
//! | 4  | interpolation kernel is empty |
//! | 5  | rendering needs a real field |
//! | 6  | the prime is bad for the instance |
//! | 10 | non-containment certified |
//! | 11 | undecided: a resource cap or cancellation stopped the run |

mod cmd;
mod config;
mod error;
mod instance;
mod render;

use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use clap::{Parser, Subcommand};

use crate::config::RunArgs;
use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(name = "idealis", version, about = "Line arrangements, invariant curves and containment of fat-point ideals")]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Combinatorics of a named or file-given arrangement.
    Arrangement(cmd::arrangement::Args),
    /// Molien dimensions, invariant curves and their singular points.
    Invariants(cmd::invariants::Args),
    /// Decides I^(m) ⊆ I^r for the points of an arrangement.
    Containment(cmd::containment::Args),
    /// Draws an arrangement, optionally with an invariant curve, as SVG.
    Render(cmd::render::Args),
}

fn init_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("IDEALIS_THREADS") else { return Ok(()) };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("IDEALIS_THREADS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn run(cli: Cli, cancel: Arc<AtomicBool>) -> Result<u8, CliError> {
    init_threads()?;
    let config = cli.run.resolve(cancel)?;
    let mut out = std::io::stdout().lock();
    match cli.command {
        Command::Arrangement(a) => cmd::arrangement::run(&config, &a, &mut out),
        Command::Invariants(a) => cmd::invariants::run(&config, &a, &mut out),
        Command::Containment(a) => cmd::containment::run(&config, &a, &mut out),
        Command::Render(a) => cmd::render::run(&config, &a, &mut out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.run.quiet { "warn" } else { "info" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();

    let cancel = Arc::new(AtomicBool::new(false));
    let flag = cancel.clone();
    if let Err(e) = ctrlc::set_handler(move || {
        // a second interrupt kills the process outright
        if flag.swap(true, Ordering::SeqCst) {
            std::process::exit(130);
        }
        eprintln!("interrupted; stopping at the next S-pair");
    }) {
        log::warn!("no interrupt handler: {e}");
    }

    match run(cli, cancel) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
