use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use bandlim_cli::{run, CliError, ConfigError, ExperimentConfig, Subcommand};

/// Reproduce the Hermite, Legendre, Chebyshev and prolate experiments as CSV
/// and SVG files.
#[derive(Debug, Parser)]
#[command(name = "bandlim", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,

    /// Plain-text `key=value` experiment config.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Output directory; overrides the config's `out`.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Extra `key=value` settings applied after the config file.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Command {
    KernelScan,
    Project,
    CoeffDecay,
    Pswf,
    RunAll,
}

impl From<Command> for Subcommand {
    fn from(c: Command) -> Self {
        match c {
            Command::KernelScan => Subcommand::KernelScan,
            Command::Project => Subcommand::Project,
            Command::CoeffDecay => Subcommand::CoeffDecay,
            Command::Pswf => Subcommand::Pswf,
            Command::RunAll => Subcommand::RunAll,
        }
    }
}

/// Caps the global thread pool from `BANDLIM_THREADS`; 0 or unset leaves the
/// default.
fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("BANDLIM_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| ConfigError::Invalid(format!("BANDLIM_THREADS={raw:?} is not a count")))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| ConfigError::Invalid(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn load(args: &Args) -> Result<ExperimentConfig, CliError> {
    let text = match &args.config {
        Some(path) => std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.display().to_string(),
            source,
        })?,
        None => String::new(),
    };
    let mut overrides = args.set.clone();
    if let Some(out) = &args.out {
        overrides.push(format!("out={}", out.display()));
    }
    Ok(ExperimentConfig::parse(&text, Some(args.command.into()), &overrides)?)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = configure_threads().and_then(|_| load(&args)).and_then(|cfg| run(&cfg));
    match result {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("bandlim: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
