//! Experiment runner behind the `bandlim` binary: configuration, the five
//! subcommands, and their CSV and SVG output.

pub mod commands;
pub mod config;
pub mod svg;
pub mod table;

use thiserror::Error;

pub use commands::{cmd_coeff_decay, cmd_kernel_scan, cmd_project, cmd_pswf, run, run_all};
pub use config::{AlphaSpec, BasisChoice, ExperimentConfig, Subcommand};

/// Exit status for configuration problems.
pub const EXIT_CONFIG: i32 = 2;
/// Exit status when a spectrum fails its refinement check.
pub const EXIT_NOT_CERTIFIED: i32 = 3;

#[derive(Debug, Error)]
pub enum ConfigError {
    /// Line 0 stands for command-line overrides.
    #[error("config line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("invalid override {0:?}: expected a known key=value")]
    Override(String),
    #[error("invalid config: {0}")]
    Invalid(String),
    #[error("cannot read config {path}: {source}")]
    Read { path: String, source: std::io::Error },
}

impl ConfigError {
    pub(crate) fn at(line: usize, message: impl Into<String>) -> Self {
        ConfigError::Line {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Numeric(#[from] bandlim::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Numeric(bandlim::Error::NotCertified { .. }) => EXIT_NOT_CERTIFIED,
            _ => 1,
        }
    }
}
