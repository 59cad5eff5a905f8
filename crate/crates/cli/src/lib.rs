//! Command implementations behind the `zeta-moments` binary. [`run`] takes
//! an argument vector and returns the report text plus any quality flaws,
//! so the binary and the tests share one code path.

pub mod args;
mod commands;
pub mod config;

use std::fmt;

use clap::Parser;

pub use args::Cli;
use args::Command;

#[derive(Debug)]
pub enum CliError {
    Args(clap::Error),
    Invalid(String),
    Core(zeta_core::Error),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Args(e) => write!(f, "{e}"),
            CliError::Invalid(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<zeta_core::Error> for CliError {
    fn from(e: zeta_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(CliError::Invalid(msg.into()))
}

/// What a command printed and which per-item quality flags it raised.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub flaws: Vec<String>,
}

impl Outcome {
    /// Process exit code: 0 clean, 2 with flaws.
    pub fn exit_code(&self) -> u8 {
        if self.flaws.is_empty() {
            0
        } else {
            2
        }
    }
}

/// Parses `argv` (program name first), merges the config file and runs the
/// command.
pub fn run<S: AsRef<str>>(argv: &[S]) -> Result<Outcome> {
    let argv: Vec<String> = argv.iter().map(|s| s.as_ref().to_string()).collect();
    let merged = config::merge_config_file(&argv)?;
    let cli = Cli::try_parse_from(&merged).map_err(CliError::Args)?;
    if let Some(n) = cli.workers {
        if n == 0 {
            return invalid("--workers must be positive");
        }
        // A pool built by an earlier call in this process stays in place.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let prov = config::Provenance::new(&cli)?;
    match &cli.command {
        Command::Zeros(a) => commands::zeros(a, prov),
        Command::Moments(a) => commands::moments(a, prov),
        Command::Predict(a) => commands::predict(a, prov),
        Command::Ratio(a) => commands::ratio(a, prov),
        Command::Stats(a) => commands::stats(a, prov),
        Command::Shifted(a) => commands::shifted(a, prov),
        Command::Localmodel(a) => commands::localmodel(a, prov),
    }
}
