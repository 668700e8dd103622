//! Command-line front end: every command builds a [`report::Report`] whose
//! checks decide the exit status.

pub mod commands;
pub mod config;
pub mod report;

use std::io::Write;
use std::process::ExitCode;

use thiserror::Error;

pub use config::{Cli, Command, Format, RunConfig};
pub use report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] cycbmw::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) if is_usage(e) => 2,
            _ => 1,
        }
    }
}

/// Core errors that stem from a bad request rather than a failed check.
fn is_usage(e: &cycbmw::Error) -> bool {
    use cycbmw::Error::*;
    matches!(e, EvenR(_) | OddN(_) | Preset(_) | InvalidParams(_) | OutOfRange(_) | ParityMismatch(_))
}

/// Runs the configured command.
pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    commands::run_command(cfg)
}

/// Runs, writes the report and maps the outcome to an exit code.
pub fn main_with(cfg: RunConfig) -> ExitCode {
    match run(&cfg) {
        Ok(rep) => {
            let text = rep.render(cfg.format);
            let written = match &cfg.out {
                Some(path) => std::fs::write(path, &text),
                None => std::io::stdout().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if rep.pass {
                ExitCode::SUCCESS
            } else {
                eprintln!("{}", rep.failure_detail());
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let code = e.exit_code();
            if code == 1 {
                eprintln!("{}", serde_json::json!({ "command": cfg.command.name(), "pass": false, "error": e.to_string() }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(code)
        }
    }
}
