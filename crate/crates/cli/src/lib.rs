//! The `xasp` command line.

pub mod args;
mod commands;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use thiserror::Error;
use xasp_core::{ExplainError, ResourceError};

pub use args::Cli;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Resource(#[from] ResourceError),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Resource(_) => 3,
            CliError::Internal(_) | CliError::Io(_) => 4,
        }
    }
}

impl From<ExplainError> for CliError {
    fn from(e: ExplainError) -> Self {
        match e {
            ExplainError::Resource(r) => CliError::Resource(r),
            ExplainError::NotAnAnswerSet | ExplainError::Inconsistent | ExplainError::UnknownAtom(_) => {
                CliError::Input(e.to_string())
            }
            ExplainError::MissingEntry(_) | ExplainError::AssumptionMismatch(_) => CliError::Internal(e.to_string()),
        }
    }
}

/// ANSI styling for human-readable text, enabled by `XASP_COLOR=1`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Paint {
    pub enabled: bool,
}

impl Paint {
    pub fn from_env() -> Self {
        Paint { enabled: std::env::var("XASP_COLOR").is_ok_and(|v| v == "1") }
    }

    pub fn bold(self, s: &str) -> String {
        self.wrap("1", s)
    }

    pub fn label(self, l: xasp_core::Label) -> String {
        let code = match l {
            xasp_core::Label::Plus => "32",
            xasp_core::Label::Minus => "31",
            xasp_core::Label::Assume => "33",
        };
        self.wrap(code, l.symbol())
    }

    fn wrap(self, code: &str, s: &str) -> String {
        if self.enabled {
            format!("\x1b[{code}m{s}\x1b[0m")
        } else {
            s.to_string()
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match commands::dispatch(cli.command, out, err, Paint::from_env()) {
        Ok(()) => 0,
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
