//! Library side of the `cornet` command: instance files, commands, reports.

pub mod commands;
pub mod instance;

use serde_json::Value;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] cornet::Error),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    /// Prefixes a location such as `elements.x` to the message.
    pub fn at(self, location: &str) -> Self {
        CliError::Input(format!("{location}: {self}"))
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// A finished command: machine form, human form and the pass/fail bit that
/// drives the exit code.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub json: Value,
    pub text: String,
    pub passed: bool,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}
