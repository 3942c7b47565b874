//! Library half of the `recov` binary: file formats and command
//! implementations, kept importable so integration tests can reuse them.

pub mod commands;
pub mod histogram;
pub mod scenario;
pub mod trace_csv;

use std::fmt;

/// Exit-code contract: 0 success, 2 input error, 3 horizon truncation with
/// active nodes remaining, 4 solver limitation.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Solver(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Solver(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) | CliError::Solver(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
