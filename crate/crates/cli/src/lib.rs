//! Library half of the `pnc-tas` command-line tool: argument types, CSV
//! emission, run manifests and the channel fixture reader. The binary in
//! `main.rs` only parses flags and maps errors to exit codes.

pub mod args;
pub mod commands;
pub mod csv;
pub mod fixture;
pub mod manifest;

use std::fmt;

/// Failure classes with distinct process exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad flag values or combinations (exit 2).
    Usage(String),
    /// Anything failing at run time (exit 1).
    Runtime(String),
    /// Exhaustive enumeration refused (exit 3).
    TooLarge(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Runtime(_) => 1,
            CliError::Usage(_) => 2,
            CliError::TooLarge(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Runtime(m) => write!(f, "error: {m}"),
            CliError::TooLarge(m) => write!(f, "error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<pnc_tas::Error> for CliError {
    fn from(e: pnc_tas::Error) -> Self {
        use pnc_tas::Error as E;
        match e {
            E::EnumerationTooLarge { .. } => CliError::TooLarge(format!(
                "{e} via --lambda-mode sampled:N (e.g. sampled:1000000)"
            )),
            E::InvalidOrder(_) | E::InvalidConfig(_) | E::IndexOutOfRange { .. } => CliError::Usage(e.to_string()),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}
