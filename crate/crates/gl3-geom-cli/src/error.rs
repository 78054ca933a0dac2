//! Errors of the command-line layer and their exit codes.

use thiserror::Error;

/// Exit code for malformed arguments, matrices or configuration files.
pub const EXIT_PARSE: i32 = 2;
/// Exit code for errors raised by a domain computation.
pub const EXIT_DOMAIN: i32 = 1;
/// Exit code for a verification that ran to completion and failed.
pub const EXIT_VERIFICATION: i32 = 3;

/// Errors raised before or during dispatch.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input on the command line or in a configuration file.
    #[error("parse error: {0}")]
    Parse(String),
    /// A file could not be read.
    #[error("cannot read {path}: {message}")]
    Io {
        /// The offending path.
        path: String,
        /// The operating-system message.
        message: String,
    },
    /// A domain operation failed.
    #[error(transparent)]
    Domain(#[from] gl3_geom::Error),
}

impl CliError {
    /// The process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Io { .. } | CliError::Domain(_) => EXIT_DOMAIN,
        }
    }
}

/// Result alias of the command-line layer.
pub type CliResult<T> = std::result::Result<T, CliError>;
