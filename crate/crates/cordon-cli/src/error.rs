//! Error type shared by the file formats and the command line.

use cordon_core::model::ValidateError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// The scenario text is not a well-formed document (syntax, unknown or
    /// duplicate keys, missing sections, wrong types).
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    /// The document parsed but violates a scenario invariant.
    #[error("validation error{}: {source}", fmt_line(.line))]
    Validation {
        source: ValidateError,
        line: Option<usize>,
    },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("the roster does not fit: {0}")]
    Build(cordon_core::model::BuildError),

    #[error("trace file is malformed at line {line}: {message}")]
    TraceFormat { line: usize, message: String },

    #[error("tick {tick} is not part of the trace (0..={last})")]
    TickOutOfRange { tick: u32, last: u32 },

    #[error("{0}")]
    Usage(String),
}

fn fmt_line(line: &Option<usize>) -> String {
    match line {
        Some(n) => format!(" at line {n}"),
        None => String::new(),
    }
}

impl CliError {
    /// Process exit code: 1 for scenario parse/validation problems, 2 for
    /// everything else that aborts a run.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Validation { .. } => 1,
            _ => 2,
        }
    }

    pub fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.display().to_string(), source }
    }
}
