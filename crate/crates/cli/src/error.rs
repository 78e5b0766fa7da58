use std::fmt;

use hodgecor_core::correlator::CorrelatorError;
use hodgecor_core::dgcat::DgCatError;
use hodgecor_core::sphere::SphereError;
use serde::Serialize;
use thiserror::Error;

/// Exit codes of the `hodgecor` binary.
pub mod exit {
    pub const OK: i32 = 0;
    /// `selftest` ran and at least one property failed; the report lists which.
    pub const SELFTEST_FAILED: i32 = 1;
    /// Unknown flags, missing arguments (also what clap uses).
    pub const USAGE: i32 = 2;
    pub const PARSE: i32 = 3;
    pub const VALIDATION: i32 = 4;
    pub const CONVERGENCE: i32 = 5;
    /// Input file missing or output not writable.
    pub const IO: i32 = 66;
    pub const INTERNAL: i32 = 70;
}

/// Where in an input file a syntax error sits; lines and columns start at 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Location {
    pub file: String,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.column)
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{location}: {message}")]
    Parse { location: Location, message: String },
    #[error("{context}: {}", violations.join("; "))]
    Validation { context: String, violations: Vec<String> },
    #[error("no convergence: {0}")]
    Convergence(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Parse { .. } => exit::PARSE,
            CliError::Validation { .. } => exit::VALIDATION,
            CliError::Convergence(_) => exit::CONVERGENCE,
            CliError::Io { .. } => exit::IO,
            CliError::Internal(_) => exit::INTERNAL,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Parse { .. } => "parse",
            CliError::Validation { .. } => "validation",
            CliError::Convergence(_) => "convergence",
            CliError::Io { .. } => "io",
            CliError::Internal(_) => "internal",
        }
    }

    pub fn invalid(context: impl Into<String>, violation: impl Into<String>) -> Self {
        CliError::Validation { context: context.into(), violations: vec![violation.into()] }
    }

    /// Error marker printed on stderr instead of a report.
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({ "error": { "kind": self.kind(), "exit_code": self.exit_code(), "message": self.to_string() } });
        match self {
            CliError::Parse { location, .. } => v["error"]["location"] = serde_json::to_value(location).unwrap_or_default(),
            CliError::Validation { violations, .. } => v["error"]["violations"] = serde_json::json!(violations),
            _ => {}
        }
        v
    }
}

impl From<DgCatError> for CliError {
    fn from(e: DgCatError) -> Self {
        match e {
            DgCatError::ColumnTooSmall => CliError::Usage(e.to_string()),
            DgCatError::Graded(_) => CliError::Internal(e.to_string()),
            other => CliError::invalid("dg category", other.to_string()),
        }
    }
}

impl From<CorrelatorError> for CliError {
    fn from(e: CorrelatorError) -> Self {
        match e {
            CorrelatorError::Integration { source: SphereError::Convergence { .. }, .. } => CliError::Convergence(e.to_string()),
            CorrelatorError::Invalid(_) => CliError::invalid("correlator spec", e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<SphereError> for CliError {
    fn from(e: SphereError) -> Self {
        match e {
            SphereError::Convergence { .. } => CliError::Convergence(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}
