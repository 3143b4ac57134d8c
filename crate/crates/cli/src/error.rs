use std::path::Path;
use std::process::ExitCode;

use facecover::Error;
use serde_json::json;

use crate::report::{Output, SCHEMA};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    /// Input that is not a valid matrix or DNF file.
    #[error("{0}")]
    Input(String),

    #[error("{0}")]
    Usage(String),

    /// The run finished without a proof; `partial` is still emitted.
    #[error("{message}")]
    Budget {
        message: String,
        partial: Option<Output>,
    },
}

impl CliError {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) => match e {
                Error::MalformedRow { .. } | Error::DuplicateRow { .. } | Error::EmptyMatrix => 5,
                Error::ResourceLimit(_) | Error::LimitExceeded { .. } => 3,
                _ => 2,
            },
            CliError::Budget { .. } => 3,
            CliError::Io { .. } => 4,
            CliError::Input(_) => 5,
            CliError::Usage(_) => 6,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Lib(e) => e.kind(),
            CliError::Io { .. } => "io",
            CliError::Input(_) => "malformed_input",
            CliError::Usage(_) => "usage",
            CliError::Budget { .. } => "budget_exhausted",
        }
    }

    /// Writes any partial report, then the error object to stderr.
    pub fn report(self, out: Option<&Path>) -> ExitCode {
        let code = self.exit_code();
        let kind = self.kind();
        let message = self.to_string();
        if let CliError::Budget {
            partial: Some(p), ..
        } = self
        {
            if let Err(e) = p.write(out) {
                return e.report(None);
            }
        }
        let err = json!({
            "schema": SCHEMA,
            "error": { "kind": kind, "message": message, "exit_code": code },
        });
        eprintln!("{err}");
        ExitCode::from(code)
    }
}
