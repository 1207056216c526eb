use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the library and the command-line front end.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent caller input (dimension mismatch, empty data, bad parameters).
    #[error("input error: {0}")]
    Input(String),

    /// A numerical routine failed to converge or hit its retry cap.
    #[error("numerical error: {message}")]
    Numerical {
        message: String,
        /// Best bound reached before giving up, when the routine has one.
        best_bound: Option<f64>,
    },

    /// A configuration key failed validation. `line` is `None` for a
    /// required key that is absent.
    #[error("config error{}, key `{key}`: {message}", at_line(*.line))]
    Config {
        key: String,
        line: Option<usize>,
        message: String,
    },

    /// A data or query file row failed to parse.
    #[error("{path}: line {line}: {message}")]
    Row {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>, best_bound: Option<f64>) -> Self {
        Error::Numerical {
            message: msg.into(),
            best_bound,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code: 2 for input/validation problems, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Numerical { .. } => 3,
            _ => 2,
        }
    }
}

fn at_line(line: Option<usize>) -> String {
    line.map(|l| format!(" at line {l}")).unwrap_or_default()
}

pub type Result<T> = std::result::Result<T, Error>;
