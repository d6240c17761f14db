use thiserror::Error;

/// Errors raised by the library. Axiom failures are not errors: they are
/// reported through [`crate::AxiomReport`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("resource cap exceeded: {what} (limit {limit}){}", progress_suffix(.progress))]
    Resource {
        what: String,
        limit: usize,
        /// How far the computation got before giving up, when meaningful.
        progress: Option<String>,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn progress_suffix(progress: &Option<String>) -> String {
    match progress {
        Some(p) => format!(", stopped after {p}"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn resource(what: impl Into<String>, limit: usize) -> Self {
        Error::Resource {
            what: what.into(),
            limit,
            progress: None,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
