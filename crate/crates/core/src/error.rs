use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the solvers, validators and input parsers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("density of the empty set is undefined")]
    EmptySubset,

    #[error("instance has {n} elements, above the brute-force cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("coordinate {index} is {value}, outside [0, 1]")]
    CoordinateOutOfRange { index: usize, value: String },

    #[error("the flow engine requires a graph-based set function")]
    EngineMismatch,

    #[error("no elements remain outside the current set")]
    GroundExhausted,

    #[error("instance is infeasible: {0}")]
    InfeasibleInstance(String),

    #[error("every source-sink cut has infinite capacity")]
    NoFiniteCut,

    #[error("invalid instance: {0}")]
    InvalidInput(String),

    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),

    #[error("{}: {msg}", location(path, *line))]
    Parse {
        path: Option<PathBuf>,
        line: Option<usize>,
        msg: String,
    },

    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),

    #[error("invariant violated: {0}")]
    InvariantViolated(String),
}

fn location(path: &Option<PathBuf>, line: Option<usize>) -> String {
    let file = path
        .as_ref()
        .map(|p| p.display().to_string())
        .unwrap_or_else(|| "<input>".to_owned());
    match line {
        Some(l) => format!("{file}:{l}"),
        None => file,
    }
}

impl Error {
    pub(crate) fn parse(line: Option<usize>, msg: impl Into<String>) -> Self {
        Error::Parse {
            path: None,
            line,
            msg: msg.into(),
        }
    }

    /// Attaches a file path to a parse error that does not carry one yet.
    pub fn with_path(self, p: impl Into<PathBuf>) -> Self {
        match self {
            Error::Parse {
                path: None,
                line,
                msg,
            } => Error::Parse {
                path: Some(p.into()),
                line,
                msg,
            },
            other => other,
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InfeasibleInstance(_) => 2,
            Error::Parse { .. }
            | Error::InvalidInput(_)
            | Error::InvalidMatroid(_)
            | Error::EngineMismatch => 3,
            Error::CapExceeded { .. } => 4,
            _ => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
