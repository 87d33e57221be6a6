use std::path::PathBuf;

/// Errors produced by graph ingestion, solvers and report generation.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("i/o error{}: {source}", path_suffix(.path))]
    Io {
        path: Option<PathBuf>,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error{} at line {line}: {message}", path_suffix(.path))]
    Parse {
        path: Option<PathBuf>,
        line: usize,
        message: String,
    },

    #[error("node id {id} out of range for graph with {n} nodes{}", pos_suffix(.position))]
    NodeOutOfRange {
        id: u64,
        n: u64,
        /// Zero-based index of the offending entry in the input sequence.
        position: Option<usize>,
    },

    #[error("graph must have at least one node")]
    EmptyGraph,

    #[error("{0}")]
    Precondition(String),

    #[error("unknown label {0:?}")]
    UnknownLabel(String),

    #[error("duplicate node id in selection: {0}")]
    DuplicateSelection(u64),

    #[error("entity lists do not match:\n{}", .0.join("\n"))]
    EntityMismatch(Vec<String>),

    #[error("solver did not converge after {iterations} iterations (residual {residual:.3e})")]
    NonConvergence { iterations: usize, residual: f64 },
}

fn path_suffix(path: &Option<PathBuf>) -> String {
    match path {
        Some(p) => format!(" in {}", p.display()),
        None => String::new(),
    }
}

fn pos_suffix(position: &Option<usize>) -> String {
    match position {
        Some(i) => format!(" (entry #{i})"),
        None => String::new(),
    }
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: Some(path.into()),
            source,
        }
    }

    pub fn parse(path: Option<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path,
            line,
            message: message.into(),
        }
    }

    pub fn precondition(message: impl Into<String>) -> Self {
        Error::Precondition(message.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(source: std::io::Error) -> Self {
        Error::Io { path: None, source }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
