use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("state has {found} spins but the topology has {expected} dipoles")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("node index {node} out of range for a topology with {n} dipoles")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("spin values must be +1 or -1, got {0}")]
    InvalidSpin(i64),

    #[error("invalid topology: {0}")]
    InvalidTopology(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("line {line}: {message} (`{text}`)")]
    Parse { line: usize, text: String, message: String },

    #[error("{0}")]
    Input(String),

    #[error("topology has {n} dipoles, above the limit of {cap} for {what}")]
    Capacity { n: usize, cap: usize, what: &'static str },

    #[error("transient state {state:#b} cannot reach any failed state")]
    Unreachable { state: usize },

    #[error("linear solve failed: {0}")]
    Singular(String),

    #[error("no estimate: all {n_censored} trajectories hit the event cap")]
    NoEstimate { n_censored: u64 },

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Capacity { .. } => 3,
            Error::NoEstimate { .. } => 4,
            Error::Io { .. } => 5,
            _ => 2,
        }
    }

    pub(crate) fn io(path: impl AsRef<std::path::Path>, err: impl std::fmt::Display) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            message: err.to_string(),
        }
    }
}
