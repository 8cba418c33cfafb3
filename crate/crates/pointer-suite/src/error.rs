//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by generators, oracles, metrics, and the CLI.
#[derive(Debug, Error)]
pub enum Error {
    /// A token does not parse as any known word shape.
    #[error("malformed token {token:?}: {reason}")]
    MalformedToken { token: String, reason: String },

    /// Underlying I/O failure.
    #[error("I/O failure on {path}: {source}")]
    IoFailure {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// A dataset or prediction record does not match the expected schema.
    #[error("malformed record at line {line}: {reason}")]
    MalformedRecord { line: usize, reason: String },

    /// Unknown task identifier.
    #[error("unsupported task {name:?}")]
    UnsupportedTask { name: String },

    /// Generator configuration cannot be satisfied.
    #[error("infeasible config: {reason}")]
    ConfigInfeasible { reason: String },

    /// A matching step found two or more candidates where exactly one is required.
    #[error("ambiguous match from {word:?}: candidates at positions {positions:?}")]
    AmbiguousMatch { word: String, positions: Vec<usize> },

    /// A required neighbor does not exist (word at the sequence boundary).
    #[error("missing neighbor of {word:?} at position {position}")]
    MissingNeighbor { word: String, position: usize },

    /// No answer line could be found in a transcript.
    #[error("transcript contains no answer line")]
    NoAnswerLine,

    /// Predictions and gold samples are not index-aligned.
    #[error("length mismatch: {predictions} predictions vs {gold} gold samples")]
    LengthMismatch { predictions: usize, gold: usize },

    /// The designated start word does not occur in the sequence.
    #[error("start word {word:?} not found in sequence")]
    StartNotFound { word: String },

    /// Instance exceeds a hard limit of an exhaustive algorithm.
    #[error("instance too large: n = {n}, limit {limit}")]
    InstanceTooLarge { n: usize, limit: usize },

    /// The prompt setting does not apply to the requested task.
    #[error("unsupported combination: setting {setting:?} with task {task:?}")]
    UnsupportedCombination { setting: String, task: String },

    /// A config file line could not be parsed or names an unknown key.
    #[error("bad config entry at line {line}: {reason}")]
    BadConfig { line: usize, reason: String },
}

impl Error {
    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::IoFailure {
            path: path.as_ref().display().to_string(),
            source,
        }
    }

    pub fn malformed_token(token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::MalformedToken {
            token: token.into(),
            reason: reason.into(),
        }
    }

    pub fn infeasible(reason: impl Into<String>) -> Self {
        Error::ConfigInfeasible {
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
