//! Error type for the command-line front-end.

use std::path::PathBuf;
use thiserror::Error;

/// Anything that can go wrong while reading inputs or running a command.
/// Every variant maps to exit code 2 (invalid input); a criterion/oracle
/// disagreement is not an error and is signalled by exit code 3 instead.
#[derive(Debug, Error)]
pub enum CliError {
    /// File could not be read or written.
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// File is not valid JSON or misses required fields; the underlying
    /// message names the offending line and column.
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    /// File parsed as JSON but violates the documented format.
    #[error("{path}: {reason}")]
    Format { path: PathBuf, reason: String },

    /// The `--partition` argument does not describe a bipartition of the
    /// state's modes.
    #[error("invalid partition `{text}`: {reason}")]
    Partition { text: String, reason: String },

    /// The underlying library rejected the data (unphysical matrix,
    /// non-orthogonal transform, dimension mismatch, bad parameter, ...).
    #[error(transparent)]
    State(#[from] passent::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;
