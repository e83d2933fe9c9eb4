use std::path::PathBuf;
use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: malformed record: {message}")]
    MalformedLine {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("duplicate id {id:?}")]
    DuplicateId { id: String },

    #[error("record {id:?} has empty text")]
    EmptyText { id: String },

    #[error("invalid query kind {kind:?} (expected \"issue\" or \"risk\")")]
    InvalidKind { kind: String },

    #[error("gold set references unknown {what} id {id:?}")]
    DanglingReference { what: &'static str, id: String },

    #[error("gold set entry for query {id:?} has an empty relevant set")]
    EmptyRelevantSet { id: String },

    #[error("corpus is empty after preprocessing")]
    EmptyCorpus,

    #[error("term-document matrix is entirely zero")]
    DegenerateMatrix,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("query {id:?} is missing from the gold set")]
    QueryNotInGold { id: String },

    #[error("statistics: {0}")]
    Stats(String),

    #[error("persisted file {path}: {message}")]
    Persist { path: PathBuf, message: String },

    #[error("incomplete sweep results for family {family:?}")]
    IncompleteFamily { family: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
