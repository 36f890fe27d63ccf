use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the compound-noun pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}: no records")]
    Empty(String),

    #[error("invalid category code {code:?}: {reason}")]
    InvalidCategory { code: String, reason: &'static str },

    #[error("hierarchy level {0} is outside 1..=6")]
    InvalidLevel(usize),

    #[error("word {0:?} is not in the thesaurus")]
    UnknownWord(String),

    #[error("{word:?} must have exactly 4 characters, found {found}")]
    NotFourCharacters { word: String, found: usize },

    #[error("category level mismatch: expected {expected}, found {found}")]
    LevelMismatch { expected: usize, found: usize },

    #[error("{what} {actual} exceeds the limit of {limit}")]
    ResourceLimit {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("distance must be at least 1")]
    InvalidDistance,

    #[error("invalid decay parameters: {0}")]
    InvalidDecay(String),

    #[error("model file: {0}")]
    ModelFormat(String),

    #[error("model file version {found} is not supported (expected {expected})")]
    ModelVersion { found: u16, expected: u16 },

    #[error("model file truncated: expected {expected} payload bytes, found {found}")]
    ModelTruncated { expected: u64, found: u64 },

    #[error("model file checksum mismatch: stored {stored:08x}, computed {computed:08x}")]
    ModelChecksum { stored: u32, computed: u32 },

    #[error("malformed bracketing {text:?}: {reason}")]
    Bracket { text: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
