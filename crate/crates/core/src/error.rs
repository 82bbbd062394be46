//! Error type shared by all library modules.

use thiserror::Error;

/// Errors produced by the drivestyle library.
#[derive(Debug, Error)]
pub enum Error {
    /// A single input line could not be parsed into a GPS log.
    #[error("bad log line: {reason}")]
    BadLogLine {
        /// What was wrong with the line.
        reason: String,
    },

    /// A geographic value is outside its legal range.
    #[error("invalid coordinate: {0}")]
    InvalidCoordinate(String),

    /// A bounding box with `min >= max` on some axis.
    #[error("invalid region: {0}")]
    InvalidRegion(String),

    /// A movement pattern violating a structural invariant.
    #[error("invalid pattern {id}: {reason}")]
    InvalidPattern {
        /// Pattern identifier.
        id: String,
        /// Violated invariant.
        reason: String,
    },

    /// Too few samples to compute a jerk series.
    #[error("pattern too short for jerk: length {len}, need at least 4")]
    PatternTooShort {
        /// Number of samples in the offending pattern.
        len: usize,
    },

    /// An empty or non-finite input to a statistic.
    #[error("invalid statistic input: {0}")]
    InvalidStatInput(String),

    /// An unknown feature column name.
    #[error("unknown feature name: {0}")]
    UnknownFeature(String),

    /// A cluster count outside `1..=N`.
    #[error("cluster count {k} out of range 1..={n}")]
    KOutOfRange {
        /// Requested cluster count.
        k: usize,
        /// Number of observations.
        n: usize,
    },

    /// An operation that needs at least two clusters.
    #[error("operation requires k >= 2, got {0}")]
    NeedTwoClusters(usize),

    /// A configuration value outside its legal range.
    #[error("invalid config: {0}")]
    InvalidConfig(String),

    /// An I/O failure, tagged with the offending path.
    #[error("i/o error on {path}: {source}")]
    Io {
        /// Path involved in the failure.
        path: String,
        /// Underlying error.
        #[source]
        source: std::io::Error,
    },

    /// A malformed data file (pattern JSON, features CSV, clusters JSON).
    #[error("malformed {what} in {path}: {reason}")]
    MalformedFile {
        /// Which format was being read.
        what: &'static str,
        /// Path of the offending file.
        path: String,
        /// Parse failure details.
        reason: String,
    },
}

impl Error {
    /// Wrap an I/O error with the path it occurred on.
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
