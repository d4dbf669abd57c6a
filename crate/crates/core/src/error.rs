use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("a polygonal chain needs at least one vertex")]
    EmptyChain,

    #[error("coordinate ({x}, {y}) is outside the supported range of +/-{limit}")]
    CoordinateOutOfRange { x: i64, y: i64, limit: i64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{path}: malformed XML: {source}")]
    Xml {
        path: String,
        #[source]
        source: roxmltree::Error,
    },

    #[error("{path}:{line}: malformed point '{token}': {reason}")]
    MalformedPoint {
        path: String,
        line: u32,
        token: String,
        reason: String,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("count mismatch {gt} vs {hyp}: GT and HY list files must pair line by line")]
    CountMismatch { gt: usize, hyp: usize },

    #[error("cannot determine the format of {}; pass --format", .0.display())]
    UnknownFormat(PathBuf),

    #[error("cannot split a chain with a single vertex")]
    SplitSingleVertex,

    #[error("split fraction {0} is outside (0, 1)")]
    SplitFraction(f64),

    #[error("cannot aggregate an empty list of pages")]
    EmptyCorpus,

    #[error("failed to write report: {0}")]
    Report(String),
}

impl Error {
    /// Replaces the placeholder source name of a parse error with a real
    /// file name.
    pub(crate) fn in_file(self, name: &str) -> Self {
        match self {
            Error::Xml { source, .. } => Error::Xml {
                path: name.to_string(),
                source,
            },
            Error::MalformedPoint {
                line, token, reason, ..
            } => Error::MalformedPoint {
                path: name.to_string(),
                line,
                token,
                reason,
            },
            other => other,
        }
    }
}
