use thiserror::Error;

/// Errors raised by the library. Parse failures are kept apart from
/// semantic failures so front ends can map them to distinct exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("not a permutation of 0..{0}")]
    InvalidPermutation(usize),
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("vertex {0} is not looped")]
    UnloopedVertex(usize),
    #[error("not a successful pressing sequence")]
    NotSuccessful,
    #[error("graph is not full rank (rank {rank} of {n})")]
    RankDeficient { rank: usize, n: usize },
    #[error("arc set contains a cycle")]
    Cycle,
    #[error("duplicate label {0}")]
    DuplicateLabel(usize),
    #[error("malformed build tree: {0}")]
    MalformedTree(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("partition invariant violated: {0}")]
    PartitionViolation(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
