use thiserror::Error;

/// Errors raised anywhere in the analysis pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("cycle detected among vertices {0:?}")]
    Cycle(Vec<u32>),

    #[error("unknown vertex id {0}")]
    UnknownVertex(u32),

    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(u32, u32),

    #[error("vertex {id} has {levels} levels; need between 2 and 9")]
    BadLevels { id: u32, levels: u32 },

    #[error("invalid statement: {0}")]
    InvalidStatement(String),

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("unknown label {0}")]
    UnknownLabel(String),

    #[error("{what}: size {actual} exceeds limit {limit}")]
    GuardExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("polynomial is not a quadratic form")]
    NotQuadratic,

    #[error("label assignment: {0}")]
    BadAssignment(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. })
    }

    pub(crate) fn guard(what: &'static str, limit: usize, actual: usize) -> Self {
        Error::GuardExceeded {
            what,
            limit,
            actual,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
