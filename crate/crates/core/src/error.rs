use thiserror::Error;

/// Errors raised by the engine.
///
/// Every variant names the constraint that failed so the CLI can print it
/// verbatim. [`Error::is_budget`] separates resource refusals from input
/// problems.
#[derive(Debug, Error)]
pub enum Error {
    #[error("edge {edge:?} has {found} distinct vertices, expected {expected}")]
    NonUniformEdge {
        edge: Vec<usize>,
        expected: usize,
        found: usize,
    },
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<usize>),
    #[error("vertex {vertex} out of range for a hypergraph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("expected a 2-uniform hypergraph (a graph), got m = {0}")]
    NotAGraph(usize),
    #[error("uniformities differ: {0} vs {1}")]
    MixedUniformity(usize, usize),
    #[error("operand is trivial (fewer than two vertices or no edges)")]
    TrivialOperand,
    #[error("operand is not connected")]
    Disconnected,
    #[error("limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("infeasible query: {0}")]
    InfeasibleQuery(String),
    #[error("inconsistent query: {0}")]
    InvalidQuery(String),
    #[error("digraph has no vertices")]
    EmptyGraph,
    #[error("not Eulerian: {0}")]
    NotEulerian(String),
    #[error("profile entry (d = {d}, t = {t}) was not computed")]
    MissingProfileEntry { d: usize, t: usize },
    #[error("invalid root-count matrix: {0}")]
    InvalidRooting(String),
    #[error("malformed number {0:?}")]
    ParseNumber(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for refusals caused by a size or cost guard.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::LimitExceeded(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
