use thiserror::Error;

/// Errors raised by parsing, validation and the solvers.
///
/// Vertex and bag ids in messages are 1-based, matching the file formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("header declares {declared} edges but {found} were given")]
    EdgeCountMismatch { declared: usize, found: usize },

    #[error("duplicate edge {u} {v}")]
    DuplicateEdge { u: usize, v: usize },

    #[error("self-loop at vertex {v}")]
    SelfLoop { v: usize },

    #[error("vertex {v} out of range 1..={n}")]
    VertexOutOfRange { v: usize, n: usize },

    #[error("graph is disconnected: vertex {v} is unreachable from vertex 1")]
    Disconnected { v: usize },

    #[error("source set is empty")]
    EmptySources,

    #[error("id {id} out of range for {len} elements")]
    IdOutOfRange { id: usize, len: usize },

    #[error("sort key {key} exceeds bound {bound}")]
    KeyOutOfBound { key: usize, bound: usize },

    #[error("radius of vertex {v} is {radius}, expected a value in 0..={n}")]
    RadiusOutOfRange { v: usize, radius: usize, n: usize },

    #[error("no radius given for vertex {v}")]
    MissingRadius { v: usize },

    #[error("invalid subtree: {0}")]
    InvalidSubtree(String),

    #[error("invalid tree-decomposition: {0}")]
    Decomposition(String),

    #[error("tree-decomposition has no bag centers")]
    MissingCenters,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("instance size {size} exceeds oracle budget {budget}")]
    OverBudget { size: usize, budget: usize },

    #[error("oracle time cap of {millis} ms exceeded")]
    TimeCap { millis: u128 },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
