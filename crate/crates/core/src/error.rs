use thiserror::Error;

use crate::graph::Vertex;

/// Errors raised by graph construction, table computation and the walk
/// estimators.
#[derive(Debug, Error)]
pub enum ForgeError {
    #[error("graph is disconnected: vertex {vertex} is unreachable from the base")]
    DisconnectedGraph { vertex: Vertex },

    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: Vertex },

    #[error("duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { u: Vertex, v: Vertex },

    #[error("vertex {vertex} out of range for a graph with {count} vertices")]
    VertexOutOfRange { vertex: Vertex, count: usize },

    #[error("radius {needed} exceeds the certified radius {certified} of the window")]
    RadiusExceeded { needed: usize, certified: usize },

    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("generating set is not symmetric: inverse of {0} is missing")]
    NotSymmetric(String),

    #[error("generating set contains the identity")]
    ContainsIdentity,

    #[error("generators do not generate the group: {0}")]
    NotGenerating(String),

    #[error("group element kinds do not match")]
    KindMismatch,

    #[error("window has more than {cap} vertices")]
    WindowOverflow { cap: usize },

    #[error("sphere S_{radius}({vertex}) is empty")]
    EmptySphere { vertex: Vertex, radius: usize },

    #[error("enumeration needs {count} tuples, cap is {cap}")]
    EnumerationCapExceeded { count: u128, cap: u128 },

    #[error("fixture `{0}` has no Cayley realization")]
    NotCayley(String),

    #[error("operation requires a finite group")]
    NotFinite,

    #[error("{count} patterns exceed the cap of {cap}")]
    PatternCapExceeded { count: u128, cap: u128 },

    #[error("conditioning on an event of probability zero: Z_1 = {index}")]
    ZeroProbabilityCondition { index: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix has incomplete rows")]
    TruncatedMatrix,

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, ForgeError>;
