use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge {edge:?} does not have exactly {k} distinct vertices")]
    NonUniformEdge { edge: Vec<usize>, k: usize },

    #[error("edge {0:?} appears more than once")]
    DuplicateEdge(Vec<usize>),

    #[error("vertex {vertex} out of range for a hypergraph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("hypergraph is not connected")]
    Disconnected,

    #[error("hypergraph is not a supertree")]
    NotASupertree,

    #[error("input graph is not a tree")]
    NotATree,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("pivot vertex {pivot} already lies in edge {edge:?}")]
    PivotInEdge { pivot: usize, edge: Vec<usize> },

    #[error("vertex {vertex} is not in edge {edge:?}")]
    MissingVertex { vertex: usize, edge: Vec<usize> },

    #[error("edge {0:?} would be created twice or already exists")]
    EdgeCollision(Vec<usize>),

    #[error("switch blocks must satisfy 1 <= |U1| = |V1| <= k-1 (got {u1} and {v1})")]
    SizeMismatch { u1: usize, v1: usize },

    #[error("switched edge {0:?} is not a k-set")]
    NotKSet(Vec<usize>),

    #[error("operation not applicable: {0}")]
    NotApplicable(String),

    #[error("vector entry {index} is not strictly positive ({value})")]
    NonPositiveInput { index: usize, value: f64 },

    #[error("vector k-norm is {norm}, expected 1")]
    NotNormalized { norm: f64 },

    #[error("alpha must lie in [0, 1), got {0}")]
    AlphaOutOfRange(f64),

    #[error("power iteration did not converge in {iterations} iterations (bounds [{low}, {high}])")]
    MaxIterationsExceeded { iterations: usize, low: f64, high: f64 },

    #[error("enumeration exceeded the class budget of {0}")]
    BudgetExceeded(usize),

    #[error("unsupported format version {0}")]
    UnsupportedFormat(u32),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
