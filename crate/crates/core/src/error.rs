use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: loop edge on vertex {vertex}")]
    Loop { line: usize, vertex: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is not connected")]
    NotConnected,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partitions have different ground sets ({0} vs {1} elements)")]
    GroundSetMismatch(usize, usize),

    #[error("first partition does not refine the second")]
    NotRefinement,

    #[error("{what} too large: {size} exceeds cap {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("edge set is not a spanning tree: {0}")]
    NotSpanningTree(String),

    #[error("edge {0} lies in the spanning tree")]
    EdgeInTree(usize),

    #[error("product is not multilinear: monomials share a variable")]
    NotMultilinear,

    #[error("tree polynomial undefined: {0}")]
    TreePolyUndefined(String),

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("invalid prime modulus {0}: {1}")]
    InvalidPrime(u64, String),

    #[error("malformed polynomial JSON: {0}")]
    PolyJson(String),
}
