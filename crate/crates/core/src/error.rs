use thiserror::Error;

/// Errors raised by graph construction, group computations and parameter searches.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("edge list parse error on line {line}: {reason}")]
    EdgeList { line: usize, reason: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("group order {order} exceeds enumeration cap {cap}")]
    EnumerationCap { order: String, cap: u64 },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph is not {0}-distinguishable")]
    NotDistinguishable(usize),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("search budget of {budget} candidates exceeded while computing {what}")]
    BudgetExceeded { what: String, budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
