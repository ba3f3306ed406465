use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("vertex set is not a connected component: {0}")]
    NotAComponent(String),

    #[error("graph has isolated vertex {0}; no edge cover exists")]
    NoCover(usize),

    #[error("graph has no edges")]
    EmptyEdgeSet,

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("multidegree {0} does not lie in the semigroup")]
    DegreeNotInSemigroup(String),

    #[error("unsupported graph: {0}")]
    UnsupportedGraph(String),

    #[error("Rees algebra is not normal: {0}")]
    NotNormal(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("empty Betti table")]
    EmptyTable,

    #[error("limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("internal error: {0}")]
    Internal(String),
}
