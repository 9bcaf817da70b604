use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("invalid chord diagram: {0}")]
    InvalidDiagram(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("{what} needs an even point count, got {got}")]
    OddPoints { what: &'static str, got: usize },
    #[error("size guard: {what} is limited to {limit}, requested {requested}")]
    SizeGuard {
        what: &'static str,
        requested: usize,
        limit: usize,
    },
    #[error("work estimate {estimate} exceeds budget {budget} for {what}; raise --limit-work to proceed")]
    WorkBudget {
        what: String,
        estimate: u64,
        budget: u64,
    },
    #[error("not an eigenvalue polynomial: {0}")]
    NotEigenvalue(String),
    #[error("genus {got} unsupported for {what} (needs g >= {min})")]
    GenusTooSmall {
        what: &'static str,
        got: i64,
        min: i64,
    },
    #[error("eigenvalues collide at genus {genus}: {lhs} and {rhs} evaluate equal")]
    EigenvalueCollision {
        genus: i64,
        lhs: String,
        rhs: String,
    },
    #[error("tensor is not antisymmetric: {0}")]
    NotAntisymmetric(String),
    #[error("not a trivalent multigraph: {0}")]
    NotTrivalent(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("serialization: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
