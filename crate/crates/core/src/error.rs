use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported root system {family}{rank}")]
    UnsupportedRootSystem { family: char, rank: usize },
    #[error("reflection requested for the zero vector")]
    ZeroRoot,
    #[error("group generation exceeded cap of {cap} elements")]
    GroupCapExceeded { cap: usize },
    #[error("matrix size mismatch: {0}")]
    SizeMismatch(String),
    #[error("element is not in the span of the basis: {0}")]
    NotInSpan(String),
    #[error("invalid bilinear form: {0}")]
    InvalidForm(String),
    #[error("invariant check failed: {0}")]
    InvariantViolation(String),
    #[error("unknown symmetric pair id {0:?}")]
    UnknownPair(String),
    #[error("weight is not integral: {0}")]
    NonIntegralWeight(String),
    #[error("weight is not in Q+: {0}")]
    NotInQPlus(String),
    #[error("monomial basis of {count} elements exceeds cap {cap}")]
    MonomialCapExceeded { count: usize, cap: usize },
    #[error("module dimension {dim} exceeds cap {cap}")]
    ModuleCapExceeded { dim: usize, cap: usize },
    #[error("tensor dimension {dim} exceeds cap {cap}")]
    TensorCapExceeded { dim: usize, cap: usize },
    #[error("no highest-weight vector of the requested weight in the ambient: {0}")]
    NoHighestWeightVector(String),
    #[error("Reynolds direct-sum check failed: {invariants} + {complement} != {total}")]
    ReynoldsDirectSum {
        invariants: usize,
        complement: usize,
        total: usize,
    },
    #[error("restricted polynomial is not W0-invariant ({0})")]
    NotW0Invariant(String),
    #[error("verification failed: {0}")]
    Falsified(String),
    #[error("no rational lift available: {0}")]
    NoLift(String),
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
