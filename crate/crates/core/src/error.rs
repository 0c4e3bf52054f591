use thiserror::Error;

/// Errors raised by library operations.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("unsupported group family for {0}")]
    UnsupportedFamily(String),
    #[error("enumeration exceeded cap {cap}")]
    CapExceeded { cap: usize },
    #[error("subgroup does not have finite index")]
    NotFiniteIndex,
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("relator {relator} violated (residual {residual:e})")]
    RelatorViolation { relator: String, residual: f64 },
    #[error("no positive-definite invariant form found")]
    NoCertificate,
    #[error("Cesàro averages did not converge after {iterations} doubling rounds (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("im(Δ) and ker(Δ) intersect nontrivially (witness norm {witness_norm:e})")]
    NotDirect { witness_norm: f64 },
    #[error("operator norm {norm} is not < 1")]
    NormPreconditionFailed { norm: f64 },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("hypothesis `{check}` failed: {detail}")]
    HypothesisFailed { check: String, detail: String },
    #[error("size {needed} exceeds budget {budget}")]
    BudgetExceeded { needed: usize, budget: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("no primitive found: {0}")]
    NoPrimitive(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
