use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("entry {index} is negative ({value})")]
    NegativeEntry { index: usize, value: f64 },
    #[error("non-finite value in {0}")]
    NonFinite(String),
    #[error("sequence is not non-increasing (first violation at index {0})")]
    NotNonIncreasing(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("domination violated at index {index}: {a} > {b}")]
    DominationViolated { index: usize, a: f64, b: f64 },
    #[error("budget exceeded: requested {requested}, cap is {cap}")]
    BudgetExceeded { requested: usize, cap: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not idempotent (residual norm {0:e})")]
    NotIdempotent(f64),
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("strategy mismatch: {0}")]
    StrategyMismatch(String),
    #[error("oracle contradicts the requested inclusion: {0}")]
    OracleContradiction(String),
    #[error("empty input: {0}")]
    EmptyInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
