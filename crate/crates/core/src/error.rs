use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("interval does not isolate a single root ({roots} roots found)")]
    NotIsolating { roots: usize },
    #[error("leading coefficient vanishes at the algebraic number")]
    LeadingCoefficientVanishes,
    #[error("polynomial is not square-free")]
    NotSquareFree,
    #[error("resultant vanishes identically: B(x, y) shares a factor with A(x)")]
    ResultantZero,
    #[error("precision cap of {cap} bits exceeded")]
    PrecisionCapExceeded { cap: u64 },
    #[error("deadline exceeded")]
    Timeout,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
