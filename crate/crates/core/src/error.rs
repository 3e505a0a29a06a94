use alloc::string::String;

/// Errors raised by the certifier and the routines it is built on.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("exponent vector has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("term {index} has a zero coefficient")]
    ZeroCoefficient { index: usize },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("coordinate {index} of the evaluation point is not strictly positive ({value})")]
    NonPositivePoint { index: usize, value: f64 },
    #[error("evaluation overflowed")]
    Overflow,
    #[error("point is not in the support of the signomial")]
    NotInSupport,
    #[error("matrix is singular (|det| = {det:e})")]
    SingularMatrix { det: f64 },
    #[error("signomial has no terms")]
    EmptySignomial,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("simplex invalid: {0}")]
    InvalidSimplex(String),
    #[error("linear program failed: {0}")]
    Lp(#[from] crate::lp::LpError),
}
