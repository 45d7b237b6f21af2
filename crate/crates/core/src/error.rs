use thiserror::Error;

/// Errors raised by the exact-arithmetic and invariant routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot combine surds with different discriminants: sqrt({0}) and sqrt({1})")]
    DiscriminantMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("order k = w + w' + n + 1 = {0} is not a positive integer")]
    InvalidOrder(String),
    #[error("mode (p, q) = ({p}, {q}) is not pluriharmonic: need p = n|q|")]
    NotPluriharmonic { p: String, q: String },
    #[error("invalid dimension n = {n}: {reason}")]
    InvalidDimension { n: u32, reason: &'static str },
    #[error("sub-Laplacian eigenvalue must be non-negative, got {0}")]
    NegativeEigenvalue(String),
    #[error("{0}")]
    SpecViolation(String),
    #[error("Einstein constant is zero; volume cannot be recovered from the total Q'-curvature")]
    ZeroEinsteinConstant,
    #[error("invalid rational literal {0:?}")]
    ParseRational(String),
}

impl Error {
    /// True for errors that come from violating a mathematical precondition
    /// rather than malformed input.
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::ParseRational(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
