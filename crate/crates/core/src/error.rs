use thiserror::Error;

/// Errors raised by engine operations.
///
/// Law violations found by the checkers are not errors: they come back as
/// [`crate::Certificate::Fail`] values carrying a witness.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed quantale: {0}")]
    MalformedQuantale(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("operands live over different quantales")]
    BaseMismatch,
    #[error("function space of size {cod}^{dom} exceeds the cap of {cap}")]
    ExponentTooLarge { dom: usize, cod: usize, cap: usize },
    #[error("certificate failure (engine bug): {0}")]
    CertificateFailure(String),
    #[error("not a monoid: {0}")]
    NotAMonoid(String),
    #[error("not a comonoid: {0}")]
    NotAComonoid(String),
    #[error("coherence failure: {0}")]
    CoherenceFailure(String),
    #[error("missing fibrewise adjoint over base object {0}")]
    MissingFibrewiseAdjoint(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("search space of {bound} candidates exceeds the cap of {cap}")]
    SearchSpaceTooLarge { bound: u128, cap: u128 },
    #[error("category too large: {0}")]
    TooLarge(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
