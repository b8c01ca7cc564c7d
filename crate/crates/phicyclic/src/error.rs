//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by field, polynomial, code, matrix, lattice and
/// encryption operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus polynomial is reducible over the base field")]
    Reducible,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("leading coefficient of the divisor is not a unit")]
    LeadingCoefficientNotUnit,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("search space exceeds the configured bound: {0}")]
    TooLarge(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("constant coefficient of the defining vector must be nonzero")]
    ZeroConstantTerm,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("polynomial does not divide the ring modulus")]
    NotDivisor,
    #[error("ring modulus is not separable")]
    NotSeparable,
    #[error("operation undefined for a trivial code")]
    TrivialCode,
    #[error("generator polynomial is not irreducible")]
    NotIrreducible,
    #[error("internal construction mismatch: {0}")]
    InternalMismatch(String),
    #[error("matrix is not invertible modulo {0}")]
    NotInvertibleModQ(u64),
    #[error("membership undecidable: no inverse modulo q and the brute-force domain is too large")]
    Undecidable,
    #[error("basis verification failed: {0}")]
    VerificationFailed(String),
    #[error("requested support does not fit: {0}")]
    Infeasible(String),
    #[error("invalid parameters: {}", .0.join("; "))]
    InvalidParams(Vec<String>),
    #[error("exceeded {0} resampling attempts")]
    MaxRetriesExceeded(u32),
    #[error("vector has the wrong shape: {0}")]
    BadShape(String),
}

pub type Result<T> = std::result::Result<T, Error>;
