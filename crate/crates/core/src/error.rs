use thiserror::Error;

/// Errors raised by the exact-arithmetic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is not integer-valued: binomial coefficient {index} is {value}")]
    NotIntegerValued { index: usize, value: String },

    #[error("value {value} at {at} is not an integer")]
    NonIntegerValue { at: i64, value: String },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("matrix entries are not integers")]
    NotIntegral,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} is not supported (primes below 100 only)")]
    UnsupportedModulus(u64),

    #[error("enumeration of {size} vectors exceeds the cap {cap}")]
    EnumerationCap { size: u128, cap: u128 },

    #[error("operation requires a finite modulus")]
    NeedsFiniteModulus,

    #[error("basis is not semi-orthonormal: {0}")]
    NotSemiOrthonormal(String),

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("operator does not preserve the candidate set")]
    NotFormPreserving,

    #[error("exponent {k} is not coprime to {n}")]
    NotCoprime { k: i64, n: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("value is not rational")]
    NotRational,

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("row {row}: {message}")]
    Row { row: usize, message: String },

    #[error("row {row}: field `{field}` violates invariant: {message}")]
    Invariant {
        row: usize,
        field: &'static str,
        message: String,
    },

    #[error("unknown group label `{0}`")]
    UnknownGroup(String),

    #[error("subgroup `{0}` has no element of order 7")]
    NoOrderSeven(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
