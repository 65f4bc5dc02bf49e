use thiserror::Error;

/// Errors from constructors and partial operations.
///
/// Structural misuse inside arithmetic (mixing parent fields, mismatched
/// dimensions) panics instead; anything built from external input is
/// validated in [`crate::codec`] before it reaches arithmetic.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime in the supported range 2..=97")]
    NotPrime(u64),
    #[error("unsupported field parameters: {0}")]
    InvalidField(String),
    #[error("defining polynomial is not irreducible over F_{p}")]
    ReduciblePolynomial { p: u64 },
    #[error("inverse of zero")]
    DivisionByZero,
    #[error("factorial {m}! is not invertible mod {p} (need m < p)")]
    FactorialDomain { m: u64, p: u64 },
    #[error("matrix is not [p]-nilpotent (x^{p} != 0)")]
    NotNilpotent { p: u64 },
    #[error("matrix is not p-unipotent ((g-1)^{p} != 0)")]
    NotUnipotent { p: u64 },
    #[error("tuple entries {i} and {j} do not commute")]
    NotCommuting { i: usize, j: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("not a one-parameter subgroup: {0}")]
    NotHomomorphism(String),
    #[error("coefficient degree {m} out of range (length {len})")]
    DegreeOutOfRange { m: usize, len: usize },
    #[error("generator index {j} out of range for height {r}")]
    GeneratorIndex { j: usize, r: usize },
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("internal consistency violation: {0}")]
    InternalConsistency(String),
    #[error("unknown root datum {0:?}")]
    UnknownDatum(String),
    #[error("unknown root system type {0:?}")]
    UnknownType(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("sampling failed: {0}")]
    Generation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
