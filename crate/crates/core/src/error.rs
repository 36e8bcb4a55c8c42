use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Domain errors describe a violated precondition. `Overflow` is reported
/// whenever an intermediate or final value leaves the 64-bit range; values
/// are never silently wrapped.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("modulus {0} exceeds the supported domain (2^63 - 1)")]
    ModulusOutOfDomain(u64),
    #[error("{0} is below 2 and has no prime factorization")]
    NoFactorization(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("residue {value} is not reduced modulo {modulus}")]
    ResidueOutOfRange { value: u64, modulus: u64 },
    #[error("{0} is not invertible modulo {1}")]
    NotInvertible(u64, u64),
    #[error("factorization does not describe {expected}")]
    FactorizationMismatch { expected: u64 },
    #[error("invalid factorization: {0}")]
    InvalidFactorization(&'static str),
    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),
    #[error("modulus {modulus} is above the brute-force oracle cap {cap}")]
    OracleCapExceeded { modulus: u64, cap: u64 },
    #[error("prime {prime} is {actual}, expected {expected}")]
    WrongClass {
        prime: u64,
        actual: &'static str,
        expected: &'static str,
    },
    #[error("Fibonacci index {0} is out of range (expected 4..=92)")]
    IndexOutOfRange(u64),
    #[error("period bound {bound} is not a period modulo {modulus}")]
    BoundNotPeriod { modulus: u64, bound: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
