use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("defining polynomial is not irreducible over GF({0})")]
    NotIrreducible(u32),
    #[error("defining polynomial must be monic with degree >= 1")]
    NotMonic,
    #[error("coefficient {coeff} is out of range for GF({p})")]
    CoefficientOutOfRange { coeff: u64, p: u32 },
    #[error("field of order {0} is too large for this operation")]
    FieldTooLarge(u64),
    #[error("element belongs to a different field")]
    FieldMismatch,
    #[error("zero cannot be raised to a negative power")]
    ZeroToNegativePower,
    #[error("gcd(n, q) must be 1 (n = {n}, q = {q})")]
    GcdViolation { n: u64, q: u64 },
    #[error("index {index} is out of range for modulus {modulus}")]
    IndexOutOfRange { index: u64, modulus: u64 },
    #[error("coefficient does not lie in the base subfield: {0}")]
    NotInSubfield(String),
    #[error("function is not a monomial")]
    NotMonomial,
    #[error("at least two sequence terms are required, got {0}")]
    InsufficientTerms(usize),
    #[error("inconsistent input: {0}")]
    InconsistentInput(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("condition unmet: {0}")]
    ConditionUnmet(String),
    #[error("expansion invariant violated: {0}")]
    Expansion(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
}

pub type Result<T> = std::result::Result<T, Error>;
