use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid tower parameters: {0}")]
    InvalidTower(String),

    #[error("field of order {order} exceeds the size cap of {cap} table entries")]
    SizeCapExceeded { order: u128, cap: u64 },

    #[error("modulus must be monic of degree {expected} (got {got} coefficients)")]
    ModulusShape { expected: usize, got: usize },

    #[error("modulus coefficient {0} is not reduced mod p")]
    ModulusCoefficient(u32),

    #[error("modulus is not irreducible over F_p")]
    ModulusNotIrreducible,

    #[error("modulus is irreducible but not primitive (root has order {order})")]
    ModulusNotPrimitive { order: u64 },

    #[error("no subfield of order {0}")]
    NotASubfieldOrder(u64),

    #[error("cannot take the trace from order {from} down to order {to}")]
    IncompatibleOrders { from: u64, to: u64 },

    #[error("element is not in the subfield of order {0}")]
    NotInSubfield(u64),

    #[error("inverse of zero")]
    InverseOfZero,

    #[error("{0} must be nonzero")]
    ZeroArgument(&'static str),

    #[error("dimension r = {r} out of range 1 <= r < m = {m}")]
    DimensionOutOfRange { r: u32, m: u32 },

    #[error("subspace basis is not linearly independent over F_q")]
    DependentBasis,

    #[error("invalid parameters: {0}")]
    Parameters(String),

    #[error("group of order {0} is too large for a dense indicator")]
    GroupTooLarge(u128),

    #[error("malformed set: {0}")]
    MalformedSet(String),

    #[error("arithmetic inconsistency: {0}")]
    Inconsistent(String),

    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
