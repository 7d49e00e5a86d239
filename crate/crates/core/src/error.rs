use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("prime {r} is not supported: {reason}")]
    UnsupportedPrime { r: u64, reason: &'static str },
    #[error("galois exponent {t} is not a unit modulo {order}")]
    NotAUnit { t: i64, order: u32 },
    #[error("orbit basis kind {kind} requires r ≡ {required} mod 4, got r = {r}")]
    KindMismatch {
        kind: &'static str,
        required: u64,
        r: u64,
    },
    #[error("no element rho with N(rho) = -1 and conj(rho) = u*rho exists for r = {0}")]
    NoRho(u64),
    #[error("symmetry data invariant violated for r = {r}: {what}")]
    BrokenInvariant { r: u64, what: String },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("field order {field} is not a multiple of {required}")]
    FieldOrder { field: u32, required: u32 },
    #[error("representation is not projective: {0}")]
    NotProjective(String),
    #[error("no lift scalars in Q(zeta_{order}): {detail}")]
    NoLift { order: u32, detail: String },
    #[error("exact commutant refused: dim^2 = {size} exceeds bound {bound}")]
    ResourceGuard { size: usize, bound: usize },
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
