//! Horizontally interleaved linearized Reed-Solomon (HILRS) codes in the
//! sum-rank metric.
//!
//! The crate provides:
//!
//! - exact arithmetic for field towers F_p <= F_q <= F_{q^m} with an
//!   automorphism of fixed field F_q ([`ff`]),
//! - the skew-polynomial ring F_{q^m}[x; theta] with generalized operator
//!   evaluation, minimal and interpolation polynomials ([`skew`]),
//! - LRS and HILRS code construction and encoding ([`code`]),
//! - the sum-rank channel: weights, uniform error sampling of prescribed
//!   weight, rank factorizations ([`channel`]),
//! - a Gao-like decoder with two interchangeable key-equation solvers: a
//!   baseline Gaussian-elimination solver ([`decode`]) and a fast minimal
//!   approximant basis solver ([`mab`]),
//! - a Monte Carlo simulation and benchmarking harness with a CLI front end
//!   ([`bench`]).

pub mod bench;
pub mod channel;
pub mod code;
pub mod decode;
pub mod ff;
pub mod mab;
pub mod skew;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("extension degrees must be positive (e = {e}, m = {m})")]
    BadDegree { e: usize, m: usize },
    #[error("frobenius power r = {r} must satisfy gcd(r, m) = 1 for m = {m}")]
    FrobeniusNotCoprime { r: usize, m: usize },
    #[error("field too large: q^m must fit in 64 bits")]
    FieldTooLarge,
    #[error("no irreducible modulus found")]
    NoIrreducible,
    #[error("not enough nontrivial conjugacy classes: requested {requested}, available {available}")]
    NotEnoughClasses { requested: usize, available: usize },
    #[error("length partition must be nonempty with positive parts")]
    BadPartition,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("partition mismatch: partition covers {expected} points, got {got}")]
    PartitionMismatch { expected: usize, got: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("singular interpolation system: evaluation preconditions violated")]
    SingularSystem,
    #[error("block length n_{index} = {n_i} exceeds extension degree m = {m}")]
    BlockTooLong { index: usize, n_i: usize, m: usize },
    #[error("dimension k = {k} out of range for length n = {n}")]
    BadDimension { k: usize, n: usize },
    #[error("block {index} of the locator vector is not F_q-linearly independent")]
    DependentLocators { index: usize },
    #[error("message degree {deg} exceeds bound {bound}")]
    MessageDegree { deg: i64, bound: usize },
    #[error("interleaving order s must be positive")]
    BadInterleavingOrder,
    #[error("error weight t = {t} out of range (max {max})")]
    WeightOutOfRange { t: usize, max: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
