use thiserror::Error;

/// Crate-wide error type. Variants map one-to-one onto the failure modes of
/// the public operations; hypothesis failures carry a human-readable reason
/// naming the violated condition.
#[derive(Debug, Error)]
pub enum Error {
    #[error("moduli {q1} and {q2} are not coprime")]
    NonCoprimeModuli { q1: u64, q2: u64 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    /// Raised when an exhaustive search that is guaranteed to succeed comes
    /// up empty; reaching this is a bug, and tests treat it as fatal.
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
    #[error("prime table sieved to {limit} but {required} is required")]
    LimitTooSmall { limit: u64, required: u64 },
    #[error("vector lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("no prime in [{lo}, {hi}]")]
    NoPrimeInRange { lo: u64, hi: u64 },
    #[error("walk index {0} exceeds the signed 64-bit overflow guard (62)")]
    WalkOverflow(u32),
    #[error("cannot parse subset descriptor: {0}")]
    BadDescriptor(String),
}

pub type Result<T> = std::result::Result<T, Error>;
