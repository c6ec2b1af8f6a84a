use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid instance (K={k}, D={d}, U={u}): {rule}")]
    InvalidInstance {
        k: usize,
        d: usize,
        u: usize,
        rule: &'static str,
    },

    #[error("invalid AIR shape {rows}x{cols}: need 1 <= cols <= rows")]
    InvalidShape { rows: usize, cols: usize },

    /// The instance has complete side-information (U + D = K - 1) and is served
    /// by the single-sum code instead of the AIR construction.
    #[error("U + D = K - 1: use the single-sum code")]
    SpecialCase,

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("linear system has no solution")]
    NoSolution,

    #[error("linear system has more than one solution")]
    NotUnique,

    #[error("matrix is singular modulo {p}")]
    Singular { p: u64 },

    /// A receiver-side system that the AIR property guarantees to be invertible
    /// turned out singular. Only a construction bug can trigger this.
    #[error("decoding system for receiver {receiver} is singular")]
    SystemSingular { receiver: usize },

    #[error("side information for receiver {receiver} does not match its known set: {detail}")]
    SideInfoMismatch { receiver: usize, detail: String },

    #[error("receiver {receiver} out of range for K={k}")]
    ReceiverOutOfRange { receiver: usize, k: usize },

    #[error("no decoding plan found for receiver {receiver}")]
    NoPlan { receiver: usize },

    #[error("value {value} is not an element of GF({p})")]
    Range { value: u64, p: u64 },

    #[error("{modulus} is not prime")]
    NotPrime { modulus: u64 },

    #[error("search space too large: {size} exceeds cap {cap}")]
    TooLarge { size: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
