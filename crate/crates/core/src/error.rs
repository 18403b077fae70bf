use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A precondition on an argument was violated (bad parameter, trivial
    /// group, malformed input).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A construction would exceed the configured group-size cap. Carries the
    /// would-be size so callers can fall back to formula evaluation.
    #[error("group of size {size} exceeds cap {cap}")]
    SizeCap { size: u128, cap: u128 },

    /// Exact arithmetic would build an integer beyond the bit budget.
    /// `step` identifies the failing tower step when applicable.
    #[error("bit budget exhausted: needs ~{needed} bits, budget {budget}{}",
            step.map(|s| format!(" (at step {s})")).unwrap_or_default())]
    BitBudget {
        needed: u64,
        budget: u64,
        step: Option<usize>,
    },

    /// The input group is not a p-group; names the offending order or size.
    #[error("not a p-group: {0}")]
    NotPGroup(String),

    /// Two p-group inputs live over different primes.
    #[error("prime mismatch: {left} vs {right}")]
    PrimeMismatch { left: u64, right: u64 },

    /// A Cayley table failed a structural check mid-computation.
    #[error("corrupt group table: {0}")]
    CorruptTable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
