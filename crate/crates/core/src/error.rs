//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Logarithm of a non-positive rational was requested.
    #[error("logarithm requires a positive argument")]
    NonPositiveInput,

    /// Interval escalation hit the configured bit cap before the result
    /// was determined. The caller may retry with a larger cap.
    #[error("precision escalation exceeded the {max_bits}-bit cap")]
    PrecisionExhausted { max_bits: u64 },

    /// A table or construction does not reach the requested depth.
    #[error("depth {requested} unavailable (have {available})")]
    DepthUnavailable { requested: usize, available: usize },

    /// Bounded-mode patterns define the same number twice.
    #[error("the two bounded patterns define equal values")]
    DegenerateEqualValues,

    /// Interval refinement hit its round limit before an order resolved.
    #[error("interval order unresolved after {rounds} refinement rounds")]
    UnresolvableOrder { rounds: usize },

    /// The brute-force search box cannot cover the pulled-back region.
    #[error("search bound {bound} too small; need at least {needed}")]
    BoundTooSmall { bound: String, needed: String },

    /// An estimator was handed an empty or too-short minima sequence.
    #[error("minima sequence has too few entries ({have}, need {need})")]
    EmptySequence { have: usize, need: usize },

    /// Invalid construction parameter (beta <= 1, empty pattern, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
