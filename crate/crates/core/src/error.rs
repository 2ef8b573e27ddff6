use crate::buffer::Phase;
use crate::Word;

/// Errors reported by the checked entry points.
///
/// The unchecked fast paths never return these; they assume their
/// preconditions and only promise memory safety when those are violated.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("key {value} at index {index} is outside [1, {max}]")]
    KeyOutOfRange {
        index: usize,
        value: i128,
        max: i128,
    },

    #[error("buffer of length {0} cannot hold values in [-n, n]")]
    TooLong(usize),

    #[error("absolute values are not a permutation of 1..n")]
    NotPermutation,

    #[error("negative entries are not in increasing order of absolute value")]
    NegativesOutOfOrder,

    #[error("permuted ranks are malformed at index {index}")]
    MalformedPermutedRanks { index: usize },

    #[error("counter update from index {index} targets non-representative slot {target}")]
    Interference { index: usize, target: usize },

    #[error("rank permutation is inconsistent with the keys")]
    InconsistentRanks,

    #[error("operation expects phase {expected:?}, buffer is in {found:?}")]
    PhaseMismatch { expected: Phase, found: Phase },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid input spec: {0}")]
    InvalidSpec(String),

    #[error("invalid radix configuration: {0}")]
    InvalidConfig(String),

    #[error(
        "verification failed for {algorithm} (n={n}, distribution={distribution}, seed={seed})"
    )]
    VerificationFailed {
        algorithm: String,
        n: usize,
        distribution: String,
        seed: u64,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn out_of_range(index: usize, value: Word, max: usize) -> Error {
    Error::KeyOutOfRange {
        index,
        value: value as i128,
        max: max as i128,
    }
}
