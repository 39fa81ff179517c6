use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("digit {digit} at position {position} is out of range for dimension {d}")]
    DigitOutOfRange { position: usize, digit: usize, d: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("state of {d}^{n} amplitudes exceeds the capacity of 2^31")]
    CapacityExceeded { d: usize, n: usize },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("level {level} out of range for dimension {d}")]
    LevelOutOfRange { level: usize, d: usize },

    #[error("subspace levels must satisfy i < j, got ({i}, {j})")]
    LevelsNotOrdered { i: usize, j: usize },

    #[error("qudit position {position} out of range for {n} qudits")]
    PositionOutOfRange { position: usize, n: usize },

    #[error("control on position {0} coincides with the target or another control")]
    ControlOnTarget(usize),

    #[error("binomial upper index must be nonnegative, got {0}")]
    NegativeUpperIndex(i64),

    #[error("occupation counts sum to {got}, expected {expected}")]
    SumMismatch { expected: usize, got: usize },

    #[error("occupation vector does not solve the constraints for (2s={s2}, n={n}, k={k})")]
    NotASolution { s2: usize, n: usize, k: usize },

    #[error("invalid Dicke parameters: {0}")]
    InvalidSpec(String),

    #[error("rotation angles do not reproduce the recursion coefficients (max deviation {0:e})")]
    InconsistentCoefficients(f64),

    #[error("no circuit topology for m={m}, l={ell}, i={i}")]
    UnsupportedShape { m: usize, ell: usize, i: usize },

    #[error("partition size {l} must satisfy 1 <= l < {n}")]
    PartitionOutOfRange { l: usize, n: usize },

    #[error("variance vanishes for k in {{0, 2sn}}; Gaussian entropy undefined")]
    DegenerateVariance,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
