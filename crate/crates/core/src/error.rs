use thiserror::Error;

pub type Result<T> = std::result::Result<T, SpinError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpinError {
    #[error("number of atoms must be at least 1")]
    NoAtoms,

    #[error("{n} atoms exceeds the limit of {max}")]
    TooManyAtoms { n: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("state has zero norm")]
    ZeroNorm,

    #[error("state norm {norm} is outside the tolerance window around 1")]
    NormOutOfTolerance { norm: f64 },

    #[error("polar angle {0} is outside [0, pi]")]
    ThetaOutOfRange(f64),

    #[error("non-finite angle")]
    NonFiniteAngle,

    #[error("interaction time must be finite and non-negative, got {0}")]
    InvalidTau(f64),

    #[error("cat order m must be at least 2, got {0}")]
    InvalidCatOrder(u32),

    #[error(
        "mean spin vector is degenerate (|<J>| = {len:.3e}); the mean-spin frame is undefined"
    )]
    DegenerateFrame { len: f64 },

    #[error("variance {value:.3e} along {axis} is negative beyond rounding tolerance")]
    NegativeVariance { axis: &'static str, value: f64 },

    #[error("atom index {index} out of range for {n} atoms")]
    AtomIndexOutOfRange { index: usize, n: usize },

    #[error("{n} atoms exceeds the product-basis cap of {max}; use the Dicke-basis path instead")]
    ProductCapExceeded { n: usize, max: usize },

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),
}
