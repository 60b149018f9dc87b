use num_complex::Complex64;
use thiserror::Error;

/// Errors produced by state construction, solving and evolution.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid symmetry parameters: {0}")]
    InvalidSymmetry(String),

    #[error("index {index} out of range for dimension {dimension}")]
    IndexOutOfRange { index: usize, dimension: usize },

    #[error("amplitude vector has length {got}, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },

    #[error("amplitude vector is identically zero")]
    ZeroState,

    #[error("amplitude at index {index} is not finite")]
    NonFiniteAmplitude { index: usize },

    #[error("{name} outside unit disk: modulus {modulus}")]
    UnitDiskViolation { name: &'static str, modulus: f64 },

    #[error("zero squeezing parameter: every star degenerates to the south pole")]
    ZeroSqueezing,

    #[error("{operation} requires {expected} symmetry, got {got}")]
    SymmetryMismatch {
        operation: &'static str,
        expected: &'static str,
        got: &'static str,
    },

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid evolution parameters: {0}")]
    InvalidEvolution(String),

    #[error(
        "root finder did not converge within {max_iter} iterations \
         (worst relative residual {worst_residual:e})"
    )]
    NoConvergence {
        max_iter: usize,
        worst_residual: f64,
        /// Best iterates at the point of failure, for diagnostics.
        roots: Vec<Complex64>,
        residuals: Vec<f64>,
    },

    #[error("solve failed at t = {t}: {source}")]
    AtTime {
        t: f64,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
