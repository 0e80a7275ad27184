//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("atom `{label}` has weight {weight}, expected a value in the open interval (0, 1)")]
    InvalidWeight { label: String, weight: f64 },

    #[error("duplicate atom label `{0}`")]
    DuplicateLabel(String),

    #[error("exact ground space supports at most {max} atoms, got {got}")]
    TooManyAtoms { max: usize, got: usize },

    #[error("box region is degenerate: lo {lo:?} must be strictly below hi {hi:?} in every axis")]
    DegenerateBox { lo: Vec<f64>, hi: Vec<f64> },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("window is not contained in the ground space")]
    WindowNotContained,

    #[error("window `{inner}` is not contained in window `{outer}`")]
    WindowNotNested { inner: String, outer: String },

    #[error("operation requires {required} mode but the ground space is {actual}")]
    ModeMismatch {
        required: &'static str,
        actual: &'static str,
    },

    #[error("operands live on different ground spaces")]
    GroundMismatch,

    #[error("configuration mask {mask:#b} exceeds ground set of {atoms} atoms")]
    MaskOutOfRange { mask: u32, atoms: usize },

    #[error("configuration points must be pairwise distinct")]
    DuplicatePoint,

    #[error("unknown atom label `{0}`")]
    UnknownLabel(String),

    #[error(
        "quadrature did not converge: achieved error estimate {achieved:.3e} above target {target:.3e}"
    )]
    QuadratureNotConverged { achieved: f64, target: f64 },

    #[error("untruncated character used in a context requiring finite support")]
    UntruncatedCharacter,

    #[error("unsupported kernel form for continuous-mode integration")]
    UnsupportedKernel,

    #[error("Gram matrix is not positive definite: minimum eigenvalue {min_eigenvalue:.6e}")]
    GramNotPositive { min_eigenvalue: f64 },

    #[error("operator bundle basis must be the full subset lattice for spectral recovery")]
    IncompleteBasis,

    #[error(
        "joint eigenvalue {value} is not within {tolerance:.1e} of {{0, 1}}; degeneracy resolution failed"
    )]
    EigenvalueNotBinary { value: f64, tolerance: f64 },

    #[error("failed to separate joint eigenvalues after {attempts} generic-generator attempts")]
    DegenerateSpectrum { attempts: usize },

    #[error("sample count must be at least 1")]
    EmptySample,

    #[error("malformed serialized data: {0}")]
    Malformed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
