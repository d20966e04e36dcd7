use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension {dim} exceeds the bound {bound} for {what}")]
    DimensionTooLarge {
        what: &'static str,
        dim: usize,
        bound: usize,
    },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("alpha must be a finite nonzero real, got {0}")]
    InvalidAlpha(f64),

    #[error("site subset is empty")]
    EmptySubset,

    #[error("site index {index} out of range for ground space of size {dim}")]
    SiteOutOfRange { index: usize, dim: usize },

    #[error("multiplicity vector has total 0; nothing to expand")]
    EmptyExpansion,

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("I + alpha K is singular (|det| = {det_modulus:e})")]
    SingularOperator { det_modulus: f64 },

    #[error("z lies outside the convergence domain (spectral radius of alpha Z K = {spectral_radius})")]
    OutsideConvergenceDomain { spectral_radius: f64 },

    #[error("kernel is not hermitian")]
    NotHermitian,

    #[error("kernel is not real symmetric")]
    NotRealSymmetric,

    #[error("weight is not real (imaginary part {imag:e}); the kernel does not define a process")]
    NonRealWeight { imag: f64 },

    #[error("negative probability weight {value:e}; the kernel does not define a process")]
    NegativeWeight { value: f64 },

    #[error("captured mass {captured_mass} below target {mass_target} at total {max_total}")]
    TruncationFailure {
        captured_mass: f64,
        mass_target: f64,
        max_total: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
