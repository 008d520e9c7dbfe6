//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building or analyzing Gaussian states.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix dimension {dim} is not a positive even number (need 2n x 2n)")]
    OddDimension { dim: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not symmetric: max|gamma - gamma^T| = {violation:e}")]
    Asymmetric { violation: f64 },

    #[error("matrix is not a physical covariance matrix: min eig(gamma + i sigma) = {min_eig:e}")]
    Unphysical { min_eig: f64 },

    #[error("matrix is not unitary: max|U^H U - I| = {deviation:e}")]
    NotUnitary { deviation: f64 },

    #[error("transform is not orthogonal-symplectic: deviation {deviation:e}")]
    NotOrthogonal { deviation: f64 },

    #[error("matrix is not positive definite: min eigenvalue = {min_eig:e}")]
    NotPositiveDefinite { min_eig: f64 },

    #[error("symplectic eigenvalues failed to pair up: relative gap {rel_gap:e}")]
    SpectrumPairing { rel_gap: f64 },

    #[error("invalid partition: {reason}")]
    InvalidPartition { reason: String },

    #[error("invalid parameter: {reason}")]
    InvalidParameter { reason: String },
}
