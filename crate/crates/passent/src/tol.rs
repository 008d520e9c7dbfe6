//! Numerical tolerances used across the crate.
//!
//! All thresholds live here so that every comparison in the library and the
//! test suite names its tolerance instead of using ad-hoc magic numbers.

/// Maximum allowed asymmetry `max|gamma - gamma^T|` of a covariance matrix.
pub const SYMMETRY: f64 = 1e-10;

/// Maximum allowed deviation of a transform from unitarity/orthogonality,
/// measured as `max|U^H U - I|` (or `max|K^T K - I|` for the real form).
pub const UNITARY: f64 = 1e-10;

/// Physicality slack: `gamma + i sigma >= -PSD` is accepted as positive
/// semidefinite.
pub const PSD: f64 = 1e-9;

/// Slack on eigenvalue comparisons against the vacuum threshold 1; also the
/// NPPT threshold (a partially transposed state counts as entangled when its
/// smallest symplectic eigenvalue is below `1 - EIGENVALUE`).
pub const EIGENVALUE: f64 = 1e-9;

/// Tolerance on determinant-based identities.
pub const DETERMINANT: f64 = 1e-8;

/// Agreement required between a closed-form optimum and the value achieved
/// by a constructed transform.
pub const OPTIMAL: f64 = 1e-6;

/// Agreement required between a closed-form optimum and the stochastic
/// search oracle.
pub const ORACLE: f64 = 1e-3;

/// Relative gap allowed inside a doubly-degenerate symplectic eigenvalue
/// pair before the pairing is rejected as inconsistent.
pub const SPECTRUM_PAIRING: f64 = 1e-7;

/// Below this planar component `hypot(j_x, j_y)` the phase angle of an
/// entangler plan is unconstrained and reported as zero.
pub const PLANAR: f64 = 1e-8;

/// Residual norm below which two complexified eigenvectors are treated as
/// spanning a single complex dimension during mode concentration.
pub const DEGENERATE_SPAN: f64 = 1e-8;

/// Agreement required between redundant representations of the same object
/// loaded from serialized input (e.g. a unitary and its stored real form).
pub const CROSS_CHECK: f64 = 1e-8;
