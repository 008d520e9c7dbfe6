#![forbid(unsafe_code)]

//! Decide whether a multi-mode Gaussian state can be entangled using only
//! passive optical elements (beam splitters and phase plates), compute the
//! maximal attainable entanglement, and construct the optical procedure that
//! attains it.
//!
//! A Gaussian state of `n` bosonic modes is represented by its real symmetric
//! `2n x 2n` covariance matrix in qqpp ordering, i.e. with the quadrature
//! vector arranged as `R = (Q_1, ..., Q_n, P_1, ..., P_n)` and hbar = 1, so
//! the vacuum state is the identity matrix. Passive optical circuits act as
//! special orthogonal-symplectic congruences `gamma -> K^T gamma K`, in
//! one-to-one correspondence with `n x n` complex unitaries.
//!
//! The central facts implemented here:
//!
//! * A state can be made entangled (across some bipartition) by a passive
//!   circuit if and only if the two smallest eigenvalues of its covariance
//!   matrix satisfy `lambda1 * lambda2 < 1`.
//! * Restricted to any two-mode subsystem, the largest logarithmic negativity
//!   reachable by passive circuits is exactly
//!   `max(0, -log2(lambda1 * lambda2) / 2)` bits.
//! * The optimum is attained by a phase shift on one mode followed by a beam
//!   splitter, with angles read off from overlaps of the complexified
//!   eigenvectors of the two smallest eigenvalues.
//!
//! The [`oracle`] module provides an independent randomized search over the
//! unitary group used to cross-check those closed forms.

pub mod entanglement;
pub mod entangling_power;
pub mod error;
pub mod gaussian;
pub mod oracle;
pub mod tol;

pub use entanglement::{
    entanglement_report, entanglement_report_for_modes, partial_transpose, separability_label,
    symplectic_spectrum, EntanglementReport, ModePartition, SymplecticSpectrum,
};
pub use entangling_power::{
    add_vacuum_ancilla, attainable_two_mode, classify_two_mode, concentrate_modes,
    entangle_optimally, entangle_optimally_detailed, entangler_angles, entangler_f_matrix,
    optimal_two_mode_plan, pauli_imag_overlaps, phase_beamsplitter_unitary, verdict,
    EntanglerPlan, EntanglingPowerVerdict, OptimalEntanglement, TwoModeClass,
};
pub use error::{Error, Result};
pub use gaussian::{
    apply_passive, complexify, make_state, passive_from_unitary, realify, squeezing_report,
    unitary_direct_sum, ComplexModeVector, CovarianceMatrix, PassiveTransform, SqueezingReport,
    StateSpec, SymplecticForm, ValidityVerdict, C64,
};
pub use oracle::{
    haar_unitary, maximize_negativity, maximize_subsystem_negativity, random_passive,
    verify_criterion, SearchConfig, SearchResult, VerdictCheck,
};
