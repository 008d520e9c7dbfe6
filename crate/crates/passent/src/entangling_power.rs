//! Entanglability criterion, attainable negativity, and optimal entangler
//! construction.
//!
//! The central facts implemented here, all phrased on the two smallest
//! eigenvalues `lambda1 <= lambda2` of the covariance matrix:
//!
//! * Some passive circuit maps the state to one with non-positive partial
//!   transpose iff `lambda1 * lambda2 < 1`.
//! * The largest logarithmic negativity reachable on any two-mode subsystem
//!   after any passive circuit is exactly
//!   `max(0, -log2(lambda1 * lambda2) / 2)` bits.
//! * The optimum on two modes is reached by a phase plate followed by a
//!   beam splitter, with angles read off from the complexified eigenvectors
//!   of the two smallest eigenvalues.
//! * For more than two modes, a preliminary passive "concentration" step
//!   moves those two eigenvectors into the first two modes, after which the
//!   two-mode construction applies verbatim.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::entanglement::{entanglement_report, EntanglementReport, ModePartition};
use crate::error::{Error, Result};
use crate::gaussian::{
    apply_passive, complexify, passive_from_unitary, squeezing_report, unitary_direct_sum,
    ComplexModeVector, CovarianceMatrix, PassiveTransform, C64,
};
use crate::tol;

/// Decision record for the passive-entanglability criterion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglingPowerVerdict {
    /// Smallest eigenvalue of the covariance matrix.
    pub lambda1: f64,
    /// Second smallest eigenvalue.
    pub lambda2: f64,
    /// Product `lambda1 * lambda2`; the criterion quantity.
    pub product: f64,
    /// Whether some passive circuit entangles the state:
    /// `product < 1 - tol::EIGENVALUE`.
    pub can_entangle: bool,
    /// Guaranteed full-state negativity `max(0, -log2(product)/2)` in bits
    /// (a lower bound; may be exceeded when several symplectic eigenvalues
    /// of the transposed result drop below one).
    pub lower_bound_bits: f64,
    /// The same value, as the exact maximum over passive circuits followed
    /// by reduction to any two-mode subsystem.
    pub attainable_two_mode_bits: f64,
}

/// The optimal two-mode entangling procedure: a phase plate on the first
/// mode followed by a beam splitter.
#[derive(Debug, Clone, PartialEq)]
pub struct EntanglerPlan {
    /// Phase angle, normalized into `[0, pi)`.
    pub alpha: f64,
    /// Mixing angle; the beam splitter runs at `gamma / 2`. May be negative
    /// after the normalization that keeps `alpha` in range (the pair
    /// `(alpha, gamma)` and `(alpha +- pi, -gamma)` describe the same
    /// circuit family).
    pub gamma: f64,
    /// Fixed ordering of the two elements: the phase acts first.
    pub phase_first: bool,
    /// The composite two-mode circuit realizing the plan.
    pub k: PassiveTransform,
    /// Negativity in bits the plan reaches across the 1|1 split:
    /// `max(0, -log2(lambda1 * lambda2) / 2)` of the input state.
    pub predicted_negativity_bits: f64,
    /// True when `lambda1 * lambda2 >= 1`: no passive circuit helps and the
    /// emitted circuit is the identity.
    pub nothing_to_gain: bool,
}

/// Result bundle of [`entangle_optimally_detailed`].
#[derive(Debug, Clone)]
pub struct OptimalEntanglement {
    /// Total n-mode passive circuit (concentration, embedded two-mode plan,
    /// and the partition-aligning permutation composed in that order).
    pub transform: PassiveTransform,
    /// The transformed state.
    pub state: CovarianceMatrix,
    /// Negativity report of the transformed state across the requested
    /// partition.
    pub report: EntanglementReport,
    /// The two-mode plan used on the concentrated modes.
    pub plan: EntanglerPlan,
}

/// Structural classification of a two-mode covariance matrix, used for
/// report annotations. All classes are handled by the one general
/// construction; the classifier exists so reports can name the shortcut a
/// reader would recognize.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoModeClass {
    /// Product of two identical single-mode states.
    IdenticalProduct,
    /// Product of an arbitrary mode with an isotropic (proportional to
    /// identity) mode.
    IsotropicPartnerProduct,
    /// Product of two arbitrary single-mode states.
    Product,
    /// Two-mode-squeezed normal form: equal isotropic blocks with opposite
    /// cross-correlations `diag(c, -c)`.
    TwoModeSqueezedForm,
    /// Normal form with equal mode blocks.
    SymmetricNormalForm,
    /// General normal form `a*1, b*1, diag(c, d)`.
    NormalForm,
    /// Anything else.
    General,
}

impl std::fmt::Display for TwoModeClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            TwoModeClass::IdenticalProduct => "product of identical modes",
            TwoModeClass::IsotropicPartnerProduct => "product with isotropic partner",
            TwoModeClass::Product => "product",
            TwoModeClass::TwoModeSqueezedForm => "two-mode squeezed form",
            TwoModeClass::SymmetricNormalForm => "symmetric normal form",
            TwoModeClass::NormalForm => "normal form",
            TwoModeClass::General => "general",
        };
        f.write_str(name)
    }
}

/// Decide whether any passive circuit can entangle the state. The verdict
/// depends only on the eigenvalue spectrum, not on the partition; the
/// partition argument is validated for consistency and retained by callers
/// for labeling.
pub fn verdict(gamma: &CovarianceMatrix, part: ModePartition) -> Result<EntanglingPowerVerdict> {
    if part.n() != gamma.n() {
        return Err(Error::InvalidPartition {
            reason: format!("partition {part} does not cover {} modes", gamma.n()),
        });
    }
    let sq = squeezing_report(gamma)?;
    let product = sq.lambda1 * sq.lambda2;
    let bound = (-0.5 * product.log2()).max(0.0);
    Ok(EntanglingPowerVerdict {
        lambda1: sq.lambda1,
        lambda2: sq.lambda2,
        product,
        can_entangle: product < 1.0 - tol::EIGENVALUE,
        lower_bound_bits: bound,
        attainable_two_mode_bits: bound,
    })
}

/// Maximum logarithmic negativity over all passive circuits followed by
/// reduction to any two-mode subsystem: `max(0, -log2(lambda1*lambda2)/2)`.
pub fn attainable_two_mode(gamma: &CovarianceMatrix) -> Result<f64> {
    if gamma.n() < 2 {
        return Err(Error::InvalidParameter {
            reason: format!("need at least two modes, got {}", gamma.n()),
        });
    }
    let sq = squeezing_report(gamma)?;
    Ok((-0.5 * (sq.lambda1 * sq.lambda2).log2()).max(0.0))
}

/// The three imaginary Pauli overlaps `[j_z, j_y, j_x]` with
/// `j_m = Im<psi2|sigma_m|psi1>`, evaluated on two-component complexified
/// eigenvectors. When `Re<psi2|psi1> = 0` (automatic for complexifications
/// of orthogonal real vectors) this triple is a unit vector.
pub fn pauli_imag_overlaps(
    psi1: &ComplexModeVector,
    psi2: &ComplexModeVector,
) -> Result<[f64; 3]> {
    if psi1.n() != 2 || psi2.n() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: psi1.n().max(psi2.n()) });
    }
    let (a, b) = (psi1.entries[0], psi1.entries[1]);
    let (c, d) = (psi2.entries[0], psi2.entries[1]);
    let i = C64::i();
    let jz = (c.conj() * a - d.conj() * b).im;
    let jy = (c.conj() * (-i * b) + d.conj() * (i * a)).im;
    let jx = (c.conj() * b + d.conj() * a).im;
    Ok([jz, jy, jx])
}

/// Solve `cos g = j_z`, `sin a sin g = j_y`, `cos a sin g = j_x` for the
/// angle pair `(alpha, gamma)`, with `alpha` normalized into `[0, pi)` by
/// the gauge flip `(alpha, gamma) ~ (alpha - pi, -gamma)`. When the planar
/// component `hypot(j_x, j_y)` vanishes, `alpha` is unconstrained and
/// reported as zero.
pub fn entangler_angles(j: [f64; 3]) -> (f64, f64) {
    let [jz, jy, jx] = j;
    let planar = jx.hypot(jy);
    let mut gamma = planar.atan2(jz);
    if planar < tol::PLANAR {
        return (0.0, gamma);
    }
    let mut alpha = jy.atan2(jx);
    if alpha < 0.0 {
        alpha += PI;
        gamma = -gamma;
    }
    if alpha >= PI {
        alpha -= PI;
        gamma = -gamma;
    }
    (alpha, gamma)
}

/// The two-mode unitary of the plan: phase plate `L(alpha) =
/// diag(e^{-i alpha}, 1)` times beam splitter `B(gamma/2)` with
/// `B(t) = [[cos t, -sin t], [sin t, cos t]]`.
pub fn phase_beamsplitter_unitary(alpha: f64, gamma: f64) -> DMatrix<C64> {
    let phase = C64::new(0.0, -alpha).exp();
    let l = DMatrix::from_diagonal(&DVector::from_vec(vec![phase, C64::new(1.0, 0.0)]));
    let t = 0.5 * gamma;
    let (s, c) = t.sin_cos();
    let b = DMatrix::from_row_slice(
        2,
        2,
        &[C64::new(c, 0.0), C64::new(-s, 0.0), C64::new(s, 0.0), C64::new(c, 0.0)],
    );
    l * b
}

/// The Hermitian verification matrix `F(gamma, alpha) = cos(g) sigma_z +
/// cos(a) sin(g) sigma_x + sin(a) sin(g) sigma_y`; a correctly solved plan
/// satisfies `Im<psi2|F|psi1> = 1`.
pub fn entangler_f_matrix(alpha: f64, gamma: f64) -> DMatrix<C64> {
    let (sg, cg) = gamma.sin_cos();
    let off = C64::new(0.0, -alpha).exp() * sg;
    DMatrix::from_row_slice(
        2,
        2,
        &[C64::new(cg, 0.0), off, off.conj(), C64::new(-cg, 0.0)],
    )
}

fn trivial_plan() -> EntanglerPlan {
    EntanglerPlan {
        alpha: 0.0,
        gamma: 0.0,
        phase_first: true,
        k: PassiveTransform::identity(2),
        predicted_negativity_bits: 0.0,
        nothing_to_gain: true,
    }
}

/// Construct the optimal phase-plus-beam-splitter circuit for a two-mode
/// state. Applying `plan.k` and reading the negativity across the 1|1
/// split yields `max(0, -log2(lambda1*lambda2)/2)` bits.
///
/// When `lambda1 * lambda2 >= 1` nothing can be gained; the returned plan
/// carries the identity circuit and is flagged accordingly.
pub fn optimal_two_mode_plan(gamma: &CovarianceMatrix) -> Result<EntanglerPlan> {
    if gamma.n() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: gamma.n() });
    }
    let sq = squeezing_report(gamma)?;
    let product = sq.lambda1 * sq.lambda2;
    if product >= 1.0 - tol::EIGENVALUE {
        return Ok(trivial_plan());
    }
    let psi1 = complexify(&sq.eigvec1)?;
    let psi2 = complexify(&sq.eigvec2)?;
    let j = pauli_imag_overlaps(&psi1, &psi2)?;
    let (alpha, gamma_angle) = entangler_angles(j);
    // The circuit acting on the state is the conjugate of the mode-space
    // unitary V = L(alpha) B(gamma/2) that rotates the eigenvector pair.
    let v = phase_beamsplitter_unitary(alpha, gamma_angle);
    let k = passive_from_unitary(v.map(|z| z.conj()))?;
    Ok(EntanglerPlan {
        alpha,
        gamma: gamma_angle,
        phase_first: true,
        k,
        predicted_negativity_bits: -0.5 * product.log2(),
        nothing_to_gain: false,
    })
}

/// Passive circuit concentrating the two smallest eigenvalues into the
/// first two modes: returns `(S, gamma')` with `gamma' = S^T gamma S` such
/// that the leading two-mode submatrix of `gamma'` has the same two
/// smallest eigenvalues as `gamma`.
///
/// The construction complexifies the two eigenvectors, orthonormalizes
/// their span, completes it greedily with standard basis vectors, and uses
/// the conjugate of that basis matrix as the mode unitary. When the two
/// complexified eigenvectors span a single complex dimension (e.g. the
/// quadratures of one squeezed mode), one mode suffices and the completion
/// is arbitrary.
pub fn concentrate_modes(
    gamma: &CovarianceMatrix,
) -> Result<(PassiveTransform, CovarianceMatrix)> {
    let n = gamma.n();
    if n < 2 {
        return Err(Error::InvalidParameter {
            reason: format!("need at least two modes, got {n}"),
        });
    }
    let sq = squeezing_report(gamma)?;
    let psi1 = complexify(&sq.eigvec1)?.entries;
    let psi2 = complexify(&sq.eigvec2)?.entries;

    let mut columns: Vec<DVector<C64>> = Vec::with_capacity(n);
    columns.push(&psi1 / C64::new(psi1.norm(), 0.0));
    let mut residual = psi2.clone();
    let overlap = columns[0].dotc(&residual);
    residual -= &columns[0] * overlap;
    if residual.norm() >= tol::DEGENERATE_SPAN {
        let norm = residual.norm();
        columns.push(residual / C64::new(norm, 0.0));
    }

    // Complete to a unitary basis: repeatedly take the standard basis
    // vector with the largest residual against the current span, with a
    // second orthogonalization pass for numerical hygiene.
    while columns.len() < n {
        let mut best: Option<DVector<C64>> = None;
        let mut best_norm = -1.0;
        for k in 0..n {
            let mut v = DVector::<C64>::zeros(n);
            v[k] = C64::new(1.0, 0.0);
            for c in &columns {
                let ov = c.dotc(&v);
                v -= c * ov;
            }
            let norm = v.norm();
            if norm > best_norm {
                best_norm = norm;
                best = Some(v);
            }
        }
        let mut v = best.expect("mode count is positive");
        for c in &columns {
            let ov = c.dotc(&v);
            v -= c * ov;
        }
        let norm = v.norm();
        columns.push(v / C64::new(norm, 0.0));
    }

    let basis = DMatrix::from_columns(&columns);
    let s = passive_from_unitary(basis.map(|z| z.conj()))?;
    let concentrated = apply_passive(gamma, &s)?;
    Ok((s, concentrated))
}

/// Append one vacuum mode: `gamma -> gamma (+) 1`, re-interleaved to keep
/// qqpp ordering. The ancilla contributes two unit eigenvalues, so a
/// squeezed state (`lambda1 < 1`) always becomes entanglable this way.
pub fn add_vacuum_ancilla(gamma: &CovarianceMatrix) -> CovarianceMatrix {
    let ancilla = CovarianceMatrix::new(DMatrix::identity(2, 2))
        .expect("2x2 identity is a well-formed covariance matrix");
    gamma.direct_sum(&ancilla)
}

/// Classify the structure of a two-mode covariance matrix for reporting.
pub fn classify_two_mode(gamma: &CovarianceMatrix) -> Result<TwoModeClass> {
    if gamma.n() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: gamma.n() });
    }
    let g = gamma.data();
    let eps = tol::EIGENVALUE;
    // Per-mode blocks in (q, p) ordering and the cross block between them.
    let a = [g[(0, 0)], g[(0, 2)], g[(2, 0)], g[(2, 2)]];
    let b = [g[(1, 1)], g[(1, 3)], g[(3, 1)], g[(3, 3)]];
    let c = [g[(0, 1)], g[(0, 3)], g[(2, 1)], g[(2, 3)]];
    let isotropic = |m: &[f64; 4]| m[1].abs() < eps && m[2].abs() < eps && (m[0] - m[3]).abs() < eps;
    if c.iter().all(|x| x.abs() < eps) {
        let identical = a.iter().zip(&b).all(|(x, y)| (x - y).abs() < eps);
        if identical {
            Ok(TwoModeClass::IdenticalProduct)
        } else if isotropic(&b) || isotropic(&a) {
            Ok(TwoModeClass::IsotropicPartnerProduct)
        } else {
            Ok(TwoModeClass::Product)
        }
    } else if isotropic(&a) && isotropic(&b) && c[1].abs() < eps && c[2].abs() < eps {
        if (a[0] - b[0]).abs() < eps {
            if (c[0] + c[3]).abs() < eps {
                Ok(TwoModeClass::TwoModeSqueezedForm)
            } else {
                Ok(TwoModeClass::SymmetricNormalForm)
            }
        } else {
            Ok(TwoModeClass::NormalForm)
        }
    } else {
        Ok(TwoModeClass::General)
    }
}

/// Full pipeline with diagnostics: concentrate the two smallest eigenvalues
/// into two modes, run the optimal two-mode plan there, embed it, and
/// permute the two concentrated modes onto opposite sides of the requested
/// partition (mode 0 into party A, the other into party B's first slot).
pub fn entangle_optimally_detailed(
    gamma: &CovarianceMatrix,
    part: ModePartition,
) -> Result<OptimalEntanglement> {
    let n = gamma.n();
    let power = verdict(gamma, part)?;
    if !power.can_entangle {
        let transform = PassiveTransform::identity(n);
        let report = entanglement_report(gamma, part)?;
        return Ok(OptimalEntanglement {
            transform,
            state: gamma.clone(),
            report,
            plan: trivial_plan(),
        });
    }

    let (s, concentrated) = if n == 2 {
        (PassiveTransform::identity(2), gamma.clone())
    } else {
        concentrate_modes(gamma)?
    };
    let plan = optimal_two_mode_plan(&concentrated.mode_submatrix(&[0, 1])?)?;
    let embedded = if n == 2 {
        plan.k.clone()
    } else {
        passive_from_unitary(unitary_direct_sum(
            plan.k.unitary(),
            &DMatrix::identity(n - 2, n - 2),
        ))?
    };
    // New mode j carries old mode order[j]: keep the first concentrated
    // mode at slot 0 (party A) and send the second to the first slot of
    // party B; bystanders fill the rest in order.
    let mut rest = 2..n;
    let mut order = Vec::with_capacity(n);
    order.push(0);
    for slot in 1..n {
        if slot == part.n_a() {
            order.push(1);
        } else {
            order.push(rest.next().expect("exactly n-2 bystander modes"));
        }
    }
    let perm = PassiveTransform::from_mode_permutation(&order)?;
    let transform = s.compose(&embedded)?.compose(&perm)?;
    let state = apply_passive(gamma, &transform)?;
    let report = entanglement_report(&state, part)?;
    Ok(OptimalEntanglement { transform, state, report, plan })
}

/// Entangle the state as strongly as a passive circuit allows across the
/// given partition; see [`entangle_optimally_detailed`] for the pieces.
pub fn entangle_optimally(
    gamma: &CovarianceMatrix,
    part: ModePartition,
) -> Result<(PassiveTransform, CovarianceMatrix, EntanglementReport)> {
    let out = entangle_optimally_detailed(gamma, part)?;
    Ok((out.transform, out.state, out.report))
}
