//! Covariance matrices, passive transforms, and state factories.
//!
//! Conventions used throughout: `n` modes are described by a real symmetric
//! `2n x 2n` covariance matrix in qqpp ordering, with quadrature vector
//! `R = (Q_1..Q_n, P_1..P_n)`, hbar = 1 and the vacuum equal to the identity.
//! A matrix is a physical covariance matrix iff `gamma + i sigma >= 0` for
//! the symplectic form `sigma = [[0, I], [-I, 0]]`.
//!
//! A passive circuit on `n` modes is described by an `n x n` complex unitary
//! `U = X + iY`; it acts on covariance matrices as `gamma -> K^T gamma K`
//! with the real form `K = [[X, Y], [-Y, X]]`, which is both orthogonal and
//! symplectic. The map `U -> K` is a group homomorphism, pinned down by the
//! identity `complexify(K v) = conj(U) * complexify(v)`.

use nalgebra::{Complex, DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::tol;

/// Complex scalar used for mode-space unitaries and complexified vectors.
pub type C64 = Complex<f64>;

/// Real symmetric `2n x 2n` second-moment matrix of an `n`-mode Gaussian
/// state, in qqpp ordering.
///
/// Construction only enforces structure (square, even dimension, finite
/// entries); physical validity is reported by [`CovarianceMatrix::validate`]
/// so that error paths can be exercised with deliberately invalid matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    n: usize,
    data: DMatrix<f64>,
}

/// Outcome of checking a covariance matrix for physical validity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ValidityVerdict {
    /// Symmetric and `gamma + i sigma >= 0` within tolerance; carries the
    /// minimum eigenvalue of the Hermitian matrix `gamma + i sigma`.
    Valid { min_uncertainty_eig: f64 },
    /// Symmetry violated; carries `max|gamma - gamma^T|`.
    Asymmetric { violation: f64 },
    /// Symmetric but violating the uncertainty relation; carries the
    /// offending minimum eigenvalue of `gamma + i sigma`.
    Unphysical { min_uncertainty_eig: f64 },
}

impl ValidityVerdict {
    /// True when the matrix is a physical covariance matrix.
    pub fn is_valid(&self) -> bool {
        matches!(self, ValidityVerdict::Valid { .. })
    }

    /// Magnitude of the worst violation (zero when valid).
    pub fn violation(&self) -> f64 {
        match *self {
            ValidityVerdict::Valid { .. } => 0.0,
            ValidityVerdict::Asymmetric { violation } => violation,
            ValidityVerdict::Unphysical { min_uncertainty_eig } => min_uncertainty_eig.abs(),
        }
    }

    /// Convert into a `Result`, keeping the minimum uncertainty eigenvalue.
    pub fn into_result(self) -> Result<f64> {
        match self {
            ValidityVerdict::Valid { min_uncertainty_eig } => Ok(min_uncertainty_eig),
            ValidityVerdict::Asymmetric { violation } => Err(Error::Asymmetric { violation }),
            ValidityVerdict::Unphysical { min_uncertainty_eig } => {
                Err(Error::Unphysical { min_eig: min_uncertainty_eig })
            }
        }
    }
}

impl CovarianceMatrix {
    /// Wrap a `2n x 2n` real matrix. Rejects non-square or odd-dimensional
    /// matrices and non-finite entries; does not check physicality.
    pub fn new(data: DMatrix<f64>) -> Result<Self> {
        if data.nrows() != data.ncols() {
            return Err(Error::NotSquare { rows: data.nrows(), cols: data.ncols() });
        }
        let dim = data.nrows();
        if dim == 0 || dim % 2 != 0 {
            return Err(Error::OddDimension { dim });
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter { reason: "non-finite matrix entry".into() });
        }
        Ok(Self { n: dim / 2, data })
    }

    /// Number of modes.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Matrix dimension `2n`.
    pub fn dim(&self) -> usize {
        2 * self.n
    }

    /// Underlying matrix.
    pub fn data(&self) -> &DMatrix<f64> {
        &self.data
    }

    /// Consume and return the underlying matrix.
    pub fn into_data(self) -> DMatrix<f64> {
        self.data
    }

    /// Check symmetry and the uncertainty relation `gamma + i sigma >= 0`.
    pub fn validate(&self) -> ValidityVerdict {
        let violation = max_abs_diff(&self.data, &self.data.transpose());
        if violation > tol::SYMMETRY {
            return ValidityVerdict::Asymmetric { violation };
        }
        let sigma = SymplecticForm::new(self.n).matrix();
        let herm = DMatrix::from_fn(self.dim(), self.dim(), |i, j| {
            C64::new(self.data[(i, j)], sigma[(i, j)])
        });
        let eigs = SymmetricEigen::new(herm).eigenvalues;
        let min_uncertainty_eig = eigs.iter().copied().fold(f64::INFINITY, f64::min);
        if min_uncertainty_eig < -tol::PSD {
            ValidityVerdict::Unphysical { min_uncertainty_eig }
        } else {
            ValidityVerdict::Valid { min_uncertainty_eig }
        }
    }

    /// Restriction to a subset of modes (tracing out the rest), preserving
    /// qqpp ordering among the kept modes. Mode indices are zero-based and
    /// must be distinct.
    pub fn mode_submatrix(&self, modes: &[usize]) -> Result<CovarianceMatrix> {
        if modes.is_empty() {
            return Err(Error::InvalidParameter { reason: "empty mode selection".into() });
        }
        let mut seen = vec![false; self.n];
        for &m in modes {
            if m >= self.n {
                return Err(Error::InvalidParameter {
                    reason: format!("mode index {m} out of range for {} modes", self.n),
                });
            }
            if seen[m] {
                return Err(Error::InvalidParameter {
                    reason: format!("duplicate mode index {m}"),
                });
            }
            seen[m] = true;
        }
        let m = modes.len();
        let idx = |i: usize| if i < m { modes[i] } else { self.n + modes[i - m] };
        let data = DMatrix::from_fn(2 * m, 2 * m, |i, j| self.data[(idx(i), idx(j))]);
        CovarianceMatrix::new(data)
    }

    /// Direct sum of two states, re-interleaved so the result stays in qqpp
    /// ordering (the other state's modes are appended after this one's).
    pub fn direct_sum(&self, other: &CovarianceMatrix) -> CovarianceMatrix {
        let (na, nb) = (self.n, other.n);
        let n = na + nb;
        let map_a = |i: usize| if i < na { i } else { n + (i - na) };
        let map_b = |i: usize| if i < nb { na + i } else { n + na + (i - nb) };
        let mut data = DMatrix::zeros(2 * n, 2 * n);
        for i in 0..2 * na {
            for j in 0..2 * na {
                data[(map_a(i), map_a(j))] = self.data[(i, j)];
            }
        }
        for i in 0..2 * nb {
            for j in 0..2 * nb {
                data[(map_b(i), map_b(j))] = other.data[(i, j)];
            }
        }
        CovarianceMatrix { n, data }
    }
}

/// The canonical antisymmetric form `sigma = [[0, I], [-I, 0]]` encoding the
/// commutation relations in qqpp ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymplecticForm {
    n: usize,
}

impl SymplecticForm {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dense `2n x 2n` matrix of the form.
    pub fn matrix(&self) -> DMatrix<f64> {
        let n = self.n;
        DMatrix::from_fn(2 * n, 2 * n, |i, j| {
            if i < n && j == i + n {
                1.0
            } else if i >= n && j == i - n {
                -1.0
            } else {
                0.0
            }
        })
    }
}

/// A passive optical circuit: an `n x n` complex unitary together with its
/// real orthogonal-symplectic form acting on covariance matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct PassiveTransform {
    n: usize,
    unitary: DMatrix<C64>,
    real_form: DMatrix<f64>,
}

impl PassiveTransform {
    /// The do-nothing circuit.
    pub fn identity(n: usize) -> Self {
        Self::new_unchecked(DMatrix::identity(n, n))
    }

    /// Build from a unitary, checking unitarity within [`tol::UNITARY`].
    pub fn from_unitary(unitary: DMatrix<C64>) -> Result<Self> {
        if unitary.nrows() != unitary.ncols() {
            return Err(Error::NotSquare { rows: unitary.nrows(), cols: unitary.ncols() });
        }
        if unitary.nrows() == 0 {
            return Err(Error::InvalidParameter { reason: "empty unitary".into() });
        }
        let n = unitary.nrows();
        let gram = unitary.adjoint() * &unitary;
        let deviation = (gram - DMatrix::<C64>::identity(n, n))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if !deviation.is_finite() || deviation > tol::UNITARY {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self::new_unchecked(unitary))
    }

    /// Rebuild from a stored unitary plus its redundant real form,
    /// cross-checking the two against each other.
    pub fn from_parts(unitary: DMatrix<C64>, real_form: DMatrix<f64>) -> Result<Self> {
        let built = Self::from_unitary(unitary)?;
        if real_form.nrows() != built.real_form.nrows()
            || real_form.ncols() != built.real_form.ncols()
        {
            return Err(Error::DimensionMismatch {
                expected: built.real_form.nrows(),
                got: real_form.nrows(),
            });
        }
        let deviation = max_abs_diff(&built.real_form, &real_form);
        if deviation > tol::CROSS_CHECK {
            return Err(Error::NotOrthogonal { deviation });
        }
        Ok(built)
    }

    /// Circuit that relabels modes: new mode `j` carries old mode
    /// `order[j]`. `order` must be a permutation of `0..n`.
    pub fn from_mode_permutation(order: &[usize]) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &o in order {
            if o >= n || seen[o] {
                return Err(Error::InvalidParameter {
                    reason: format!("{order:?} is not a permutation of 0..{n}"),
                });
            }
            seen[o] = true;
        }
        let mut u = DMatrix::<C64>::zeros(n, n);
        for (j, &o) in order.iter().enumerate() {
            u[(o, j)] = C64::new(1.0, 0.0);
        }
        Ok(Self::new_unchecked(u))
    }

    fn new_unchecked(unitary: DMatrix<C64>) -> Self {
        let n = unitary.nrows();
        let mut real_form = DMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                let z = unitary[(i, j)];
                real_form[(i, j)] = z.re;
                real_form[(i, j + n)] = z.im;
                real_form[(i + n, j)] = -z.im;
                real_form[(i + n, j + n)] = z.re;
            }
        }
        Self { n, unitary, real_form }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Generating `n x n` unitary `U = X + iY`.
    pub fn unitary(&self) -> &DMatrix<C64> {
        &self.unitary
    }

    /// Real `2n x 2n` form `K = [[X, Y], [-Y, X]]`.
    pub fn real_form(&self) -> &DMatrix<f64> {
        &self.real_form
    }

    /// Sequential composition: apply `self` first, then `next`.
    pub fn compose(&self, next: &PassiveTransform) -> Result<PassiveTransform> {
        if self.n != next.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: next.n });
        }
        Ok(Self::new_unchecked(&self.unitary * &next.unitary))
    }

    /// Inverse circuit.
    pub fn inverse(&self) -> PassiveTransform {
        Self::new_unchecked(self.unitary.adjoint())
    }

    /// Worst deviation of the real form from being orthogonal and
    /// symplectic (both should hold simultaneously for a passive circuit).
    pub fn orthosymplectic_deviation(&self) -> f64 {
        let k = &self.real_form;
        let dim = 2 * self.n;
        let orth = max_abs_diff(&(k.transpose() * k), &DMatrix::identity(dim, dim));
        let sigma = SymplecticForm::new(self.n).matrix();
        let symp = max_abs_diff(&(k.transpose() * &sigma * k), &sigma);
        orth.max(symp)
    }
}

/// Conjugate a state by a passive circuit: `gamma -> K^T gamma K`.
///
/// The eigenvalue spectrum of the state is preserved (orthogonal
/// conjugation) and validity is preserved (symplectic conjugation).
pub fn apply_passive(gamma: &CovarianceMatrix, k: &PassiveTransform) -> Result<CovarianceMatrix> {
    if gamma.n() != k.n() {
        return Err(Error::DimensionMismatch { expected: gamma.n(), got: k.n() });
    }
    let deviation = k.orthosymplectic_deviation();
    if deviation > tol::UNITARY {
        return Err(Error::NotOrthogonal { deviation });
    }
    let kr = k.real_form();
    let raw = kr.transpose() * gamma.data() * kr;
    // The congruence of a symmetric matrix is symmetric; cancel the last
    // few ulps of rounding so downstream symmetry checks stay clean.
    let sym = DMatrix::from_fn(raw.nrows(), raw.ncols(), |i, j| 0.5 * (raw[(i, j)] + raw[(j, i)]));
    CovarianceMatrix::new(sym)
}

/// Build the real orthogonal-symplectic form of a unitary mode transform.
///
/// This is the canonical constructor named in the module contract; it is a
/// thin alias for [`PassiveTransform::from_unitary`].
pub fn passive_from_unitary(unitary: DMatrix<C64>) -> Result<PassiveTransform> {
    PassiveTransform::from_unitary(unitary)
}

/// Ordered eigenvalue spectrum of a covariance matrix with the two smallest
/// eigenvalues and their eigenvectors singled out.
#[derive(Debug, Clone)]
pub struct SqueezingReport {
    /// All `2n` eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    /// Smallest eigenvalue.
    pub lambda1: f64,
    /// Second smallest eigenvalue.
    pub lambda2: f64,
    /// Unit eigenvector for `lambda1`.
    pub eigvec1: DVector<f64>,
    /// Unit eigenvector for `lambda2`, orthogonal to `eigvec1` (orthogonality
    /// is re-enforced inside degenerate eigenspaces).
    pub eigvec2: DVector<f64>,
    /// Whether some quadrature direction dips below vacuum noise:
    /// `lambda1 < 1 - tol::EIGENVALUE`.
    pub is_squeezed: bool,
}

/// Diagnose squeezing: eigen-decompose the covariance matrix and report the
/// two smallest eigenvalues with their eigenvectors.
pub fn squeezing_report(gamma: &CovarianceMatrix) -> Result<SqueezingReport> {
    gamma.validate().into_result()?;
    let (eigenvalues, eigenvectors) = symmetric_eigen_ascending(gamma.data());
    let lambda1 = eigenvalues[0];
    let lambda2 = eigenvalues[1];
    let eigvec1 = eigenvectors.column(0).into_owned();
    let mut eigvec2 = eigenvectors.column(1).into_owned();
    // Inside a degenerate eigenspace the solver's columns may lose strict
    // orthogonality at roundoff level; project and renormalize.
    let overlap = eigvec1.dot(&eigvec2);
    eigvec2 -= &eigvec1 * overlap;
    eigvec2 /= eigvec2.norm();
    Ok(SqueezingReport {
        eigenvalues: eigenvalues.iter().copied().collect(),
        lambda1,
        lambda2,
        eigvec1,
        eigvec2,
        is_squeezed: lambda1 < 1.0 - tol::EIGENVALUE,
    })
}

/// A real `2n`-vector folded into mode space: component `k` is
/// `v_k + i v_{n+k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexModeVector {
    pub entries: DVector<C64>,
}

impl ComplexModeVector {
    pub fn n(&self) -> usize {
        self.entries.len()
    }
}

/// Fold a real `2n`-vector `(q, p)` into the complex `n`-vector `q + i p`.
/// Preserves norms: `||psi|| = ||v||`.
pub fn complexify(v: &DVector<f64>) -> Result<ComplexModeVector> {
    let dim = v.len();
    if dim == 0 || dim % 2 != 0 {
        return Err(Error::OddDimension { dim });
    }
    let n = dim / 2;
    let entries = DVector::from_fn(n, |k, _| C64::new(v[k], v[n + k]));
    Ok(ComplexModeVector { entries })
}

/// Unfold a complex mode vector back into its real `2n`-vector. Exact
/// inverse of [`complexify`] (bit for bit).
pub fn realify(psi: &ComplexModeVector) -> DVector<f64> {
    let n = psi.n();
    DVector::from_fn(2 * n, |i, _| {
        if i < n {
            psi.entries[i].re
        } else {
            psi.entries[i - n].im
        }
    })
}

/// Block direct sum of two mode-space unitaries.
pub fn unitary_direct_sum(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    let (na, nb) = (a.nrows(), b.nrows());
    let mut out = DMatrix::zeros(na + nb, na + nb);
    out.view_mut((0, 0), (na, na)).copy_from(a);
    out.view_mut((na, na), (nb, nb)).copy_from(b);
    out
}

/// Descriptions accepted by the state factory [`make_state`].
#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    /// `n` empty modes: the identity matrix.
    Vacuum { modes: usize },
    /// One isotropic thermal/coherent-noise mode `b * I`, `b >= 1`.
    Thermal { b: f64 },
    /// One squeezed vacuum mode with quadrature variances `e^{-2r}`,
    /// `e^{+2r}` along an axis rotated by `phase`.
    Squeezed { r: f64, phase: f64 },
    /// Two-mode normal form with mode blocks `a*I`, `b*I` and cross block
    /// `diag(c, d)`.
    Simon { a: f64, b: f64, c: f64, d: f64 },
    /// Two-mode squeezed vacuum with squeezing parameter `r`.
    TwoModeSqueezed { r: f64 },
}

/// Build one of the named reference states.
pub fn make_state(spec: &StateSpec) -> Result<CovarianceMatrix> {
    let finite = |x: f64, what: &str| -> Result<()> {
        if x.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidParameter { reason: format!("{what} must be finite, got {x}") })
        }
    };
    match *spec {
        StateSpec::Vacuum { modes } => vacuum(modes),
        StateSpec::Thermal { b } => thermal(b),
        StateSpec::Squeezed { r, phase } => {
            finite(r, "squeezing parameter r")?;
            finite(phase, "phase")?;
            single_mode_squeezed(r, phase)
        }
        StateSpec::Simon { a, b, c, d } => {
            for (x, what) in [(a, "a"), (b, "b"), (c, "c"), (d, "d")] {
                finite(x, what)?;
            }
            simon_form(a, b, c, d)
        }
        StateSpec::TwoModeSqueezed { r } => {
            finite(r, "squeezing parameter r")?;
            two_mode_squeezed(r)
        }
    }
}

/// `n` empty modes; the covariance matrix is the identity.
pub fn vacuum(n: usize) -> Result<CovarianceMatrix> {
    if n == 0 {
        return Err(Error::InvalidParameter { reason: "need at least one mode".into() });
    }
    CovarianceMatrix::new(DMatrix::identity(2 * n, 2 * n))
}

/// One isotropic noisy mode `b * I`; `b = 1` is the vacuum (or any coherent
/// state), `b > 1` is thermal.
pub fn thermal(b: f64) -> Result<CovarianceMatrix> {
    if !b.is_finite() || b < 1.0 {
        return Err(Error::InvalidParameter {
            reason: format!("thermal parameter must satisfy b >= 1, got {b}"),
        });
    }
    CovarianceMatrix::new(DMatrix::identity(2, 2) * b)
}

/// Single squeezed vacuum mode: variances `e^{-2r}` and `e^{+2r}` along an
/// axis rotated by `phase` (at `phase = 0` the Q quadrature is squeezed).
pub fn single_mode_squeezed(r: f64, phase: f64) -> Result<CovarianceMatrix> {
    let (s, c) = phase.sin_cos();
    let rot = DMatrix::from_row_slice(2, 2, &[c, -s, s, c]);
    let diag = DMatrix::from_diagonal(&DVector::from_vec(vec![(-2.0 * r).exp(), (2.0 * r).exp()]));
    CovarianceMatrix::new(&rot * diag * rot.transpose())
}

/// Two-mode normal form: mode blocks `a*I` and `b*I` with cross-correlation
/// block `diag(c, d)`. In qqpp ordering this is block-diagonal with a
/// Q block `[[a, c], [c, b]]` and a P block `[[a, d], [d, b]]`.
///
/// The parameters are validated post-hoc: combinations violating the
/// uncertainty relation are rejected.
pub fn simon_form(a: f64, b: f64, c: f64, d: f64) -> Result<CovarianceMatrix> {
    let data = DMatrix::from_row_slice(
        4,
        4,
        &[
            a, c, 0.0, 0.0, //
            c, b, 0.0, 0.0, //
            0.0, 0.0, a, d, //
            0.0, 0.0, d, b,
        ],
    );
    let gamma = CovarianceMatrix::new(data)?;
    gamma.validate().into_result()?;
    Ok(gamma)
}

/// Two-mode squeezed vacuum with parameter `r`: mode blocks `cosh(2r) * I`
/// and cross block `diag(-sinh 2r, +sinh 2r)`. Pure for every `r`.
pub fn two_mode_squeezed(r: f64) -> Result<CovarianceMatrix> {
    let ch = (2.0 * r).cosh();
    let sh = (2.0 * r).sinh();
    simon_form(ch, ch, -sh, sh)
}

/// Direct product of several states (appended in order, qqpp preserved).
pub fn product_state(parts: &[CovarianceMatrix]) -> Result<CovarianceMatrix> {
    let (first, rest) = parts
        .split_first()
        .ok_or_else(|| Error::InvalidParameter { reason: "empty product".into() })?;
    let mut acc = first.clone();
    for part in rest {
        acc = acc.direct_sum(part);
    }
    Ok(acc)
}

/// Symmetric eigen-decomposition with eigenvalues sorted ascending and the
/// eigenvector columns permuted to match.
pub(crate) fn symmetric_eigen_ascending(m: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = DVector::from_fn(order.len(), |i, _| eig.eigenvalues[order[i]]);
    let mut vectors = DMatrix::zeros(m.nrows(), order.len());
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Largest absolute entry-wise difference between two real matrices.
pub(crate) fn max_abs_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).abs().max()
}
