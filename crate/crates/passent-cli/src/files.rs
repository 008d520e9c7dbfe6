//! On-disk formats: covariance-matrix state files and passive-transform
//! files, both JSON. Writers emit every float at full double precision
//! (the shortest representation that parses back to the same bits), so
//! save/load round trips are lossless.

use crate::error::{CliError, Result};
use nalgebra::DMatrix;
use passent::{CovarianceMatrix, PassiveTransform, C64};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

/// State file: `{ "n": modes, "ordering": "qqpp", "matrix": [[row], ...] }`
/// with a `2n x 2n` matrix in qqpp quadrature ordering.
#[derive(Debug, Serialize, Deserialize)]
pub struct StateFile {
    pub n: usize,
    pub ordering: String,
    pub matrix: Vec<Vec<f64>>,
}

/// Transform file: the mode-space unitary split into real and imaginary
/// parts, with its `2n x 2n` orthogonal-symplectic real form stored
/// redundantly. The two representations are cross-checked on load.
#[derive(Debug, Serialize, Deserialize)]
pub struct TransformFile {
    pub n: usize,
    pub unitary_re: Vec<Vec<f64>>,
    pub unitary_im: Vec<Vec<f64>>,
    pub real_form: Vec<Vec<f64>>,
}

/// SHA-256 of the raw input bytes, rendered as `sha256:<hex>`.
pub fn digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let mut out = String::with_capacity(7 + 2 * hash.len());
    out.push_str("sha256:");
    for byte in hash {
        let _ = write!(out, "{byte:02x}");
    }
    out
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn rows_to_matrix(rows: &[Vec<f64>], dim: usize, path: &Path, what: &str) -> Result<DMatrix<f64>> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(CliError::Format {
            path: path.into(),
            reason: format!(
                "field `{what}` must be {dim}x{dim}, got {}x{}",
                rows.len(),
                rows.first().map_or(0, Vec::len)
            ),
        });
    }
    Ok(DMatrix::from_fn(dim, dim, |i, j| rows[i][j]))
}

fn matrix_to_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

/// Read a state file, returning the covariance matrix and the digest of
/// the file bytes. Physical validity is *not* enforced here; commands
/// report it separately.
pub fn load_state(path: &Path) -> Result<(CovarianceMatrix, String)> {
    let bytes = read(path)?;
    let parsed: StateFile = serde_json::from_slice(&bytes)
        .map_err(|source| CliError::Json { path: path.into(), source })?;
    if parsed.ordering != "qqpp" {
        return Err(CliError::Format {
            path: path.into(),
            reason: format!("unsupported ordering `{}` (expected `qqpp`)", parsed.ordering),
        });
    }
    if parsed.n == 0 {
        return Err(CliError::Format { path: path.into(), reason: "`n` must be positive".into() });
    }
    let data = rows_to_matrix(&parsed.matrix, 2 * parsed.n, path, "matrix")?;
    let gamma = CovarianceMatrix::new(data)?;
    Ok((gamma, digest(&bytes)))
}

/// Serialize a state to the on-disk JSON format.
pub fn state_to_json(gamma: &CovarianceMatrix) -> String {
    let file = StateFile {
        n: gamma.n(),
        ordering: "qqpp".into(),
        matrix: matrix_to_rows(gamma.data()),
    };
    serde_json::to_string_pretty(&file).expect("state serialization cannot fail")
}

/// Write a state file.
pub fn save_state(path: &Path, gamma: &CovarianceMatrix) -> Result<()> {
    let mut text = state_to_json(gamma);
    text.push('\n');
    fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}

/// Read a transform file. The stored real form must agree with the one
/// derived from the unitary, and the result must be orthogonal-symplectic;
/// anything else is rejected.
pub fn load_transform(path: &Path) -> Result<PassiveTransform> {
    let bytes = read(path)?;
    let parsed: TransformFile = serde_json::from_slice(&bytes)
        .map_err(|source| CliError::Json { path: path.into(), source })?;
    if parsed.n == 0 {
        return Err(CliError::Format { path: path.into(), reason: "`n` must be positive".into() });
    }
    let re = rows_to_matrix(&parsed.unitary_re, parsed.n, path, "unitary_re")?;
    let im = rows_to_matrix(&parsed.unitary_im, parsed.n, path, "unitary_im")?;
    let real_form = rows_to_matrix(&parsed.real_form, 2 * parsed.n, path, "real_form")?;
    let unitary = DMatrix::from_fn(parsed.n, parsed.n, |i, j| C64::new(re[(i, j)], im[(i, j)]));
    Ok(PassiveTransform::from_parts(unitary, real_form)?)
}

/// Write a transform file.
pub fn save_transform(path: &Path, k: &PassiveTransform) -> Result<()> {
    let n = k.n();
    let file = TransformFile {
        n,
        unitary_re: matrix_to_rows(&k.unitary().map(|z| z.re)),
        unitary_im: matrix_to_rows(&k.unitary().map(|z| z.im)),
        real_form: matrix_to_rows(k.real_form()),
    };
    let mut text =
        serde_json::to_string_pretty(&file).expect("transform serialization cannot fail");
    text.push('\n');
    fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}
