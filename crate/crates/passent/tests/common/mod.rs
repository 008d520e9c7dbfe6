//! Shared generators for the integration and acceptance suites.

use nalgebra::{DMatrix, DVector};
use passent::{haar_unitary, passive_from_unitary, CovarianceMatrix};
use rand::Rng;
use rand_distr::StandardNormal;

/// Random valid `n`-mode state: a thermal spectrum conjugated by a random
/// symplectic in Euler form `S = K1 * diag(e^z, e^-z) * K2` with Haar
/// passive factors. `squeeze_scale` bounds `|z|` per mode and
/// `thermal_scale` bounds the excess noise, so the entanglability product
/// straddles 1 for moderate choices of both.
pub fn random_state<R: Rng + ?Sized>(
    n: usize,
    squeeze_scale: f64,
    thermal_scale: f64,
    rng: &mut R,
) -> CovarianceMatrix {
    let mut spectrum = DVector::zeros(2 * n);
    for k in 0..n {
        let nu = 1.0 + thermal_scale * rng.random::<f64>();
        spectrum[k] = nu;
        spectrum[n + k] = nu;
    }
    let k1 = passive_from_unitary(haar_unitary(n, rng)).unwrap();
    let k2 = passive_from_unitary(haar_unitary(n, rng)).unwrap();
    let mut squeezer = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        let z = squeeze_scale * (2.0 * rng.random::<f64>() - 1.0);
        squeezer[(k, k)] = z.exp();
        squeezer[(n + k, n + k)] = (-z).exp();
    }
    let s = k1.real_form() * squeezer * k2.real_form();
    let raw = s.transpose() * DMatrix::from_diagonal(&spectrum) * &s;
    let sym = DMatrix::from_fn(2 * n, 2 * n, |i, j| 0.5 * (raw[(i, j)] + raw[(j, i)]));
    CovarianceMatrix::new(sym).unwrap()
}

/// Random pair of orthonormal real vectors of the given dimension.
pub fn random_orthonormal_pair<R: Rng + ?Sized>(
    dim: usize,
    rng: &mut R,
) -> (DVector<f64>, DVector<f64>) {
    loop {
        let v1 = DVector::from_fn(dim, |_, _| rng.sample::<f64, _>(StandardNormal));
        let n1 = v1.norm();
        if n1 < 1e-6 {
            continue;
        }
        let v1 = v1 / n1;
        let mut v2 = DVector::from_fn(dim, |_, _| rng.sample::<f64, _>(StandardNormal));
        let overlap = v1.dot(&v2);
        v2 -= &v1 * overlap;
        let n2 = v2.norm();
        if n2 < 1e-6 {
            continue;
        }
        return (v1, v2 / n2);
    }
}
