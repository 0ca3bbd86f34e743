#![allow(dead_code)]
//! Reference computations kept independent of the library's own code paths.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// ARMA autocovariances `gamma(0..n)` from a long MA(infinity) expansion.
/// `theta` uses the conventional sign (`x_t = sum phi x + e_t + sum theta e`).
pub fn arma_autocovariance(phi: &[f64], theta: &[f64], sigma2: f64, n: usize) -> Vec<f64> {
    const TERMS: usize = 20_000;
    let mut psi = vec![0.0; TERMS];
    psi[0] = 1.0;
    for j in 1..TERMS {
        let mut v = if j <= theta.len() { theta[j - 1] } else { 0.0 };
        for (i, p) in phi.iter().enumerate() {
            if j > i {
                v += p * psi[j - 1 - i];
            }
        }
        psi[j] = v;
    }
    (0..n)
        .map(|k| sigma2 * (0..TERMS - k).map(|j| psi[j] * psi[j + k]).sum::<f64>())
        .collect()
}

/// Multivariate normal log-density of `y - mu` with Toeplitz covariance `gamma`,
/// evaluated through a dense Cholesky factorization.
pub fn dense_gaussian_loglik(y: &[f64], mu: f64, gamma: &[f64]) -> f64 {
    let n = y.len();
    let cov = DMatrix::from_fn(n, n, |i, j| gamma[i.abs_diff(j)]);
    let chol = cov
        .cholesky()
        .expect("autocovariance matrix must be positive definite");
    let x = DVector::from_iterator(n, y.iter().map(|v| v - mu));
    let z = chol.l().solve_lower_triangular(&x).unwrap();
    let log_det: f64 = 2.0 * chol.l().diagonal().iter().map(|d| d.ln()).sum::<f64>();
    -0.5 * (n as f64 * (2.0 * std::f64::consts::PI).ln() + log_det + z.norm_squared())
}

/// Partial autocorrelation at lag `k` as the last coefficient of a least-squares
/// autoregression on the demeaned, zero-padded series (the "autocorrelation
/// method" whose normal equations use the divisor-n autocovariances).
pub fn pacf_ols(y: &[f64], k: usize) -> f64 {
    let n = y.len();
    let mean = y.iter().sum::<f64>() / n as f64;
    let x: Vec<f64> = y.iter().map(|v| v - mean).collect();
    let at = |t: isize| -> f64 {
        if t >= 0 && (t as usize) < n {
            x[t as usize]
        } else {
            0.0
        }
    };
    let rows = n + k;
    let design = DMatrix::from_fn(rows, k, |r, c| at(r as isize - 1 - c as isize));
    let target = DVector::from_fn(rows, |r, _| at(r as isize));
    let coef = design
        .svd(true, true)
        .solve(&target, 1e-14)
        .expect("least squares");
    coef[k - 1]
}

pub fn uniform_series(seed: u64, n: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

/// Companion-matrix eigenvalue moduli of `1 - c_1 z - ... - c_k z^k`.
pub fn companion_moduli(coeffs: &[f64]) -> Vec<f64> {
    let k = coeffs.len();
    if k == 0 {
        return vec![];
    }
    let m = DMatrix::from_fn(k, k, |i, j| {
        if i == 0 {
            coeffs[j]
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    m.complex_eigenvalues().iter().map(|z| z.norm()).collect()
}
