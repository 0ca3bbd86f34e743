//! ARMA(p, q) in state-space form and the innovations (Kalman) filter.
//!
//! ```text
//! x[t+1] = T x[t] + R e[t]
//! w[t]   = mu + Z x[t],   Z = (1, 0, ..., 0)
//! ```
//!
//! `T` is the companion matrix with the AR coefficients in its first column and
//! `R = (1, theta_1, ..., theta_{m-1})` with conventional-sign MA coefficients.
//! The filter runs with unit innovation variance; every covariance it reports is
//! in units of `sigma2`.

use crate::error::{Error, Result};
use crate::linalg;

/// Predicted covariances closer than this are treated as having reached steady state.
const STEADY_TOL: f64 = 1e-13;

#[derive(Debug, Clone)]
pub(crate) struct StateSpace {
    pub(crate) m: usize,
    pub(crate) transition: Vec<f64>,
    pub(crate) noise_cov: Vec<f64>,
}

impl StateSpace {
    pub(crate) fn new(ar: &[f64], ma_conventional: &[f64]) -> Self {
        let m = ar.len().max(ma_conventional.len() + 1);
        let mut transition = vec![0.0; m * m];
        for (i, b) in ar.iter().enumerate() {
            transition[i * m] = *b;
        }
        for i in 0..m - 1 {
            transition[i * m + i + 1] = 1.0;
        }
        let mut noise = vec![0.0; m];
        noise[0] = 1.0;
        noise[1..=ma_conventional.len()].copy_from_slice(ma_conventional);
        let mut noise_cov = vec![0.0; m * m];
        for i in 0..m {
            for j in 0..m {
                noise_cov[i * m + j] = noise[i] * noise[j];
            }
        }
        Self {
            m,
            transition,
            noise_cov,
        }
    }

    /// Solves the discrete Lyapunov equation `P = T P T' + R R'` through the
    /// vectorized system `(I - T ⊗ T) vec(P) = vec(R R')`.
    pub(crate) fn stationary_covariance(&self) -> Result<Vec<f64>> {
        let m = self.m;
        let mm = m * m;
        let mut system = vec![0.0; mm * mm];
        for i in 0..m {
            for j in 0..m {
                let row = i * m + j;
                system[row * mm + row] += 1.0;
                for k in 0..m {
                    let tik = self.transition[i * m + k];
                    if tik == 0.0 {
                        continue;
                    }
                    for l in 0..m {
                        system[row * mm + k * m + l] -= tik * self.transition[j * m + l];
                    }
                }
            }
        }
        let mut rhs = self.noise_cov.clone();
        let mut p = linalg::solve(&mut system, &mut rhs)
            .ok_or_else(|| Error::Numerical("singular Lyapunov system".into()))?;
        for i in 0..m {
            for j in 0..i {
                let avg = 0.5 * (p[i * m + j] + p[j * m + i]);
                p[i * m + j] = avg;
                p[j * m + i] = avg;
            }
        }
        if p.iter().any(|v| !v.is_finite()) || p[0] <= 0.0 {
            return Err(Error::Numerical("non-positive stationary variance".into()));
        }
        Ok(p)
    }

    /// One prediction step on a state mean.
    pub(crate) fn propagate(&self, state: &[f64]) -> Vec<f64> {
        let m = self.m;
        (0..m)
            .map(|i| (0..m).map(|k| self.transition[i * m + k] * state[k]).sum())
            .collect()
    }

    /// `propagate` without allocating; exploits the companion structure of `T`.
    pub(crate) fn propagate_into(&self, state: &[f64], out: &mut [f64]) {
        let m = self.m;
        let head = state[0];
        for i in 0..m {
            let shifted = if i + 1 < m { state[i + 1] } else { 0.0 };
            out[i] = self.transition[i * m] * head + shifted;
        }
    }

    /// `propagate_cov` without allocating, using the companion structure of `T`.
    pub(crate) fn propagate_cov_into(&self, cov: &[f64], scratch: &mut [f64], out: &mut [f64]) {
        let m = self.m;
        // scratch = T P
        for i in 0..m {
            let t = self.transition[i * m];
            for j in 0..m {
                let below = if i + 1 < m { cov[(i + 1) * m + j] } else { 0.0 };
                scratch[i * m + j] = t * cov[j] + below;
            }
        }
        // out = (T P) T' + R R'
        for i in 0..m {
            for j in 0..m {
                let right = if j + 1 < m {
                    scratch[i * m + j + 1]
                } else {
                    0.0
                };
                out[i * m + j] =
                    scratch[i * m] * self.transition[j * m] + right + self.noise_cov[i * m + j];
            }
        }
    }

    /// One prediction step on a state covariance: `T P T' + R R'`.
    pub(crate) fn propagate_cov(&self, cov: &[f64]) -> Vec<f64> {
        let mut next = linalg::sandwich(&self.transition, cov, self.m);
        for (n, q) in next.iter_mut().zip(&self.noise_cov) {
            *n += q;
        }
        next
    }
}

#[derive(Debug, Clone)]
pub(crate) struct FilterOutput {
    /// One-step predictions of the mean-adjusted observations, `Z a_t`.
    pub(crate) predictions: Vec<f64>,
    /// One-step prediction errors `v_t`.
    pub(crate) innovations: Vec<f64>,
    pub(crate) sum_log_f: f64,
    /// `sum v_t^2 / F_t`.
    pub(crate) sum_scaled_sq: f64,
    /// Predicted state and covariance for the first out-of-sample period.
    pub(crate) next_state: Vec<f64>,
    pub(crate) next_cov: Vec<f64>,
}

impl FilterOutput {
    /// Maximum-likelihood innovation variance given everything else.
    pub(crate) fn sigma2_hat(&self) -> f64 {
        self.sum_scaled_sq / self.innovations.len() as f64
    }

    /// Gaussian log-likelihood at a fixed innovation variance.
    pub(crate) fn loglik(&self, sigma2: f64) -> f64 {
        let n = self.innovations.len() as f64;
        -0.5 * (n * (2.0 * std::f64::consts::PI * sigma2).ln()
            + self.sum_log_f
            + self.sum_scaled_sq / sigma2)
    }

    /// Log-likelihood with `sigma2` concentrated out.
    pub(crate) fn profile_loglik(&self) -> f64 {
        let n = self.innovations.len() as f64;
        let s2 = self.sigma2_hat();
        -0.5 * (n * ((2.0 * std::f64::consts::PI * s2).ln() + 1.0) + self.sum_log_f)
    }
}

/// Runs the filter over mean-adjusted observations `deviations`.
pub(crate) fn filter(ss: &StateSpace, deviations: &[f64]) -> Result<FilterOutput> {
    let m = ss.m;
    let mut state = vec![0.0; m];
    let mut cov = ss.stationary_covariance()?;
    let mut predictions = Vec::with_capacity(deviations.len());
    let mut innovations = Vec::with_capacity(deviations.len());
    let mut sum_log_f = 0.0;
    let mut sum_scaled_sq = 0.0;
    let mut steady = false;

    let mut gain = vec![0.0; m];
    let mut updated = vec![0.0; m];
    let mut filtered = vec![0.0; m * m];
    let mut scratch = vec![0.0; m * m];
    let mut next = vec![0.0; m * m];
    let mut f = cov[0];
    let mut log_f = f.ln();
    for &y in deviations {
        let v = y - state[0];
        if !steady {
            f = cov[0];
            if !(f.is_finite() && f > 0.0) {
                return Err(Error::Numerical(format!("prediction variance {f}")));
            }
            log_f = f.ln();
            for (i, g) in gain.iter_mut().enumerate() {
                *g = cov[i * m] / f;
            }
        }
        predictions.push(state[0]);
        innovations.push(v);
        sum_log_f += log_f;
        sum_scaled_sq += v * v / f;

        // measurement update, then time update
        for ((u, a), k) in updated.iter_mut().zip(&state).zip(&gain) {
            *u = a + k * v;
        }
        ss.propagate_into(&updated, &mut state);
        if !steady {
            for i in 0..m {
                for j in 0..m {
                    filtered[i * m + j] = cov[i * m + j] - cov[i * m] * cov[j * m] / f;
                }
            }
            ss.propagate_cov_into(&filtered, &mut scratch, &mut next);
            let scale = next.iter().fold(1.0f64, |acc, x| acc.max(x.abs()));
            steady = next
                .iter()
                .zip(&cov)
                .all(|(a, b)| (a - b).abs() <= STEADY_TOL * scale);
            std::mem::swap(&mut cov, &mut next);
        }
    }
    Ok(FilterOutput {
        predictions,
        innovations,
        sum_log_f,
        sum_scaled_sq,
        next_state: state,
        next_cov: cov,
    })
}
