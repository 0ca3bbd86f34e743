//! ARMA representation, exact Gaussian likelihood, and maximum-likelihood fitting.
//!
//! The observation equation follows the subtracted-MA convention
//!
//! ```text
//! y_t = beta_0 + beta_1 y_{t-1} + ... + beta_p y_{t-p}
//!       - alpha_1 u_{t-1} - ... - alpha_q u_{t-q} + u_t
//! ```
//!
//! so the conventional MA coefficients are `theta_j = -alpha_j`. Internally the
//! intercept is carried as the process mean `mu`, with `beta_0 = mu (1 - sum beta_i)`.

mod constrain;
mod simulate;
pub(crate) mod statespace;

use serde::Serialize;

pub use constrain::{constrain, is_stationary, unconstrain};
pub use simulate::{simulate, BURN_IN_PER_LAG};

use crate::error::{Error, Result};
use crate::optim::NelderMead;
use crate::series::{difference_values, summary, TimeSeries, MAX_DIFFERENCING};
use statespace::{filter, FilterOutput, StateSpace};

/// Largest AR or MA order accepted.
pub const MAX_ARMA_ORDER: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ArimaOrder {
    pub p: usize,
    pub d: usize,
    pub q: usize,
}

impl ArimaOrder {
    pub fn new(p: usize, d: usize, q: usize) -> Result<Self> {
        if p > MAX_ARMA_ORDER || q > MAX_ARMA_ORDER {
            return Err(Error::InvalidOrder(format!(
                "p and q must not exceed {MAX_ARMA_ORDER} (got p={p}, q={q})"
            )));
        }
        if d > MAX_DIFFERENCING {
            return Err(Error::InvalidOrder(format!(
                "d must not exceed {MAX_DIFFERENCING} (got {d})"
            )));
        }
        Ok(Self { p, d, q })
    }

    /// Whether a mean term is estimated. Differenced models carry no drift.
    pub fn has_mean(&self) -> bool {
        self.d == 0
    }

    /// Number of estimated parameters, counting the innovation variance.
    pub fn n_params(&self) -> usize {
        self.p + self.q + 1 + usize::from(self.has_mean())
    }
}

impl std::fmt::Display for ArimaOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ARIMA({},{},{})", self.p, self.d, self.q)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArimaParams {
    /// Process mean of the (differenced) series.
    pub mu: f64,
    /// AR coefficients `beta_1..beta_p`.
    pub beta: Vec<f64>,
    /// MA coefficients `alpha_1..alpha_q`, entering the recursion with a minus sign.
    pub alpha: Vec<f64>,
    /// Innovation variance.
    pub sigma2: f64,
}

impl ArimaParams {
    /// Validates finiteness, stationarity of the AR part and invertibility of the
    /// MA part. `sigma2 = 0` is accepted (degenerate, noise-free simulation).
    pub fn new(mu: f64, beta: Vec<f64>, alpha: Vec<f64>, sigma2: f64) -> Result<Self> {
        if !mu.is_finite() || beta.iter().chain(&alpha).any(|c| !c.is_finite()) {
            return Err(Error::InvalidParams("non-finite coefficient".into()));
        }
        if !(sigma2.is_finite() && sigma2 >= 0.0) {
            return Err(Error::InvalidParams(format!("sigma2 = {sigma2}")));
        }
        if !is_stationary(&beta) {
            return Err(Error::InvalidParams(
                "AR polynomial is not stationary".into(),
            ));
        }
        if !is_stationary(&alpha) {
            return Err(Error::InvalidParams(
                "MA polynomial is not invertible".into(),
            ));
        }
        Ok(Self {
            mu,
            beta,
            alpha,
            sigma2,
        })
    }

    /// Intercept `beta_0 = mu (1 - sum beta_i)`.
    pub fn beta0(&self) -> f64 {
        self.mu * (1.0 - self.beta.iter().sum::<f64>())
    }

    /// Conventional-sign MA coefficients `theta_j = -alpha_j`.
    pub fn theta(&self) -> Vec<f64> {
        self.alpha.iter().map(|a| -a).collect()
    }

    pub(crate) fn check_order(&self, order: ArimaOrder) -> Result<()> {
        if self.beta.len() != order.p || self.alpha.len() != order.q {
            return Err(Error::InvalidParams(format!(
                "{order} needs {} AR and {} MA coefficients, got {} and {}",
                order.p,
                order.q,
                self.beta.len(),
                self.alpha.len()
            )));
        }
        Ok(())
    }

    pub(crate) fn state_space(&self) -> StateSpace {
        StateSpace::new(&self.beta, &self.theta())
    }
}

/// Exact Gaussian log-likelihood of an already-differenced series under the
/// ARMA(p, q) part of `order`, evaluated by the innovations filter started from
/// the stationary state distribution.
pub fn log_likelihood(params: &ArimaParams, order: ArimaOrder, values: &[f64]) -> Result<f64> {
    params.check_order(order)?;
    if values.is_empty() {
        return Err(Error::Empty);
    }
    if params.sigma2.is_nan() || params.sigma2 <= 0.0 {
        return Err(Error::InvalidParams("sigma2 must be positive".into()));
    }
    let out = run_filter(params, values)?;
    Ok(out.loglik(params.sigma2))
}

pub(crate) fn run_filter(params: &ArimaParams, values: &[f64]) -> Result<FilterOutput> {
    let deviations: Vec<f64> = values.iter().map(|v| v - params.mu).collect();
    filter(&params.state_space(), &deviations)
}

#[derive(Debug, Clone, Copy)]
pub struct FitOptions {
    pub optimizer: NelderMead,
    /// Optimizer restarts from the incumbent after the first run.
    pub restarts: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            optimizer: NelderMead::default(),
            restarts: 1,
        }
    }
}

/// An estimated ARIMA model.
#[derive(Debug, Clone, PartialEq)]
pub struct FittedModel {
    pub order: ArimaOrder,
    pub params: ArimaParams,
    pub loglik: f64,
    /// One-step innovations on the differenced scale, length `n_obs - d`.
    pub residuals: Vec<f64>,
    pub heads: Vec<f64>,
    pub n_obs: usize,
    /// Original-scale observations the model was fitted to.
    pub observations: Vec<f64>,
    pub differenced: Vec<f64>,
    /// Whether the optimizer met its tolerance before the iteration cap.
    pub converged: bool,
}

impl FittedModel {
    /// Residuals actually used by the likelihood, one per differenced observation.
    pub fn residuals(&self) -> &[f64] {
        &self.residuals
    }

    pub(crate) fn filter_output(&self) -> Result<FilterOutput> {
        run_filter(&self.params, &self.differenced)
    }
}

/// Unpacks an optimizer vector `[raw AR.., raw MA.., standardized mean]`.
struct Layout {
    p: usize,
    q: usize,
    mean: Option<(f64, f64)>,
}

impl Layout {
    fn dim(&self) -> usize {
        self.p + self.q + usize::from(self.mean.is_some())
    }

    fn params(&self, x: &[f64], sigma2: f64) -> ArimaParams {
        let beta = constrain(&x[..self.p]);
        let alpha = constrain(&x[self.p..self.p + self.q]);
        let mu = match self.mean {
            Some((center, scale)) => center + scale * x[self.p + self.q],
            None => 0.0,
        };
        ArimaParams {
            mu,
            beta,
            alpha,
            sigma2,
        }
    }
}

/// Maximum-likelihood fit of an ARIMA(p, d, q) model.
///
/// The series is differenced `d` times; the exact likelihood of the ARMA part is
/// maximized over the constrained parameterization with `sigma2` profiled out.
/// Models with `d >= 1` carry no mean (drift) term.
pub fn fit(series: &TimeSeries, order: ArimaOrder, options: &FitOptions) -> Result<FittedModel> {
    let order = ArimaOrder::new(order.p, order.d, order.q)?;
    let observations = series.values().to_vec();
    let diff = difference_values(&observations, order.d)?;
    let needed = order.p + order.q + 3;
    if diff.values.len() < needed {
        return Err(Error::TooShort {
            needed: needed + order.d,
            got: observations.len(),
        });
    }
    let stats = summary(&diff.values)?;
    if stats.variance <= 0.0 {
        return Err(Error::ZeroVariance);
    }
    let layout = Layout {
        p: order.p,
        q: order.q,
        mean: order
            .has_mean()
            .then(|| (stats.mean, stats.variance.sqrt())),
    };

    let objective = |x: &[f64]| -> f64 {
        match run_filter(&layout.params(x, 1.0), &diff.values) {
            Ok(out) => -out.profile_loglik(),
            Err(_) => f64::INFINITY,
        }
    };

    let mut best = options
        .optimizer
        .minimize(objective, &vec![0.0; layout.dim()]);
    let mut converged = best.converged;
    for _ in 0..options.restarts {
        if layout.dim() == 0 {
            break;
        }
        let again = options.optimizer.minimize(objective, &best.x);
        converged = again.converged;
        if again.fx <= best.fx {
            best = again;
        }
    }
    if !best.fx.is_finite() {
        return Err(Error::OptimizerFailed);
    }

    let out = run_filter(&layout.params(&best.x, 1.0), &diff.values)?;
    let sigma2 = out.sigma2_hat();
    if sigma2.is_nan() || sigma2 <= 0.0 {
        return Err(Error::ZeroVariance);
    }
    let params = layout.params(&best.x, sigma2);
    Ok(FittedModel {
        order,
        params,
        loglik: out.profile_loglik(),
        residuals: out.innovations,
        heads: diff.heads,
        n_obs: observations.len(),
        observations,
        differenced: diff.values,
        converged,
    })
}
