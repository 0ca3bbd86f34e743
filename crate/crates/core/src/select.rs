//! Information-criterion order selection over a (p, q) grid.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{fit, ArimaOrder, FitOptions, FittedModel};
use crate::series::TimeSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Criterion {
    Aic,
    #[default]
    Bic,
}

impl Criterion {
    pub fn name(&self) -> &'static str {
        match self {
            Criterion::Aic => "AIC",
            Criterion::Bic => "BIC",
        }
    }

    pub fn evaluate(&self, loglik: f64, n_params: usize, n: usize) -> f64 {
        match self {
            Criterion::Aic => aic(loglik, n_params),
            Criterion::Bic => bic(loglik, n_params, n as f64),
        }
    }

    /// Criterion value of a fitted model, with `n` the number of differenced observations.
    pub fn of(&self, model: &FittedModel) -> f64 {
        self.evaluate(model.loglik, model.order.n_params(), model.residuals.len())
    }
}

impl std::str::FromStr for Criterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "aic" => Ok(Criterion::Aic),
            "bic" => Ok(Criterion::Bic),
            other => Err(Error::InvalidArgument(format!(
                "unknown criterion '{other}'"
            ))),
        }
    }
}

pub fn aic(loglik: f64, n_params: usize) -> f64 {
    -2.0 * loglik + 2.0 * n_params as f64
}

/// `n` is real-valued so the penalty can be checked at non-integer sample sizes.
pub fn bic(loglik: f64, n_params: usize, n: f64) -> f64 {
    -2.0 * loglik + n_params as f64 * n.ln()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidateRow {
    pub order: ArimaOrder,
    /// `None` for candidates that could not be fitted.
    pub criterion: Option<f64>,
    pub loglik: Option<f64>,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionResult {
    pub best: FittedModel,
    pub criterion: Criterion,
    pub table: Vec<CandidateRow>,
}

/// Ranking key: criterion, then `p + q`, then `p`.
fn better(a: (f64, ArimaOrder), b: (f64, ArimaOrder)) -> bool {
    a.0.total_cmp(&b.0)
        .then((a.1.p + a.1.q).cmp(&(b.1.p + b.1.q)))
        .then(a.1.p.cmp(&b.1.p))
        .is_lt()
}

/// Fits every `(p, q)` in `[0, p_max] x [0, q_max]` at differencing order `d` and
/// keeps the fitted candidate with the smallest criterion.
pub fn grid_search(
    series: &TimeSeries,
    d: usize,
    p_max: usize,
    q_max: usize,
    criterion: Criterion,
    options: &FitOptions,
) -> Result<SelectionResult> {
    let orders = (0..=p_max)
        .flat_map(|p| (0..=q_max).map(move |q| ArimaOrder::new(p, d, q)))
        .collect::<Result<Vec<_>>>()?;
    let fits: Vec<Option<FittedModel>> = orders
        .par_iter()
        .map(|&order| fit(series, order, options).ok())
        .collect();

    let mut table = Vec::with_capacity(orders.len());
    let mut best: Option<(f64, FittedModel)> = None;
    for (order, model) in orders.into_iter().zip(fits) {
        let Some(model) = model else {
            table.push(CandidateRow {
                order,
                criterion: None,
                loglik: None,
                converged: false,
            });
            continue;
        };
        let value = criterion.of(&model);
        table.push(CandidateRow {
            order,
            criterion: Some(value),
            loglik: Some(model.loglik),
            converged: true,
        });
        let replace = match &best {
            None => true,
            Some((v, m)) => better((value, order), (*v, m.order)),
        };
        if replace && value.is_finite() {
            best = Some((value, model));
        }
    }
    let (_, best) = best.ok_or(Error::NoCandidate)?;
    Ok(SelectionResult {
        best,
        criterion,
        table,
    })
}
