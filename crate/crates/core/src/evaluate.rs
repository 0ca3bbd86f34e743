//! Forecast accuracy: mean absolute error, mean absolute percentage error (in
//! percent) and root mean squared error.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AccuracyReport {
    pub mae: f64,
    /// Percent, i.e. already multiplied by 100.
    #[serde(rename = "mape_percent")]
    pub mape: f64,
    pub rmse: f64,
    pub k: usize,
}

fn check(actual: &[f64], forecast: &[f64]) -> Result<usize> {
    if actual.len() != forecast.len() {
        return Err(Error::LengthMismatch(actual.len(), forecast.len()));
    }
    if actual.is_empty() {
        return Err(Error::Empty);
    }
    Ok(actual.len())
}

pub fn mae(actual: &[f64], forecast: &[f64]) -> Result<f64> {
    let k = check(actual, forecast)?;
    let total: f64 = actual
        .iter()
        .zip(forecast)
        .map(|(x, f)| (f - x).abs())
        .sum();
    Ok(total / k as f64)
}

pub fn mape(actual: &[f64], forecast: &[f64]) -> Result<f64> {
    let k = check(actual, forecast)?;
    if let Some(i) = actual.iter().position(|&x| x == 0.0) {
        return Err(Error::ZeroActual(i));
    }
    let total: f64 = actual
        .iter()
        .zip(forecast)
        .map(|(x, f)| ((f - x) / x).abs())
        .sum();
    Ok(100.0 * total / k as f64)
}

pub fn rmse(actual: &[f64], forecast: &[f64]) -> Result<f64> {
    let k = check(actual, forecast)?;
    let total: f64 = actual
        .iter()
        .zip(forecast)
        .map(|(x, f)| (f - x).powi(2))
        .sum();
    Ok((total / k as f64).sqrt())
}

pub fn accuracy(actual: &[f64], forecast: &[f64]) -> Result<AccuracyReport> {
    Ok(AccuracyReport {
        mae: mae(actual, forecast)?,
        mape: mape(actual, forecast)?,
        rmse: rmse(actual, forecast)?,
        k: actual.len(),
    })
}

/// One report per labelled `(actual, forecast)` row, in input order.
pub fn report<'a, I>(rows: I) -> Result<Vec<(String, AccuracyReport)>>
where
    I: IntoIterator<Item = (&'a str, &'a [f64], &'a [f64])>,
{
    rows.into_iter()
        .map(|(label, actual, forecast)| {
            accuracy(actual, forecast)
                .map(|r| (label.to_string(), r))
                .map_err(|e| Error::Labeled {
                    label: label.to_string(),
                    source: Box::new(e),
                })
        })
        .collect()
}
