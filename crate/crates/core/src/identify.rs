//! Sample correlograms and order identification.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{difference_values, summary, TimeSeries, MAX_DIFFERENCING};

/// Two-sided 95% normal critical value.
const Z95: f64 = 1.959_963_984_540_054;

/// Largest order [`classify`] will ever suggest.
const MAX_SUGGESTED: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrelogramPoint {
    pub lag: usize,
    pub value: f64,
    /// Half-width of the ±1.96/√n significance band.
    pub band: f64,
}

impl CorrelogramPoint {
    pub fn significant(&self) -> bool {
        self.value.abs() > self.band
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PatternKind {
    Ar,
    Ma,
    Arma,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PatternSuggestion {
    pub kind: PatternKind,
    pub suggested_p: usize,
    pub suggested_q: usize,
}

pub fn significance_band(n: usize) -> f64 {
    Z95 / (n as f64).sqrt()
}

fn check_lag(n: usize, max_lag: usize) -> Result<()> {
    if max_lag == 0 || max_lag >= n {
        return Err(Error::InvalidLag { max_lag, n });
    }
    Ok(())
}

/// Biased sample autocorrelations `r_0..=r_max_lag`.
pub(crate) fn autocorrelations(values: &[f64], max_lag: usize) -> Result<Vec<f64>> {
    let n = values.len();
    check_lag(n, max_lag)?;
    let mean = summary(values)?.mean;
    let centered: Vec<f64> = values.iter().map(|v| v - mean).collect();
    let denom: f64 = centered.iter().map(|c| c * c).sum();
    if denom <= 0.0 {
        return Err(Error::ZeroVariance);
    }
    let mut r = Vec::with_capacity(max_lag + 1);
    r.push(1.0);
    for k in 1..=max_lag {
        let num: f64 = centered[k..]
            .iter()
            .zip(&centered[..n - k])
            .map(|(a, b)| a * b)
            .sum();
        r.push(num / denom);
    }
    Ok(r)
}

/// Sample ACF for lags `0..=max_lag`, with `r_0 = 1` exactly.
pub fn acf(values: &[f64], max_lag: usize) -> Result<Vec<CorrelogramPoint>> {
    let band = significance_band(values.len());
    Ok(autocorrelations(values, max_lag)?
        .into_iter()
        .enumerate()
        .map(|(lag, value)| CorrelogramPoint { lag, value, band })
        .collect())
}

/// Durbin-Levinson recursion on an autocorrelation sequence `r_0..=r_K`,
/// returning the partial autocorrelations `φ_11..φ_KK`.
pub(crate) fn durbin_levinson(r: &[f64]) -> Result<Vec<f64>> {
    let max_lag = r.len() - 1;
    let mut phi = vec![0.0; max_lag + 1];
    let mut prev = vec![0.0; max_lag + 1];
    let mut pacf = Vec::with_capacity(max_lag);
    let mut v = r[0];
    for k in 1..=max_lag {
        if v <= 0.0 {
            return Err(Error::Degenerate(k));
        }
        let acc: f64 = (1..k).map(|j| prev[j] * r[k - j]).sum();
        let kappa = (r[k] - acc) / v;
        phi[k] = kappa;
        for j in 1..k {
            phi[j] = prev[j] - kappa * prev[k - j];
        }
        v *= 1.0 - kappa * kappa;
        pacf.push(kappa);
        prev[..=k].copy_from_slice(&phi[..=k]);
    }
    Ok(pacf)
}

/// Sample PACF for lags `1..=max_lag`.
pub fn pacf(values: &[f64], max_lag: usize) -> Result<Vec<CorrelogramPoint>> {
    let r = autocorrelations(values, max_lag)?;
    let band = significance_band(values.len());
    Ok(durbin_levinson(&r)?
        .into_iter()
        .enumerate()
        .map(|(i, value)| CorrelogramPoint {
            lag: i + 1,
            value,
            band,
        })
        .collect())
}

/// Differencing order in `0..=max_d` minimizing the variance of the differenced
/// series; ties go to the smaller order.
pub fn select_d(series: &TimeSeries, max_d: usize) -> Result<usize> {
    if max_d > MAX_DIFFERENCING {
        return Err(Error::DifferencingOrder(max_d));
    }
    if series.len() <= max_d + 2 {
        return Err(Error::TooShort {
            needed: max_d + 3,
            got: series.len(),
        });
    }
    let mut best = (0, f64::INFINITY);
    for d in 0..=max_d {
        let diff = difference_values(series.values(), d)?;
        let var = summary(&diff.values)?.variance;
        if var < best.1 {
            best = (d, var);
        }
    }
    Ok(best.0)
}

/// `Some(k)` when lags `1..=k` are significant and every later lag is not.
/// `None` when the correlogram tails off (no such clean cutoff, or all lags significant).
fn cutoff(points: &[CorrelogramPoint]) -> Option<usize> {
    let lags: Vec<&CorrelogramPoint> = points.iter().filter(|p| p.lag >= 1).collect();
    let leading = lags.iter().take_while(|p| p.significant()).count();
    if leading == lags.len() && leading > 0 {
        return None;
    }
    if lags[leading..].iter().any(|p| p.significant()) {
        return None;
    }
    Some(leading)
}

/// Box-Jenkins pattern reading of the ACF/PACF pair.
pub fn classify(
    acf_pts: &[CorrelogramPoint],
    pacf_pts: &[CorrelogramPoint],
    _n: usize,
) -> PatternSuggestion {
    let ar = |p: usize| PatternSuggestion {
        kind: PatternKind::Ar,
        suggested_p: p.min(MAX_SUGGESTED),
        suggested_q: 0,
    };
    let ma = |q: usize| PatternSuggestion {
        kind: PatternKind::Ma,
        suggested_p: 0,
        suggested_q: q.min(MAX_SUGGESTED),
    };
    let arma = PatternSuggestion {
        kind: PatternKind::Arma,
        suggested_p: 1,
        suggested_q: 1,
    };
    match (cutoff(pacf_pts), cutoff(acf_pts)) {
        (Some(0), Some(0)) => PatternSuggestion {
            kind: PatternKind::None,
            suggested_p: 0,
            suggested_q: 0,
        },
        (Some(p), Some(0)) => ar(p),
        (Some(0), Some(q)) => ma(q),
        // Both cut off: read the sharper (shorter) cutoff.
        (Some(p), Some(q)) => {
            if p <= q {
                ar(p)
            } else {
                ma(q)
            }
        }
        (Some(p), None) if p > 0 => ar(p),
        (None, Some(q)) if q > 0 => ma(q),
        _ => arma,
    }
}
