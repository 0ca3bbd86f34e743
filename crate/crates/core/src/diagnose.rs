//! Residual checks: Ljung-Box for remaining autocorrelation, Jarque-Bera for normality.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::identify::{acf, autocorrelations, CorrelogramPoint};
use crate::model::FittedModel;
use crate::series::summary;
use crate::special::chi_square_sf;

pub const SIGNIFICANCE: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LjungBox {
    pub stat: f64,
    pub df: usize,
    pub p: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JarqueBera {
    pub stat: f64,
    pub p: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticsReport {
    pub ljung_box: LjungBox,
    pub jarque_bera: JarqueBera,
    pub residual_acf: Vec<CorrelogramPoint>,
    pub uncorrelated_pass: bool,
    pub normal_pass: bool,
}

/// `Q = n (n + 2) sum_{k=1..h} r_k^2 / (n - k)` against chi-square with
/// `h - fitted_count` degrees of freedom.
pub fn ljung_box(resid: &[f64], h: usize, fitted_count: usize) -> Result<LjungBox> {
    if h <= fitted_count {
        return Err(Error::InvalidArgument(format!(
            "Ljung-Box lag {h} must exceed the number of fitted coefficients {fitted_count}"
        )));
    }
    let n = resid.len();
    if n < h + 1 {
        return Err(Error::TooShort {
            needed: h + 1,
            got: n,
        });
    }
    let r = autocorrelations(resid, h)?;
    let nf = n as f64;
    let stat = nf * (nf + 2.0) * (1..=h).map(|k| r[k] * r[k] / (nf - k as f64)).sum::<f64>();
    let df = h - fitted_count;
    Ok(LjungBox {
        stat,
        df,
        p: chi_square_sf(stat, df as f64),
    })
}

/// `JB = n/6 (S^2 + (K - 3)^2 / 4)` with divisor-`n` moments, against chi-square(2).
pub fn jarque_bera(resid: &[f64]) -> Result<JarqueBera> {
    let n = resid.len();
    if n < 8 {
        return Err(Error::TooShort { needed: 8, got: n });
    }
    let s = summary(resid)?;
    if s.variance <= 0.0 {
        return Err(Error::ZeroVariance);
    }
    let nf = n as f64;
    let (m3, m4) = resid.iter().fold((0.0, 0.0), |(m3, m4), x| {
        let c = x - s.mean;
        (m3 + c.powi(3), m4 + c.powi(4))
    });
    let skew = (m3 / nf) / s.variance.powf(1.5);
    let kurt = (m4 / nf) / (s.variance * s.variance);
    let stat = nf / 6.0 * (skew * skew + (kurt - 3.0).powi(2) / 4.0);
    Ok(JarqueBera {
        stat,
        p: chi_square_sf(stat, 2.0),
    })
}

/// Conventional Ljung-Box lag `min(10, n / 5)`, raised when needed so that at least
/// one degree of freedom remains after `fitted_count` coefficients.
pub fn default_lag(n: usize, fitted_count: usize) -> usize {
    (n / 5).min(10).max(fitted_count + 1).max(1)
}

pub fn diagnose(model: &FittedModel, h: usize) -> Result<DiagnosticsReport> {
    let resid = model.residuals();
    let fitted_count = model.order.p + model.order.q;
    let ljung_box = ljung_box(resid, h, fitted_count)?;
    let jarque_bera = jarque_bera(resid)?;
    let residual_acf = acf(resid, h)?;
    Ok(DiagnosticsReport {
        uncorrelated_pass: ljung_box.p > SIGNIFICANCE,
        normal_pass: jarque_bera.p > SIGNIFICANCE,
        ljung_box,
        jarque_bera,
        residual_acf,
    })
}
