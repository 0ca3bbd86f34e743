//! Out-of-sample forecasts with Gaussian prediction intervals, and in-sample
//! one-step-ahead fitted values.

use crate::error::{Error, Result};
use crate::model::FittedModel;
use crate::special::normal_cdf;

#[derive(Debug, Clone, PartialEq)]
pub struct ForecastResult {
    pub horizon: usize,
    /// Point forecasts on the original scale.
    pub points: Vec<f64>,
    pub se: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub level: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FittedValues {
    /// One-step-ahead predictions on the original scale, one per observation.
    pub values: Vec<f64>,
    /// Leading entries not predicted from observed history. The first `d` of them
    /// have no prediction at all and simply repeat the observation.
    pub warmup: usize,
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `y_t - w_t` expressed through the `d` preceding levels, e.g. `y_{t-1}` for
/// `d = 1` and `2 y_{t-1} - y_{t-2}` for `d = 2`.
fn integration_carry(history: &[f64], d: usize) -> f64 {
    let n = history.len();
    (1..=d)
        .map(|k| {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            sign * binomial(d, k) * history[n - k]
        })
        .sum()
}

/// Forecasts `h` steps past the end of the fitted sample.
///
/// Differenced-scale predictions come from iterating the state-space prediction
/// step; for `d >= 1` the original-scale error variance sums the full covariance
/// of the accumulated differenced-scale errors.
#[allow(clippy::needless_range_loop)]
pub fn forecast(model: &FittedModel, h: usize, level: f64) -> Result<ForecastResult> {
    if h == 0 {
        return Err(Error::InvalidArgument(
            "forecast horizon must be at least 1".into(),
        ));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "interval level must lie in (0, 1), got {level}"
        )));
    }
    let d = model.order.d;
    let params = &model.params;
    let ss = params.state_space();
    let m = ss.m;
    let out = model.filter_output()?;

    let mut state = out.next_state;
    let mut cov = out.next_cov;
    let mut diff_points = Vec::with_capacity(h);
    let mut covs = Vec::with_capacity(h);
    for _ in 0..h {
        diff_points.push(params.mu + state[0]);
        covs.push(cov.clone());
        state = ss.propagate(&state);
        cov = ss.propagate_cov(&cov);
    }

    let variances: Vec<f64> = if d == 0 {
        covs.iter().map(|p| p[0]).collect()
    } else {
        // cross[i][j] = Cov(e_i, e_j) = first element of T^(j-i) P_i, j >= i
        let mut cross = vec![vec![0.0; h]; h];
        for (i, p) in covs.iter().enumerate() {
            let mut mat = p.clone();
            cross[i][i] = mat[0];
            for j in i + 1..h {
                let mut next = vec![0.0; m * m];
                for r in 0..m {
                    for k in 0..m {
                        let t = ss.transition[r * m + k];
                        if t == 0.0 {
                            continue;
                        }
                        for c in 0..m {
                            next[r * m + c] += t * mat[k * m + c];
                        }
                    }
                }
                mat = next;
                cross[i][j] = mat[0];
                cross[j][i] = mat[0];
            }
        }
        (0..h)
            .map(|step| {
                let weight = |i: usize| binomial(step - i + d - 1, d - 1);
                let mut var = 0.0;
                for i in 0..=step {
                    for j in 0..=step {
                        var += weight(i) * weight(j) * cross[i][j];
                    }
                }
                var.max(0.0)
            })
            .collect()
    };

    let mut history = model.observations.clone();
    let mut points = Vec::with_capacity(h);
    for w in &diff_points {
        let y = if d == 0 {
            *w
        } else {
            integration_carry(&history, d) + w
        };
        history.push(y);
        points.push(y);
    }

    let z = normal_quantile(0.5 + level / 2.0)?;
    let se: Vec<f64> = variances
        .iter()
        .map(|v| (v * params.sigma2).sqrt())
        .collect();
    let lower = points.iter().zip(&se).map(|(p, s)| p - z * s).collect();
    let upper = points.iter().zip(&se).map(|(p, s)| p + z * s).collect();
    Ok(ForecastResult {
        horizon: h,
        points,
        se,
        lower,
        upper,
        level,
    })
}

/// In-sample one-step-ahead predictions on the original scale.
pub fn fitted_values(model: &FittedModel) -> Result<FittedValues> {
    let d = model.order.d;
    let out = model.filter_output()?;
    let y = &model.observations;
    let mut values = Vec::with_capacity(y.len());
    values.extend_from_slice(&y[..d]);
    for (t, pred) in out.predictions.iter().enumerate() {
        let w_hat = model.params.mu + pred;
        let carry = if d == 0 {
            0.0
        } else {
            integration_carry(&y[..t + d], d)
        };
        values.push(carry + w_hat);
    }
    Ok(FittedValues {
        values,
        warmup: (d + 1).min(y.len()),
    })
}

// Rational approximation for the lower region and central region of the
// inverse normal CDF (P. J. Acklam), relative error about 1.15e-9 before refinement.
const A: [f64; 6] = [
    -3.969_683_028_665_376e1,
    2.209_460_984_245_205e2,
    -2.759_285_104_469_687e2,
    1.383_577_518_672_69e2,
    -3.066_479_806_614_716e1,
    2.506_628_277_459_239,
];
const B: [f64; 5] = [
    -5.447_609_879_822_406e1,
    1.615_858_368_580_409e2,
    -1.556_989_798_598_866e2,
    6.680_131_188_771_972e1,
    -1.328_068_155_288_572e1,
];
const C: [f64; 6] = [
    -7.784_894_002_430_293e-3,
    -3.223_964_580_411_365e-1,
    -2.400_758_277_161_838,
    -2.549_732_539_343_734,
    4.374_664_141_464_968,
    2.938_163_982_698_783,
];
const D: [f64; 4] = [
    7.784_695_709_041_462e-3,
    3.224_671_290_700_398e-1,
    2.445_134_137_142_996,
    3.754_408_661_907_416,
];
const P_LOW: f64 = 0.024_25;

fn acklam_lower(p: f64) -> f64 {
    if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    }
}

/// Inverse standard-normal CDF for `p <= 0.5`, refined by one Halley step.
fn quantile_lower(p: f64) -> f64 {
    let x = acklam_lower(p);
    let e = normal_cdf(x) - p;
    let u = e * (2.0 * std::f64::consts::PI).sqrt() * (0.5 * x * x).exp();
    x - u / (1.0 + 0.5 * x * u)
}

/// Inverse of the standard normal CDF on `(0, 1)`.
pub fn normal_quantile(prob: f64) -> Result<f64> {
    if !(prob > 0.0 && prob < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "probability must lie in (0, 1), got {prob}"
        )));
    }
    if prob == 0.5 {
        Ok(0.0)
    } else if prob < 0.5 {
        Ok(quantile_lower(prob))
    } else {
        Ok(-quantile_lower(1.0 - prob))
    }
}
