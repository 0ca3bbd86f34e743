use super::Dataset;
use crate::error::{Error, Result};
use crate::forecast::{FittedValues, ForecastResult};

pub const PLOT_HEADER: &str = "date,actual,fitted,forecast,lower,upper";

/// Plot-ready CSV: one row per observation (actual and fitted) followed by one row
/// per forecast step (point and interval). Inapplicable cells are left empty.
pub fn emit_plot_data(
    actual: &Dataset,
    fitted: &FittedValues,
    forecast: Option<&ForecastResult>,
) -> Result<String> {
    let stamps = actual.series.timestamps();
    let values = actual.series.values();
    if fitted.values.len() != values.len() {
        return Err(Error::LengthMismatch(values.len(), fitted.values.len()));
    }
    let mut out = String::with_capacity(64 * (values.len() + 8));
    out.push_str(PLOT_HEADER);
    out.push('\n');
    for ((t, y), f) in stamps.iter().zip(values).zip(&fitted.values) {
        out.push_str(&format!("{t},{y},{f},,,\n"));
    }
    if let Some(fc) = forecast {
        let h = fc.points.len();
        if fc.lower.len() != h || fc.upper.len() != h || fc.horizon != h {
            return Err(Error::LengthMismatch(fc.horizon, h));
        }
        let last = stamps[stamps.len() - 1];
        let previous = stamps.len().checked_sub(2).map(|i| &stamps[i]);
        for step in 0..h {
            let t = last.advance(previous, step + 1);
            out.push_str(&format!(
                "{t},,,{},{},{}\n",
                fc.points[step], fc.lower[step], fc.upper[step]
            ));
        }
    }
    Ok(out)
}
