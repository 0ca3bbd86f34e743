//! Box-Jenkins ARIMA modelling: identification from sample correlograms, exact
//! maximum-likelihood estimation through an innovations filter, residual
//! diagnostics, forecasting on the original scale, and accuracy metrics.
//!
//! ```
//! use boxjenkins::{fit, forecast, ArimaOrder, FitOptions, TimeSeries};
//!
//! let y = TimeSeries::from_values(vec![126.1, 122.6, 120.3, 147.5, 147.4, 146.6, 149.1, 152.1, 182.19]).unwrap();
//! let model = fit(&y, ArimaOrder::new(0, 1, 0).unwrap(), &FitOptions::default()).unwrap();
//! let f = forecast(&model, 3, 0.95).unwrap();
//! assert_eq!(f.points, vec![182.19; 3]);
//! ```

pub mod diagnose;
pub mod error;
pub mod evaluate;
pub mod forecast;
pub mod identify;
pub mod io;
mod linalg;
pub mod model;
pub mod optim;
pub mod select;
pub mod series;
pub mod special;

pub use diagnose::{diagnose, jarque_bera, ljung_box, DiagnosticsReport};
pub use error::{Error, Result};
pub use evaluate::{accuracy, mae, mape, report, rmse, AccuracyReport};
pub use forecast::{fitted_values, forecast, normal_quantile, FittedValues, ForecastResult};
pub use identify::{
    acf, classify, pacf, select_d, CorrelogramPoint, PatternKind, PatternSuggestion,
};
pub use model::{fit, log_likelihood, simulate, ArimaOrder, ArimaParams, FitOptions, FittedModel};
pub use select::{aic, bic, grid_search, Criterion, SelectionResult};
pub use series::{
    difference, summary, undifference, DifferencedSeries, SeriesSummary, TimeSeries, Timestamp,
};
