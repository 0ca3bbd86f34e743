//! CSV ingestion, JSON reports and plot-ready CSV output.

mod csv;
mod plot;
mod report;

pub use self::csv::{parse_csv, write_csv, Dataset, DEFAULT_COLUMN};
pub use plot::{emit_plot_data, PLOT_HEADER};
pub use report::{
    CriterionSection, DiagnosticsSection, ForecastSection, IdentificationSection, OrderSection,
    ParamsSection, Report,
};
