//! Command-line driver: argument model, pipeline dispatch and output routing.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use boxjenkins::diagnose::default_lag;
use boxjenkins::identify::classify;
use boxjenkins::io::{
    emit_plot_data, parse_csv, CriterionSection, Dataset, DiagnosticsSection, ForecastSection,
    IdentificationSection, OrderSection, ParamsSection, Report, DEFAULT_COLUMN,
};
use boxjenkins::{
    accuracy, acf, diagnose, difference, fit, fitted_values, forecast, grid_search, pacf, select_d,
    AccuracyReport, ArimaOrder, Criterion, FitOptions, FittedModel, FittedValues, ForecastResult,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Largest differencing order tried by automatic identification.
pub const AUTO_MAX_D: usize = 2;
/// Grid bounds for automatic order selection.
pub const AUTO_P_MAX: usize = 3;
pub const AUTO_Q_MAX: usize = 3;
/// Correlogram depth reported by `identify`.
pub const IDENTIFY_MAX_LAG: usize = 10;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Model(#[from] boxjenkins::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "boxjenkins",
    version,
    about = "Box-Jenkins ARIMA modelling of CSV time series"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CriterionArg {
    Aic,
    Bic,
}

impl From<CriterionArg> for Criterion {
    fn from(c: CriterionArg) -> Self {
        match c {
            CriterionArg::Aic => Criterion::Aic,
            CriterionArg::Bic => Criterion::Bic,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// CSV file with a `date` column.
    #[arg(long)]
    pub input: PathBuf,
    /// Value column to model.
    #[arg(long, default_value = DEFAULT_COLUMN)]
    pub column: String,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Explicit order as `p,d,q`.
    #[arg(long, value_parser = parse_order, conflicts_with = "auto")]
    pub order: Option<ArimaOrder>,
    /// Choose d by variance minimisation and (p, q) by information criterion (default).
    #[arg(long)]
    pub auto: bool,
    #[arg(long, value_enum, default_value_t = CriterionArg::Bic)]
    pub criterion: CriterionArg,
    /// Write plot-ready CSV (actual, fitted, forecast, interval) here.
    #[arg(long)]
    pub plot_data: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Suggest d and a tentative (p, q) from the sample correlograms.
    Identify {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Fit a model and report parameters, criterion and residual diagnostics.
    Fit {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Fit a model and forecast past the end of the sample.
    Forecast {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        horizon: u32,
        /// Prediction interval coverage.
        #[arg(long, default_value_t = 0.95, value_parser = parse_level)]
        level: f64,
    },
    /// Score a forecast column against an actual column.
    Evaluate {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        forecast_column: String,
    },
    /// Fit a model and score its in-sample one-step predictions.
    Backtest {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        model: ModelArgs,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Identify { .. } => "identify",
            Command::Fit { .. } => "fit",
            Command::Forecast { .. } => "forecast",
            Command::Evaluate { .. } => "evaluate",
            Command::Backtest { .. } => "backtest",
        }
    }

    fn input(&self) -> &InputArgs {
        match self {
            Command::Identify { input }
            | Command::Fit { input, .. }
            | Command::Forecast { input, .. }
            | Command::Evaluate { input, .. }
            | Command::Backtest { input, .. } => input,
        }
    }
}

fn parse_order(raw: &str) -> Result<ArimaOrder, String> {
    let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
    let [p, d, q] = parts[..] else {
        return Err(format!("expected p,d,q, got '{raw}'"));
    };
    let num = |s: &str| s.parse::<usize>().map_err(|e| format!("'{s}': {e}"));
    ArimaOrder::new(num(p)?, num(d)?, num(q)?).map_err(|e| e.to_string())
}

fn parse_level(raw: &str) -> Result<f64, String> {
    let level: f64 = raw.parse().map_err(|e| format!("'{raw}': {e}"))?;
    if level > 0.0 && level < 1.0 {
        Ok(level)
    } else {
        Err(format!(
            "level must lie strictly between 0 and 1, got {level}"
        ))
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

struct Selection {
    model: FittedModel,
    table: Option<Vec<boxjenkins::select::CandidateRow>>,
}

fn select_model(dataset: &Dataset, args: &ModelArgs) -> CliResult<Selection> {
    let options = FitOptions::default();
    match args.order {
        Some(order) => Ok(Selection {
            model: fit(&dataset.series, order, &options)?,
            table: None,
        }),
        None => {
            let d = select_d(&dataset.series, AUTO_MAX_D)?;
            let res = grid_search(
                &dataset.series,
                d,
                AUTO_P_MAX,
                AUTO_Q_MAX,
                args.criterion.into(),
                &options,
            )?;
            Ok(Selection {
                model: res.best,
                table: Some(res.table),
            })
        }
    }
}

fn model_report(command: &str, dataset: &Dataset, sel: &Selection, criterion: Criterion) -> Report {
    let m = &sel.model;
    let mut report = Report::new(command);
    report.dataset = Some(dataset.name.clone());
    report.order = Some(OrderSection::from(m.order));
    report.params = Some(ParamsSection::from(&m.params));
    report.loglik = Some(m.loglik);
    report.criterion = Some(CriterionSection::new(criterion, criterion.of(m)));
    let h = default_lag(m.residuals().len(), m.order.p + m.order.q);
    report.diagnostics = diagnose(m, h).ok().map(|d| DiagnosticsSection::from(&d));
    report.selection = sel.table.clone();
    report
}

/// Accuracy of the fitted values, skipping the `d` leading entries that repeat observations.
fn backtest_metrics(
    dataset: &Dataset,
    fitted: &FittedValues,
    d: usize,
) -> CliResult<AccuracyReport> {
    let actual = &dataset.series.values()[d..];
    Ok(accuracy(actual, &fitted.values[d..])?)
}

fn metrics_csv(m: &AccuracyReport) -> String {
    format!(
        "mae,mape_percent,rmse,k\n{},{},{},{}\n",
        m.mae, m.mape, m.rmse, m.k
    )
}

/// What a command produced: the JSON report plus the tabular view used by `--format csv`.
pub struct Outcome {
    pub report: Report,
    pub table: String,
    pub plot_data: Option<String>,
}

impl Outcome {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.report.to_json(),
            OutputFormat::Csv => self.table.clone(),
        }
    }
}

/// Runs a command on already-loaded CSV text.
pub fn execute(command: &Command, text: &str) -> CliResult<Outcome> {
    let name = command.name();
    let column = &command.input().column;
    match command {
        Command::Identify { .. } => {
            let dataset = parse_csv(text, column)?;
            let d = select_d(&dataset.series, AUTO_MAX_D)?;
            let w = difference(&dataset.series, d)?.values;
            let max_lag = IDENTIFY_MAX_LAG.min(w.len().saturating_sub(1)).max(1);
            let acf_pts = acf(&w, max_lag)?;
            let pacf_pts = pacf(&w, max_lag)?;
            let pattern = classify(&acf_pts, &pacf_pts, w.len());
            let mut table = String::from("lag,acf,pacf,band\n");
            for (a, p) in acf_pts.iter().zip(&pacf_pts).filter(|(a, _)| a.lag > 0) {
                let _ = writeln!(table, "{},{},{},{}", a.lag, a.value, p.value, a.band);
            }
            let mut report = Report::new(name);
            report.dataset = Some(dataset.name.clone());
            report.identification = Some(IdentificationSection {
                n: dataset.series.len(),
                suggested_d: d,
                acf: acf_pts,
                pacf: pacf_pts,
                pattern,
            });
            Ok(Outcome {
                report,
                table,
                plot_data: None,
            })
        }
        Command::Fit { model, .. } | Command::Backtest { model, .. } => {
            let dataset = parse_csv(text, column)?;
            let sel = select_model(&dataset, model)?;
            let fitted = fitted_values(&sel.model)?;
            let mut report = model_report(name, &dataset, &sel, model.criterion.into());
            if matches!(command, Command::Backtest { .. }) {
                report.metrics = Some(backtest_metrics(&dataset, &fitted, sel.model.order.d)?);
            }
            let plot = emit_plot_data(&dataset, &fitted, None)?;
            Ok(Outcome {
                report,
                table: plot.clone(),
                plot_data: model.plot_data.as_ref().map(|_| plot),
            })
        }
        Command::Forecast {
            model,
            horizon,
            level,
            ..
        } => {
            let dataset = parse_csv(text, column)?;
            let sel = select_model(&dataset, model)?;
            let fitted = fitted_values(&sel.model)?;
            let fc: ForecastResult = forecast(&sel.model, *horizon as usize, *level)?;
            let mut report = model_report(name, &dataset, &sel, model.criterion.into());
            report.forecast = Some(ForecastSection::from(&fc));
            let plot = emit_plot_data(&dataset, &fitted, Some(&fc))?;
            Ok(Outcome {
                report,
                table: plot.clone(),
                plot_data: model.plot_data.as_ref().map(|_| plot),
            })
        }
        Command::Evaluate {
            forecast_column, ..
        } => {
            let actual = parse_csv(text, column)?;
            let predicted = parse_csv(text, forecast_column)?;
            let metrics = accuracy(actual.series.values(), predicted.series.values())?;
            let mut report = Report::new(name);
            report.dataset = Some(actual.name.clone());
            let table = metrics_csv(&metrics);
            report.metrics = Some(metrics);
            Ok(Outcome {
                report,
                table,
                plot_data: None,
            })
        }
    }
}

/// Reads the input, runs the command and writes the report and any plot data.
/// Returns the rendered report when it went to stdout.
pub fn run(cli: &Cli) -> CliResult<Option<String>> {
    let input = cli.command.input();
    let text = read(&input.input)?;
    let outcome = execute(&cli.command, &text)?;
    let plot_path = match &cli.command {
        Command::Fit { model, .. }
        | Command::Forecast { model, .. }
        | Command::Backtest { model, .. } => model.plot_data.as_deref(),
        _ => None,
    };
    if let (Some(path), Some(plot)) = (plot_path, &outcome.plot_data) {
        write(path, plot)?;
    }
    let rendered = outcome.render(input.format);
    match &input.output {
        Some(path) => {
            write(path, &rendered)?;
            Ok(None)
        }
        None => Ok(Some(rendered)),
    }
}
