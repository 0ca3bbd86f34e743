use chrono::NaiveDate;

use crate::error::{Error, Result};
use crate::series::{TimeSeries, Timestamp};

pub const DEFAULT_COLUMN: &str = "value";

/// A named series read from disk.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub name: String,
    pub series: TimeSeries,
}

impl Dataset {
    pub fn new(name: impl Into<String>, series: TimeSeries) -> Result<Self> {
        let name = name.into();
        if name.trim().is_empty() {
            return Err(Error::InvalidArgument(
                "dataset name must not be empty".into(),
            ));
        }
        Ok(Self { name, series })
    }
}

fn parse_date(raw: &str) -> Option<Timestamp> {
    let bytes = raw.as_bytes();
    if bytes.len() == 4 && bytes.iter().all(u8::is_ascii_digit) {
        return raw.parse().ok().map(Timestamp::Year);
    }
    if bytes.len() == 10 {
        return NaiveDate::parse_from_str(raw, "%Y-%m-%d")
            .ok()
            .map(Timestamp::Date);
    }
    None
}

/// Parses `date,<column>[,...]` text. Dates are `YYYY` or `YYYY-MM-DD` and must be
/// strictly increasing; values must be finite decimals. The dataset is named after
/// the selected column.
pub fn parse_csv(text: &str, column: &str) -> Result<Dataset> {
    if text.trim().is_empty() {
        return Err(Error::Csv("empty file".into()));
    }
    let mut reader = ::csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(::csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::Csv(e.to_string()))?
        .clone();
    let date_idx = headers
        .iter()
        .position(|h| h == "date")
        .ok_or_else(|| Error::Csv("missing 'date' column in header".into()))?;
    let value_idx = headers
        .iter()
        .position(|h| h == column)
        .ok_or_else(|| Error::Csv(format!("missing '{column}' column in header")))?;

    let mut timestamps = Vec::new();
    let mut values = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 2;
        let record = record.map_err(|e| Error::Csv(format!("line {line}: {e}")))?;
        let raw_date = record.get(date_idx).unwrap_or("");
        let date = parse_date(raw_date)
            .ok_or_else(|| Error::Csv(format!("line {line}: unparsable date '{raw_date}'")))?;
        let raw_value = record.get(value_idx).unwrap_or("");
        let value: f64 = raw_value
            .parse()
            .map_err(|_| Error::Csv(format!("line {line}: unparsable value '{raw_value}'")))?;
        if !value.is_finite() {
            return Err(Error::Csv(format!(
                "line {line}: non-finite value '{raw_value}'"
            )));
        }
        if let Some(prev) = timestamps.last() {
            if std::mem::discriminant(prev) != std::mem::discriminant(&date) {
                return Err(Error::Csv(format!("line {line}: mixed date formats")));
            }
            if date <= *prev {
                return Err(Error::Csv(format!(
                    "line {line}: dates must be strictly increasing ({date} after {prev})"
                )));
            }
        }
        timestamps.push(date);
        values.push(value);
    }
    if values.is_empty() {
        return Err(Error::Empty);
    }
    Dataset::new(column, TimeSeries::new(timestamps, values)?)
}

/// Writes `date,value` rows with LF line endings; values use the shortest
/// representation that parses back to the same `f64`.
pub fn write_csv(dataset: &Dataset) -> String {
    let mut out = String::from("date,value\n");
    for (t, v) in dataset
        .series
        .timestamps()
        .iter()
        .zip(dataset.series.values())
    {
        out.push_str(&format!("{t},{v}\n"));
    }
    out
}
