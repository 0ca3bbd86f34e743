//! Core series representation, differencing/integration and summary statistics.

use std::fmt;

use chrono::NaiveDate;

use crate::error::{Error, Result};

/// Highest differencing order supported anywhere in the crate.
pub const MAX_DIFFERENCING: usize = 2;

/// An ordered observation label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Timestamp {
    /// Calendar year, written `YYYY`.
    Year(i32),
    /// Calendar date, written `YYYY-MM-DD`.
    Date(NaiveDate),
    /// Plain position, used for synthetic series.
    Index(usize),
}

impl Timestamp {
    fn same_kind(&self, other: &Timestamp) -> bool {
        std::mem::discriminant(self) == std::mem::discriminant(other)
    }

    /// Label `steps` periods after `self`, given the spacing between the last two labels.
    pub fn advance(&self, previous: Option<&Timestamp>, steps: usize) -> Timestamp {
        match *self {
            Timestamp::Year(y) => Timestamp::Year(y + steps as i32),
            Timestamp::Index(i) => Timestamp::Index(i + steps),
            Timestamp::Date(date) => {
                let Some(Timestamp::Date(prev)) = previous else {
                    return Timestamp::Date(date + chrono::Days::new(steps as u64));
                };
                use chrono::Datelike;
                let months =
                    (date.year() - prev.year()) * 12 + date.month() as i32 - prev.month() as i32;
                if date.day() == prev.day() && months > 0 {
                    let step = chrono::Months::new(months as u32 * steps as u32);
                    if let Some(next) = date.checked_add_months(step) {
                        return Timestamp::Date(next);
                    }
                }
                let days = (date - *prev).num_days().max(1) as u64;
                Timestamp::Date(date + chrono::Days::new(days * steps as u64))
            }
        }
    }
}

impl fmt::Display for Timestamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Timestamp::Year(y) => write!(f, "{y:04}"),
            Timestamp::Date(d) => write!(f, "{}", d.format("%Y-%m-%d")),
            Timestamp::Index(i) => write!(f, "{i}"),
        }
    }
}

/// Ordered, timestamped, finite real observations.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    timestamps: Vec<Timestamp>,
    values: Vec<f64>,
}

impl TimeSeries {
    /// Validates length, ordering and finiteness.
    pub fn new(timestamps: Vec<Timestamp>, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty);
        }
        if timestamps.len() != values.len() {
            return Err(Error::LengthMismatch(timestamps.len(), values.len()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        for (i, w) in timestamps.windows(2).enumerate() {
            if !w[0].same_kind(&w[1]) || w[1] <= w[0] {
                return Err(Error::NonIncreasing(i + 1));
            }
        }
        Ok(Self { timestamps, values })
    }

    /// Series labelled `1..=n`.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        let timestamps = (1..=values.len()).map(Timestamp::Index).collect();
        Self::new(timestamps, values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn timestamps(&self) -> &[Timestamp] {
        &self.timestamps
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// A `d`-times differenced series together with the heads needed to invert it.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferencedSeries {
    pub values: Vec<f64>,
    pub d: usize,
    /// `heads[k]` is the first observation of the `k`-times differenced series.
    pub heads: Vec<f64>,
}

/// Population summary statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSummary {
    pub n: usize,
    pub mean: f64,
    /// Divisor `n`.
    pub variance: f64,
}

fn first_difference(values: &[f64]) -> Vec<f64> {
    values.windows(2).map(|w| w[1] - w[0]).collect()
}

/// Applies `d` rounds of first differencing to raw values.
pub fn difference_values(values: &[f64], d: usize) -> Result<DifferencedSeries> {
    if d > MAX_DIFFERENCING {
        return Err(Error::DifferencingOrder(d));
    }
    if values.len() <= d {
        return Err(Error::TooShort {
            needed: d + 1,
            got: values.len(),
        });
    }
    let mut heads = Vec::with_capacity(d);
    let mut current = values.to_vec();
    for _ in 0..d {
        heads.push(current[0]);
        current = first_difference(&current);
    }
    Ok(DifferencedSeries {
        values: current,
        d,
        heads,
    })
}

pub fn difference(series: &TimeSeries, d: usize) -> Result<DifferencedSeries> {
    difference_values(series.values(), d)
}

/// Exact left inverse of [`difference`].
pub fn undifference(diff: &DifferencedSeries) -> Result<Vec<f64>> {
    if diff.heads.len() != diff.d {
        return Err(Error::HeadsMismatch {
            expected: diff.d,
            got: diff.heads.len(),
        });
    }
    let mut current = diff.values.clone();
    for &head in diff.heads.iter().rev() {
        let mut level = Vec::with_capacity(current.len() + 1);
        let mut acc = head;
        level.push(acc);
        for v in &current {
            acc += v;
            level.push(acc);
        }
        current = level;
    }
    Ok(current)
}

pub fn summary(values: &[f64]) -> Result<SeriesSummary> {
    if values.is_empty() {
        return Err(Error::Empty);
    }
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let variance = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n as f64;
    Ok(SeriesSummary { n, mean, variance })
}
