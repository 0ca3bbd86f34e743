use serde::Serialize;

use crate::diagnose::{DiagnosticsReport, JarqueBera, LjungBox};
use crate::evaluate::AccuracyReport;
use crate::forecast::ForecastResult;
use crate::identify::{CorrelogramPoint, PatternSuggestion};
use crate::model::{ArimaOrder, ArimaParams};
use crate::select::{CandidateRow, Criterion};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderSection {
    pub p: usize,
    pub d: usize,
    pub q: usize,
}

impl From<ArimaOrder> for OrderSection {
    fn from(o: ArimaOrder) -> Self {
        Self {
            p: o.p,
            d: o.d,
            q: o.q,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamsSection {
    pub mu: f64,
    pub beta0: f64,
    pub beta: Vec<f64>,
    pub alpha_paper_sign: Vec<f64>,
    pub sigma2: f64,
}

impl From<&ArimaParams> for ParamsSection {
    fn from(p: &ArimaParams) -> Self {
        Self {
            mu: p.mu,
            beta0: p.beta0(),
            beta: p.beta.clone(),
            alpha_paper_sign: p.alpha.clone(),
            sigma2: p.sigma2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionSection {
    pub name: &'static str,
    pub value: f64,
}

impl CriterionSection {
    pub fn new(criterion: Criterion, value: f64) -> Self {
        Self {
            name: criterion.name(),
            value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagnosticsSection {
    pub ljung_box: LjungBox,
    pub jarque_bera: JarqueBera,
    pub uncorrelated_pass: bool,
    pub normal_pass: bool,
}

impl From<&DiagnosticsReport> for DiagnosticsSection {
    fn from(d: &DiagnosticsReport) -> Self {
        Self {
            ljung_box: d.ljung_box,
            jarque_bera: d.jarque_bera,
            uncorrelated_pass: d.uncorrelated_pass,
            normal_pass: d.normal_pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ForecastSection {
    pub points: Vec<f64>,
    pub se: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub level: f64,
}

impl From<&ForecastResult> for ForecastSection {
    fn from(f: &ForecastResult) -> Self {
        Self {
            points: f.points.clone(),
            se: f.se.clone(),
            lower: f.lower.clone(),
            upper: f.upper.clone(),
            level: f.level,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentificationSection {
    pub n: usize,
    pub suggested_d: usize,
    pub acf: Vec<CorrelogramPoint>,
    pub pacf: Vec<CorrelogramPoint>,
    pub pattern: PatternSuggestion,
}

/// Top-level JSON document. Sections that do not apply to a command are omitted;
/// key order is fixed by field order.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dataset: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<OrderSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamsSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub loglik: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub criterion: Option<CriterionSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<DiagnosticsSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forecast: Option<ForecastSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metrics: Option<AccuracyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identification: Option<IdentificationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub selection: Option<Vec<CandidateRow>>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            ..Default::default()
        }
    }

    /// Pretty-printed JSON with a trailing newline. Floats use the shortest
    /// representation that round-trips to the same `f64`.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization is infallible");
        s.push('\n');
        s
    }
}
