use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorUnit {
    /// Absolute difference `|reference - candidate|`.
    Absolute,
    /// Difference in binomial standard deviations of the reference value
    /// (Monte Carlo comparisons).
    Sigma,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub check: String,
    pub reference_method: String,
    pub candidate_method: String,
    pub error_unit: ErrorUnit,
    pub seed: Option<u64>,
    pub parameters: BTreeMap<String, Value>,
}

/// Outcome of comparing a candidate evaluation with a reference.
///
/// `passed` holds exactly when `max_abs_err <= tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub metadata: ReportMetadata,
    pub reference: Vec<f64>,
    pub candidate: Vec<f64>,
    pub per_m_abs_err: Vec<f64>,
    pub max_abs_err: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl ComparisonReport {
    pub fn new(
        metadata: ReportMetadata,
        reference: Vec<f64>,
        candidate: Vec<f64>,
        per_m_abs_err: Vec<f64>,
        tolerance: f64,
    ) -> Self {
        // NaN errors must fail, so fold with an explicit NaN check
        let max_abs_err = per_m_abs_err.iter().fold(0.0f64, |acc, e| {
            if e.is_nan() || acc.is_nan() {
                f64::NAN
            } else {
                acc.max(*e)
            }
        });
        ComparisonReport {
            metadata,
            reference,
            candidate,
            per_m_abs_err,
            max_abs_err,
            tolerance,
            passed: max_abs_err <= tolerance,
        }
    }

    /// Element-wise absolute comparison of two real vectors.
    pub fn absolute(metadata: ReportMetadata, reference: Vec<f64>, candidate: Vec<f64>, tolerance: f64) -> Self {
        let errs = reference.iter().zip(&candidate).map(|(r, c)| (r - c).abs()).collect();
        ComparisonReport::new(metadata, reference, candidate, errs, tolerance)
    }

    pub fn summary(&self) -> String {
        format!(
            "{} [{} vs {}]: max error {:.3e} {} tolerance {:.1e} -> {}",
            self.metadata.check,
            self.metadata.reference_method,
            self.metadata.candidate_method,
            self.max_abs_err,
            match self.metadata.error_unit {
                ErrorUnit::Absolute => "(abs)",
                ErrorUnit::Sigma => "(sigma)",
            },
            self.tolerance,
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}

impl ReportMetadata {
    pub fn new(check: impl Into<String>, reference: impl Into<String>, candidate: impl Into<String>) -> Self {
        ReportMetadata {
            check: check.into(),
            reference_method: reference.into(),
            candidate_method: candidate.into(),
            error_unit: ErrorUnit::Absolute,
            seed: None,
            parameters: BTreeMap::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn unit(mut self, unit: ErrorUnit) -> Self {
        self.error_unit = unit;
        self
    }
}
