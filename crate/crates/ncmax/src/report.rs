use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "ncmax/1";

/// An offending trial with its full input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Violation {
    pub trial_index: u64,
    pub witness: serde_json::Value,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportDocument {
    pub schema: String,
    pub suite: String,
    pub trials: u64,
    pub seed: u64,
    pub passed: bool,
    pub violations: Vec<Violation>,
    /// Largest value of the suite's defining ratio over all trials.
    pub extremal_ratio: f64,
    /// Input of the trial attaining `extremal_ratio`.
    pub extremal_witness: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub constants: BTreeMap<String, f64>,
    pub runtime_millis: u64,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}
