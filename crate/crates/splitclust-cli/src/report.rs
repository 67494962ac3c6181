//! JSON report document and CSV summary emitted by the CLI.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetInfo {
    pub path: String,
    pub m: usize,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub k_max: usize,
    pub starts: usize,
    pub m1: usize,
    pub m2: usize,
    pub min_split: usize,
    pub distance_factor: f64,
    pub max_distance_retries: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    /// Seconds spent reading inputs.
    pub t_init: f64,
    /// Cumulative seconds after solving each level, keyed by k in the level
    /// entries; this is `t_init + t_k(k_max)`.
    pub t_total: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelEntry {
    pub k: usize,
    pub f_k: f64,
    /// Cumulative solve seconds up to and including this level.
    pub t_k: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub split_cluster: Option<usize>,
    #[serde(default)]
    pub degenerate_split: bool,
    /// Relative error in percent against a supplied reference objective.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub e_k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dbi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub di: Option<f64>,
    /// Status of the validity indices when they are absent, e.g.
    /// `K_TOO_SMALL` or `DI_UNBOUNDED`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub index_status: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExternalScores {
    pub accuracy: f64,
    pub ari: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorObject {
    pub code: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dataset: Option<DatasetInfo>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub config: Option<ConfigEcho>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timings: Option<Timings>,
    #[serde(default)]
    pub levels: Vec<LevelEntry>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub external: Option<ExternalScores>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub status: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<ErrorObject>,
}

impl ReportDocument {
    pub fn empty() -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            dataset: None,
            config: None,
            timings: None,
            levels: Vec::new(),
            external: None,
            status: None,
            error: None,
        }
    }

    pub fn error(code: &str, message: String) -> Self {
        Self {
            error: Some(ErrorObject {
                code: code.to_string(),
                message,
            }),
            ..Self::empty()
        }
    }
}

/// Spreadsheet-friendly summary: one row per level, blank cells for absent
/// values.
pub fn summary_csv(levels: &[LevelEntry]) -> String {
    let mut out = String::from("k,f_k,E_k,DBI,DI,t_k\n");
    let cell = |v: Option<f64>| v.map_or(String::new(), |x| format!("{x}"));
    for l in levels {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            l.k,
            l.f_k,
            cell(l.e_k),
            cell(l.dbi),
            cell(l.di),
            l.t_k
        ));
    }
    out
}
