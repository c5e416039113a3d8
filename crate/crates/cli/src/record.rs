//! JSON run record written by `casimir eval`.

use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::model::OptionsEcho;

pub const TOOL: &str = "casimir";

/// Seconds since the epoch; `SOURCE_DATE_EPOCH` pins it for reproducible records.
pub fn timestamp() -> u64 {
    std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or_else(|| {
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0)
        })
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Inputs {
    pub sphere: String,
    pub substrate: String,
    pub ambient_eps: f64,
    pub radius_nm: f64,
    pub z_nm: f64,
    #[serde(rename = "z_over_R")]
    pub z_over_r: f64,
}

#[derive(Debug, Clone, Serialize, PartialEq, Default)]
pub struct Outputs {
    pub valid: bool,
    #[serde(rename = "energy_eV")]
    pub energy_ev: Option<f64>,
    #[serde(rename = "energy_error_eV")]
    pub energy_error_ev: Option<f64>,
    #[serde(rename = "force_eV_per_nm")]
    pub force_ev_per_nm: Option<f64>,
    #[serde(rename = "force_error_eV_per_nm")]
    pub force_error_ev_per_nm: Option<f64>,
    #[serde(rename = "force_pN")]
    pub force_pn: Option<f64>,
    pub one_sided: Option<bool>,
    pub contrast_factor: f64,
    #[serde(rename = "d_over_R")]
    pub d_over_r: f64,
    pub depolarization_factors: Vec<f64>,
    pub retardation_warning: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RunRecord {
    pub tool: &'static str,
    pub version: &'static str,
    pub timestamp: u64,
    pub inputs: Inputs,
    pub options: OptionsEcho,
    pub outputs: Outputs,
}

impl RunRecord {
    pub fn new(inputs: Inputs, options: OptionsEcho, outputs: Outputs) -> Self {
        Self {
            tool: TOOL,
            version: env!("CARGO_PKG_VERSION"),
            timestamp: timestamp(),
            inputs,
            options,
            outputs,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }
}
