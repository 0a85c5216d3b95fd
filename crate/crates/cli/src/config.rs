use std::path::Path;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use sotp_core::ahp::{criteria_weights_from_matrix, equal_weights, normalize_weights, MatrixMode, ReciprocalMatrix};
use sotp_core::workflow::DEFAULT_TARGET_SIZE;

use crate::failure::{Classify, Failure, Kind, Outcome};

pub const CONFIG_FILE: &str = "sotp.toml";

pub const DEFAULT_DELTA: f64 = 1.0;

/// Workspace configuration read from `sotp.toml`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(deserialize_with = "toml_date")]
    pub as_of: NaiveDate,
    #[serde(default = "default_target")]
    pub target_size: usize,
    #[serde(default)]
    pub ahp_mode: MatrixMode,
    #[serde(default = "default_delta")]
    pub sensitivity_delta: f64,
    /// Nine raw weights in quality order, normalized on load.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub criteria_weights: Option<Vec<f64>>,
    /// 9x9 pairwise comparison of the qualities; used when no weights are given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub criteria_matrix: Option<Vec<Vec<f64>>>,
    /// Packages last changed before this date are candidates for the age filter.
    #[serde(default, deserialize_with = "toml_date_opt", skip_serializing_if = "Option::is_none")]
    pub age_threshold: Option<NaiveDate>,
    /// Forge API root, overridable for mirrors.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forge_api: Option<String>,
}

/// Accepts a bare TOML date (`2025-06-01`) or a quoted one.
#[derive(Deserialize)]
#[serde(untagged)]
enum DateField {
    Bare(toml::value::Datetime),
    Quoted(String),
}

fn parse_date<E: serde::de::Error>(field: DateField) -> Result<NaiveDate, E> {
    let text = match field {
        DateField::Bare(d) => match (d.date, d.time) {
            (Some(date), None) => date.to_string(),
            _ => return Err(E::custom(format!("expected a date without a time, got {d}"))),
        },
        DateField::Quoted(s) => s,
    };
    NaiveDate::parse_from_str(&text, "%Y-%m-%d").map_err(|e| E::custom(format!("invalid date `{text}`: {e}")))
}

fn toml_date<'de, D: serde::Deserializer<'de>>(d: D) -> Result<NaiveDate, D::Error> {
    parse_date(DateField::deserialize(d)?)
}

fn toml_date_opt<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Option<NaiveDate>, D::Error> {
    Option::<DateField>::deserialize(d)?.map(parse_date).transpose()
}

fn default_target() -> usize {
    DEFAULT_TARGET_SIZE
}

fn default_delta() -> f64 {
    DEFAULT_DELTA
}

impl Config {
    pub fn load(root: &Path) -> Outcome<Config> {
        let path = root.join(CONFIG_FILE);
        let text = std::fs::read_to_string(&path).or_fail_with(Kind::Io, || format!("reading {}", path.display()))?;
        let config: Config =
            toml::from_str(&text).or_fail_with(Kind::Validation, || format!("parsing {}", path.display()))?;
        if !(config.sensitivity_delta.is_finite() && config.sensitivity_delta > 0.0) {
            return Err(Failure::validation(format!(
                "{CONFIG_FILE}: sensitivity_delta must be positive, got {}",
                config.sensitivity_delta
            )));
        }
        Ok(config)
    }

    /// Normalized criteria weights: explicit weights, else the comparison
    /// matrix's priority vector, else equal weights.
    pub fn weights(&self) -> Outcome<Vec<f64>> {
        if let Some(raw) = &self.criteria_weights {
            return normalize_weights(raw).or_fail_with(Kind::Validation, || format!("{CONFIG_FILE}: criteria_weights"));
        }
        if let Some(rows) = &self.criteria_matrix {
            let m = ReciprocalMatrix::new(rows.clone())
                .or_fail_with(Kind::Validation, || format!("{CONFIG_FILE}: criteria_matrix"))?;
            return Ok(criteria_weights_from_matrix(&m).or_fail(Kind::Computation)?.priorities);
        }
        Ok(equal_weights())
    }
}
