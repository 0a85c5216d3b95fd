//! Flat `key = value` snapshot of a [`ForgeMetrics`] record:
//!
//! ```text
//! stars = 42
//! forks = 7
//! watchers = 5
//! open_prs = 2
//! closed_prs = 31
//! open_issues = 15
//! closed_issues = 120
//! fetched_at = 2025-06-01T12:00:00Z
//! drafts_included = true
//! ```

use std::collections::BTreeMap;

use chrono::{DateTime, SecondsFormat, Utc};

use super::ForgeMetrics;

const COUNT_FIELDS: [&str; 7] = [
    "stars",
    "forks",
    "watchers",
    "open_prs",
    "closed_prs",
    "open_issues",
    "closed_issues",
];
const FETCHED_AT: &str = "fetched_at";
const DRAFTS: &str = "drafts_included";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SnapshotError {
    #[error("snapshot is missing `{0}`")]
    MissingField(&'static str),
    #[error("snapshot line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("snapshot field `{field}` has invalid value `{value}`")]
    Validation { field: String, value: String },
}

fn syntax(line: usize, message: impl Into<String>) -> SnapshotError {
    SnapshotError::Syntax {
        line,
        message: message.into(),
    }
}

pub fn load_forge_snapshot(text: &str) -> Result<ForgeMetrics, SnapshotError> {
    let known = |k: &str| COUNT_FIELDS.contains(&k) || k == FETCHED_AT || k == DRAFTS;
    let mut fields: BTreeMap<String, (usize, String)> = BTreeMap::new();
    for (idx, raw) in text.trim_start_matches('\u{feff}').lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (key, value) = trimmed
            .split_once('=')
            .ok_or_else(|| syntax(line, "expected `key = value`"))?;
        let key = key.trim();
        if !known(key) {
            return Err(syntax(line, format!("unknown key `{key}`")));
        }
        if fields.insert(key.to_string(), (line, value.trim().to_string())).is_some() {
            return Err(syntax(line, format!("duplicate key `{key}`")));
        }
    }

    let mut counts = [0u64; 7];
    for (slot, name) in counts.iter_mut().zip(COUNT_FIELDS) {
        let (line, value) = fields.get(name).ok_or(SnapshotError::MissingField(name))?;
        let parsed: i64 = value
            .parse()
            .map_err(|_| syntax(*line, format!("`{name}` is not an integer")))?;
        *slot = u64::try_from(parsed).map_err(|_| SnapshotError::Validation {
            field: name.to_string(),
            value: value.clone(),
        })?;
    }

    let (line, stamp) = fields.get(FETCHED_AT).ok_or(SnapshotError::MissingField(FETCHED_AT))?;
    let fetched_at = DateTime::parse_from_rfc3339(stamp)
        .map_err(|e| syntax(*line, format!("bad timestamp: {e}")))?
        .with_timezone(&Utc);

    let drafts_included = match fields.get(DRAFTS) {
        None => true,
        Some((line, v)) => v
            .parse()
            .map_err(|_| syntax(*line, "`drafts_included` must be true or false"))?,
    };

    let [stars, forks, watchers, open_prs, closed_prs, open_issues, closed_issues] = counts;
    Ok(ForgeMetrics {
        stars,
        forks,
        watchers,
        open_prs,
        closed_prs,
        open_issues,
        closed_issues,
        fetched_at,
        drafts_included,
    })
}

pub fn serialize_forge_snapshot(m: &ForgeMetrics) -> String {
    let values = [
        m.stars,
        m.forks,
        m.watchers,
        m.open_prs,
        m.closed_prs,
        m.open_issues,
        m.closed_issues,
    ];
    let mut out = String::new();
    for (name, value) in COUNT_FIELDS.iter().zip(values) {
        out.push_str(&format!("{name} = {value}\n"));
    }
    out.push_str(&format!(
        "{FETCHED_AT} = {}\n",
        m.fetched_at.to_rfc3339_opts(SecondsFormat::Secs, true)
    ));
    out.push_str(&format!("{DRAFTS} = {}\n", m.drafts_included));
    out
}
