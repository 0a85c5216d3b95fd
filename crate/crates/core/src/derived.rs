//! Processed measures computed from the raw repository and forge counts.

use chrono::{Months, NaiveDate};
use serde::{Deserialize, Serialize};

use crate::forge::ForgeMetrics;
use crate::repo::{CodeMetrics, GitHistoryMetrics, LineCounts};

/// Calendar months of inactivity after which a package counts as dead.
pub const ALIVE_WINDOW_MONTHS: u32 = 18;

/// Recorded alongside the comment percentage so readers know what it divides by.
pub const PCT_COMMENTS_DENOMINATOR: &str = "code+comment";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Alive,
    Dead,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Alive => "alive",
            Status::Dead => "dead",
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DerivedError {
    #[error("last commit {last_commit} is after the assessment date {as_of}")]
    FutureDate {
        last_commit: NaiveDate,
        as_of: NaiveDate,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivedMetrics {
    pub status: Status,
    pub pct_issues_closed: Option<f64>,
    pub pct_comments: Option<f64>,
    pub pct_comments_denominator: String,
    pub as_of: NaiveDate,
}

/// Everything measured for one package: raw history, line counts and forge
/// counts, plus the values derived from them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsDocument {
    pub package_id: String,
    pub history: GitHistoryMetrics,
    pub code: CodeMetrics,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forge: Option<ForgeMetrics>,
    pub derived: DerivedMetrics,
}

/// Alive when the latest commit or release falls on or after `as_of` minus 18
/// calendar months. Releases dated after `as_of` are ignored.
pub fn compute_status(
    last_commit: NaiveDate,
    last_release: Option<NaiveDate>,
    as_of: NaiveDate,
) -> Result<Status, DerivedError> {
    if last_commit > as_of {
        return Err(DerivedError::FutureDate { last_commit, as_of });
    }
    let latest = last_release
        .filter(|r| *r <= as_of)
        .map_or(last_commit, |r| r.max(last_commit));
    // Month subtraction clamps to the last valid day (Aug 31 - 18 months = Feb 28/29).
    let cutoff = as_of
        .checked_sub_months(Months::new(ALIVE_WINDOW_MONTHS))
        .unwrap_or(NaiveDate::MIN);
    Ok(if latest >= cutoff { Status::Alive } else { Status::Dead })
}

pub fn pct_issues_closed(open: u64, closed: u64) -> Option<f64> {
    let total = open + closed;
    (total > 0).then(|| 100.0 * closed as f64 / total as f64)
}

pub fn pct_comments(counts: &LineCounts) -> Option<f64> {
    let denom = counts.code + counts.comment;
    (denom > 0).then(|| 100.0 * counts.comment as f64 / denom as f64)
}

/// Bundles the derived values; `open`/`closed` issue counts come from the forge
/// record when one is available.
pub fn derive(
    last_commit: NaiveDate,
    last_release: Option<NaiveDate>,
    issues: Option<(u64, u64)>,
    lines: &LineCounts,
    as_of: NaiveDate,
) -> Result<DerivedMetrics, DerivedError> {
    Ok(DerivedMetrics {
        status: compute_status(last_commit, last_release, as_of)?,
        pct_issues_closed: issues.and_then(|(open, closed)| pct_issues_closed(open, closed)),
        pct_comments: pct_comments(lines),
        pct_comments_denominator: PCT_COMMENTS_DENOMINATOR.to_string(),
        as_of,
    })
}
