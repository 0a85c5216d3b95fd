//! Hosting-platform counts (stars, forks, watchers, pull requests, issues),
//! fetched live or replayed from a snapshot file.

mod github;
mod snapshot;

use chrono::{DateTime, SubsecRound, Utc};
use serde::{Deserialize, Serialize};

pub use github::{
    fetch_forge_metrics, parse_remote, ForgeRemote, HttpResponse, ReplayTransport, Transport,
    DEFAULT_API_BASE, TOKEN_ENV,
};
pub use snapshot::{load_forge_snapshot, serialize_forge_snapshot, SnapshotError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForgeMetrics {
    pub stars: u64,
    pub forks: u64,
    /// Subscribers, not the legacy star-aliased watcher count.
    pub watchers: u64,
    pub open_prs: u64,
    pub closed_prs: u64,
    /// Issues only; pull requests are subtracted when the forge lists them together.
    pub open_issues: u64,
    pub closed_issues: u64,
    pub fetched_at: DateTime<Utc>,
    /// Whether `open_prs` counts draft pull requests.
    #[serde(default = "default_true")]
    pub drafts_included: bool,
}

fn default_true() -> bool {
    true
}

impl ForgeMetrics {
    /// Copy with `fetched_at` truncated to whole seconds, the snapshot precision.
    pub fn at_second_precision(&self) -> ForgeMetrics {
        ForgeMetrics {
            fetched_at: self.fetched_at.trunc_subsecs(0),
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ForgeError {
    #[error("unsupported forge: {0}")]
    UnsupportedForge(String),
    #[error("forge rejected the request (HTTP {status}); set {} to a valid token", TOKEN_ENV)]
    AuthRequired { status: u16 },
    #[error("forge rate limit reached{}", retry_hint(*.retry_after))]
    RateLimited { retry_after: Option<u64> },
    #[error("network error: {0}")]
    NetworkError(String),
}

fn retry_hint(retry_after: Option<u64>) -> String {
    retry_after.map(|s| format!("; retry after {s}s")).unwrap_or_default()
}
