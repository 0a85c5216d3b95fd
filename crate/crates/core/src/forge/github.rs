use std::collections::BTreeMap;

use chrono::{DateTime, SubsecRound, Utc};
use serde_json::Value;
use url::Url;

use super::{ForgeError, ForgeMetrics};

pub const DEFAULT_API_BASE: &str = "https://api.github.com";
pub const TOKEN_ENV: &str = "GITHUB_TOKEN";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HttpResponse {
    pub status: u16,
    pub headers: Vec<(String, String)>,
    pub body: String,
}

impl HttpResponse {
    pub fn ok(body: impl Into<String>) -> HttpResponse {
        HttpResponse {
            status: 200,
            headers: Vec::new(),
            body: body.into(),
        }
    }

    pub fn header(&self, name: &str) -> Option<&str> {
        self.headers
            .iter()
            .find(|(k, _)| k.eq_ignore_ascii_case(name))
            .map(|(_, v)| v.trim())
    }
}

/// Minimal HTTP GET used by the forge client. Errors are transport failures
/// (DNS, TLS, timeouts); non-2xx statuses come back as responses.
pub trait Transport: Sync {
    fn get(&self, url: &str, token: Option<&str>) -> Result<HttpResponse, String>;
}

/// Serves canned responses keyed by full URL; anything else is a 404.
#[derive(Debug, Clone, Default)]
pub struct ReplayTransport {
    pub responses: BTreeMap<String, HttpResponse>,
}

impl ReplayTransport {
    pub fn with(mut self, url: impl Into<String>, response: HttpResponse) -> Self {
        self.responses.insert(url.into(), response);
        self
    }
}

impl Transport for ReplayTransport {
    fn get(&self, url: &str, _token: Option<&str>) -> Result<HttpResponse, String> {
        Ok(self.responses.get(url).cloned().unwrap_or(HttpResponse {
            status: 404,
            headers: Vec::new(),
            body: r#"{"message":"Not Found"}"#.into(),
        }))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForgeRemote {
    pub owner: String,
    pub repo: String,
}

/// Accepts `https://github.com/owner/repo[.git][/...]` and `git@github.com:owner/repo.git`.
pub fn parse_remote(remote: &str) -> Result<ForgeRemote, ForgeError> {
    let unsupported = || ForgeError::UnsupportedForge(remote.to_string());
    let trimmed = remote.trim();
    let (host, path) = if let Some(rest) = trimmed.strip_prefix("git@") {
        rest.split_once(':').ok_or_else(unsupported)?
    } else {
        let url = Url::parse(trimmed).map_err(|_| unsupported())?;
        if !matches!(url.scheme(), "https" | "http" | "ssh" | "git") {
            return Err(unsupported());
        }
        let host = url.host_str().ok_or_else(unsupported)?.to_string();
        let path = url.path().to_string();
        return finish(&host, &path).ok_or_else(unsupported);
    };
    finish(host, path).ok_or_else(unsupported)
}

fn finish(host: &str, path: &str) -> Option<ForgeRemote> {
    if !matches!(host.to_ascii_lowercase().as_str(), "github.com" | "www.github.com") {
        return None;
    }
    let mut parts = path.split('/').filter(|s| !s.is_empty());
    let owner = parts.next()?.to_string();
    let repo = parts.next()?.trim_end_matches(".git").to_string();
    (!repo.is_empty()).then_some(ForgeRemote { owner, repo })
}

struct Client<'a> {
    transport: &'a dyn Transport,
    api_base: &'a str,
    token: Option<&'a str>,
    now: DateTime<Utc>,
}

impl Client<'_> {
    fn get_json(&self, url: &str) -> Result<Value, ForgeError> {
        let resp = self
            .transport
            .get(url, self.token)
            .map_err(ForgeError::NetworkError)?;
        let exhausted = resp.header("x-ratelimit-remaining") == Some("0");
        match resp.status {
            200..=299 => serde_json::from_str(&resp.body)
                .map_err(|e| ForgeError::NetworkError(format!("malformed JSON from {url}: {e}"))),
            429 => Err(self.rate_limited(&resp)),
            403 if exhausted => Err(self.rate_limited(&resp)),
            401 | 403 => Err(ForgeError::AuthRequired { status: resp.status }),
            status => Err(ForgeError::NetworkError(format!("HTTP {status} from {url}"))),
        }
    }

    fn rate_limited(&self, resp: &HttpResponse) -> ForgeError {
        let retry_after = resp
            .header("retry-after")
            .and_then(|v| v.parse::<u64>().ok())
            .or_else(|| {
                let reset: i64 = resp.header("x-ratelimit-reset")?.parse().ok()?;
                Some((reset - self.now.timestamp()).max(0) as u64)
            });
        ForgeError::RateLimited { retry_after }
    }

    fn search_count(&self, remote: &ForgeRemote, filter: &str) -> Result<u64, ForgeError> {
        let url = format!(
            "{}/search/issues?q=repo:{}/{}+{filter}&per_page=1",
            self.api_base, remote.owner, remote.repo
        );
        let value = self.get_json(&url)?;
        field(&value, "total_count", &url)
    }
}

fn field(value: &Value, name: &str, url: &str) -> Result<u64, ForgeError> {
    value
        .get(name)
        .and_then(Value::as_u64)
        .ok_or_else(|| ForgeError::NetworkError(format!("response from {url} lacks `{name}`")))
}

/// Fetches counts for `remote` through `transport` against a GitHub-style REST
/// API rooted at `api_base`. `now` becomes `fetched_at`, truncated to seconds.
pub fn fetch_forge_metrics(
    remote: &str,
    token: Option<&str>,
    transport: &dyn Transport,
    api_base: &str,
    now: DateTime<Utc>,
) -> Result<ForgeMetrics, ForgeError> {
    let target = parse_remote(remote)?;
    let client = Client {
        transport,
        api_base: api_base.trim_end_matches('/'),
        token,
        now,
    };
    let repo_url = format!("{}/repos/{}/{}", client.api_base, target.owner, target.repo);
    let repo = client.get_json(&repo_url)?;
    let open_prs = client.search_count(&target, "type:pr+state:open")?;
    let closed_prs = client.search_count(&target, "type:pr+state:closed")?;
    let closed_issues = client.search_count(&target, "type:issue+state:closed")?;
    // The repository's open issue count includes open pull requests.
    let listed_open = field(&repo, "open_issues_count", &repo_url)?;
    Ok(ForgeMetrics {
        stars: field(&repo, "stargazers_count", &repo_url)?,
        forks: field(&repo, "forks_count", &repo_url)?,
        watchers: field(&repo, "subscribers_count", &repo_url)?,
        open_prs,
        closed_prs,
        open_issues: listed_open.saturating_sub(open_prs),
        closed_issues,
        fetched_at: now.trunc_subsecs(0),
        drafts_included: true,
    })
}
