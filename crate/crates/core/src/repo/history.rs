use std::collections::{BTreeMap, HashSet};
use std::io;
use std::path::Path;
use std::process::{Command, Output};

use chrono::{DateTime, Datelike, Months, NaiveDate, Utc};
use serde::{Deserialize, Serialize};

use super::RepoError;

const RECORD_SEP: char = '\u{1e}';
const FIELD_SEP: char = '\u{1f}';
/// Record separator, strict ISO committer date, unit separator, author email.
const LOG_FORMAT: &str = "--format=%x1e%cI%x1f%ae";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GitHistoryMetrics {
    pub total_commits: u64,
    /// Calendar years of the five-year window ending at the as-of year, starting no
    /// earlier than the first commit's year.
    pub commits_by_year: BTreeMap<i32, u64>,
    /// `YYYY-MM` for each of the twelve months ending at the as-of month.
    pub commits_by_month: BTreeMap<String, u64>,
    pub lines_added: u64,
    pub lines_deleted: u64,
    pub first_commit_date: NaiveDate,
    pub last_commit_date: NaiveDate,
    /// Distinct lowercased author emails.
    pub developer_count: u64,
}

/// One parsed `git log` record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommitRecord {
    pub committed: DateTime<Utc>,
    pub author_email: String,
    pub added: u64,
    pub deleted: u64,
}

fn git(repo: &Path, args: &[&str]) -> Result<Output, RepoError> {
    Command::new("git")
        .arg("--no-pager")
        .arg("-C")
        .arg(repo)
        .args(args)
        .env("LC_ALL", "C")
        .output()
        .map_err(|e| match e.kind() {
            io::ErrorKind::NotFound => RepoError::ToolUnavailable,
            _ => RepoError::ToolFailure(e.to_string()),
        })
}

fn stderr_excerpt(output: &Output) -> String {
    let text = String::from_utf8_lossy(&output.stderr);
    text.lines().take(3).collect::<Vec<_>>().join(" | ")
}

fn ensure_repository(repo: &Path) -> Result<(), RepoError> {
    let not_repo = || RepoError::NotARepository(repo.to_path_buf());
    if !repo.is_dir() {
        return Err(not_repo());
    }
    let out = git(repo, &["rev-parse", "--show-toplevel"])?;
    if !out.status.success() {
        let msg = stderr_excerpt(&out);
        return Err(if msg.contains("not a git repository") {
            not_repo()
        } else {
            RepoError::ToolFailure(msg)
        });
    }
    // Refuse to mine an enclosing repository when pointed at a plain subdirectory.
    let top = String::from_utf8_lossy(&out.stdout).trim().to_string();
    let same = match (Path::new(&top).canonicalize(), repo.canonicalize()) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    };
    if !same {
        return Err(not_repo());
    }
    let head = git(repo, &["rev-parse", "--verify", "--quiet", "HEAD"])?;
    if !head.status.success() {
        return Err(RepoError::NoHistory);
    }
    Ok(())
}

/// Parses `git log --numstat` output produced with [`LOG_FORMAT`].
pub fn parse_log(text: &str) -> Result<Vec<CommitRecord>, RepoError> {
    let mut commits = Vec::new();
    for record in text.split(RECORD_SEP).filter(|r| !r.trim().is_empty()) {
        let mut lines = record.lines();
        let header = lines.next().unwrap_or_default();
        let (date, email) = header
            .split_once(FIELD_SEP)
            .ok_or_else(|| RepoError::ToolFailure(format!("unexpected log header `{header}`")))?;
        let committed = DateTime::parse_from_rfc3339(date.trim())
            .map_err(|e| RepoError::ToolFailure(format!("bad committer date `{date}`: {e}")))?
            .with_timezone(&Utc);
        let mut added = 0;
        let mut deleted = 0;
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let mut fields = line.splitn(3, '\t');
            let (Some(a), Some(d)) = (fields.next(), fields.next()) else {
                continue;
            };
            // `-` marks a binary delta.
            if let (Ok(a), Ok(d)) = (a.parse::<u64>(), d.parse::<u64>()) {
                added += a;
                deleted += d;
            }
        }
        commits.push(CommitRecord {
            committed,
            author_email: email.trim().to_lowercase(),
            added,
            deleted,
        });
    }
    Ok(commits)
}

fn month_key(date: NaiveDate) -> String {
    format!("{:04}-{:02}", date.year(), date.month())
}

/// Aggregates parsed commits into history metrics relative to `as_of`.
pub fn summarize(commits: &[CommitRecord], as_of: NaiveDate) -> Result<GitHistoryMetrics, RepoError> {
    let dates: Vec<NaiveDate> = commits.iter().map(|c| c.committed.date_naive()).collect();
    let (Some(&first), Some(&last)) = (dates.iter().min(), dates.iter().max()) else {
        return Err(RepoError::NoHistory);
    };

    let start_year = (as_of.year() - 4).max(first.year());
    let mut commits_by_year: BTreeMap<i32, u64> =
        (start_year..=as_of.year()).map(|y| (y, 0)).collect();

    let as_of_month = NaiveDate::from_ymd_opt(as_of.year(), as_of.month(), 1).unwrap();
    let mut commits_by_month: BTreeMap<String, u64> = (0..12)
        .map(|back| month_key(as_of_month - Months::new(back)))
        .map(|k| (k, 0))
        .collect();

    for date in dates.iter().filter(|d| **d <= as_of) {
        if let Some(n) = commits_by_year.get_mut(&date.year()) {
            *n += 1;
        }
        if let Some(n) = commits_by_month.get_mut(&month_key(*date)) {
            *n += 1;
        }
    }

    let developers: HashSet<&str> = commits.iter().map(|c| c.author_email.as_str()).collect();
    Ok(GitHistoryMetrics {
        total_commits: commits.len() as u64,
        commits_by_year,
        commits_by_month,
        lines_added: commits.iter().map(|c| c.added).sum(),
        lines_deleted: commits.iter().map(|c| c.deleted).sum(),
        first_commit_date: first,
        last_commit_date: last,
        developer_count: developers.len() as u64,
    })
}

/// Mines commit counts, line deltas and developer count from the clone at `repo`.
///
/// Buckets use committer dates in UTC. Requires `git` on the search path.
pub fn analyze_history(repo: &Path, as_of: NaiveDate) -> Result<GitHistoryMetrics, RepoError> {
    ensure_repository(repo)?;
    let out = git(
        repo,
        &[
            "-c",
            "core.quotepath=false",
            "log",
            "--no-color",
            "--no-renames",
            "--numstat",
            LOG_FORMAT,
        ],
    )?;
    if !out.status.success() {
        return Err(RepoError::ToolFailure(stderr_excerpt(&out)));
    }
    let text = String::from_utf8_lossy(&out.stdout);
    summarize(&parse_log(&text)?, as_of)
}
