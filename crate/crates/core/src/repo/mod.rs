//! Raw repository measures mined from a local clone: commit history through
//! `git log`, and a native source-tree line counter.

mod history;
pub mod lines;
mod tree;

use std::path::PathBuf;

pub use history::{analyze_history, parse_log, summarize, CommitRecord, GitHistoryMetrics};
pub use lines::{count_lines, detect_binary, LineCounts};
pub use tree::{aggregate_tree, CodeMetrics, FileClass, TreeOptions};

#[derive(Debug, thiserror::Error)]
pub enum RepoError {
    #[error("{0} is not a git repository")]
    NotARepository(PathBuf),
    #[error("repository has no commits")]
    NoHistory,
    #[error("`git` executable not found on the search path")]
    ToolUnavailable,
    #[error("git failed: {0}")]
    ToolFailure(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
