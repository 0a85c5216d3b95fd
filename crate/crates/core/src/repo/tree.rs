use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use walkdir::WalkDir;

use super::lines::{count_lines, detect_binary, language_for_path, LineCounts};
use super::RepoError;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeMetrics {
    pub text_files: u64,
    pub binary_files: u64,
    pub per_language: BTreeMap<String, LineCounts>,
    pub totals: LineCounts,
}

/// Classification of one file in the tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FileClass {
    Binary,
    Text {
        language: &'static str,
        counts: LineCounts,
    },
}

impl FileClass {
    pub fn of(path: &Path, content: &[u8]) -> FileClass {
        if detect_binary(content) {
            return FileClass::Binary;
        }
        let language = language_for_path(path).name;
        FileClass::Text {
            language,
            counts: count_lines(content, language),
        }
    }
}

impl FromIterator<FileClass> for CodeMetrics {
    fn from_iter<I: IntoIterator<Item = FileClass>>(iter: I) -> Self {
        let mut metrics = CodeMetrics::default();
        for file in iter {
            match file {
                FileClass::Binary => metrics.binary_files += 1,
                FileClass::Text { language, counts } => {
                    metrics.text_files += 1;
                    *metrics.per_language.entry(language.to_string()).or_default() += counts;
                    metrics.totals += counts;
                }
            }
        }
        metrics
    }
}

#[derive(Debug, Clone, Default)]
pub struct TreeOptions {
    /// Paths relative to the tree root (e.g. `vendor`, `third_party/eigen`) to skip.
    pub ignore: Vec<PathBuf>,
}

fn collect_files(root: &Path, options: &TreeOptions) -> Result<Vec<PathBuf>, RepoError> {
    let walker = WalkDir::new(root).sort_by_file_name().into_iter().filter_entry(|entry| {
        if entry.depth() == 0 {
            return true;
        }
        if entry.file_name() == ".git" {
            return false;
        }
        let rel = entry.path().strip_prefix(root).unwrap_or(entry.path());
        !options.ignore.iter().any(|skip| rel.starts_with(skip))
    });
    let mut files = Vec::new();
    for entry in walker {
        let entry = entry.map_err(|e| RepoError::Io {
            path: e.path().unwrap_or(root).to_path_buf(),
            source: e.into(),
        })?;
        if entry.file_type().is_file() {
            files.push(entry.into_path());
        }
    }
    Ok(files)
}

/// Walks the working tree under `root` (skipping `.git`), classifying and
/// counting every regular file. Symlinks are not followed.
pub fn aggregate_tree(root: &Path, options: &TreeOptions) -> Result<CodeMetrics, RepoError> {
    if !root.is_dir() {
        return Err(RepoError::Io {
            path: root.to_path_buf(),
            source: std::io::Error::new(std::io::ErrorKind::NotFound, "not a directory"),
        });
    }
    let files = collect_files(root, options)?;
    let classes = files
        .par_iter()
        .map(|path| {
            std::fs::read(path)
                .map(|content| FileClass::of(path, &content))
                .map_err(|source| RepoError::Io {
                    path: path.clone(),
                    source,
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(classes.into_iter().collect())
}
