//! On-disk layout of an assessment workspace:
//!
//! ```text
//! sotp.toml                    configuration
//! ledger.toml                  candidate ledger
//! rubric.toml                  optional replacement rubric
//! packages/<id>/answers.txt    assessor answers
//! packages/<id>/forge.snapshot forge counts (fetched or hand-entered)
//! packages/<id>/metrics.json   output of `mine`
//! packages/<id>/scores.json    output of `score`
//! ranking.json                 output of `rank`
//! report/                      output of `report`
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use sotp_core::ahp::{AhpRanking, SensitivityReport};
use sotp_core::catalog::{builtin_catalog, parse_answers, AnswerSet, QuestionCatalog};
use sotp_core::forge::{load_forge_snapshot, ForgeMetrics};
use sotp_core::scoring::{builtin_rubric, Rubric};
use sotp_core::workflow::PackageLedger;

use crate::config::Config;
use crate::failure::{Classify, Failure, Kind, Outcome};

pub const LEDGER_FILE: &str = "ledger.toml";
pub const RUBRIC_FILE: &str = "rubric.toml";
pub const RANKING_FILE: &str = "ranking.json";
pub const ANSWERS_FILE: &str = "answers.txt";
pub const SNAPSHOT_FILE: &str = "forge.snapshot";
pub const METRICS_FILE: &str = "metrics.json";
pub const SCORES_FILE: &str = "scores.json";
pub const REPORT_DIR: &str = "report";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankingDocument {
    pub ranking: AhpRanking,
    pub sensitivity: SensitivityReport,
}

pub struct Workspace {
    pub root: PathBuf,
    pub config: Config,
    pub catalog: QuestionCatalog,
}

pub fn read(path: &Path) -> Outcome<String> {
    fs::read_to_string(path).or_fail_with(Kind::Io, || format!("reading {}", path.display()))
}

pub fn write(path: &Path, content: &str) -> Outcome<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).or_fail_with(Kind::Io, || format!("creating {}", parent.display()))?;
    }
    fs::write(path, content).or_fail_with(Kind::Io, || format!("writing {}", path.display()))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Outcome<()> {
    let mut text = serde_json::to_string_pretty(value).or_fail(Kind::Computation)?;
    text.push('\n');
    write(path, &text)
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Outcome<T> {
    let text = read(path)?;
    serde_json::from_str(&text).or_fail_with(Kind::Validation, || format!("parsing {}", path.display()))
}

impl Workspace {
    pub fn open(root: &Path) -> Outcome<Workspace> {
        if !root.is_dir() {
            return Err(Failure::new(
                Kind::Io,
                anyhow::anyhow!("workspace {} is not a directory", root.display()),
            ));
        }
        Ok(Workspace {
            root: root.to_path_buf(),
            config: Config::load(root)?,
            catalog: builtin_catalog(),
        })
    }

    pub fn package_dir(&self, id: &str) -> PathBuf {
        self.root.join("packages").join(id)
    }

    pub fn package_file(&self, id: &str, name: &str) -> PathBuf {
        self.package_dir(id).join(name)
    }

    pub fn ledger(&self) -> Outcome<PackageLedger> {
        let path = self.root.join(LEDGER_FILE);
        PackageLedger::from_toml_str(&read(&path)?)
            .or_fail_with(Kind::Validation, || format!("{}", path.display()))
    }

    pub fn rubric(&self) -> Outcome<Rubric> {
        let path = self.root.join(RUBRIC_FILE);
        let rubric = if path.exists() {
            Rubric::from_toml_str(&read(&path)?).or_fail_with(Kind::Validation, || format!("{}", path.display()))?
        } else {
            builtin_rubric()
        };
        rubric
            .validate(&self.catalog)
            .or_fail_with(Kind::Validation, || "rubric does not match the catalog".to_string())?;
        Ok(rubric)
    }

    pub fn answers(&self, id: &str) -> Outcome<AnswerSet> {
        let path = self.package_file(id, ANSWERS_FILE);
        let answers = parse_answers(&read(&path)?, &self.catalog)
            .or_fail_with(Kind::Validation, || format!("{}", path.display()))?;
        if answers.package_id != id {
            return Err(Failure::validation(format!(
                "{}: answers are for `{}`, expected `{id}`",
                path.display(),
                answers.package_id
            )));
        }
        Ok(answers)
    }

    pub fn snapshot(&self, id: &str) -> Outcome<Option<ForgeMetrics>> {
        let path = self.package_file(id, SNAPSHOT_FILE);
        if !path.exists() {
            return Ok(None);
        }
        load_forge_snapshot(&read(&path)?)
            .map(Some)
            .or_fail_with(Kind::Validation, || format!("{}", path.display()))
    }

    pub fn ranking(&self) -> Outcome<RankingDocument> {
        read_json(&self.root.join(RANKING_FILE))
    }

    /// Selected packages, optionally narrowed to one id.
    pub fn targets(&self, ledger: &PackageLedger, only: Option<&str>) -> Outcome<Vec<String>> {
        let selected = ledger.selected_ids();
        if selected.is_empty() {
            return Err(Failure::validation(
                "no selected packages in the ledger; run `sotp filter` first",
            ));
        }
        match only {
            None => Ok(selected),
            Some(id) if selected.iter().any(|s| s == id) => Ok(vec![id.to_string()]),
            Some(id) => Err(Failure::validation(format!("package `{id}` is not in the selected set"))),
        }
    }
}
