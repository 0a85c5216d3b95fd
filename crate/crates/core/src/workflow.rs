//! Candidate-package ledger. Records are never deleted: filtering moves them
//! to a `filtered` state with a reason, and every transition is logged.

use std::collections::BTreeSet;
use std::path::PathBuf;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

pub const DEFAULT_TARGET_SIZE: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FilterReason {
    /// Fails one of the admission flags (viewable source, available metrics, ...).
    Eligibility,
    /// Outside the narrowed functionality considered.
    Scope,
    /// Installation instructions not clear and easy to follow.
    Usage,
    /// Least recently changed.
    Age,
}

impl FilterReason {
    pub fn as_str(self) -> &'static str {
        match self {
            FilterReason::Eligibility => "eligibility",
            FilterReason::Scope => "scope",
            FilterReason::Usage => "usage",
            FilterReason::Age => "age",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RecordState {
    Candidate,
    Selected,
    Filtered { reason: FilterReason, note: String },
}

impl RecordState {
    pub fn label(&self) -> &'static str {
        match self {
            RecordState::Candidate => "candidate",
            RecordState::Selected => "selected",
            RecordState::Filtered { .. } => "filtered",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eligibility {
    pub in_scope: bool,
    pub source_viewable: bool,
    pub metrics_available: bool,
    pub not_incomplete: bool,
}

impl Default for Eligibility {
    fn default() -> Self {
        Eligibility {
            in_scope: true,
            source_viewable: true,
            metrics_available: true,
            not_incomplete: true,
        }
    }
}

impl Eligibility {
    pub fn all(&self) -> bool {
        self.in_scope && self.source_viewable && self.metrics_available && self.not_incomplete
    }

    fn failures(&self) -> Vec<&'static str> {
        [
            (self.in_scope, "outside the domain"),
            (self.source_viewable, "source not viewable"),
            (self.metrics_available, "repository metrics unavailable"),
            (self.not_incomplete, "marked incomplete"),
        ]
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, why)| why)
        .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackageRecord {
    pub id: String,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub url: Option<String>,
    /// Local clone, relative to the workspace unless absolute.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub repository: Option<PathBuf>,
    #[serde(default)]
    pub eligibility: Eligibility,
    /// Assessor judgment for the scope filter.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scope_ok: Option<bool>,
    /// Assessor judgment for the usage filter.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub usage_ok: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub last_change: Option<NaiveDate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub last_release: Option<NaiveDate>,
    #[serde(default)]
    pub recommended_override: bool,
    pub state: RecordState,
}

impl PackageRecord {
    pub fn candidate(id: impl Into<String>, name: impl Into<String>) -> Self {
        PackageRecord {
            id: id.into(),
            name: name.into(),
            url: None,
            repository: None,
            eligibility: Eligibility::default(),
            scope_ok: None,
            usage_ok: None,
            last_change: None,
            last_release: None,
            recommended_override: false,
            state: RecordState::Candidate,
        }
    }

    pub fn is_filtered(&self) -> bool {
        matches!(self.state, RecordState::Filtered { .. })
    }

    pub fn is_selected(&self) -> bool {
        self.state == RecordState::Selected
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEvent {
    pub seq: u64,
    pub date: NaiveDate,
    pub package: String,
    pub from: String,
    pub to: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<FilterReason>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackageLedger {
    pub as_of: NaiveDate,
    pub initial_count: usize,
    pub records: Vec<PackageRecord>,
    #[serde(default)]
    pub events: Vec<LedgerEvent>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WorkflowError {
    #[error("package `{id}` lacks `{field}`, needed by the {pass} filter")]
    InsufficientData {
        id: String,
        field: &'static str,
        pass: &'static str,
    },
    #[error("package id `{0}` appears more than once")]
    DuplicateId(String),
    #[error("ledger records {records} packages but initial_count is {initial}")]
    CountMismatch { initial: usize, records: usize },
    #[error("package `{0}` is selected but fails an eligibility flag")]
    IneligibleSelected(String),
    #[error("ledger file: {0}")]
    Parse(String),
}

impl PackageLedger {
    pub fn new(as_of: NaiveDate, records: Vec<PackageRecord>) -> Result<Self, WorkflowError> {
        let ledger = PackageLedger {
            as_of,
            initial_count: records.len(),
            records,
            events: Vec::new(),
        };
        ledger.validate()?;
        Ok(ledger)
    }

    pub fn validate(&self) -> Result<(), WorkflowError> {
        if self.initial_count != self.records.len() {
            return Err(WorkflowError::CountMismatch {
                initial: self.initial_count,
                records: self.records.len(),
            });
        }
        let mut seen = BTreeSet::new();
        for r in &self.records {
            if !seen.insert(r.id.as_str()) {
                return Err(WorkflowError::DuplicateId(r.id.clone()));
            }
            if r.is_selected() && !r.eligibility.all() {
                return Err(WorkflowError::IneligibleSelected(r.id.clone()));
            }
        }
        Ok(())
    }

    pub fn record(&self, id: &str) -> Option<&PackageRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    pub fn selected(&self) -> impl Iterator<Item = &PackageRecord> {
        self.records.iter().filter(|r| r.is_selected())
    }

    pub fn filtered(&self) -> impl Iterator<Item = &PackageRecord> {
        self.records.iter().filter(|r| r.is_filtered())
    }

    pub fn selected_ids(&self) -> Vec<String> {
        self.selected().map(|r| r.id.clone()).collect()
    }

    /// Records still in the running (candidate or selected).
    fn remaining(&self) -> usize {
        self.records.iter().filter(|r| !r.is_filtered()).count()
    }

    fn transition(&mut self, idx: usize, to: RecordState) {
        let record = &mut self.records[idx];
        let (reason, note) = match &to {
            RecordState::Filtered { reason, note } => (Some(*reason), note.clone()),
            _ => (None, String::new()),
        };
        let event = LedgerEvent {
            seq: self.events.len() as u64 + 1,
            date: self.as_of,
            package: record.id.clone(),
            from: record.state.label().to_string(),
            to: to.label().to_string(),
            reason,
            note,
        };
        record.state = to;
        self.events.push(event);
    }

    fn filter(&mut self, idx: usize, reason: FilterReason, note: String) {
        self.transition(idx, RecordState::Filtered { reason, note });
    }

    pub fn from_toml_str(text: &str) -> Result<Self, WorkflowError> {
        let ledger: PackageLedger = toml::from_str(text).map_err(|e| WorkflowError::Parse(e.to_string()))?;
        ledger.validate()?;
        Ok(ledger)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("ledger serializes to TOML")
    }
}

fn active_indices(ledger: &PackageLedger) -> Vec<usize> {
    (0..ledger.records.len()).filter(|&i| !ledger.records[i].is_filtered()).collect()
}

fn judgment_pass(
    ledger: &mut PackageLedger,
    reason: FilterReason,
    field: &'static str,
    judgment: fn(&PackageRecord) -> Option<bool>,
    note: &str,
) -> Result<(), WorkflowError> {
    let active = active_indices(ledger);
    let mut failing = Vec::new();
    for i in active {
        let r = &ledger.records[i];
        match judgment(r) {
            Some(true) => {}
            Some(false) => failing.push(i),
            None => {
                return Err(WorkflowError::InsufficientData {
                    id: r.id.clone(),
                    field,
                    pass: reason.as_str(),
                })
            }
        }
    }
    for i in failing {
        ledger.filter(i, reason, note.to_string());
    }
    Ok(())
}

/// Narrows the ledger towards `target_size`: an eligibility pass, then the
/// scope, usage and age filters in that order. Scope and usage remove every
/// failing record but only run while more than `target_size` remain; the age
/// pass removes records last changed before `age_threshold`, oldest first and
/// sparing recommended packages, until the target is met. Survivors become
/// selected.
pub fn apply_filters(
    ledger: &PackageLedger,
    target_size: usize,
    age_threshold: NaiveDate,
) -> Result<PackageLedger, WorkflowError> {
    let mut out = ledger.clone();

    for i in active_indices(&out) {
        let failures = out.records[i].eligibility.failures();
        if !failures.is_empty() {
            out.filter(i, FilterReason::Eligibility, failures.join("; "));
        }
    }

    if out.remaining() > target_size {
        judgment_pass(&mut out, FilterReason::Scope, "scope_ok", |r| r.scope_ok, "outside the narrowed scope")?;
    }
    if out.remaining() > target_size {
        judgment_pass(&mut out, FilterReason::Usage, "usage_ok", |r| r.usage_ok, "installation instructions unclear")?;
    }
    if out.remaining() > target_size {
        let mut old = Vec::new();
        for i in active_indices(&out) {
            let r = &out.records[i];
            let changed = r.last_change.ok_or_else(|| WorkflowError::InsufficientData {
                id: r.id.clone(),
                field: "last_change",
                pass: FilterReason::Age.as_str(),
            })?;
            if changed < age_threshold && !r.recommended_override {
                old.push((changed, r.id.clone(), i));
            }
        }
        old.sort();
        for (changed, _, i) in old {
            if out.remaining() <= target_size {
                break;
            }
            out.filter(i, FilterReason::Age, format!("last change {changed} before {age_threshold}"));
        }
    }

    for i in active_indices(&out) {
        if out.records[i].state == RecordState::Candidate {
            out.transition(i, RecordState::Selected);
        }
    }
    Ok(out)
}

/// Initial and current lists side by side, one package per line.
pub fn side_by_side(ledger: &PackageLedger) -> String {
    let width = ledger.records.iter().map(|r| r.id.len()).max().unwrap_or(0).max("initial".len());
    let mut out = format!("{:<width$}  current\n", "initial");
    for r in &ledger.records {
        let current = match &r.state {
            RecordState::Filtered { reason, note } => format!("filtered ({}): {note}", reason.as_str()),
            other => other.label().to_string(),
        };
        out.push_str(&format!("{:<width$}  {current}\n", r.id));
    }
    out
}
