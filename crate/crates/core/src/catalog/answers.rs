//! Line-oriented answer files.
//!
//! ```text
//! # comment
//! package = lbm-solver
//! vm_environment = VirtualBox 7.0, Ubuntu 22.04
//! install.instructions = yes
//! install.automation = yes | note: CMake superbuild
//! summary.languages = c++, python, other | note: CUDA
//! ```
//!
//! Keys without a dot are metadata (`package`, `vm_environment`). Comments
//! must occupy a whole line; a `#` inside a value is kept.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use chrono::{Datelike, NaiveDate};
use serde::{Deserialize, Serialize};

use super::{normalize_token, AnswerType, Question, QuestionCatalog};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AnswerDate {
    pub date: NaiveDate,
    /// Only the year was recorded; `date` is July 1 of that year.
    pub year_only: bool,
}

impl AnswerDate {
    pub fn parse(raw: &str) -> Option<AnswerDate> {
        let raw = raw.trim();
        if raw.len() == 4 && raw.bytes().all(|b| b.is_ascii_digit()) {
            let year: i32 = raw.parse().ok()?;
            return NaiveDate::from_ymd_opt(year, 7, 1).map(|date| AnswerDate {
                date,
                year_only: true,
            });
        }
        NaiveDate::parse_from_str(raw, "%Y-%m-%d")
            .ok()
            .map(|date| AnswerDate {
                date,
                year_only: false,
            })
    }
}

impl fmt::Display for AnswerDate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.year_only {
            write!(f, "{:04}", self.date.year())
        } else {
            write!(f, "{}", self.date.format("%Y-%m-%d"))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "value", rename_all = "snake_case")]
pub enum AnswerValue {
    Choice(String),
    Set(BTreeSet<String>),
    Number(u64),
    NumberList(Vec<u64>),
    Scale(u32),
    Percentage(f64),
    Date(AnswerDate),
    Url(String),
    UrlSet(Vec<String>),
    Text(String),
}

impl AnswerValue {
    pub fn as_choice(&self) -> Option<&str> {
        match self {
            AnswerValue::Choice(c) => Some(c),
            _ => None,
        }
    }

    /// Choice tokens carried by this value (one for a choice, all members for a set).
    pub fn tokens(&self) -> Vec<&str> {
        match self {
            AnswerValue::Choice(c) => vec![c.as_str()],
            AnswerValue::Set(s) => s.iter().map(String::as_str).collect(),
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for AnswerValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnswerValue::Choice(c) => f.write_str(c),
            AnswerValue::Set(s) => f.write_str(&s.iter().cloned().collect::<Vec<_>>().join(", ")),
            AnswerValue::Number(n) => write!(f, "{n}"),
            AnswerValue::NumberList(v) => f.write_str(
                &v.iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(", "),
            ),
            AnswerValue::Scale(n) => write!(f, "{n}"),
            AnswerValue::Percentage(p) => write!(f, "{p}"),
            AnswerValue::Date(d) => write!(f, "{d}"),
            AnswerValue::Url(u) => f.write_str(u),
            AnswerValue::UrlSet(v) => f.write_str(&v.join(", ")),
            AnswerValue::Text(t) => f.write_str(t),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Answer {
    pub question_id: String,
    pub value: AnswerValue,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct AnswerSet {
    pub package_id: String,
    pub vm_environment: Option<String>,
    pub answers: BTreeMap<String, Answer>,
}

impl AnswerSet {
    pub fn new(package_id: impl Into<String>) -> Self {
        AnswerSet {
            package_id: package_id.into(),
            ..Default::default()
        }
    }

    pub fn get(&self, question_id: &str) -> Option<&Answer> {
        self.answers.get(question_id)
    }

    pub fn len(&self) -> usize {
        self.answers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.answers.is_empty()
    }

    /// Inserts an already-typed answer, replacing any previous one.
    pub fn insert(&mut self, answer: Answer) {
        self.answers.insert(answer.question_id.clone(), answer);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnswerError {
    #[error("line {line}: unknown question `{id}`")]
    UnknownQuestion { line: usize, id: String },
    #[error("line {line}: `{id}` expects {expected}, got `{got}`")]
    TypeMismatch {
        line: usize,
        id: String,
        expected: String,
        got: String,
    },
    #[error("line {line}: `{id}` = {choice} requires an explanatory note (`| note: ...`)")]
    MissingStarNote {
        line: usize,
        id: String,
        choice: String,
    },
    #[error("line {line}: `{id}` answered more than once")]
    DuplicateKey { line: usize, id: String },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

impl AnswerError {
    pub fn line(&self) -> usize {
        match self {
            AnswerError::UnknownQuestion { line, .. }
            | AnswerError::TypeMismatch { line, .. }
            | AnswerError::MissingStarNote { line, .. }
            | AnswerError::DuplicateKey { line, .. }
            | AnswerError::Syntax { line, .. } => *line,
        }
    }
}

/// Every error found in one answer file, in line order.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n"))]
pub struct AnswerErrors(pub Vec<AnswerError>);

impl AnswerErrors {
    pub fn first(&self) -> &AnswerError {
        &self.0[0]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

const PACKAGE_KEY: &str = "package";
const VM_KEY: &str = "vm_environment";

/// Splits `value | note: text` into its value and optional nonempty note.
fn split_note(raw: &str) -> (&str, Option<&str>) {
    for (idx, _) in raw.match_indices('|') {
        let rest = raw[idx + 1..].trim_start();
        if let Some(note) = rest.strip_prefix("note:") {
            let note = note.trim();
            return (raw[..idx].trim(), (!note.is_empty()).then_some(note));
        }
    }
    (raw.trim(), None)
}

fn parse_choice(raw: &str, ty: &AnswerType) -> Option<String> {
    let token = normalize_token(raw);
    ty.has_choice(&token).then_some(token)
}

fn parse_list<T>(raw: &str, item: impl Fn(&str) -> Option<T>) -> Option<Vec<T>> {
    raw.split(',').map(|part| item(part.trim())).collect()
}

fn parse_url(raw: &str) -> Option<String> {
    url::Url::parse(raw).ok().map(|_| raw.to_string())
}

fn parse_value(raw: &str, ty: &AnswerType) -> Option<AnswerValue> {
    if raw.is_empty() {
        return None;
    }
    match ty {
        AnswerType::Choice { .. } => parse_choice(raw, ty).map(AnswerValue::Choice),
        AnswerType::SetOf { .. } => {
            parse_list(raw, |part| parse_choice(part, ty)).map(|v| AnswerValue::Set(v.into_iter().collect()))
        }
        AnswerType::Number => raw.parse().ok().map(AnswerValue::Number),
        AnswerType::NumberOr { .. } => raw
            .parse()
            .ok()
            .map(AnswerValue::Number)
            .or_else(|| parse_choice(raw, ty).map(AnswerValue::Choice)),
        AnswerType::NumberList => parse_list(raw, |p| p.parse().ok()).map(AnswerValue::NumberList),
        AnswerType::Scale { min, max } => raw
            .parse::<u32>()
            .ok()
            .filter(|n| (*min..=*max).contains(n))
            .map(AnswerValue::Scale),
        AnswerType::Percentage => raw
            .strip_suffix('%')
            .unwrap_or(raw)
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|p| p.is_finite() && (0.0..=100.0).contains(p))
            .map(AnswerValue::Percentage),
        AnswerType::Date => AnswerDate::parse(raw).map(AnswerValue::Date),
        AnswerType::Url => parse_url(raw).map(AnswerValue::Url),
        AnswerType::UrlSetOr { .. } => parse_choice(raw, ty)
            .map(AnswerValue::Choice)
            .or_else(|| parse_list(raw, parse_url).map(AnswerValue::UrlSet)),
        AnswerType::Text => Some(AnswerValue::Text(raw.to_string())),
        AnswerType::TextOr { .. } => Some(
            parse_choice(raw, ty)
                .map(AnswerValue::Choice)
                .unwrap_or_else(|| AnswerValue::Text(raw.to_string())),
        ),
    }
}

fn bind(line: usize, question: &Question, raw: &str) -> Result<Answer, AnswerError> {
    let (raw_value, note) = split_note(raw);
    let ty = &question.answer_type;
    let value = parse_value(raw_value, ty).ok_or_else(|| AnswerError::TypeMismatch {
        line,
        id: question.id.clone(),
        expected: ty.to_string(),
        got: raw_value.to_string(),
    })?;
    if note.is_none() {
        if let Some(star) = value.tokens().into_iter().find(|t| ty.is_starred(t)) {
            return Err(AnswerError::MissingStarNote {
                line,
                id: question.id.clone(),
                choice: star.to_string(),
            });
        }
    }
    Ok(Answer {
        question_id: question.id.clone(),
        value,
        note: note.map(str::to_string),
    })
}

/// Parses an answer file against `catalog`, reporting every located error.
pub fn parse_answers(text: &str, catalog: &QuestionCatalog) -> Result<AnswerSet, AnswerErrors> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut set = AnswerSet::default();
    let mut errors = Vec::new();
    let mut seen_meta = BTreeSet::new();

    for (idx, raw_line) in text.split('\n').enumerate() {
        let line = idx + 1;
        let content = raw_line.strip_suffix('\r').unwrap_or(raw_line).trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            errors.push(AnswerError::Syntax {
                line,
                message: "expected `key = value`".into(),
            });
            continue;
        };
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() || key.contains(char::is_whitespace) {
            errors.push(AnswerError::Syntax {
                line,
                message: format!("malformed key `{key}`"),
            });
            continue;
        }

        if key == PACKAGE_KEY || key == VM_KEY {
            if !seen_meta.insert(key) {
                errors.push(AnswerError::DuplicateKey {
                    line,
                    id: key.to_string(),
                });
            } else if value.is_empty() {
                errors.push(AnswerError::Syntax {
                    line,
                    message: format!("`{key}` needs a value"),
                });
            } else if key == PACKAGE_KEY {
                set.package_id = value.to_string();
            } else {
                set.vm_environment = Some(value.to_string());
            }
            continue;
        }

        let Some(question) = catalog.question(key) else {
            errors.push(AnswerError::UnknownQuestion {
                line,
                id: key.to_string(),
            });
            continue;
        };
        if set.answers.contains_key(key) {
            errors.push(AnswerError::DuplicateKey {
                line,
                id: key.to_string(),
            });
            continue;
        }
        match bind(line, question, value) {
            Ok(answer) => {
                set.answers.insert(key.to_string(), answer);
            }
            Err(e) => errors.push(e),
        }
    }

    if errors.is_empty() {
        Ok(set)
    } else {
        Err(AnswerErrors(errors))
    }
}

/// Writes `answers` back in catalog order; the output parses to an equal set.
pub fn serialize_answers(answers: &AnswerSet, catalog: &QuestionCatalog) -> String {
    let mut out = String::new();
    if !answers.package_id.is_empty() {
        out.push_str(&format!("{PACKAGE_KEY} = {}\n", answers.package_id));
    }
    if let Some(vm) = &answers.vm_environment {
        out.push_str(&format!("{VM_KEY} = {vm}\n"));
    }
    for question in catalog.questions() {
        if let Some(answer) = answers.get(&question.id) {
            out.push_str(&format!("{} = {}", question.id, answer.value));
            if let Some(note) = &answer.note {
                out.push_str(&format!(" | note: {note}"));
            }
            out.push('\n');
        }
    }
    out
}
