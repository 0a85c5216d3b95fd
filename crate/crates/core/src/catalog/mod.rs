//! Measurement-template schema and assessor answer files.
//!
//! The catalog is plain data: sections of questions, each with a typed answer
//! domain. Choices marked with a star must be accompanied by an explanatory
//! note when selected. Answer files bind `section.key = value` lines to
//! catalog questions.

mod answers;
mod builtin;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::quality::Quality;

pub use answers::{
    parse_answers, serialize_answers, Answer, AnswerDate, AnswerError, AnswerErrors, AnswerSet,
    AnswerValue,
};
pub use builtin::{builtin_catalog, BUILTIN_QUESTION_COUNT};

/// One admissible token of an enumerated answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Choice {
    pub token: String,
    /// Selecting this choice requires an explanatory note.
    pub starred: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AnswerType {
    /// Exactly one of the choices.
    Choice { choices: Vec<Choice> },
    /// A nonempty subset of the choices, comma separated.
    SetOf { choices: Vec<Choice> },
    /// A natural number.
    Number,
    /// A natural number or one of the sentinel choices.
    NumberOr { choices: Vec<Choice> },
    /// A comma-separated list of natural numbers.
    NumberList,
    /// An integer rating in `min..=max`.
    Scale { min: u32, max: u32 },
    /// A value in `[0, 100]`, optionally suffixed with `%`.
    Percentage,
    /// `YYYY-MM-DD`, or a bare `YYYY` when only the year is known.
    Date,
    Url,
    /// One or more URLs, or one of the sentinel choices.
    UrlSetOr { choices: Vec<Choice> },
    Text,
    /// Free text, or one of the sentinel choices.
    TextOr { choices: Vec<Choice> },
}

impl AnswerType {
    pub fn choices(&self) -> &[Choice] {
        match self {
            AnswerType::Choice { choices }
            | AnswerType::SetOf { choices }
            | AnswerType::NumberOr { choices }
            | AnswerType::UrlSetOr { choices }
            | AnswerType::TextOr { choices } => choices,
            _ => &[],
        }
    }

    pub fn has_choice(&self, token: &str) -> bool {
        self.choices().iter().any(|c| c.token == token)
    }

    pub fn is_starred(&self, token: &str) -> bool {
        self.choices().iter().any(|c| c.starred && c.token == token)
    }
}

impl fmt::Display for AnswerType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(choices: &[Choice]) -> String {
            choices
                .iter()
                .map(|c| {
                    if c.starred {
                        format!("{}*", c.token)
                    } else {
                        c.token.clone()
                    }
                })
                .collect::<Vec<_>>()
                .join(",")
        }
        match self {
            AnswerType::Choice { choices } => write!(f, "enum{{{}}}", list(choices)),
            AnswerType::SetOf { choices } => write!(f, "set-of{{{}}}", list(choices)),
            AnswerType::Number => f.write_str("number"),
            AnswerType::NumberOr { choices } => write!(f, "number|{{{}}}", list(choices)),
            AnswerType::NumberList => f.write_str("list-of-number"),
            AnswerType::Scale { min, max } => write!(f, "scale{{{min}..{max}}}"),
            AnswerType::Percentage => f.write_str("percentage"),
            AnswerType::Date => f.write_str("date"),
            AnswerType::Url => f.write_str("url"),
            AnswerType::UrlSetOr { choices } => write!(f, "set-of-url|{{{}}}", list(choices)),
            AnswerType::Text => f.write_str("string"),
            AnswerType::TextOr { choices } => write!(f, "string|{{{}}}", list(choices)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Question {
    pub id: String,
    pub prompt: String,
    pub answer_type: AnswerType,
}

impl Question {
    pub fn star_choices(&self) -> impl Iterator<Item = &str> {
        self.answer_type
            .choices()
            .iter()
            .filter(|c| c.starred)
            .map(|c| c.token.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "quality", rename_all = "snake_case")]
pub enum SectionKind {
    Summary,
    Quality(Quality),
    RepoMetrics,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub id: String,
    pub title: String,
    pub kind: SectionKind,
    pub questions: Vec<Question>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuestionCatalog {
    pub version: String,
    /// Number of questions the catalog claims to hold; checked by [`QuestionCatalog::validate`].
    pub declared_count: usize,
    pub sections: Vec<Section>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("duplicate section id `{0}`")]
    DuplicateSection(String),
    #[error("duplicate question id `{0}`")]
    DuplicateQuestion(String),
    #[error("question `{0}` has an empty or repeated choice list")]
    BadChoices(String),
    #[error("question `{0}` stars a choice on a type without choices")]
    StrayStar(String),
    #[error("catalog declares {declared} questions but holds {actual}")]
    CountMismatch { declared: usize, actual: usize },
    #[error("expected one section per quality plus summary, missing `{0}`")]
    MissingSection(String),
}

impl QuestionCatalog {
    pub fn questions(&self) -> impl Iterator<Item = &Question> {
        self.sections.iter().flat_map(|s| s.questions.iter())
    }

    pub fn question(&self, id: &str) -> Option<&Question> {
        self.questions().find(|q| q.id == id)
    }

    pub fn question_count(&self) -> usize {
        self.sections.iter().map(|s| s.questions.len()).sum()
    }

    pub fn section(&self, id: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.id == id)
    }

    pub fn section_of(&self, question_id: &str) -> Option<&Section> {
        self.sections
            .iter()
            .find(|s| s.questions.iter().any(|q| q.id == question_id))
    }

    pub fn quality_section(&self, quality: Quality) -> Option<&Section> {
        self.sections
            .iter()
            .find(|s| s.kind == SectionKind::Quality(quality))
    }

    /// Checks the structural invariants: unique ids, well-formed choice lists,
    /// one section per quality and the declared question count.
    pub fn validate(&self) -> Result<(), CatalogError> {
        let mut sections = HashSet::new();
        let mut questions = HashSet::new();
        for section in &self.sections {
            if !sections.insert(section.id.as_str()) {
                return Err(CatalogError::DuplicateSection(section.id.clone()));
            }
            for q in &section.questions {
                if !questions.insert(q.id.as_str()) {
                    return Err(CatalogError::DuplicateQuestion(q.id.clone()));
                }
                let choices = q.answer_type.choices();
                let needs_choices = matches!(
                    q.answer_type,
                    AnswerType::Choice { .. }
                        | AnswerType::SetOf { .. }
                        | AnswerType::NumberOr { .. }
                        | AnswerType::UrlSetOr { .. }
                        | AnswerType::TextOr { .. }
                );
                if needs_choices {
                    let unique: HashSet<_> = choices.iter().map(|c| c.token.as_str()).collect();
                    if choices.is_empty() || unique.len() != choices.len() {
                        return Err(CatalogError::BadChoices(q.id.clone()));
                    }
                } else if !choices.is_empty() {
                    return Err(CatalogError::StrayStar(q.id.clone()));
                }
            }
        }
        if !self.sections.iter().any(|s| s.kind == SectionKind::Summary) {
            return Err(CatalogError::MissingSection("summary".into()));
        }
        for quality in Quality::ALL {
            if self.quality_section(quality).is_none() {
                return Err(CatalogError::MissingSection(quality.id().into()));
            }
        }
        let actual = self.question_count();
        if actual != self.declared_count {
            return Err(CatalogError::CountMismatch {
                declared: self.declared_count,
                actual,
            });
        }
        Ok(())
    }

    /// Tab-separated listing (id, section, type, prompt) for assessor reference.
    pub fn export_listing(&self) -> String {
        let mut out = String::from("id\tsection\ttype\tprompt\n");
        for section in &self.sections {
            for q in &section.questions {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\n",
                    q.id, section.id, q.answer_type, q.prompt
                ));
            }
        }
        out
    }

    /// Answered and missing question ids, in catalog order.
    pub fn completeness(&self, answers: &AnswerSet) -> CompletenessReport {
        let mut answered = 0;
        let mut missing = Vec::new();
        for section in &self.sections {
            let ids: Vec<String> = section
                .questions
                .iter()
                .filter(|q| {
                    let present = answers.get(&q.id).is_some();
                    answered += usize::from(present);
                    !present
                })
                .map(|q| q.id.clone())
                .collect();
            if !ids.is_empty() {
                missing.push(MissingInSection {
                    section: section.id.clone(),
                    ids,
                });
            }
        }
        CompletenessReport {
            answered,
            total: self.question_count(),
            missing,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MissingInSection {
    pub section: String,
    pub ids: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletenessReport {
    pub answered: usize,
    pub total: usize,
    pub missing: Vec<MissingInSection>,
}

impl CompletenessReport {
    pub fn is_complete(&self) -> bool {
        self.missing.is_empty()
    }

    pub fn missing_ids(&self) -> impl Iterator<Item = &str> {
        self.missing
            .iter()
            .flat_map(|m| m.ids.iter().map(String::as_str))
    }
}

/// Lowercases and joins internal whitespace with `_`, so `OS X` matches `os_x`.
pub fn normalize_token(raw: &str) -> String {
    raw.split_whitespace()
        .collect::<Vec<_>>()
        .join("_")
        .to_lowercase()
}
