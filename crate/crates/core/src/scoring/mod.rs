//! Impression scores: each quality's template answers are mapped to points by
//! a data-driven [`Rubric`], summed, capped and floored into `1..=10`.

mod builtin;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::catalog::{normalize_token, AnswerSet, AnswerType, AnswerValue, QuestionCatalog};
use crate::quality::Quality;

pub use builtin::builtin_rubric;

pub const DEFAULT_CAP: i32 = 10;
pub const DEFAULT_FLOOR: i32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Band {
    pub min: u64,
    pub points: i32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountSource {
    /// Count items in a free-text answer.
    Value,
    /// Count items in the answer's note.
    Note,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Rule {
    /// Points per choice token.
    Choice { points: BTreeMap<String, i32> },
    /// `points` when a number is strictly below `limit`.
    Below { limit: u64, points: i32 },
    /// `points` when a number or percentage is at least `threshold`.
    AtLeast { threshold: f64, points: i32 },
    /// Points of the band with the largest `min` not above the value.
    Bands { bands: Vec<Band> },
    /// `points` when the set names any member outside `excluded`.
    AnyOf { excluded: Vec<String>, points: i32 },
    /// Best points over the members of a set.
    BestOf { points: BTreeMap<String, i32> },
    /// `points` for a real value, 0 for a sentinel choice such as `none`.
    Provided { points: i32 },
    /// Counts comma/semicolon separated items, then applies `bands` to the count.
    ItemCount {
        source: CountSource,
        /// For note counts, only count when the answer is this choice.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        when: Option<String>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        ignore: Vec<String>,
        bands: Vec<Band>,
    },
    /// Recorded for completeness; never contributes.
    Ignored,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RubricItem {
    pub question: String,
    #[serde(flatten)]
    pub rule: Rule,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QualityRubric {
    pub quality: Quality,
    #[serde(default = "default_cap")]
    pub cap: i32,
    #[serde(default = "default_floor")]
    pub floor: i32,
    pub items: Vec<RubricItem>,
}

fn default_cap() -> i32 {
    DEFAULT_CAP
}

fn default_floor() -> i32 {
    DEFAULT_FLOOR
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rubric {
    pub qualities: Vec<QualityRubric>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RubricError {
    #[error("rubric has no entry for {0}")]
    MissingQuality(Quality),
    #[error("rubric lists {0} twice")]
    DuplicateQuality(Quality),
    #[error("{quality}: question `{question}` is not in the catalog")]
    UnknownQuestion { quality: Quality, question: String },
    #[error("{quality}: question `{question}` is scored twice")]
    DuplicateItem { quality: Quality, question: String },
    #[error("`{question}`: choice `{choice}` has no point mapping")]
    UnmappedChoice { question: String, choice: String },
    #[error("`{question}`: token `{token}` is not a choice of the question")]
    UnknownToken { question: String, token: String },
    #[error("`{question}`: rule does not fit answer type {answer_type}")]
    IncompatibleRule { question: String, answer_type: String },
    #[error("{quality}: floor {floor} exceeds cap {cap}")]
    BadBounds { quality: Quality, floor: i32, cap: i32 },
    #[error("rubric file: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScoreError {
    #[error("unknown quality `{0}`")]
    UnknownQuality(String),
    #[error("{quality}: missing answer to `{question}`")]
    MissingAnswer { quality: Quality, question: String },
    #[error("`{question}`: answer `{value}` does not fit the rubric rule")]
    TypeMismatch { question: String, value: String },
}

/// Points awarded for one rubric item.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Award {
    pub question: String,
    pub answer: String,
    pub points: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QualityScore {
    pub score: u8,
    /// Sum of `breakdown` before the cap and floor.
    pub raw: i32,
    pub breakdown: Vec<Award>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QualityScores {
    pub package_id: String,
    pub scores: BTreeMap<Quality, QualityScore>,
}

impl QualityScores {
    pub fn score(&self, q: Quality) -> Option<u8> {
        self.scores.get(&q).map(|s| s.score)
    }
}

/// Splits a free-text listing into items, skipping placeholders in `ignore`.
pub fn count_items(text: &str, ignore: &[String]) -> u64 {
    text.split([',', ';', '\n'])
        .map(normalize_token)
        .filter(|t| !t.is_empty() && !ignore.contains(t))
        .count() as u64
}

fn band_points(bands: &[Band], value: u64) -> i32 {
    bands
        .iter()
        .filter(|b| b.min <= value)
        .max_by_key(|b| b.min)
        .map_or(0, |b| b.points)
}

impl Rule {
    /// Points for one answer, or `None` when the value does not fit the rule.
    pub fn points(&self, value: &AnswerValue, note: Option<&str>) -> Option<i32> {
        use AnswerValue as V;
        match (self, value) {
            (Rule::Ignored, _) => Some(0),
            (Rule::Choice { points }, V::Choice(c)) => points.get(c).copied(),
            (Rule::Below { limit, points }, V::Number(n)) => Some(if n < limit { *points } else { 0 }),
            (Rule::Below { .. } | Rule::Bands { .. } | Rule::AtLeast { .. }, V::Choice(_)) => Some(0),
            (Rule::AtLeast { threshold, points }, V::Percentage(p)) => {
                Some(if *p >= *threshold { *points } else { 0 })
            }
            (Rule::AtLeast { threshold, points }, V::Number(n)) => {
                Some(if *n as f64 >= *threshold { *points } else { 0 })
            }
            (Rule::Bands { bands }, V::Number(n)) => Some(band_points(bands, *n)),
            (Rule::AnyOf { excluded, points }, V::Set(s)) => {
                Some(if s.iter().any(|m| !excluded.contains(m)) { *points } else { 0 })
            }
            (Rule::BestOf { points }, V::Set(s)) => {
                let mut best = None;
                for m in s {
                    let p = *points.get(m)?;
                    best = Some(best.map_or(p, |b: i32| b.max(p)));
                }
                Some(best.unwrap_or(0))
            }
            (Rule::Provided { .. }, V::Choice(_)) => Some(0),
            (Rule::Provided { points }, V::Text(t)) => Some(if t.trim().is_empty() { 0 } else { *points }),
            (Rule::Provided { points }, V::Number(_) | V::Url(_) | V::UrlSet(_) | V::Date(_)) => {
                Some(*points)
            }
            (Rule::ItemCount { source: CountSource::Value, ignore, bands, .. }, V::Text(t)) => {
                Some(band_points(bands, count_items(t, ignore)))
            }
            (Rule::ItemCount { source: CountSource::Value, .. }, V::Choice(_)) => Some(0),
            (Rule::ItemCount { source: CountSource::Note, when, ignore, bands }, V::Choice(c)) => {
                if when.as_ref().is_some_and(|w| w != c) {
                    return Some(0);
                }
                Some(band_points(bands, note.map_or(0, |n| count_items(n, ignore))))
            }
            _ => None,
        }
    }

    fn fits(&self, ty: &AnswerType) -> bool {
        use AnswerType as T;
        match self {
            Rule::Ignored => true,
            Rule::Choice { .. } => matches!(ty, T::Choice { .. }),
            Rule::Below { .. } | Rule::Bands { .. } => matches!(ty, T::Number | T::NumberOr { .. }),
            Rule::AtLeast { .. } => matches!(ty, T::Percentage | T::Number | T::NumberOr { .. }),
            Rule::AnyOf { .. } | Rule::BestOf { .. } => matches!(ty, T::SetOf { .. }),
            Rule::Provided { .. } => matches!(
                ty,
                T::Text | T::TextOr { .. } | T::Number | T::NumberOr { .. } | T::Url | T::UrlSetOr { .. } | T::Date
            ),
            Rule::ItemCount { source: CountSource::Value, .. } => matches!(ty, T::Text | T::TextOr { .. }),
            Rule::ItemCount { source: CountSource::Note, .. } => matches!(ty, T::Choice { .. }),
        }
    }

    /// Tokens the rule refers to, each of which must be a choice of the question.
    fn tokens(&self) -> Vec<&str> {
        match self {
            Rule::Choice { points } | Rule::BestOf { points } => points.keys().map(String::as_str).collect(),
            Rule::AnyOf { excluded, .. } => excluded.iter().map(String::as_str).collect(),
            Rule::ItemCount { source: CountSource::Note, when: Some(w), .. } => vec![w.as_str()],
            _ => Vec::new(),
        }
    }
}

impl Rubric {
    pub fn quality(&self, q: Quality) -> Option<&QualityRubric> {
        self.qualities.iter().find(|r| r.quality == q)
    }

    /// Every question referenced by a counting rule.
    pub fn referenced_questions(&self) -> impl Iterator<Item = &str> {
        self.qualities.iter().flat_map(|q| q.items.iter().map(|i| i.question.as_str()))
    }

    pub fn validate(&self, catalog: &QuestionCatalog) -> Result<(), RubricError> {
        for q in Quality::ALL {
            match self.qualities.iter().filter(|r| r.quality == q).count() {
                0 => return Err(RubricError::MissingQuality(q)),
                1 => {}
                _ => return Err(RubricError::DuplicateQuality(q)),
            }
        }
        for qr in &self.qualities {
            if qr.floor > qr.cap {
                return Err(RubricError::BadBounds {
                    quality: qr.quality,
                    floor: qr.floor,
                    cap: qr.cap,
                });
            }
            let mut seen = std::collections::BTreeSet::new();
            for item in &qr.items {
                if !seen.insert(item.question.as_str()) {
                    return Err(RubricError::DuplicateItem {
                        quality: qr.quality,
                        question: item.question.clone(),
                    });
                }
                let question = catalog.question(&item.question).ok_or_else(|| RubricError::UnknownQuestion {
                    quality: qr.quality,
                    question: item.question.clone(),
                })?;
                let ty = &question.answer_type;
                if !item.rule.fits(ty) {
                    return Err(RubricError::IncompatibleRule {
                        question: item.question.clone(),
                        answer_type: ty.to_string(),
                    });
                }
                if let Some(token) = item.rule.tokens().into_iter().find(|t| !ty.has_choice(t)) {
                    return Err(RubricError::UnknownToken {
                        question: item.question.clone(),
                        token: token.to_string(),
                    });
                }
                if let Rule::Choice { points } | Rule::BestOf { points } = &item.rule {
                    if let Some(c) = ty.choices().iter().find(|c| !points.contains_key(&c.token)) {
                        return Err(RubricError::UnmappedChoice {
                            question: item.question.clone(),
                            choice: c.token.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_toml_str(text: &str) -> Result<Rubric, RubricError> {
        toml::from_str(text).map_err(|e| RubricError::Parse(e.to_string()))
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("rubric serializes to TOML")
    }
}

pub fn score_quality(rubric: &Rubric, quality_id: &str, answers: &AnswerSet) -> Result<QualityScore, ScoreError> {
    let quality: Quality = quality_id
        .parse()
        .map_err(|_| ScoreError::UnknownQuality(quality_id.to_string()))?;
    let qr = rubric
        .quality(quality)
        .ok_or_else(|| ScoreError::UnknownQuality(quality_id.to_string()))?;
    let mut breakdown = Vec::new();
    for item in &qr.items {
        if item.rule == Rule::Ignored {
            continue;
        }
        let answer = answers.get(&item.question).ok_or_else(|| ScoreError::MissingAnswer {
            quality,
            question: item.question.clone(),
        })?;
        let points = item
            .rule
            .points(&answer.value, answer.note.as_deref())
            .ok_or_else(|| ScoreError::TypeMismatch {
                question: item.question.clone(),
                value: answer.value.to_string(),
            })?;
        breakdown.push(Award {
            question: item.question.clone(),
            answer: answer.value.to_string(),
            points,
        });
    }
    let raw: i32 = breakdown.iter().map(|a| a.points).sum();
    Ok(QualityScore {
        score: bound(raw, qr.cap, qr.floor),
        raw,
        breakdown,
    })
}

/// Caps at `cap`, then lifts anything below `floor` up to it.
pub fn bound(raw: i32, cap: i32, floor: i32) -> u8 {
    raw.min(cap).max(floor).clamp(0, u8::MAX as i32) as u8
}

pub fn score_all(rubric: &Rubric, answers: &AnswerSet) -> Result<QualityScores, ScoreError> {
    let scores = Quality::ALL
        .into_iter()
        .map(|q| score_quality(rubric, q.id(), answers).map(|s| (q, s)))
        .collect::<Result<_, _>>()?;
    Ok(QualityScores {
        package_id: answers.package_id.clone(),
        scores,
    })
}
