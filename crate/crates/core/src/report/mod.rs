//! Assessment outputs: the markdown report, the CSV export, research-question
//! frequency tables and the interview guide.

mod csv_export;
mod interview;
mod markdown;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::ahp::{AhpRanking, SensitivityReport, TIE_TOLERANCE};
use crate::catalog::{normalize_token, AnswerSet, AnswerValue};
use crate::derived::MetricsDocument;
use crate::scoring::QualityScores;
use crate::workflow::PackageLedger;

pub use csv_export::render_csv;
pub use interview::{emit_interview_guide, interview_questions, InterviewQuestion, InterviewSection, RqTag};
pub use markdown::{render_markdown, VITALITY_HEADING};

pub const DEFAULT_TOP_K: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReportError {
    #[error("selected packages without a complete assessment: {}", .0.join(", "))]
    IncompleteBundle(Vec<String>),
    #[error("packages not in the selected set: {}", .0.join(", "))]
    NotSelected(Vec<String>),
    #[error("csv export failed: {0}")]
    Csv(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PackageAssessment {
    pub answers: AnswerSet,
    pub metrics: MetricsDocument,
    pub scores: QualityScores,
}

impl PackageAssessment {
    pub fn id(&self) -> &str {
        &self.scores.package_id
    }
}

/// Everything the renderers need, checked against the ledger's selected set.
#[derive(Debug, Clone, PartialEq)]
pub struct AssessmentBundle {
    pub ledger: PackageLedger,
    pub packages: BTreeMap<String, PackageAssessment>,
    pub ranking: AhpRanking,
    pub sensitivity: SensitivityReport,
}

impl AssessmentBundle {
    pub fn new(
        ledger: PackageLedger,
        packages: Vec<PackageAssessment>,
        ranking: AhpRanking,
        sensitivity: SensitivityReport,
    ) -> Result<Self, ReportError> {
        let selected: BTreeSet<String> = ledger.selected_ids().into_iter().collect();
        let packages: BTreeMap<String, PackageAssessment> =
            packages.into_iter().map(|p| (p.id().to_string(), p)).collect();
        let extra: Vec<String> = packages
            .keys()
            .chain(&ranking.packages)
            .filter(|id| !selected.contains(*id))
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if !extra.is_empty() {
            return Err(ReportError::NotSelected(extra));
        }
        let ranked: BTreeSet<&String> = ranking.packages.iter().collect();
        let missing: Vec<String> = selected
            .iter()
            .filter(|id| !packages.contains_key(*id) || !ranked.contains(id))
            .cloned()
            .collect();
        if !missing.is_empty() {
            return Err(ReportError::IncompleteBundle(missing));
        }
        Ok(AssessmentBundle {
            ledger,
            packages,
            ranking,
            sensitivity,
        })
    }

    /// Packages in ranking order.
    pub fn ranked(&self) -> impl Iterator<Item = (usize, &PackageAssessment)> {
        self.ranking
            .order
            .iter()
            .enumerate()
            .map(|(i, id)| (i + 1, &self.packages[id]))
    }

    pub fn name_of<'a>(&'a self, id: &'a str) -> &'a str {
        self.ledger.record(id).map_or(id, |r| r.name.as_str())
    }

    pub fn aggregate_of(&self, id: &str) -> f64 {
        let idx = self.ranking.packages.iter().position(|p| p == id).expect("ranked package");
        self.ranking.aggregate[idx]
    }
}

/// Token frequencies: how many packages gave each answer.
pub type Frequency = BTreeMap<String, usize>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommunityComparison {
    pub top_k: usize,
    pub ahp_top: Vec<String>,
    pub stars_top: Vec<String>,
    pub overlap: usize,
    /// Kendall tau-b between aggregate priority and star count over packages with forge data.
    pub kendall_tau: Option<f64>,
    pub without_stars: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResearchQuestionAggregates {
    pub packages: usize,
    pub artifacts: Frequency,
    pub issue_trackers: Frequency,
    pub version_control: Frequency,
    pub continuous_integration: Frequency,
    pub correctness_tools: Frequency,
    pub development_model: Frequency,
    pub process_defined: Frequency,
    pub community: CommunityComparison,
}

fn tally<'a>(answers: impl Iterator<Item = &'a AnswerSet>, question: &str) -> Frequency {
    let mut out = Frequency::new();
    for a in answers {
        let Some(answer) = a.get(question) else { continue };
        let tokens: BTreeSet<&str> = answer.value.tokens().into_iter().collect();
        for t in tokens {
            *out.entry(t.to_string()).or_default() += 1;
        }
    }
    out
}

fn artifact_types<'a>(answers: impl Iterator<Item = &'a AnswerSet>) -> Frequency {
    let mut out = Frequency::new();
    for a in answers {
        let Some(answer) = a.get("maint.artifacts") else { continue };
        if answer.value != AnswerValue::Choice("yes".into()) {
            continue;
        }
        let note = answer.note.as_deref().unwrap_or_default();
        let kinds: BTreeSet<String> = note
            .split([',', ';', '\n'])
            .map(normalize_token)
            .filter(|t| !t.is_empty())
            .collect();
        for k in kinds {
            *out.entry(k).or_default() += 1;
        }
    }
    out
}

fn sign(x: f64, tol: f64) -> i32 {
    if x > tol {
        1
    } else if x < -tol {
        -1
    } else {
        0
    }
}

/// Kendall's tau-b; `None` when fewer than two items or one side is constant.
pub fn kendall_tau_b(x: &[f64], y: &[f64]) -> Option<f64> {
    assert_eq!(x.len(), y.len());
    let n = x.len();
    let (mut concordant, mut discordant, mut ties_x, mut ties_y) = (0i64, 0i64, 0i64, 0i64);
    for i in 0..n {
        for j in i + 1..n {
            let sx = sign(x[i] - x[j], TIE_TOLERANCE);
            let sy = sign(y[i] - y[j], 0.0);
            match (sx, sy) {
                (0, 0) => {
                    ties_x += 1;
                    ties_y += 1;
                }
                (0, _) => ties_x += 1,
                (_, 0) => ties_y += 1,
                _ if sx == sy => concordant += 1,
                _ => discordant += 1,
            }
        }
    }
    let pairs = (n * n.saturating_sub(1) / 2) as i64;
    let denom = (((pairs - ties_x) * (pairs - ties_y)) as f64).sqrt();
    (denom > 0.0).then(|| (concordant - discordant) as f64 / denom)
}

pub fn aggregate_research_questions(bundle: &AssessmentBundle, top_k: usize) -> ResearchQuestionAggregates {
    let answers = || bundle.packages.values().map(|p| &p.answers);

    let mut by_stars: Vec<(&str, u64)> = bundle
        .packages
        .values()
        .filter_map(|p| p.metrics.forge.as_ref().map(|f| (p.id(), f.stars)))
        .collect();
    by_stars.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    let ahp_top: Vec<String> = bundle.ranking.order.iter().take(top_k).cloned().collect();
    let stars_top: Vec<String> = by_stars.iter().take(top_k).map(|(id, _)| id.to_string()).collect();
    let overlap = ahp_top.iter().filter(|id| stars_top.contains(id)).count();

    let starred: BTreeMap<&str, u64> = by_stars.iter().copied().collect();
    let ids: Vec<&str> = bundle.ranking.packages.iter().map(String::as_str).filter(|id| starred.contains_key(id)).collect();
    let aggregate: Vec<f64> = ids.iter().map(|id| bundle.aggregate_of(id)).collect();
    let stars: Vec<f64> = ids.iter().map(|id| starred[id] as f64).collect();
    let without_stars = bundle
        .ranking
        .order
        .iter()
        .filter(|id| !starred.contains_key(id.as_str()))
        .cloned()
        .collect();

    ResearchQuestionAggregates {
        packages: bundle.packages.len(),
        artifacts: artifact_types(answers()),
        issue_trackers: tally(answers(), "maint.issue_tracker"),
        version_control: tally(answers(), "maint.vcs"),
        continuous_integration: tally(answers(), "correct.ci"),
        correctness_tools: tally(answers(), "correct.tools"),
        development_model: tally(answers(), "summary.dev_model"),
        process_defined: tally(answers(), "visibility.process_defined"),
        community: CommunityComparison {
            top_k,
            ahp_top,
            stars_top,
            overlap,
            kendall_tau: kendall_tau_b(&aggregate, &stars),
            without_stars,
        },
    }
}
