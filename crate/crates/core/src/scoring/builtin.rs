use std::collections::BTreeMap;

use super::{Band, CountSource, QualityRubric, Rubric, RubricItem, Rule, DEFAULT_CAP, DEFAULT_FLOOR};
use crate::quality::Quality;

fn choice(question: &str, points: &[(&str, i32)]) -> RubricItem {
    RubricItem {
        question: question.into(),
        rule: Rule::Choice {
            points: map(points),
        },
    }
}

/// `yes` earns `points`; every other listed token earns 0.
fn yes(question: &str, points: i32, others: &[&str]) -> RubricItem {
    let mut table = vec![("yes", points)];
    table.extend(others.iter().map(|o| (*o, 0)));
    choice(question, &table)
}

fn map(points: &[(&str, i32)]) -> BTreeMap<String, i32> {
    points.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn item(question: &str, rule: Rule) -> RubricItem {
    RubricItem {
        question: question.into(),
        rule,
    }
}

fn bands(pairs: &[(u64, i32)]) -> Vec<Band> {
    pairs.iter().map(|&(min, points)| Band { min, points }).collect()
}

fn quality(quality: Quality, items: Vec<RubricItem>) -> QualityRubric {
    QualityRubric {
        quality,
        cap: DEFAULT_CAP,
        floor: DEFAULT_FLOOR,
        items,
    }
}

/// The impression-calculator point tables for the builtin template.
pub fn builtin_rubric() -> Rubric {
    let installability = quality(
        Quality::Installability,
        vec![
            choice("install.instructions", &[("yes", 1), ("no", -1)]),
            yes("install.one_place", 1, &["no", "n/a"]),
            yes("install.linear", 1, &["no", "n/a"]),
            yes("install.no_dependencies_assumed", 1, &["no", "unclear"]),
            yes("install.os_versions_listed", 1, &["no"]),
            choice("install.automation", &[("yes", 1), ("no", -1)]),
            choice("install.break_message", &[("yes", 0), ("no", -2), ("n/a", 1)]),
            yes("install.validation", 1, &["no"]),
            item("install.steps", Rule::Below { limit: 10, points: 1 }),
            item("install.os", Rule::Ignored),
            item("install.extra_packages", Rule::Below { limit: 10, points: 1 }),
            choice("install.package_versions", &[("yes", 1), ("no", 0), ("n/a", 1)]),
            choice("install.dependency_instructions", &[("yes", 1), ("no", 0), ("n/a", 1)]),
            choice("install.uninstall_problems", &[("yes", 0), ("no", 1), ("unavail", 1)]),
        ],
    );

    let correctness = quality(
        Quality::Correctness,
        vec![
            yes("correct.requirements", 2, &["no", "unclear"]),
            item(
                "correct.tools",
                Rule::AnyOf {
                    excluded: vec!["unclear".into()],
                    points: 1,
                },
            ),
            yes("correct.tutorial", 2, &["no"]),
            yes("correct.tutorial_linear", 1, &["no", "n/a"]),
            yes("correct.expected_output", 1, &["no", "n/a"]),
            yes("correct.output_match", 1, &["no", "n/a"]),
            yes("correct.unit_tests", 1, &["no", "unclear"]),
            yes("correct.ci", 1, &["no", "unclear"]),
        ],
    );

    let reliability = quality(
        Quality::Reliability,
        vec![
            choice("reliab.install_break", &[("yes", 0), ("no", 5)]),
            yes("reliab.install_recoverable", 5, &["no", "n/a"]),
            choice("reliab.tutorial_break", &[("yes", 0), ("no", 5), ("n/a", 0)]),
            yes("reliab.tutorial_message", 2, &["no", "n/a"]),
            yes("reliab.tutorial_recoverable", 3, &["no", "n/a"]),
        ],
    );

    let robustness = quality(
        Quality::Robustness,
        vec![
            yes("robust.unexpected_input", 5, &["no"]),
            choice("robust.newlines", &[("yes", 5), ("no", 0), ("n/a", 5)]),
        ],
    );

    let usability = quality(
        Quality::Usability,
        vec![
            yes("usability.tutorial", 3, &["no"]),
            yes("usability.user_manual", 4, &["no"]),
            yes("usability.user_characteristics", 1, &["no"]),
            item(
                "usability.support_model",
                Rule::ItemCount {
                    source: CountSource::Value,
                    when: None,
                    ignore: vec!["none".into(), "n/a".into()],
                    bands: bands(&[(1, 1), (2, 2)]),
                },
            ),
        ],
    );

    let public = 2;
    let maintainability = quality(
        Quality::Maintainability,
        vec![
            item("maint.version", Rule::Provided { points: 1 }),
            yes("maint.contribution_info", 1, &["no"]),
            item(
                "maint.artifacts",
                Rule::ItemCount {
                    source: CountSource::Note,
                    when: Some("yes".into()),
                    ignore: vec![],
                    bands: bands(&[(1, 1), (3, 2)]),
                },
            ),
            item(
                "maint.issue_tracker",
                Rule::BestOf {
                    points: map(&[
                        ("trac", public),
                        ("jira", public),
                        ("redmine", public),
                        ("e-mail", 1),
                        ("discussion_board", public),
                        ("sourceforge", public),
                        ("google_code", public),
                        ("git", public),
                        ("bitbucket", public),
                        ("none", 0),
                        ("unclear", 0),
                        ("other", 1),
                    ]),
                },
            ),
            item(
                "maint.pct_issues_closed",
                Rule::AtLeast {
                    threshold: 50.0,
                    points: 1,
                },
            ),
            item(
                "maint.pct_comments",
                Rule::AtLeast {
                    threshold: 10.0,
                    points: 1,
                },
            ),
            choice(
                "maint.vcs",
                &[
                    ("svn", 2),
                    ("cvs", 2),
                    ("git", 2),
                    ("github", 2),
                    ("other", 2),
                    ("unclear", 0),
                ],
            ),
        ],
    );

    let reusability = quality(
        Quality::Reusability,
        vec![
            item(
                "reuse.code_files",
                Rule::Bands {
                    bands: bands(&[(0, 0), (10, 1), (50, 3), (100, 4), (300, 5), (600, 6), (1000, 8)]),
                },
            ),
            yes("reuse.api_documented", 2, &["no", "n/a"]),
        ],
    );

    let understandability = quality(
        Quality::Understandability,
        vec![
            yes("understand.indentation", 1, &["no", "n/a"]),
            yes("understand.coding_standard", 1, &["no", "n/a"]),
            yes("understand.identifiers", 2, &["no", "n/a"]),
            yes("understand.constants", 1, &["no", "n/a"]),
            yes("understand.comments_clear", 2, &["no", "n/a"]),
            yes("understand.algorithms_named", 1, &["no", "n/a"]),
            yes("understand.parameter_order", 1, &["no", "n/a"]),
            yes("understand.modularized", 1, &["no", "n/a"]),
        ],
    );

    let visibility = quality(
        Quality::Visibility,
        vec![
            yes("visibility.process_defined", 3, &["no", "n/a"]),
            yes("visibility.process_documents", 3, &["no"]),
            yes("visibility.dev_environment", 2, &["no"]),
            yes("visibility.release_notes", 2, &["no"]),
        ],
    );

    Rubric {
        qualities: vec![
            installability,
            correctness,
            reliability,
            robustness,
            usability,
            maintainability,
            reusability,
            understandability,
            visibility,
        ],
    }
}
