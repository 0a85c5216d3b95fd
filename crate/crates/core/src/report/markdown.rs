use std::collections::BTreeSet;
use std::fmt::Write;

use super::{AssessmentBundle, Frequency, ResearchQuestionAggregates};
use crate::ahp::CR_THRESHOLD;
use crate::quality::Quality;

/// Heading of the last section; everything that depends on the assessment date lives below it.
pub const VITALITY_HEADING: &str = "## Vitality";

const TUTORIAL_ROWS: [&str; 3] = ["reliab.tutorial_break", "reliab.tutorial_message", "reliab.tutorial_recoverable"];

fn cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

fn pct(p: Option<f64>) -> String {
    p.map_or_else(|| "n/a".to_string(), |p| format!("{p:.1}%"))
}

fn frequency_table(out: &mut String, title: &str, freq: &Frequency, total: usize) {
    let _ = writeln!(out, "### {title}\n");
    if freq.is_empty() {
        out.push_str("No answers recorded.\n\n");
        return;
    }
    out.push_str("| Answer | Packages | Share |\n|---|---:|---:|\n");
    let mut rows: Vec<(&String, &usize)> = freq.iter().collect();
    rows.sort_by(|a, b| b.1.cmp(a.1).then_with(|| a.0.cmp(b.0)));
    for (token, count) in rows {
        let share = 100.0 * *count as f64 / total.max(1) as f64;
        let _ = writeln!(out, "| {} | {count} | {share:.1}% |", cell(token));
    }
    out.push('\n');
}

/// Renders the full report. Output depends only on the inputs.
pub fn render_markdown(bundle: &AssessmentBundle, rq: &ResearchQuestionAggregates) -> String {
    let mut out = String::new();
    let ranking = &bundle.ranking;
    let _ = writeln!(out, "# State of the practice report\n");
    let _ = writeln!(
        out,
        "{} packages assessed ({} candidates considered). AHP matrix mode: `{}`.\n",
        bundle.packages.len(),
        bundle.ledger.initial_count,
        ranking.mode
    );

    out.push_str("## Ranking\n\n| Rank | Package | Name | Aggregate |\n|---:|---|---|---:|\n");
    for (rank, p) in bundle.ranked() {
        let _ = writeln!(
            out,
            "| {rank} | {} | {} | {:.4} |",
            cell(p.id()),
            cell(bundle.name_of(p.id())),
            bundle.aggregate_of(p.id())
        );
    }
    out.push('\n');
    if !ranking.ties.is_empty() {
        out.push_str("Tied aggregates (listed in id order):\n\n");
        for group in &ranking.ties {
            let _ = writeln!(out, "- {}", group.join(", "));
        }
        out.push('\n');
    }

    out.push_str("## Criteria weights\n\n| Quality | Weight |\n|---|---:|\n");
    for (q, w) in Quality::ALL.iter().zip(&ranking.criteria_weights) {
        let _ = writeln!(out, "| {} | {w:.4} |", q.label());
    }
    out.push('\n');

    out.push_str("## Consistency\n\n| Quality | lambda max | CI | CR |\n|---|---:|---:|---:|\n");
    for (q, r) in &ranking.per_quality {
        let _ = writeln!(
            out,
            "| {} | {:.4} | {:.4} | {:.4} |",
            q.label(),
            r.lambda_max,
            r.consistency_index,
            r.consistency_ratio
        );
    }
    out.push('\n');
    for (q, r) in &ranking.per_quality {
        if r.consistency_ratio > CR_THRESHOLD {
            let _ = writeln!(
                out,
                "WARNING: {} comparison matrix is inconsistent (CR {:.4} > {CR_THRESHOLD}).",
                q.label(),
                r.consistency_ratio
            );
        }
    }
    if !ranking.inconsistent().is_empty() {
        out.push('\n');
    }

    out.push_str("## Quality scores\n\n| Package |");
    for q in Quality::ALL {
        let _ = write!(out, " {} |", q.id());
    }
    out.push_str("\n|---|");
    out.push_str(&"---:|".repeat(Quality::ALL.len()));
    out.push('\n');
    for (_, p) in bundle.ranked() {
        let _ = write!(out, "| {} |", cell(p.id()));
        for q in Quality::ALL {
            let s = p.scores.score(q).map_or_else(|| "n/a".into(), |s| s.to_string());
            let _ = write!(out, " {s} |");
        }
        out.push('\n');
    }
    out.push('\n');

    let s = &bundle.sensitivity;
    out.push_str("## Sensitivity\n\n");
    let _ = writeln!(
        out,
        "Each score moved by +/-{} (clamped to 1..10), one at a time: {} perturbations, {} change the order, stability {:.1}%.",
        s.delta,
        s.perturbations.len(),
        s.changed().count(),
        100.0 * s.stability
    );
    match s.min_top_flip {
        Some(d) => {
            let _ = writeln!(out, "Smallest score change that replaces the top package: {d}.");
        }
        None => out.push_str("No single perturbation replaces the top package.\n"),
    }
    let flips: Vec<_> = s.perturbations.iter().filter(|p| p.top_changed).collect();
    if !flips.is_empty() {
        out.push_str("\n| Package | Quality | Change | New top |\n|---|---|---:|---|\n");
        for p in flips {
            let _ = writeln!(
                out,
                "| {} | {} | {:+} | {} |",
                cell(&p.package),
                p.quality.id(),
                p.applied,
                cell(p.order.first().map_or("", String::as_str))
            );
        }
    }
    out.push('\n');

    out.push_str("## Packages\n\n");
    for (rank, p) in bundle.ranked() {
        let m = &p.metrics;
        let _ = writeln!(out, "### {rank}. {} (`{}`)\n", cell(bundle.name_of(p.id())), p.id());
        if let Some(url) = bundle.ledger.record(p.id()).and_then(|r| r.url.as_deref()) {
            let _ = writeln!(out, "Repository: <{url}>\n");
        }
        let _ = writeln!(
            out,
            "- Commits: {} by {} developers, +{} / -{} lines",
            m.history.total_commits, m.history.developer_count, m.history.lines_added, m.history.lines_deleted
        );
        let _ = writeln!(
            out,
            "- First and last commit: {} and {}",
            m.history.first_commit_date, m.history.last_commit_date
        );
        let _ = writeln!(
            out,
            "- Files: {} text, {} binary; {} lines ({} code, {} comment, {} blank)",
            m.code.text_files,
            m.code.binary_files,
            m.code.totals.total,
            m.code.totals.code,
            m.code.totals.comment,
            m.code.totals.blank
        );
        let _ = writeln!(
            out,
            "- Comment share ({}): {}",
            m.derived.pct_comments_denominator,
            pct(m.derived.pct_comments)
        );
        match &m.forge {
            Some(f) => {
                let _ = writeln!(
                    out,
                    "- Forge: {} stars, {} forks, {} watchers; PRs {} open / {} closed; issues {} open / {} closed ({} closed)",
                    f.stars,
                    f.forks,
                    f.watchers,
                    f.open_prs,
                    f.closed_prs,
                    f.open_issues,
                    f.closed_issues,
                    pct(m.derived.pct_issues_closed)
                );
            }
            None => out.push_str("- Forge: n/a\n"),
        }
        let tutorial_na = TUTORIAL_ROWS
            .iter()
            .all(|id| p.answers.get(id).and_then(|a| a.value.as_choice()) == Some("n/a"));
        if tutorial_na {
            out.push_str("- Note: no tutorial, so surface reliability counts only the installation rows.\n");
        }
        out.push_str("\n| Quality | Score | Raw | Breakdown |\n|---|---:|---:|---|\n");
        for (q, qs) in &p.scores.scores {
            let items: Vec<String> = qs
                .breakdown
                .iter()
                .map(|a| format!("{}={} ({:+})", a.question, a.answer, a.points))
                .collect();
            let _ = writeln!(out, "| {} | {} | {} | {} |", q.id(), qs.score, qs.raw, cell(&items.join("; ")));
        }
        out.push('\n');
    }

    out.push_str("## Research questions\n\n");
    let n = rq.packages;
    frequency_table(&mut out, "Artifacts present", &rq.artifacts, n);
    frequency_table(&mut out, "Issue trackers", &rq.issue_trackers, n);
    frequency_table(&mut out, "Version control", &rq.version_control, n);
    frequency_table(&mut out, "Continuous integration", &rq.continuous_integration, n);
    frequency_table(&mut out, "Correctness tools", &rq.correctness_tools, n);
    frequency_table(&mut out, "Development model", &rq.development_model, n);
    frequency_table(&mut out, "Defined contribution process", &rq.process_defined, n);

    let c = &rq.community;
    out.push_str("### Ranking against community interest\n\n");
    out.push_str("| Position | By AHP | By stars |\n|---:|---|---|\n");
    for i in 0..c.ahp_top.len().max(c.stars_top.len()) {
        let get = |v: &[String]| v.get(i).map_or_else(String::new, |s| cell(s));
        let _ = writeln!(out, "| {} | {} | {} |", i + 1, get(&c.ahp_top), get(&c.stars_top));
    }
    let _ = writeln!(out, "\nTop-{} overlap: {}.", c.top_k, c.overlap);
    match c.kendall_tau {
        Some(t) => {
            let _ = writeln!(out, "Kendall tau-b (aggregate vs stars): {t:.4}.");
        }
        None => out.push_str("Kendall tau-b (aggregate vs stars): n/a.\n"),
    }
    if !c.without_stars.is_empty() {
        let _ = writeln!(out, "No forge data: {}.", c.without_stars.join(", "));
    }
    out.push('\n');

    let _ = writeln!(out, "{VITALITY_HEADING}\n\nAssessment date: {}.\n", bundle.ledger.as_of);
    out.push_str("| Package | Status | Last commit |");
    let years: BTreeSet<i32> = bundle
        .packages
        .values()
        .flat_map(|p| p.metrics.history.commits_by_year.keys().copied())
        .collect();
    let months: BTreeSet<&String> = bundle
        .packages
        .values()
        .flat_map(|p| p.metrics.history.commits_by_month.keys())
        .collect();
    out.push_str(" Commits in last 12 months |\n|---|---|---|---:|\n");
    for (_, p) in bundle.ranked() {
        let h = &p.metrics.history;
        let recent: u64 = h.commits_by_month.values().sum();
        let _ = writeln!(
            out,
            "| {} | {} | {} | {recent} |",
            cell(p.id()),
            p.metrics.derived.status,
            h.last_commit_date
        );
    }
    out.push('\n');
    if !years.is_empty() {
        out.push_str("Commits per year:\n\n| Package |");
        for y in &years {
            let _ = write!(out, " {y} |");
        }
        out.push_str("\n|---|");
        out.push_str(&"---:|".repeat(years.len()));
        out.push('\n');
        for (_, p) in bundle.ranked() {
            let _ = write!(out, "| {} |", cell(p.id()));
            for y in &years {
                let _ = write!(out, " {} |", p.metrics.history.commits_by_year.get(y).copied().unwrap_or(0));
            }
            out.push('\n');
        }
        out.push('\n');
    }
    if !months.is_empty() {
        out.push_str("Commits per month:\n\n| Package |");
        for m in &months {
            let _ = write!(out, " {m} |");
        }
        out.push_str("\n|---|");
        out.push_str(&"---:|".repeat(months.len()));
        out.push('\n');
        for (_, p) in bundle.ranked() {
            let _ = write!(out, "| {} |", cell(p.id()));
            for m in &months {
                let _ = write!(out, " {} |", p.metrics.history.commits_by_month.get(*m).copied().unwrap_or(0));
            }
            out.push('\n');
        }
    }
    out
}
