use csv::{QuoteStyle, WriterBuilder};

use super::{AssessmentBundle, ReportError};
use crate::quality::Quality;

const NA: &str = "n/a";

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| NA.to_string(), |v| v.to_string())
}

/// One row per selected package in rank order, strings quoted.
pub fn render_csv(bundle: &AssessmentBundle) -> Result<String, ReportError> {
    let mut w = WriterBuilder::new().quote_style(QuoteStyle::NonNumeric).from_writer(Vec::new());
    let mut header: Vec<String> = ["rank", "package", "name", "aggregate"].map(String::from).to_vec();
    header.extend(Quality::ALL.iter().map(|q| q.id().to_string()));
    header.extend(
        [
            "status",
            "total_commits",
            "developers",
            "lines_added",
            "lines_deleted",
            "text_files",
            "binary_files",
            "code_lines",
            "comment_lines",
            "blank_lines",
            "pct_comments",
            "stars",
            "forks",
            "watchers",
            "open_prs",
            "closed_prs",
            "open_issues",
            "closed_issues",
            "pct_issues_closed",
        ]
        .map(String::from),
    );
    let err = |e: csv::Error| ReportError::Csv(e.to_string());
    w.write_record(&header).map_err(err)?;

    for (rank, p) in bundle.ranked() {
        let m = &p.metrics;
        let f = m.forge.as_ref();
        let mut row = vec![
            rank.to_string(),
            p.id().to_string(),
            bundle.name_of(p.id()).to_string(),
            format!("{:.6}", bundle.aggregate_of(p.id())),
        ];
        row.extend(Quality::ALL.iter().map(|q| opt(p.scores.score(*q))));
        row.extend([
            m.derived.status.to_string(),
            m.history.total_commits.to_string(),
            m.history.developer_count.to_string(),
            m.history.lines_added.to_string(),
            m.history.lines_deleted.to_string(),
            m.code.text_files.to_string(),
            m.code.binary_files.to_string(),
            m.code.totals.code.to_string(),
            m.code.totals.comment.to_string(),
            m.code.totals.blank.to_string(),
            opt(m.derived.pct_comments.map(|v| format!("{v:.2}"))),
            opt(f.map(|f| f.stars)),
            opt(f.map(|f| f.forks)),
            opt(f.map(|f| f.watchers)),
            opt(f.map(|f| f.open_prs)),
            opt(f.map(|f| f.closed_prs)),
            opt(f.map(|f| f.open_issues)),
            opt(f.map(|f| f.closed_issues)),
            opt(m.derived.pct_issues_closed.map(|v| format!("{v:.2}"))),
        ]);
        w.write_record(&row).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| ReportError::Csv(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
