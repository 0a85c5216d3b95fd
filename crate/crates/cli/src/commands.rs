use std::path::{Path, PathBuf};

use chrono::{Months, Utc};
use log::{info, warn};

use sotp_core::ahp::{rank, sensitivity, AhpError, ScoreTable};
use sotp_core::catalog::builtin_catalog;
use sotp_core::derived::{derive, MetricsDocument, ALIVE_WINDOW_MONTHS};
use sotp_core::forge::{fetch_forge_metrics, serialize_forge_snapshot, ForgeError, DEFAULT_API_BASE, TOKEN_ENV};
use sotp_core::repo::{aggregate_tree, analyze_history, RepoError, TreeOptions};
use sotp_core::report::{
    aggregate_research_questions, emit_interview_guide, render_csv, render_markdown, AssessmentBundle,
    PackageAssessment, DEFAULT_TOP_K,
};
use sotp_core::scoring::{score_all, QualityScores};
use sotp_core::workflow::{apply_filters, side_by_side};

use crate::failure::{Classify, Failure, Kind, Outcome};
use crate::http::UreqTransport;
use crate::workspace::{
    read_json, write, write_json, RankingDocument, Workspace, ANSWERS_FILE, LEDGER_FILE, METRICS_FILE, RANKING_FILE,
    REPORT_DIR, SCORES_FILE, SNAPSHOT_FILE,
};

pub const REPORT_MARKDOWN: &str = "report.md";
pub const REPORT_CSV: &str = "packages.csv";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Markdown,
    Csv,
}

pub fn catalog() -> Outcome<()> {
    print!("{}", builtin_catalog().export_listing());
    Ok(())
}

pub fn interview_guide(output: Option<&Path>) -> Outcome<()> {
    let guide = emit_interview_guide();
    match output {
        Some(path) => write(path, &guide),
        None => {
            print!("{guide}");
            Ok(())
        }
    }
}

pub fn filter(ws: &Workspace) -> Outcome<()> {
    let ledger = ws.ledger()?;
    let threshold = match ws.config.age_threshold {
        Some(t) => t,
        None => ws
            .config
            .as_of
            .checked_sub_months(Months::new(ALIVE_WINDOW_MONTHS))
            .unwrap_or(ws.config.as_of),
    };
    let mut ledger = ledger;
    ledger.as_of = ws.config.as_of;
    let filtered = apply_filters(&ledger, ws.config.target_size, threshold).or_fail(Kind::Validation)?;
    write(&ws.root.join(LEDGER_FILE), &filtered.to_toml_string())?;
    print!("{}", side_by_side(&filtered));
    println!(
        "{} of {} candidates selected (target {}).",
        filtered.selected().count(),
        filtered.initial_count,
        ws.config.target_size
    );
    Ok(())
}

/// Parses every answer file and reports all problems before failing.
pub fn validate(ws: &Workspace, only: Option<&str>) -> Outcome<()> {
    let ledger = ws.ledger()?;
    ws.rubric()?;
    let mut bad = 0;
    for id in ws.targets(&ledger, only)? {
        match ws.answers(&id) {
            Ok(answers) => {
                let report = ws.catalog.completeness(&answers);
                if report.is_complete() {
                    println!("{id}: ok ({} answers)", report.answered);
                } else {
                    let missing: Vec<&str> = report.missing_ids().collect();
                    println!(
                        "{id}: incomplete, {} of {} answered; missing {}",
                        report.answered,
                        report.total,
                        missing.join(", ")
                    );
                }
            }
            Err(f) if f.kind == Kind::Validation => {
                bad += 1;
                eprintln!("{id}: {f}");
            }
            Err(f) => return Err(f),
        }
        if let Err(f) = ws.snapshot(&id) {
            bad += 1;
            eprintln!("{id}: {f}");
        }
    }
    if bad > 0 {
        return Err(Failure::validation(format!("{bad} package file(s) failed validation")));
    }
    Ok(())
}

fn repo_failure(e: RepoError) -> Failure {
    let kind = match e {
        RepoError::NoHistory | RepoError::NotARepository(_) => Kind::Validation,
        _ => Kind::Io,
    };
    Failure::new(kind, e)
}

pub fn mine(ws: &Workspace, only: Option<&str>) -> Outcome<()> {
    let ledger = ws.ledger()?;
    let as_of = ws.config.as_of;
    for id in ws.targets(&ledger, only)? {
        let record = ledger.record(&id).expect("selected ids come from the ledger");
        let repo = record
            .repository
            .as_ref()
            .map(|p| if p.is_absolute() { p.clone() } else { ws.root.join(p) })
            .ok_or_else(|| Failure::validation(format!("{id}: ledger entry has no `repository` path")))?;
        let history = analyze_history(&repo, as_of).map_err(repo_failure).map_err(|f| context(f, &id))?;
        let code = aggregate_tree(&repo, &TreeOptions::default())
            .map_err(repo_failure)
            .map_err(|f| context(f, &id))?;
        let forge = ws.snapshot(&id)?;
        let derived = derive(
            history.last_commit_date,
            record.last_release,
            forge.as_ref().map(|f| (f.open_issues, f.closed_issues)),
            &code.totals,
            as_of,
        )
        .or_fail_with(Kind::Validation, || id.clone())?;
        info!("{id}: {} commits, {} lines, {}", history.total_commits, code.totals.total, derived.status);
        let doc = MetricsDocument {
            package_id: id.clone(),
            history,
            code,
            forge,
            derived,
        };
        write_json(&ws.package_file(&id, METRICS_FILE), &doc)?;
        println!("{id}: {} ({})", METRICS_FILE, doc.derived.status);
    }
    Ok(())
}

fn context(f: Failure, id: &str) -> Failure {
    Failure {
        kind: f.kind,
        error: f.error.context(id.to_string()),
    }
}

pub fn forge(ws: &Workspace, only: Option<&str>) -> Outcome<()> {
    let ledger = ws.ledger()?;
    let token = std::env::var(TOKEN_ENV).ok().filter(|t| !t.is_empty());
    if token.is_none() {
        warn!("{TOKEN_ENV} is not set; unauthenticated requests are heavily rate limited");
    }
    let api = ws.config.forge_api.as_deref().unwrap_or(DEFAULT_API_BASE);
    let transport = UreqTransport::new();
    for id in ws.targets(&ledger, only)? {
        let record = ledger.record(&id).expect("selected ids come from the ledger");
        let url = record
            .url
            .as_deref()
            .ok_or_else(|| Failure::validation(format!("{id}: ledger entry has no `url`")))?;
        let metrics = fetch_forge_metrics(url, token.as_deref(), &transport, api, Utc::now()).map_err(|e| {
            let kind = match e {
                ForgeError::UnsupportedForge(_) => Kind::Validation,
                _ => Kind::Io,
            };
            context(Failure::new(kind, e), &id)
        })?;
        write(&ws.package_file(&id, SNAPSHOT_FILE), &serialize_forge_snapshot(&metrics))?;
        println!("{id}: {} stars, {} forks", metrics.stars, metrics.forks);
    }
    Ok(())
}

pub fn score(ws: &Workspace, only: Option<&str>) -> Outcome<()> {
    let ledger = ws.ledger()?;
    let rubric = ws.rubric()?;
    for id in ws.targets(&ledger, only)? {
        let answers = ws.answers(&id)?;
        let scores = score_all(&rubric, &answers).or_fail_with(Kind::Validation, || {
            format!("{id}: scoring {}", ws.package_file(&id, ANSWERS_FILE).display())
        })?;
        write_json(&ws.package_file(&id, SCORES_FILE), &scores)?;
        let line: Vec<String> = scores.scores.iter().map(|(q, s)| format!("{}={}", q.id(), s.score)).collect();
        println!("{id}: {}", line.join(" "));
    }
    Ok(())
}

fn ahp_failure(e: AhpError) -> Failure {
    let kind = match e {
        AhpError::NonConvergence(_) => Kind::Computation,
        _ => Kind::Validation,
    };
    Failure::new(kind, e)
}

pub fn rank_packages(ws: &Workspace) -> Outcome<()> {
    let ledger = ws.ledger()?;
    let ids = ws.targets(&ledger, None)?;
    let scores: Vec<QualityScores> = ids
        .iter()
        .map(|id| read_json(&ws.package_file(id, SCORES_FILE)))
        .collect::<Outcome<_>>()?;
    let table = ScoreTable::from_quality_scores(&scores).map_err(ahp_failure)?;
    let weights = ws.config.weights()?;
    let mode = ws.config.ahp_mode;
    let ranking = rank(&table, &weights, mode).map_err(ahp_failure)?;
    let sens = sensitivity(&table, &weights, ws.config.sensitivity_delta, mode).map_err(ahp_failure)?;
    for q in ranking.inconsistent() {
        let cr = ranking.per_quality[&q].consistency_ratio;
        warn!("{} comparison matrix is inconsistent (CR {cr:.4})", q.label());
    }
    for (i, id) in ranking.order.iter().enumerate() {
        let at = ranking.packages.iter().position(|p| p == id).expect("ranked id");
        println!("{:>3}. {id} {:.4}", i + 1, ranking.aggregate[at]);
    }
    println!("stability {:.1}% at delta {}", 100.0 * sens.stability, sens.delta);
    write_json(
        &ws.root.join(RANKING_FILE),
        &RankingDocument {
            ranking,
            sensitivity: sens,
        },
    )
}

pub fn report(ws: &Workspace, format: Option<Format>) -> Outcome<Vec<PathBuf>> {
    let mut ledger = ws.ledger()?;
    ledger.as_of = ws.config.as_of;
    let ids = ws.targets(&ledger, None)?;
    let mut packages = Vec::with_capacity(ids.len());
    for id in &ids {
        let metrics: MetricsDocument = read_json(&ws.package_file(id, METRICS_FILE))?;
        if metrics.derived.as_of != ws.config.as_of {
            warn!(
                "{id}: metrics were mined as of {}, report is as of {}",
                metrics.derived.as_of, ws.config.as_of
            );
        }
        packages.push(PackageAssessment {
            answers: ws.answers(id)?,
            metrics,
            scores: read_json(&ws.package_file(id, SCORES_FILE))?,
        });
    }
    let doc = ws.ranking()?;
    let bundle = AssessmentBundle::new(ledger, packages, doc.ranking, doc.sensitivity).or_fail(Kind::Validation)?;
    let dir = ws.root.join(REPORT_DIR);
    let mut written = Vec::new();
    if format != Some(Format::Csv) {
        let rq = aggregate_research_questions(&bundle, DEFAULT_TOP_K);
        let path = dir.join(REPORT_MARKDOWN);
        write(&path, &render_markdown(&bundle, &rq))?;
        written.push(path);
    }
    if format != Some(Format::Markdown) {
        let path = dir.join(REPORT_CSV);
        write(&path, &render_csv(&bundle).or_fail(Kind::Computation)?)?;
        written.push(path);
    }
    for p in &written {
        println!("wrote {}", p.display());
    }
    Ok(written)
}
