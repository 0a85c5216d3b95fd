//! Builds a synthetic desk-scale workspace: five small git repositories,
//! a six-entry ledger (one ineligible), seeded answer files and forge
//! snapshots for four of the five packages.

#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use chrono::{NaiveDate, TimeZone, Utc};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sotp_core::catalog::{builtin_catalog, serialize_answers, Answer, AnswerSet, AnswerType, AnswerValue};
use sotp_core::forge::{serialize_forge_snapshot, ForgeMetrics};
use sotp_core::workflow::{PackageLedger, PackageRecord};

pub const PACKAGES: [&str; 5] = ["alder", "birch", "cedar", "dogwood", "elm"];
pub const AS_OF: &str = "2025-06-01";

pub fn sotp(workspace: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sotp"))
        .arg("--workspace")
        .arg(workspace)
        .args(args)
        .env_remove("RUST_LOG")
        .output()
        .expect("sotp runs")
}

/// Runs a stage and panics with its stderr when it fails.
pub fn stage(workspace: &Path, args: &[&str]) -> String {
    let out = sotp(workspace, args);
    assert!(
        out.status.success(),
        "sotp {args:?} exited {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

pub fn git(dir: &Path, args: &[&str], date: Option<&str>, email: &str) {
    let mut cmd = Command::new("git");
    cmd.arg("-C").arg(dir).args(args);
    cmd.env("GIT_AUTHOR_NAME", "Dev")
        .env("GIT_AUTHOR_EMAIL", email)
        .env("GIT_COMMITTER_NAME", "Dev")
        .env("GIT_COMMITTER_EMAIL", email)
        .env("GIT_CONFIG_NOSYSTEM", "1")
        .env("HOME", dir);
    if let Some(d) = date {
        cmd.env("GIT_AUTHOR_DATE", d).env("GIT_COMMITTER_DATE", d);
    }
    let out = cmd.output().expect("git runs");
    assert!(out.status.success(), "git {args:?}: {}", String::from_utf8_lossy(&out.stderr));
}

fn build_repo(dir: &Path, seed: u64) {
    fs::create_dir_all(dir).unwrap();
    git(dir, &["init", "-q", "-b", "main"], None, "x@example.org");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let commits = rng.random_range(3..9);
    for i in 0..commits {
        let month = 1 + (i * 3 + seed as u32) % 12;
        let year = 2023 + (i as i32 * 7 + seed as i32) % 2;
        let date = format!("{year}-{month:02}-{:02}T10:00:00Z", 1 + i);
        let email = format!("dev{}@example.org", rng.random_range(0..3));
        let body: String = (0..rng.random_range(2..12))
            .map(|k| match k % 4 {
                0 => format!("/* block {k} */\n"),
                1 => format!("int v{k} = {k};\n"),
                2 => "\n".to_string(),
                _ => format!("// note {k}\n"),
            })
            .collect();
        fs::write(dir.join(format!("src{i}.c")), body).unwrap();
        fs::write(dir.join("solver.py"), format!("# step {i}\nx = {i}\n")).unwrap();
        git(dir, &["add", "."], None, &email);
        git(dir, &["commit", "-q", "-m", "work"], Some(&date), &email);
    }
    // Earlier commits land in 2023-2024, out of order; the tip is always the latest.
    git(dir, &["commit", "-q", "--allow-empty", "-m", "tip"], Some("2025-03-15T12:00:00Z"), "dev0@example.org");
    fs::write(dir.join("logo.png"), [137u8, 80, 78, 71, 0, 0, 1]).unwrap();
}

fn value(rng: &mut ChaCha8Rng, ty: &AnswerType, id: &str) -> AnswerValue {
    let choice = |rng: &mut ChaCha8Rng| AnswerValue::Choice(ty.choices().choose(rng).unwrap().token.clone());
    match ty {
        AnswerType::Choice { .. } => choice(rng),
        AnswerType::SetOf { choices } => {
            let mut tokens: Vec<String> = choices.iter().map(|c| c.token.clone()).collect();
            tokens.shuffle(rng);
            let n = rng.random_range(1..=tokens.len().min(3));
            AnswerValue::Set(tokens.into_iter().take(n).collect())
        }
        AnswerType::Number => AnswerValue::Number(rng.random_range(1..500)),
        AnswerType::NumberOr { .. } if rng.random_bool(0.2) => choice(rng),
        AnswerType::NumberOr { .. } => AnswerValue::Number(rng.random_range(1..500)),
        AnswerType::NumberList => AnswerValue::NumberList(vec![rng.random_range(1..9), rng.random_range(10..99)]),
        AnswerType::Scale { min, max } => AnswerValue::Scale(rng.random_range(*min..=*max)),
        AnswerType::Percentage => AnswerValue::Percentage(f64::from(rng.random_range(0..=40u32)) * 2.5),
        AnswerType::Date => AnswerValue::Date(sotp_core::catalog::AnswerDate {
            date: NaiveDate::from_ymd_opt(2020 + rng.random_range(0..5), rng.random_range(1..=12), 1).unwrap(),
            year_only: false,
        }),
        AnswerType::Url => AnswerValue::Url(format!("https://example.org/{id}")),
        AnswerType::UrlSetOr { .. } if rng.random_bool(0.3) => choice(rng),
        AnswerType::UrlSetOr { .. } => AnswerValue::UrlSet(vec![format!("https://example.org/{id}/a")]),
        AnswerType::TextOr { .. } if rng.random_bool(0.3) => choice(rng),
        AnswerType::Text | AnswerType::TextOr { .. } => {
            let pool = ["README", "manual", "FAQ", "forum", "mailing list", "tutorial"];
            let n = rng.random_range(1..=3);
            AnswerValue::Text(pool.choose_multiple(rng, n).copied().collect::<Vec<_>>().join(", "))
        }
    }
}

/// A complete, valid answer set for `id`, reproducible from `seed`.
pub fn answers(id: &str, seed: u64) -> AnswerSet {
    let catalog = builtin_catalog();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut set = AnswerSet::new(id);
    set.vm_environment = Some("Ubuntu 24.04 VM".into());
    for q in catalog.questions() {
        let v = value(&mut rng, &q.answer_type, &q.id);
        let note = Some(["README, Makefile", "CHANGELOG; design notes", "tests"][rng.random_range(0..3)].to_string());
        set.insert(Answer {
            question_id: q.id.clone(),
            value: v,
            note,
        });
    }
    set
}

fn snapshot(seed: u64) -> ForgeMetrics {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    ForgeMetrics {
        stars: rng.random_range(0..400),
        forks: rng.random_range(0..60),
        watchers: rng.random_range(0..30),
        open_prs: rng.random_range(0..5),
        closed_prs: rng.random_range(0..80),
        open_issues: rng.random_range(0..40),
        closed_issues: rng.random_range(0..200),
        fetched_at: Utc.with_ymd_and_hms(2025, 5, 20, 8, 0, 0).unwrap(),
        drafts_included: true,
    }
}

/// Writes the workspace under `root` and returns it.
pub fn desk_workspace(root: &Path) -> PathBuf {
    let catalog = builtin_catalog();
    fs::write(
        root.join("sotp.toml"),
        format!("as_of = {AS_OF}\ntarget_size = 30\nahp_mode = \"ratio\"\nsensitivity_delta = 1.0\n"),
    )
    .unwrap();
    let mut records = Vec::new();
    for (i, id) in PACKAGES.iter().enumerate() {
        let seed = i as u64 + 1;
        build_repo(&root.join("repos").join(id), seed);
        let mut r = PackageRecord::candidate(*id, id.to_uppercase());
        r.url = Some(format!("https://github.com/example/{id}"));
        r.repository = Some(PathBuf::from("repos").join(id));
        r.last_change = Some(NaiveDate::from_ymd_opt(2025, 3, 15).unwrap());
        records.push(r);
        let dir = root.join("packages").join(id);
        fs::create_dir_all(&dir).unwrap();
        fs::write(dir.join("answers.txt"), serialize_answers(&answers(id, seed), &catalog)).unwrap();
        if *id != "elm" {
            fs::write(dir.join("forge.snapshot"), serialize_forge_snapshot(&snapshot(seed))).unwrap();
        }
    }
    let mut closed = PackageRecord::candidate("fir", "FIR");
    closed.eligibility.source_viewable = false;
    records.push(closed);
    let ledger = PackageLedger::new(NaiveDate::parse_from_str(AS_OF, "%Y-%m-%d").unwrap(), records).unwrap();
    fs::write(root.join("ledger.toml"), ledger.to_toml_string()).unwrap();
    root.to_path_buf()
}

/// Every stage of the pipeline in order.
pub fn run_pipeline(ws: &Path, extra: &[&str]) {
    for cmd in [&["filter"][..], &["validate"], &["mine"], &["score"], &["rank"], &["report"]] {
        let args: Vec<&str> = cmd.iter().chain(extra).copied().collect();
        stage(ws, &args);
    }
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Compares against a checked-in file, rewriting it when UPDATE_GOLDEN is set.
pub fn matches_golden(name: &str, actual: &str) -> bool {
    let path = golden_dir().join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::create_dir_all(golden_dir()).unwrap();
        fs::write(&path, actual).unwrap();
    }
    fs::read_to_string(&path).is_ok_and(|g| g == actual)
}
