//! `sotp`: drives an assessment workspace through filtering, validation,
//! mining, scoring, ranking and reporting.

mod commands;
mod config;
mod failure;
mod http;
mod workspace;

use std::path::PathBuf;
use std::process::ExitCode;

use chrono::NaiveDate;
use clap::{Parser, Subcommand};

use commands::Format;
use failure::Outcome;
use workspace::Workspace;

#[derive(Parser)]
#[command(name = "sotp", version, about = "State-of-the-practice assessment toolkit")]
struct Cli {
    /// Workspace root holding sotp.toml and ledger.toml.
    #[arg(long, short = 'w', global = true, default_value = ".")]
    workspace: PathBuf,
    /// Assessment date, overriding `as_of` in sotp.toml.
    #[arg(long, global = true, value_name = "YYYY-MM-DD")]
    as_of: Option<NaiveDate>,
    /// More log output (repeat for debug).
    #[arg(long, short, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the measurement template (id, type, choices, prompt).
    Catalog,
    /// Check the ledger, rubric, answer files and forge snapshots.
    Validate {
        #[arg(long)]
        package: Option<String>,
    },
    /// Apply the eligibility, scope, usage and age filters to the ledger.
    Filter,
    /// Mine history and line counts from each selected package's clone.
    Mine {
        #[arg(long)]
        package: Option<String>,
    },
    /// Fetch forge counts into forge.snapshot (token from GITHUB_TOKEN).
    Forge {
        #[arg(long)]
        package: Option<String>,
    },
    /// Score answer files with the rubric.
    Score {
        #[arg(long)]
        package: Option<String>,
    },
    /// Rank the selected packages with AHP and run the sensitivity analysis.
    Rank,
    /// Render the report from mined metrics, scores and the ranking.
    Report {
        /// Only this format (both are written by default).
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Print the developer interview guide.
    InterviewGuide {
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

fn open(cli: &Cli) -> Outcome<Workspace> {
    let mut ws = Workspace::open(&cli.workspace)?;
    if let Some(date) = cli.as_of {
        ws.config.as_of = date;
    }
    Ok(ws)
}

fn run(cli: &Cli) -> Outcome<()> {
    match &cli.command {
        Command::Catalog => commands::catalog(),
        Command::InterviewGuide { output } => commands::interview_guide(output.as_deref()),
        Command::Validate { package } => commands::validate(&open(cli)?, package.as_deref()),
        Command::Filter => commands::filter(&open(cli)?),
        Command::Mine { package } => commands::mine(&open(cli)?, package.as_deref()),
        Command::Forge { package } => commands::forge(&open(cli)?, package.as_deref()),
        Command::Score { package } => commands::score(&open(cli)?, package.as_deref()),
        Command::Rank => commands::rank_packages(&open(cli)?),
        Command::Report { format } => commands::report(&open(cli)?, *format).map(|_| ()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            f.exit_code()
        }
    }
}
