use super::{AnswerType, Choice, Question, QuestionCatalog, Section, SectionKind};
use crate::quality::Quality;

/// Every row of the template: 90 summary and quality rows plus 18 repository-metric rows.
pub const BUILTIN_QUESTION_COUNT: usize = 108;

const CATALOG_VERSION: &str = "template-2021.1";

const ADDITIONAL_COMMENTS: &str = "Additional comments? (can cover any metrics you feel are \
missing, or any other thoughts you have)";

/// Parses `"yes*, no, n/a"` into choices, `*` marking a starred choice.
fn choices(spec: &str) -> Vec<Choice> {
    spec.split(',')
        .map(str::trim)
        .map(|t| match t.strip_suffix('*') {
            Some(token) => Choice {
                token: token.to_string(),
                starred: true,
            },
            None => Choice {
                token: t.to_string(),
                starred: false,
            },
        })
        .collect()
}

fn one_of(spec: &str) -> AnswerType {
    AnswerType::Choice {
        choices: choices(spec),
    }
}

fn set_of(spec: &str) -> AnswerType {
    AnswerType::SetOf {
        choices: choices(spec),
    }
}

fn q(id: &str, prompt: &str, answer_type: AnswerType) -> Question {
    Question {
        id: id.to_string(),
        prompt: prompt.to_string(),
        answer_type,
    }
}

fn number(id: &str, prompt: &str) -> Question {
    q(id, prompt, AnswerType::Number)
}

/// The two rows closing every quality section.
fn closing_rows(prefix: &str) -> [Question; 2] {
    [
        q(
            &format!("{prefix}.impression"),
            "Overall impression?",
            AnswerType::Scale { min: 1, max: 10 },
        ),
        q(
            &format!("{prefix}.comments"),
            ADDITIONAL_COMMENTS,
            AnswerType::Text,
        ),
    ]
}

fn quality_section(quality: Quality, title: &str, prefix: &str, rows: Vec<Question>) -> Section {
    let mut questions = rows;
    questions.extend(closing_rows(prefix));
    Section {
        id: quality.id().to_string(),
        title: title.to_string(),
        kind: SectionKind::Quality(quality),
        questions,
    }
}

fn summary() -> Section {
    Section {
        id: "summary".into(),
        title: "Summary Information".into(),
        kind: SectionKind::Summary,
        questions: vec![
            q("summary.name", "Software name?", AnswerType::Text),
            q("summary.url", "URL?", AnswerType::Url),
            q(
                "summary.affiliation",
                "Affiliation (institution(s))",
                AnswerType::TextOr { choices: choices("n/a") },
            ),
            q("summary.purpose", "Software purpose", AnswerType::Text),
            number(
                "summary.developers",
                "Number of developers (all developers that have contributed at least one \
                 commit to the project) (use repo commit logs)",
            ),
            q(
                "summary.funding",
                "How is the project funded?",
                one_of("unfunded, unclear, funded*"),
            ),
            q("summary.initial_release", "Initial release date?", AnswerType::Date),
            q("summary.last_commit", "Last commit date?", AnswerType::Date),
            q(
                "summary.status",
                "Status? (alive is defined as presence of commits in the last 18 months)",
                one_of("alive, dead, unclear"),
            ),
            q(
                "summary.license",
                "License?",
                one_of("gnu_gpl, bsd, mit, terms_of_use, trial, none, unclear, other*"),
            ),
            q(
                "summary.platforms",
                "Platforms?",
                set_of("windows, linux, os_x, android, other*"),
            ),
            q(
                "summary.category",
                "Software Category? The concept category includes software that does not \
                 have an officially released version. Public software has a released version \
                 in the public domain. Private software has a released version available to \
                 authorized users only.",
                one_of("concept, public, private"),
            ),
            q(
                "summary.dev_model",
                "Development model?",
                one_of("open_source, freeware, commercial, unclear"),
            ),
            q(
                "summary.publications",
                "Publications about the software? Refers to publications that have used or \
                 mentioned the software.",
                AnswerType::NumberOr {
                    choices: choices("unknown"),
                },
            ),
            q(
                "summary.source_url",
                "Source code URL?",
                AnswerType::UrlSetOr {
                    choices: choices("n/a, unclear"),
                },
            ),
            q(
                "summary.languages",
                "Programming language(s)?",
                set_of(
                    "fortran, matlab, c, c++, java, r, ruby, python, cython, basic, pascal, \
                     idl, unclear, other*",
                ),
            ),
            q(
                "summary.performance",
                "Is there evidence that performance was considered? Performance refers to \
                 either speed, storage, or throughput.",
                one_of("yes*, no"),
            ),
            q("summary.comments", ADDITIONAL_COMMENTS, AnswerType::Text),
        ],
    }
}

fn installability() -> Section {
    quality_section(
        Quality::Installability,
        "Installability (Measured via installation on a virtual machine.)",
        "install",
        vec![
            q(
                "install.instructions",
                "Are there installation instructions?",
                one_of("yes, no"),
            ),
            q(
                "install.one_place",
                "Are the installation instructions in one place? Place referring to a single \
                 document or web-page.",
                one_of("yes, no, n/a"),
            ),
            q(
                "install.linear",
                "Are the installation instructions linear? Linear meaning progressing in a \
                 single series of steps.",
                one_of("yes, no, n/a"),
            ),
            q(
                "install.no_dependencies_assumed",
                "Are the instructions written as if the person doing the installation has \
                 none of the dependent packages installed?",
                one_of("yes, no, unclear"),
            ),
            q(
                "install.os_versions_listed",
                "Are compatible operating system versions listed?",
                one_of("yes, no"),
            ),
            q(
                "install.automation",
                "Is there something in place to automate the installation (makefile, script, \
                 installer, etc)?",
                one_of("yes*, no"),
            ),
            q(
                "install.break_message",
                "If the software installation broke, was a descriptive error message \
                 displayed?",
                one_of("yes, no, n/a"),
            ),
            q(
                "install.validation",
                "Is there a specified way to validate the installation?",
                one_of("yes*, no"),
            ),
            number(
                "install.steps",
                "How many steps were involved in the installation? (Includes manual steps \
                 like unzipping files) Specify OS.",
            ),
            q(
                "install.os",
                "What OS was used for the installation?",
                one_of("windows, linux, os_x, android, other*"),
            ),
            number(
                "install.extra_packages",
                "How many extra software packages need to be installed before or during \
                 installation?",
            ),
            q(
                "install.package_versions",
                "Are required package versions listed?",
                one_of("yes, no, n/a"),
            ),
            q(
                "install.dependency_instructions",
                "Are there instructions for the installation of required packages / \
                 dependencies?",
                one_of("yes, no, n/a"),
            ),
            q(
                "install.uninstall_problems",
                "Run uninstall, if available. Were any obvious problems caused?",
                one_of("yes*, no, unavail"),
            ),
        ],
    )
}

fn correctness() -> Section {
    quality_section(
        Quality::Correctness,
        "Correctness and Verifiability",
        "correct",
        vec![
            q(
                "correct.requirements",
                "Any reference to the requirements specifications of the program or theory \
                 manuals?",
                one_of("yes*, no, unclear"),
            ),
            q(
                "correct.tools",
                "What tools or techniques are used to build confidence of correctness?",
                set_of(
                    "literate_programming, automated_testing, symbolic_execution, \
                     model_checking, assertions, sphinx, doxygen, javadoc, confluence, \
                     unclear, other*",
                ),
            ),
            q(
                "correct.tutorial",
                "If there is a getting started tutorial?",
                one_of("yes, no"),
            ),
            q(
                "correct.tutorial_linear",
                "Are the tutorial instructions linear?",
                one_of("yes, no, n/a"),
            ),
            q(
                "correct.expected_output",
                "Does the getting started tutorial provide an expected output?",
                one_of("yes, no*, n/a"),
            ),
            q(
                "correct.output_match",
                "Does your tutorial output match the expected output?",
                one_of("yes, no, n/a"),
            ),
            q(
                "correct.unit_tests",
                "Are unit tests available?",
                one_of("yes, no, unclear"),
            ),
            q(
                "correct.ci",
                "Is there evidence of continuous integration? (for example mentioned in \
                 documentation, Jenkins, Travis CI, Bamboo, other)",
                one_of("yes*, no, unclear"),
            ),
        ],
    )
}

fn reliability() -> Section {
    quality_section(
        Quality::Reliability,
        "Surface Reliability",
        "reliab",
        vec![
            q(
                "reliab.install_break",
                "Did the software \u{201c}break\u{201d} during installation?",
                one_of("yes*, no"),
            ),
            q(
                "reliab.install_recoverable",
                "If the software installation broke, was the installation instance \
                 recoverable?",
                one_of("yes, no, n/a"),
            ),
            q(
                "reliab.tutorial_break",
                "Did the software \u{201c}break\u{201d} during the initial tutorial testing?",
                one_of("yes*, no, n/a"),
            ),
            q(
                "reliab.tutorial_message",
                "If the tutorial testing broke, was a descriptive error message displayed?",
                one_of("yes, no, n/a"),
            ),
            q(
                "reliab.tutorial_recoverable",
                "If the tutorial testing broke, was the tutorial testing instance \
                 recoverable?",
                one_of("yes, no, n/a"),
            ),
        ],
    )
}

fn robustness() -> Section {
    quality_section(
        Quality::Robustness,
        "Surface Robustness",
        "robust",
        vec![
            q(
                "robust.unexpected_input",
                "Does the software handle unexpected/unanticipated input (like data of the \
                 wrong type, empty input, missing files or links) reasonably? (a reasonable \
                 response can include an appropriate error message.)",
                one_of("yes, no*"),
            ),
            q(
                "robust.newlines",
                "For any plain text input files, if all new lines are replaced with new \
                 lines and carriage returns, will the software handle this gracefully?",
                one_of("yes, no*, n/a"),
            ),
        ],
    )
}

fn usability() -> Section {
    quality_section(
        Quality::Usability,
        "Surface Usability",
        "usability",
        vec![
            q(
                "usability.tutorial",
                "Is there a getting started tutorial?",
                one_of("yes, no"),
            ),
            q(
                "usability.user_manual",
                "Is there a user manual?",
                one_of("yes, no"),
            ),
            q(
                "usability.user_characteristics",
                "Are expected user characteristics documented?",
                one_of("yes, no"),
            ),
            q(
                "usability.support_model",
                "What is the user support model? FAQ? User forum? E-mail address to direct \
                 questions? Etc.",
                AnswerType::Text,
            ),
        ],
    )
}

fn maintainability() -> Section {
    quality_section(
        Quality::Maintainability,
        "Maintainability",
        "maint",
        vec![
            q(
                "maint.version",
                "What is the current version number?",
                AnswerType::TextOr {
                    choices: choices("none"),
                },
            ),
            q(
                "maint.contribution_info",
                "Is there any information on how code is reviewed, or how to contribute?",
                one_of("yes*, no"),
            ),
            q(
                "maint.artifacts",
                "Are artifacts available? (List every type of file that is not a code file)",
                one_of("yes*, no, unclear"),
            ),
            q(
                "maint.issue_tracker",
                "What issue tracking tool is employed?",
                set_of(
                    "trac, jira, redmine, e-mail, discussion_board, sourceforge, google_code, \
                     git, bitbucket, none, unclear, other*",
                ),
            ),
            q(
                "maint.pct_issues_closed",
                "What is the percentage of identified issues that are closed?",
                AnswerType::Percentage,
            ),
            q(
                "maint.pct_comments",
                "What percentage of code is comments?",
                AnswerType::Percentage,
            ),
            q(
                "maint.vcs",
                "Which version control system is in use?",
                one_of("svn, cvs, git, github, unclear, other*"),
            ),
        ],
    )
}

fn reusability() -> Section {
    quality_section(
        Quality::Reusability,
        "Reusability",
        "reuse",
        vec![
            number("reuse.code_files", "How many code files are there?"),
            q(
                "reuse.api_documented",
                "Is API documented?",
                one_of("yes, no, n/a"),
            ),
        ],
    )
}

fn understandability() -> Section {
    quality_section(
        Quality::Understandability,
        "Surface Understandability (Based on 10 random source files)",
        "understand",
        vec![
            q(
                "understand.indentation",
                "Consistent indentation and formatting style?",
                one_of("yes, no, n/a"),
            ),
            q(
                "understand.coding_standard",
                "Explicit identification of a coding standard?",
                one_of("yes*, no, n/a"),
            ),
            q(
                "understand.identifiers",
                "Are the code identifiers consistent, distinctive, and meaningful?",
                one_of("yes, no*, n/a"),
            ),
            q(
                "understand.constants",
                "Are constants (other than 0 and 1) hard coded into the program?",
                one_of("yes, no*, n/a"),
            ),
            q(
                "understand.comments_clear",
                "Comments are clear, indicate what is being done, not how?",
                one_of("yes, no*, n/a"),
            ),
            q(
                "understand.parameter_order",
                "Parameters are in the same order for all functions?",
                one_of("yes, no*, n/a"),
            ),
            q(
                "understand.algorithms_named",
                "Is the name/URL of any algorithms used mentioned?",
                one_of("yes, no*, n/a"),
            ),
            q(
                "understand.modularized",
                "Is code modularized?",
                one_of("yes, no*, n/a"),
            ),
        ],
    )
}

fn visibility() -> Section {
    quality_section(
        Quality::Visibility,
        "Visibility/Transparency",
        "visibility",
        vec![
            q(
                "visibility.process_defined",
                "Is the development process defined? If yes, what process is used.",
                one_of("yes*, no, n/a"),
            ),
            q(
                "visibility.process_documents",
                "Are there any documents recording the development process and status?",
                one_of("yes*, no"),
            ),
            q(
                "visibility.dev_environment",
                "Is the development environment documented?",
                one_of("yes*, no"),
            ),
            q(
                "visibility.release_notes",
                "Are there release notes?",
                one_of("yes*, no"),
            ),
        ],
    )
}

fn repo_sections() -> [Section; 3] {
    [
        Section {
            id: "repo_gitstats".into(),
            title: "Raw Metrics (Measured via git_stats)".into(),
            kind: SectionKind::RepoMetrics,
            questions: vec![
                number("gitstats.text_files", "Number of text-based files."),
                number("gitstats.binary_files", "Number of binary files."),
                number("gitstats.total_lines", "Number of total lines in text-based files."),
                number(
                    "gitstats.lines_added",
                    "Number of total lines added to text-based files.",
                ),
                number(
                    "gitstats.lines_deleted",
                    "Number of total lines deleted from text-based files.",
                ),
                number("gitstats.total_commits", "Number of total commits."),
                q(
                    "gitstats.commits_by_year",
                    "Numbers of commits by year in the last 5 years. (Count from as early as \
                     possible if the project is younger than 5 years.)",
                    AnswerType::NumberList,
                ),
                q(
                    "gitstats.commits_by_month",
                    "Numbers of commits by month in the last 12 months.",
                    AnswerType::NumberList,
                ),
            ],
        },
        Section {
            id: "repo_scc".into(),
            title: "Raw Metrics (Measured via scc)".into(),
            kind: SectionKind::RepoMetrics,
            questions: vec![
                number("scc.text_files", "Number of text-based files."),
                number("scc.total_lines", "Number of total lines in text-based files."),
                number("scc.code_lines", "Number of code lines in text-based files."),
                number("scc.comment_lines", "Number of comment lines in text-based files."),
                number("scc.blank_lines", "Number of blank lines in text-based files."),
            ],
        },
        Section {
            id: "repo_github".into(),
            title: "Repo Metrics (Measured via GitHub)".into(),
            kind: SectionKind::RepoMetrics,
            questions: vec![
                number("github.stars", "Number of stars."),
                number("github.forks", "Number of forks."),
                number("github.watchers", "Number of people watching this repo."),
                number("github.open_prs", "Number of open pull requests."),
                number("github.closed_prs", "Number of closed pull requests."),
            ],
        },
    ]
}

/// The complete measurement template, in template order.
pub fn builtin_catalog() -> QuestionCatalog {
    let mut sections = vec![
        summary(),
        installability(),
        correctness(),
        reliability(),
        robustness(),
        usability(),
        maintainability(),
        reusability(),
        understandability(),
        visibility(),
    ];
    sections.extend(repo_sections());
    QuestionCatalog {
        version: CATALOG_VERSION.to_string(),
        declared_count: BUILTIN_QUESTION_COUNT,
        sections,
    }
}
