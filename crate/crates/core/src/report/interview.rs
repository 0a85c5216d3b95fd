//! The developer interview guide: eight background questions and twelve
//! questions about the software, the latter tagged with the research
//! questions they inform.

use std::fmt::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InterviewSection {
    DevelopersAndUsers,
    Software,
}

impl InterviewSection {
    pub fn title(self) -> &'static str {
        match self {
            InterviewSection::DevelopersAndUsers => "Information about the developers and users",
            InterviewSection::Software => "Information about the software",
        }
    }
}

/// A research-question tag such as `5b` (traceability).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RqTag {
    pub code: &'static str,
    pub topic: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterviewQuestion {
    /// 1-based position in the whole guide.
    pub number: usize,
    pub section: InterviewSection,
    pub text: &'static str,
    pub tags: &'static [RqTag],
}

const fn tag(code: &'static str, topic: &'static str) -> RqTag {
    RqTag { code, topic }
}

const BACKGROUND: [&str; 8] = [
    "Interviewees' current position/title? degrees?",
    "Interviewees' contribution to/relationship with the software?",
    "Length of time the interviewee has been involved with this software?",
    "How large is the development group?",
    "Do you have a defined process for accepting new contributions into your team?",
    "What is the typical background of a developer?",
    "What is your estimated number of users? How did you come up with that estimate?",
    "What is the typical background of a user?",
];

const SOFTWARE: [(&str, &[RqTag]); 12] = [
    ("Currently, what are the most significant obstacles in your development process?", &[]),
    ("How might you change your development process to remove or reduce these obstacles?", &[]),
    (
        "How does documentation fit into your development process? Would improved documentation \
         help with the obstacles you typically face?",
        &[tag("5b", "traceability"), tag("5i", "visibility/transparency")],
    ),
    (
        "In the past, is there any major obstacle to your development process that has been \
         solved? How did you solve it?",
        &[],
    ),
    ("What is your software development model? For example, waterfall, agile, etc.", &[]),
    (
        "What is your project management process? Do you think improve this process can tackle \
         the current problem? Were any project management tools used?",
        &[],
    ),
    (
        "Was it hard to ensure the correctness of the software? If there were any obstacles, \
         what methods have been considered or practiced to improve the situation? If practiced, \
         did it work?",
        &[tag("5e", "correctness")],
    ),
    (
        "When designing the software, did you consider the ease of future changes? For example, \
         will it be hard to change the structure of the system, modules or code blocks? What \
         measures have been taken to ensure the ease of future changes and maintains?",
        &[tag("5d", "maintainability"), tag("5c", "modifiability")],
    ),
    (
        "Provide instances where users have misunderstood the software. What, if any, actions \
         were taken to address understandability issues?",
        &[tag("5f", "understandability")],
    ),
    (
        "What, if any, actions were taken to address usability issues?",
        &[tag("5a", "usability")],
    ),
    (
        "Do you think the current documentation can clearly convey all necessary knowledge to \
         the users? If yes, how did you successfully achieve it? If no, what improvements are \
         needed?",
        &[tag("5g", "unambiguity")],
    ),
    (
        "Do you have any concern that your computational results won't be reproducible in the \
         future? Have you taken any steps to ensure reproducibility?",
        &[tag("5h", "reproducibility")],
    ),
];

pub fn interview_questions() -> Vec<InterviewQuestion> {
    let background = BACKGROUND.iter().map(|text| (InterviewSection::DevelopersAndUsers, *text, &[][..]));
    let software = SOFTWARE.iter().map(|(text, tags)| (InterviewSection::Software, *text, *tags));
    background
        .chain(software)
        .enumerate()
        .map(|(i, (section, text, tags))| InterviewQuestion {
            number: i + 1,
            section,
            text,
            tags,
        })
        .collect()
}

/// Plain-text interview packet.
pub fn emit_interview_guide() -> String {
    let mut out = String::from("Developer interview guide\n");
    out.push_str("Open-ended, one interviewee at a time. Ask follow-ups as needed.\n");
    let mut section = None;
    for q in interview_questions() {
        if section != Some(q.section) {
            section = Some(q.section);
            let _ = write!(out, "\n{}\n\n", q.section.title());
        }
        let _ = write!(out, "{:>2}. {}", q.number, q.text);
        if !q.tags.is_empty() {
            let tags: Vec<String> = q.tags.iter().map(|t| format!("RQ {} ({})", t.code, t.topic)).collect();
            let _ = write!(out, " [{}]", tags.join("; "));
        }
        out.push('\n');
    }
    out
}
