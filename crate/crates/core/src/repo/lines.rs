//! Code/comment/blank line classification.
//!
//! Each language has line-comment markers, an optional block-comment pair and
//! optional column-one markers (fixed-form FORTRAN). Classification is a
//! two-state machine (normal, inside block comment) run over raw bytes.
//! There is no lexer: comment tokens inside string literals are taken at face
//! value.

use std::ops::{Add, AddAssign};
use std::path::Path;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineCounts {
    pub total: u64,
    pub code: u64,
    pub comment: u64,
    pub blank: u64,
}

impl LineCounts {
    pub fn new(code: u64, comment: u64, blank: u64) -> Self {
        LineCounts {
            total: code + comment + blank,
            code,
            comment,
            blank,
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.total == self.code + self.comment + self.blank
    }
}

impl Add for LineCounts {
    type Output = LineCounts;

    fn add(self, rhs: LineCounts) -> LineCounts {
        LineCounts {
            total: self.total + rhs.total,
            code: self.code + rhs.code,
            comment: self.comment + rhs.comment,
            blank: self.blank + rhs.blank,
        }
    }
}

impl AddAssign for LineCounts {
    fn add_assign(&mut self, rhs: LineCounts) {
        *self = *self + rhs;
    }
}

impl std::iter::Sum for LineCounts {
    fn sum<I: Iterator<Item = LineCounts>>(iter: I) -> LineCounts {
        iter.fold(LineCounts::default(), Add::add)
    }
}

#[derive(Debug)]
pub struct Language {
    pub name: &'static str,
    pub extensions: &'static [&'static str],
    pub line_comments: &'static [&'static str],
    pub block_comment: Option<(&'static str, &'static str)>,
    /// Markers that make a line a comment only when they sit in column one.
    pub column_one: &'static [u8],
}

const C_STYLE_LINE: &[&str] = &["//"];
const C_BLOCK: Option<(&str, &str)> = Some(("/*", "*/"));

pub static LANGUAGES: &[Language] = &[
    Language {
        name: "c",
        extensions: &["c", "h"],
        line_comments: C_STYLE_LINE,
        block_comment: C_BLOCK,
        column_one: &[],
    },
    Language {
        name: "c++",
        extensions: &["cpp", "cc", "cxx", "c++", "hpp", "hh", "hxx", "h++", "cu", "cuh"],
        line_comments: C_STYLE_LINE,
        block_comment: C_BLOCK,
        column_one: &[],
    },
    Language {
        name: "java",
        extensions: &["java"],
        line_comments: C_STYLE_LINE,
        block_comment: C_BLOCK,
        column_one: &[],
    },
    Language {
        name: "javascript",
        extensions: &["js", "mjs", "cjs", "ts"],
        line_comments: C_STYLE_LINE,
        block_comment: C_BLOCK,
        column_one: &[],
    },
    Language {
        name: "rust",
        extensions: &["rs"],
        line_comments: C_STYLE_LINE,
        block_comment: C_BLOCK,
        column_one: &[],
    },
    Language {
        name: "go",
        extensions: &["go"],
        line_comments: C_STYLE_LINE,
        block_comment: C_BLOCK,
        column_one: &[],
    },
    Language {
        name: "python",
        extensions: &["py", "pyw", "pyi"],
        line_comments: &["#"],
        block_comment: None,
        column_one: &[],
    },
    Language {
        name: "cython",
        extensions: &["pyx", "pxd", "pxi"],
        line_comments: &["#"],
        block_comment: None,
        column_one: &[],
    },
    Language {
        name: "fortran",
        extensions: &["f90", "f95", "f03", "f08"],
        line_comments: &["!"],
        block_comment: None,
        column_one: &[],
    },
    Language {
        name: "fortran77",
        extensions: &["f", "for", "f77", "ftn"],
        line_comments: &["!"],
        block_comment: None,
        column_one: b"cC*",
    },
    Language {
        name: "matlab",
        extensions: &["m"],
        line_comments: &["%"],
        block_comment: Some(("%{", "%}")),
        column_one: &[],
    },
    Language {
        name: "r",
        extensions: &["r"],
        line_comments: &["#"],
        block_comment: None,
        column_one: &[],
    },
    Language {
        name: "ruby",
        extensions: &["rb"],
        line_comments: &["#"],
        block_comment: Some(("=begin", "=end")),
        column_one: &[],
    },
    Language {
        name: "shell",
        extensions: &["sh", "bash", "zsh", "ksh"],
        line_comments: &["#"],
        block_comment: None,
        column_one: &[],
    },
    Language {
        name: "cmake",
        extensions: &["cmake"],
        line_comments: &["#"],
        block_comment: None,
        column_one: &[],
    },
    Language {
        name: "plain",
        extensions: &[],
        line_comments: &[],
        block_comment: None,
        column_one: &[],
    },
];

pub const PLAIN: &str = "plain";

/// Looks a language up by name, falling back to `plain`.
pub fn language(name: &str) -> &'static Language {
    LANGUAGES
        .iter()
        .find(|l| l.name == name)
        .unwrap_or_else(|| language(PLAIN))
}

/// Maps a file path to a language by extension (case-insensitive); `plain` when unknown.
pub fn language_for_path(path: &Path) -> &'static Language {
    if path.file_name().and_then(|n| n.to_str()) == Some("CMakeLists.txt") {
        return language("cmake");
    }
    let Some(ext) = path.extension().and_then(|e| e.to_str()) else {
        return language(PLAIN);
    };
    let ext = ext.to_ascii_lowercase();
    LANGUAGES
        .iter()
        .find(|l| l.extensions.contains(&ext.as_str()))
        .unwrap_or_else(|| language(PLAIN))
}

/// True iff a NUL byte occurs in the first 8000 bytes.
pub fn detect_binary(content: &[u8]) -> bool {
    content.iter().take(8000).any(|&b| b == 0)
}

fn find(haystack: &[u8], needle: &[u8]) -> Option<usize> {
    haystack.windows(needle.len()).position(|w| w == needle)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Normal,
    InBlock,
}

/// Classifies one line, returning whether it holds code and whether it holds
/// comment text, and updates the block state.
fn scan_line(line: &[u8], lang: &Language, state: &mut State) -> (bool, bool) {
    let mut has_code = false;
    let mut has_comment = false;
    if *state == State::Normal && line.first().is_some_and(|b| lang.column_one.contains(b)) {
        return (false, true);
    }
    let mut pos = 0;
    while pos < line.len() {
        match *state {
            State::InBlock => {
                has_comment = true;
                let (_, close) = lang.block_comment.expect("block state without block syntax");
                match find(&line[pos..], close.as_bytes()) {
                    Some(at) => {
                        pos += at + close.len();
                        *state = State::Normal;
                    }
                    None => pos = line.len(),
                }
            }
            State::Normal => {
                let rest = &line[pos..];
                if rest[0].is_ascii_whitespace() {
                    pos += 1;
                } else if let Some((open, _)) =
                    lang.block_comment.filter(|(open, _)| rest.starts_with(open.as_bytes()))
                {
                    has_comment = true;
                    pos += open.len();
                    *state = State::InBlock;
                } else if lang
                    .line_comments
                    .iter()
                    .any(|marker| rest.starts_with(marker.as_bytes()))
                {
                    has_comment = true;
                    pos = line.len();
                } else {
                    has_code = true;
                    pos += 1;
                }
            }
        }
    }
    (has_code, has_comment)
}

/// Counts lines of `content` written in `language` (unknown names count as `plain`).
///
/// A trailing newline does not start an extra line. Lines holding both code
/// and comment text count as code.
pub fn count_lines(content: &[u8], language_name: &str) -> LineCounts {
    let lang = language(language_name);
    let mut counts = LineCounts::default();
    if content.is_empty() {
        return counts;
    }
    let body = content.strip_suffix(b"\n").unwrap_or(content);
    let mut state = State::Normal;
    for raw in body.split(|&b| b == b'\n') {
        let line = raw.strip_suffix(b"\r").unwrap_or(raw);
        counts.total += 1;
        if line.iter().all(u8::is_ascii_whitespace) {
            counts.blank += 1;
            continue;
        }
        let (code, comment) = scan_line(line, lang, &mut state);
        if code {
            counts.code += 1;
        } else if comment {
            counts.comment += 1;
        } else {
            counts.blank += 1;
        }
    }
    counts
}

/// Whether `content` ends inside an unterminated block comment.
pub fn ends_in_block(content: &[u8], language_name: &str) -> bool {
    let lang = language(language_name);
    let mut state = State::Normal;
    for raw in content.split(|&b| b == b'\n') {
        let line = raw.strip_suffix(b"\r").unwrap_or(raw);
        if !line.iter().all(u8::is_ascii_whitespace) {
            scan_line(line, lang, &mut state);
        }
    }
    state == State::InBlock
}
