use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The nine qualities assessed by the measurement template, in template order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quality {
    Installability,
    Correctness,
    Reliability,
    Robustness,
    Usability,
    Maintainability,
    Reusability,
    Understandability,
    Visibility,
}

impl Quality {
    pub const ALL: [Quality; 9] = [
        Quality::Installability,
        Quality::Correctness,
        Quality::Reliability,
        Quality::Robustness,
        Quality::Usability,
        Quality::Maintainability,
        Quality::Reusability,
        Quality::Understandability,
        Quality::Visibility,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Quality::Installability => "installability",
            Quality::Correctness => "correctness",
            Quality::Reliability => "reliability",
            Quality::Robustness => "robustness",
            Quality::Usability => "usability",
            Quality::Maintainability => "maintainability",
            Quality::Reusability => "reusability",
            Quality::Understandability => "understandability",
            Quality::Visibility => "visibility",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Quality::Installability => "Installability",
            Quality::Correctness => "Correctness and Verifiability",
            Quality::Reliability => "Surface Reliability",
            Quality::Robustness => "Surface Robustness",
            Quality::Usability => "Surface Usability",
            Quality::Maintainability => "Maintainability",
            Quality::Reusability => "Reusability",
            Quality::Understandability => "Surface Understandability",
            Quality::Visibility => "Visibility/Transparency",
        }
    }

    pub fn index(self) -> usize {
        Quality::ALL.iter().position(|q| *q == self).unwrap()
    }
}

impl fmt::Display for Quality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown quality `{0}`")]
pub struct UnknownQuality(pub String);

impl FromStr for Quality {
    type Err = UnknownQuality;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Quality::ALL
            .into_iter()
            .find(|q| q.id() == s)
            .ok_or_else(|| UnknownQuality(s.to_string()))
    }
}
