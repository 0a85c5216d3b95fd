use std::fmt;
use std::process::ExitCode;

/// Exit status classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// Bad input: answer files, ledger, configuration, rubric.
    Validation,
    /// Missing files, unreadable repositories, network trouble.
    Io,
    /// AHP or derivation failure on otherwise valid input.
    Computation,
}

impl Kind {
    pub fn code(self) -> u8 {
        match self {
            Kind::Validation => 3,
            Kind::Io => 4,
            Kind::Computation => 5,
        }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub kind: Kind,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn new(kind: Kind, error: impl Into<anyhow::Error>) -> Self {
        Failure {
            kind,
            error: error.into(),
        }
    }

    pub fn validation(msg: impl fmt::Display) -> Self {
        Failure::new(Kind::Validation, anyhow::anyhow!("{msg}"))
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.kind.code())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.error)
    }
}

pub type Outcome<T> = Result<T, Failure>;

/// Tags an error with its exit class.
pub trait Classify<T> {
    fn or_fail(self, kind: Kind) -> Outcome<T>;
    fn or_fail_with(self, kind: Kind, context: impl FnOnce() -> String) -> Outcome<T>;
}

impl<T, E> Classify<T> for Result<T, E>
where
    E: Into<anyhow::Error>,
{
    fn or_fail(self, kind: Kind) -> Outcome<T> {
        self.map_err(|e| Failure::new(kind, e))
    }

    fn or_fail_with(self, kind: Kind, context: impl FnOnce() -> String) -> Outcome<T> {
        self.map_err(|e| Failure::new(kind, e.into().context(context())))
    }
}
