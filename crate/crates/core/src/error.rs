use thiserror::Error;

use crate::sign::SignSequence;
use crate::web::Violation;

/// Failure to read a web, red graph or polynomial from text.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("dangling or duplicated reference: {0}")]
    Reference(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid web: {}", summarize(.0))]
    InvalidWeb(Vec<Violation>),
    #[error("boundary mismatch: {left} vs {right}")]
    BoundaryMismatch { left: SignSequence, right: SignSequence },
    #[error("sign sequence {0} is not admissible")]
    NotAdmissible(SignSequence),
    #[error("expected a closed web, found boundary {0}")]
    NotClosed(SignSequence),
    #[error("expected an upward facing web")]
    NotUpward,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("size guard exceeded: {what} is {actual}, limit {limit}")]
    SizeGuard { what: &'static str, actual: usize, limit: usize },
    #[error("invalid pairing: {0}")]
    InvalidPairing(String),
    #[error("stack stage {stage}: {source}")]
    StageMismatch { stage: usize, source: Box<Error> },
    /// A computation contradicted a proven statement; signals a bug or a corrupt input.
    #[error("theorem violated: {0}")]
    Contradiction(String),
}

impl Error {
    pub fn is_contradiction(&self) -> bool {
        match self {
            Error::Contradiction(_) => true,
            Error::StageMismatch { source, .. } => source.is_contradiction(),
            _ => false,
        }
    }
}

fn summarize(v: &[Violation]) -> String {
    let mut s = v.iter().take(3).map(|x| x.to_string()).collect::<Vec<_>>().join("; ");
    if v.len() > 3 {
        s.push_str(&format!("; and {} more", v.len() - 3));
    }
    s
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
