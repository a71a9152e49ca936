use thiserror::Error;

use crate::diagram::Violation;
use crate::invariants::AxiomViolation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("crossing {index} appears {count} time(s); expected exactly 2")]
    IndexCount { index: u32, count: usize },

    #[error("crossing {index} must be passed once over and once under")]
    RolePair { index: u32 },

    #[error("crossing {index} carries different signs on its two occurrences")]
    SignMismatch { index: u32 },

    #[error("invalid diagram: {}", join(.0))]
    InvalidDiagram(Vec<Violation>),

    #[error("move site {0} does not match the diagram")]
    StaleSite(String),

    #[error("state sum over {crossings} crossings exceeds the cap of {cap}")]
    StateSumTooLarge { crossings: usize, cap: usize },

    #[error("the empty link has no normalized bracket")]
    EmptyLink,

    #[error("malformed quandle table: {0}")]
    MalformedTable(String),

    #[error("quandle axioms fail: {}", join(.0))]
    InvalidQuandle(Vec<AxiomViolation>),

    #[error("unknown quandle name {0:?}")]
    UnknownQuandle(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
