use thiserror::Error;

use crate::polygon::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("invalid polygon: {}", format_violations(.0))]
    InvalidPolygon(Vec<Violation>),
    #[error("unsupported polygon: {0}")]
    UnsupportedPolygon(String),
    #[error("invalid floor diagram: {0}")]
    InvalidDiagram(String),
    #[error("operation not applicable: {0}")]
    NotApplicable(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("outside the validity region: {0}")]
    OutOfRegion(String),
    #[error("invalid pairing: {0}")]
    InvalidPairing(String),
    #[error("duplicate abscissa {0}")]
    DuplicateAbscissa(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}
