use thiserror::Error;

use crate::global::GlobalCheckReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("symbol has no Laurent expansion at U = 0")]
    NotExpandable,

    #[error("Laurent floor mismatch: structural {structural}, expanded {expanded}")]
    FloorMismatch { structural: i64, expanded: i64 },

    #[error("mu is undefined for n = {n}, I = {coset:?}, r = {r}: the defining set is empty")]
    EmptyMinSet { n: usize, coset: Vec<usize>, r: usize },

    #[error("matrix is not symplectic: {0}")]
    NotSymplectic(String),

    #[error("Levi block is singular")]
    SingularLevi,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("schema error in field `{field}`: {message}")]
    Schema { field: String, message: String },

    #[error("residue routes disagree: route A = {route_a}, route B = {route_b}")]
    OracleDisagreement { route_a: f64, route_b: f64 },

    #[error("check failed: discrepancy {} exceeds tolerance {}", .0.discrepancy, .0.tol)]
    CheckFailed(Box<GlobalCheckReport>),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    pub(crate) fn schema(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Process exit code: 2 usage, 3 input, 4 failed check, 5 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::DimensionMismatch(_) => 2,
            Error::Parse { .. }
            | Error::Schema { .. }
            | Error::Json(_)
            | Error::Io(_)
            | Error::NotSymplectic(_)
            | Error::SingularLevi => 3,
            Error::CheckFailed(_) | Error::OracleDisagreement { .. } => 4,
            _ => 5,
        }
    }
}
