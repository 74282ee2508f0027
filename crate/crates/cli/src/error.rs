//! Structured errors: a stable code, a message and, when the input was
//! text, the byte span it points at.

use serde::Serialize;

use seifertlab::fpgroup::{ParseError, PresentationError, SearchError, TableError};
use seifertlab::graph_manifold::GraphError;
use seifertlab::orbifold::OrbifoldError;
use seifertlab::seifert::SeifertError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Errors raised by the front end itself.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{message}")]
    Input {
        message: String,
        span: Option<(usize, usize)>,
    },
    #[error("coset enumeration exceeded {max_cosets} live cosets")]
    CosetsExceeded { max_cosets: usize },
    #[error("manifest was written by version {found}, this is {current}")]
    VersionMismatch { found: String, current: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorReport {
    pub code: &'static str,
    pub message: String,
    pub span: Option<(usize, usize)>,
    #[serde(skip)]
    pub exit: i32,
}

impl ErrorReport {
    fn usage(code: &'static str, message: String, span: Option<(usize, usize)>) -> Self {
        ErrorReport {
            code,
            message,
            span,
            exit: EXIT_USAGE,
        }
    }
}

fn parse(p: &ParseError) -> ErrorReport {
    ErrorReport::usage("parse", p.message.clone(), Some(p.span))
}

fn seifert(e: &SeifertError) -> ErrorReport {
    match e {
        SeifertError::Parse(p) => parse(p),
        SeifertError::InvalidFiber { .. } => ErrorReport::usage("invalid_fiber", e.to_string(), None),
        SeifertError::Unsupported(_) => ErrorReport::usage("unsupported", e.to_string(), None),
        SeifertError::OutOfRange(_) => ErrorReport::usage("out_of_range", e.to_string(), None),
    }
}

fn orbifold(e: &OrbifoldError) -> ErrorReport {
    match e {
        OrbifoldError::Parse(p) => parse(p),
        OrbifoldError::BadCone(_) => ErrorReport::usage("bad_cone", e.to_string(), None),
        OrbifoldError::PositiveEuler(_) => ErrorReport::usage("positive_euler", e.to_string(), None),
        OrbifoldError::Unsupported(_) => ErrorReport::usage("unsupported", e.to_string(), None),
    }
}

fn presentation(e: &PresentationError) -> ErrorReport {
    match e {
        PresentationError::Parse(p) => parse(p),
        PresentationError::BadName(_) | PresentationError::DuplicateName(_) => {
            ErrorReport::usage("bad_generator", e.to_string(), None)
        }
        PresentationError::UnknownGenerator(_) => {
            ErrorReport::usage("unknown_generator", e.to_string(), None)
        }
        PresentationError::BadRelator(_) => ErrorReport::usage("bad_relator", e.to_string(), None),
    }
}

fn graph(e: &GraphError) -> ErrorReport {
    let code = match e {
        GraphError::Seifert(s) => return seifert(s),
        GraphError::NonUnimodular { .. } => "non_unimodular",
        GraphError::BadBasis { .. } => "bad_basis",
        GraphError::NotCoprime { .. } => "not_coprime",
        GraphError::Degenerate { .. } => "degenerate_filling",
        GraphError::UnknownPiece(_) => "unknown_piece",
    };
    ErrorReport::usage(code, e.to_string(), None)
}

pub fn classify(err: &anyhow::Error) -> ErrorReport {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<CliError>() {
            return match e {
                CliError::Input { span, .. } => ErrorReport::usage("input", e.to_string(), *span),
                CliError::CosetsExceeded { .. } => ErrorReport {
                    code: "budget_exceeded",
                    message: e.to_string(),
                    span: None,
                    exit: EXIT_BUDGET,
                },
                CliError::VersionMismatch { .. } => {
                    ErrorReport::usage("version_mismatch", e.to_string(), None)
                }
            };
        }
        if let Some(e) = cause.downcast_ref::<SearchError>() {
            return ErrorReport {
                code: "budget_exceeded",
                message: e.to_string(),
                span: None,
                exit: EXIT_BUDGET,
            };
        }
        if let Some(e) = cause.downcast_ref::<ParseError>() {
            return parse(e);
        }
        if let Some(e) = cause.downcast_ref::<SeifertError>() {
            return seifert(e);
        }
        if let Some(e) = cause.downcast_ref::<OrbifoldError>() {
            return orbifold(e);
        }
        if let Some(e) = cause.downcast_ref::<PresentationError>() {
            return presentation(e);
        }
        if let Some(e) = cause.downcast_ref::<GraphError>() {
            return graph(e);
        }
        if let Some(e) = cause.downcast_ref::<TableError>() {
            let code = match e {
                TableError::UnknownName(_) => "unknown_group",
                TableError::NotAGroup(_) => "not_a_group",
            };
            return ErrorReport::usage(code, e.to_string(), None);
        }
        if let Some(e) = cause.downcast_ref::<serde_json::Error>() {
            return ErrorReport::usage("json", e.to_string(), None);
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return ErrorReport::usage("io", format!("{err:#}"), None);
        }
    }
    ErrorReport::usage("error", format!("{err:#}"), None)
}
