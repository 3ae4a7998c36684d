//! Front end for the specification language: variable declarations
//! (`VARENV`, `VAR`), definitions, assumptions and guarantees, plus
//! weight files made of `WEIGHT <value> <formula>;` entries.

mod ast;
mod check;
mod interp;
mod lexer;
mod parser;

pub use ast::*;
pub use check::{check_weights, expand_and_check, CheckedSpec, Ty, Warning};
pub use interp::{domain_values, CVal, Interpreter, Valuation};
pub use parser::{parse_expr, parse_spec, parse_weights};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecErrorKind {
    Syntax,
    Duplicate,
    Unknown,
    CyclicDefine,
    Type,
    NextNotAllowed,
}

impl std::fmt::Display for SpecErrorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SpecErrorKind::Syntax => "syntax error",
            SpecErrorKind::Duplicate => "duplicate declaration",
            SpecErrorKind::Unknown => "unknown identifier",
            SpecErrorKind::CyclicDefine => "cyclic definition",
            SpecErrorKind::Type => "type error",
            SpecErrorKind::NextNotAllowed => "misplaced next()",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{span}: {kind}: {message}")]
pub struct SpecError {
    pub kind: SpecErrorKind,
    pub span: Span,
    pub message: String,
}

impl SpecError {
    pub fn new(kind: SpecErrorKind, span: Span, message: String) -> Self {
        SpecError { kind, span, message }
    }

    pub(crate) fn syntax(span: Span, message: String) -> Self {
        Self::new(SpecErrorKind::Syntax, span, message)
    }
}
