//! The `.qa` text format: algebras, modules and gluings.
//!
//! ```text
//! params p = 2 q = 3;
//! algebra A over Q { vertices 1 2; arrows a: 1 -> 2; relations ; truncate 3 }
//! module S1 over A { dims 1 0; }
//! glue C = A + B { forward g: 2 -> 3; extra q*g*b; }
//! ```

mod ast;
mod elaborate;
mod lexer;
mod parser;
mod serialize;

pub use ast::*;
pub use elaborate::{elaborate, parse_algebra, parse_module, Env};
pub use lexer::{lex, Tok};
pub use parser::parse;
pub use serialize::{algebra_decl, module_decl, serialize_algebra, serialize_module};

use std::fmt;

/// Source position. Spans never take part in AST equality.
#[derive(Clone, Copy, Debug, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub col: usize,
}

impl Span {
    pub fn new(start: usize, end: usize, line: usize, col: usize) -> Span {
        Span { start, end, line, col }
    }

    pub fn to(self, other: Span) -> Span {
        Span { end: other.end, ..self }
    }
}

impl PartialEq for Span {
    fn eq(&self, _: &Span) -> bool {
        true
    }
}

impl Eq for Span {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Lex,
    Parse,
    Semantic,
}

#[derive(Clone, Debug)]
pub struct DslError {
    pub kind: ErrorKind,
    pub span: Span,
    pub message: String,
    pub expected: Vec<String>,
}

impl DslError {
    pub fn lex(span: Span, msg: &str) -> DslError {
        DslError { kind: ErrorKind::Lex, span, message: msg.into(), expected: vec![] }
    }

    pub fn semantic(span: Span, msg: impl Into<String>) -> DslError {
        DslError { kind: ErrorKind::Semantic, span, message: msg.into(), expected: vec![] }
    }
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ErrorKind::Lex => "lex error",
            ErrorKind::Parse => "parse error",
            ErrorKind::Semantic => "error",
        };
        write!(f, "{}:{}: {kind}: {}", self.span.line, self.span.col, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for DslError {}
