//! Surface language: a small text syntax with ASCII and Unicode spellings.
//!
//! ```text
//! module ::= decl*
//! decl   ::= "def" IDENT ":" term ":=" term ";"
//!          | "postulate" IDENT ":" term ";"
//!          | "assert" term "==" term ":" term ";"
//! term   ::= ("Pi" | "Sig") "(" IDENT+ ":" term ")" "," term
//!          | "fun" IDENT+ "=>" term
//!          | prod ("->" term)?
//! prod   ::= app ("*" (prod | binder-term))?
//! app    ::= atom+ | ("fst" | "snd" | "refl" | "Id" | "J") atom*
//! atom   ::= IDENT | "U0" | "U1" | "(" term ")" | "(" term "," term ")"
//! ```
//!
//! Binders scope over the whole rest of the expression.

mod elab;
mod lexer;
mod parser;

use std::fmt;

pub use elab::{elaborate, elaborate_with, ElabError};
pub use lexer::{tokenize, tokenize_source, LexError, Token, TokenKind};
pub use parser::{parse, parse_module, parse_source, ParseError};

/// A 1-based source position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
    /// Byte offset.
    pub offset: usize,
}

impl Pos {
    pub const START: Pos = Pos {
        line: 1,
        col: 1,
        offset: 0,
    };
}

/// A half-open source range within the file identified by `source`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Span {
    pub source: u32,
    pub start: Pos,
    pub end: Pos,
}

impl Span {
    pub fn new(source: u32, start: Pos, end: Pos) -> Span {
        Span { source, start, end }
    }

    pub fn merge(self, other: Span) -> Span {
        Span {
            source: self.source,
            start: self.start.min(other.start),
            end: self.end.max(other.end),
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.start.line, self.start.col)
    }
}

/// A binder name with its location. `_` binds nothing referenceable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binder {
    pub name: String,
    pub span: Span,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Keyword {
    Fst,
    Snd,
    Refl,
    Id,
    J,
}

impl Keyword {
    pub fn arity(self) -> usize {
        match self {
            Keyword::Fst | Keyword::Snd | Keyword::Refl => 1,
            Keyword::Id => 3,
            Keyword::J => 5,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Keyword::Fst => "fst",
            Keyword::Snd => "snd",
            Keyword::Refl => "refl",
            Keyword::Id => "Id",
            Keyword::J => "J",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceTerm {
    pub kind: SurfaceKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceKind {
    Var(String),
    Universe(crate::syntax::Level),
    Pi(Vec<Binder>, Box<SurfaceTerm>, Box<SurfaceTerm>),
    Sigma(Vec<Binder>, Box<SurfaceTerm>, Box<SurfaceTerm>),
    Fun(Vec<Binder>, Box<SurfaceTerm>),
    Arrow(Box<SurfaceTerm>, Box<SurfaceTerm>),
    Product(Box<SurfaceTerm>, Box<SurfaceTerm>),
    App(Box<SurfaceTerm>, Box<SurfaceTerm>),
    /// A keyword applied to however many atoms follow it. Elaboration
    /// checks the count.
    Prim(Keyword, Vec<SurfaceTerm>),
    Pair(Box<SurfaceTerm>, Box<SurfaceTerm>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceDeclKind {
    Def {
        name: Binder,
        ty: SurfaceTerm,
        body: SurfaceTerm,
    },
    Postulate {
        name: Binder,
        ty: SurfaceTerm,
    },
    Assert {
        lhs: SurfaceTerm,
        rhs: SurfaceTerm,
        ty: SurfaceTerm,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceDecl {
    pub kind: SurfaceDeclKind,
    pub span: Span,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurfaceModule {
    pub decls: Vec<SurfaceDecl>,
}

impl SurfaceModule {
    pub fn concat(mut self, other: SurfaceModule) -> SurfaceModule {
        self.decls.extend(other.decls);
        self
    }
}

/// Any failure turning source text into a core module.
#[derive(Clone, Debug, thiserror::Error)]
pub enum SourceError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{}", .0.first().map(|e| e.to_string()).unwrap_or_default())]
    Elab(Vec<ElabError>),
}

/// Tokenizes, parses and elaborates a single source text.
pub fn load(source: &str) -> Result<crate::syntax::Module, SourceError> {
    let module = parse(source)?;
    elaborate(&module).map_err(SourceError::Elab)
}
