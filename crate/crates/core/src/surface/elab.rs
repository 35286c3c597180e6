//! Name resolution and desugaring into the core syntax.

use std::collections::HashSet;

use thiserror::Error;

use super::{
    Binder, Keyword, Span, SurfaceDecl, SurfaceDeclKind, SurfaceKind, SurfaceModule, SurfaceTerm,
};
use crate::check::{CheckError, ErrorKind};
use crate::syntax::{DeclKind, DeclSpans, Declaration, Module, Signature, Term};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ElabError {
    #[error("`{name}` is not in scope")]
    UnboundVariable { name: String, span: Span },
    #[error("`{keyword}` expects {expected} arguments but was given {found}")]
    Arity {
        keyword: &'static str,
        expected: usize,
        found: usize,
        span: Span,
    },
}

impl ElabError {
    pub fn span(&self) -> Span {
        match self {
            ElabError::UnboundVariable { span, .. } | ElabError::Arity { span, .. } => *span,
        }
    }

    pub fn category(&self) -> &'static str {
        match self {
            ElabError::UnboundVariable { .. } => "UnboundVariable",
            ElabError::Arity { .. } => "ArityError",
        }
    }
}

impl From<ElabError> for CheckError {
    fn from(error: ElabError) -> CheckError {
        let kind = match &error {
            ElabError::UnboundVariable { .. } => ErrorKind::UnboundVariable,
            ElabError::Arity { .. } => ErrorKind::ArityError,
        };
        CheckError {
            kind,
            span: Some(error.span()),
            message: error.to_string(),
        }
    }
}

/// Elaborates a module whose only globals are its own declarations.
pub fn elaborate(module: &SurfaceModule) -> Result<Module, Vec<ElabError>> {
    elaborate_with(module, &Signature::new())
}

/// Elaborates a module that may also refer to the globals of `sig`.
pub fn elaborate_with(module: &SurfaceModule, sig: &Signature) -> Result<Module, Vec<ElabError>> {
    let mut elab = Elaborator {
        globals: sig.names().map(|n| n.to_string()).collect(),
        locals: Vec::new(),
    };
    let mut decls = Vec::new();
    let mut errors = Vec::new();
    for decl in &module.decls {
        match elab.decl(decl) {
            Ok(decl) => decls.push(decl),
            Err(error) => errors.push(error),
        }
        match &decl.kind {
            SurfaceDeclKind::Def { name, .. } | SurfaceDeclKind::Postulate { name, .. } => {
                elab.globals.insert(name.name.clone());
            }
            SurfaceDeclKind::Assert { .. } => {}
        }
    }
    if errors.is_empty() {
        Ok(Module::new(decls))
    } else {
        Err(errors)
    }
}

struct Elaborator {
    globals: HashSet<String>,
    /// Local binders, innermost last.
    locals: Vec<String>,
}

type EResult<T> = Result<T, ElabError>;

impl Elaborator {
    fn decl(&mut self, decl: &SurfaceDecl) -> EResult<Declaration> {
        let mut spans = DeclSpans {
            decl: Some(decl.span),
            ..DeclSpans::default()
        };
        let kind = match &decl.kind {
            SurfaceDeclKind::Def { name, ty, body } => {
                spans.name = Some(name.span);
                spans.ty = Some(ty.span);
                spans.body = Some(body.span);
                DeclKind::Def {
                    name: name.name.as_str().into(),
                    ty: self.term(ty)?,
                    body: self.term(body)?,
                }
            }
            SurfaceDeclKind::Postulate { name, ty } => {
                spans.name = Some(name.span);
                spans.ty = Some(ty.span);
                DeclKind::Postulate {
                    name: name.name.as_str().into(),
                    ty: self.term(ty)?,
                }
            }
            SurfaceDeclKind::Assert { lhs, rhs, ty } => {
                spans.ty = Some(ty.span);
                spans.body = Some(lhs.span);
                spans.rhs = Some(rhs.span);
                DeclKind::Assert {
                    lhs: self.term(lhs)?,
                    rhs: self.term(rhs)?,
                    ty: self.term(ty)?,
                }
            }
        };
        Ok(Declaration { kind, spans })
    }

    fn under<T>(&mut self, name: &str, f: impl FnOnce(&mut Self) -> T) -> T {
        self.locals.push(name.to_owned());
        let result = f(self);
        self.locals.pop();
        result
    }

    fn var(&self, name: &str, span: Span) -> EResult<Term> {
        let unbound = || ElabError::UnboundVariable {
            name: name.to_owned(),
            span,
        };
        if name == "_" {
            return Err(unbound());
        }
        if let Some(index) = self.locals.iter().rev().position(|local| local == name) {
            return Ok(Term::Var(index));
        }
        if self.globals.contains(name) {
            return Ok(Term::Const(name.into()));
        }
        Err(unbound())
    }

    /// `Pi (x y : A), B` is `Pi (x : A), Pi (y : A), B`, with `A` resolved
    /// afresh under each binder.
    fn binders(
        &mut self,
        binders: &[Binder],
        domain: &SurfaceTerm,
        body: &SurfaceTerm,
        make: fn(&str, Term, Term) -> Term,
    ) -> EResult<Term> {
        match binders.split_first() {
            None => self.term(body),
            Some((first, rest)) => {
                let domain_term = self.term(domain)?;
                let body = self.under(&first.name, |e| e.binders(rest, domain, body, make))?;
                Ok(make(&first.name, domain_term, body))
            }
        }
    }

    fn term(&mut self, term: &SurfaceTerm) -> EResult<Term> {
        match &term.kind {
            SurfaceKind::Var(name) => self.var(name, term.span),
            SurfaceKind::Universe(level) => Ok(Term::Universe(*level)),
            SurfaceKind::Pi(binders, domain, body) => self.binders(binders, domain, body, Term::pi),
            SurfaceKind::Sigma(binders, domain, body) => {
                self.binders(binders, domain, body, Term::sigma)
            }
            SurfaceKind::Fun(binders, body) => {
                let names: Vec<&str> = binders.iter().map(|b| b.name.as_str()).collect();
                self.locals.extend(names.iter().map(|n| n.to_string()));
                let body = self.term(body);
                self.locals.truncate(self.locals.len() - names.len());
                Ok(names
                    .iter()
                    .rev()
                    .fold(body?, |body, name| Term::lam(name, body)))
            }
            SurfaceKind::Arrow(domain, codomain) => {
                let domain = self.term(domain)?;
                let codomain = self.under("_", |e| e.term(codomain))?;
                Ok(Term::pi("_", domain, codomain))
            }
            SurfaceKind::Product(first, second) => {
                let first = self.term(first)?;
                let second = self.under("_", |e| e.term(second))?;
                Ok(Term::sigma("_", first, second))
            }
            SurfaceKind::App(fun, arg) => Ok(Term::app(self.term(fun)?, self.term(arg)?)),
            SurfaceKind::Pair(first, second) => {
                Ok(Term::pair(self.term(first)?, self.term(second)?))
            }
            SurfaceKind::Prim(keyword, args) => {
                let arity = keyword.arity();
                if args.len() < arity {
                    return Err(ElabError::Arity {
                        keyword: keyword.as_str(),
                        expected: arity,
                        found: args.len(),
                        span: term.span,
                    });
                }
                let mut elaborated = Vec::with_capacity(args.len());
                for arg in args {
                    elaborated.push(self.term(arg)?);
                }
                let extra = elaborated.split_off(arity);
                let mut a = elaborated.into_iter();
                let mut next = || a.next().unwrap();
                let head = match keyword {
                    Keyword::Fst => Term::fst(next()),
                    Keyword::Snd => Term::snd(next()),
                    Keyword::Refl => Term::refl(next()),
                    Keyword::Id => Term::id(next(), next(), next()),
                    Keyword::J => Term::j(next(), next(), next(), next(), next()),
                };
                Ok(Term::apps(head, extra))
            }
        }
    }
}
