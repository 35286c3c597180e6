//! Bidirectional type checking.
//!
//! Inference synthesizes a type; checking pushes a known type into
//! lambdas, pairs and `refl`. Universes are cumulative, but only at the
//! head: a term whose inferred type is `U0` is accepted where `U1` is
//! expected, with no subtyping under `Pi` or `Sigma`.
//!
//! Large types such as `U1 -> U1` are well formed even though they inhabit
//! no universe, so declared types go through a separate "is a type"
//! judgment rather than being checked against a universe.

use std::fmt;
use std::time::Duration;

use thiserror::Error;

use crate::nbe::{self, conv_types, conv_values, eval, j_base_type, j_motive_type, Quote, Scope};
use crate::pretty;
use crate::surface::Span;
use crate::syntax::{
    Context, DeclKind, Declaration, Level, Module, Name, Signature, SignatureEntry, Term,
};
use crate::value::{Val, Value};

#[derive(Clone, Debug)]
pub enum ErrorKind {
    UnboundVariable,
    CannotInfer,
    ExpectedFunctionType,
    ExpectedSigmaType,
    ExpectedIdType,
    ExpectedUniverse,
    /// Both sides are in normal form.
    ConversionFailure {
        expected: Box<Term>,
        actual: Box<Term>,
    },
    NoTypeForTopUniverse,
    DuplicateDefinition,
    AssertionFailure,
    /// `Id` or `J` applied to too few arguments. Raised by elaboration.
    ArityError,
}

impl ErrorKind {
    pub fn category(&self) -> &'static str {
        match self {
            ErrorKind::UnboundVariable => "UnboundVariable",
            ErrorKind::CannotInfer => "CannotInfer",
            ErrorKind::ExpectedFunctionType => "ExpectedFunctionType",
            ErrorKind::ExpectedSigmaType => "ExpectedSigmaType",
            ErrorKind::ExpectedIdType => "ExpectedIdType",
            ErrorKind::ExpectedUniverse => "ExpectedUniverse",
            ErrorKind::ConversionFailure { .. } => "ConversionFailure",
            ErrorKind::NoTypeForTopUniverse => "NoTypeForTopUniverse",
            ErrorKind::DuplicateDefinition => "DuplicateDefinition",
            ErrorKind::AssertionFailure => "AssertionFailure",
            ErrorKind::ArityError => "ArityError",
        }
    }
}

#[derive(Clone, Debug, Error)]
#[error("{}: {message}", kind.category())]
pub struct CheckError {
    pub kind: ErrorKind,
    pub span: Option<Span>,
    pub message: String,
}

impl CheckError {
    fn new(kind: ErrorKind, message: impl Into<String>) -> CheckError {
        CheckError {
            kind,
            span: None,
            message: message.into(),
        }
    }

    fn at(mut self, span: Option<Span>) -> CheckError {
        if self.span.is_none() {
            self.span = span;
        }
        self
    }

    pub fn category(&self) -> &'static str {
        self.kind.category()
    }
}

pub type Result<T> = std::result::Result<T, CheckError>;

/// Outcome of checking a module.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checked_names: Vec<Name>,
    pub errors: Vec<CheckError>,
    /// Declarations not checked because they refer to a failed one.
    pub skipped: Vec<Name>,
    pub elapsed: Duration,
}

impl Report {
    pub fn is_success(&self) -> bool {
        self.errors.is_empty()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "checked {} definitions, {} errors",
            self.checked_names.len(),
            self.errors.len()
        )
    }
}

struct Checker<'a> {
    sig: &'a Signature,
    scope: Scope,
}

impl<'a> Checker<'a> {
    fn new(sig: &'a Signature, scope: Scope) -> Checker<'a> {
        Checker { sig, scope }
    }

    fn eval(&self, term: &Term) -> Val {
        eval(self.sig, &self.scope.env(), term)
    }

    fn quote_ty(&self, ty: &Val) -> Term {
        Quote::new(self.sig, self.scope.clone()).ty(ty)
    }

    fn quote(&self, value: &Val, ty: &Val) -> Term {
        Quote::new(self.sig, self.scope.clone()).value(value, ty)
    }

    fn show(&self, term: &Term) -> String {
        pretty::print_in(term, self.scope.names())
    }

    fn show_ty(&self, ty: &Val) -> String {
        self.show(&self.quote_ty(ty))
    }

    fn under<T>(&mut self, name: Name, ty: Val, f: impl FnOnce(&mut Self, Val) -> T) -> T {
        let var = self.scope.push(name, ty);
        let result = f(self, var);
        self.scope.pop();
        result
    }

    /// Infers the universe a type lives in.
    fn infer_universe(&mut self, term: &Term) -> Result<Level> {
        let ty = self.infer(term)?;
        match &*ty {
            Value::Universe(level) => Ok(*level),
            _ => Err(CheckError::new(
                ErrorKind::ExpectedUniverse,
                format!(
                    "`{}` has type `{}`, which is not a universe",
                    self.show(term),
                    self.show_ty(&ty)
                ),
            )),
        }
    }

    /// The "is a type" judgment. Accepts large types like `U1 -> U1`.
    fn check_type(&mut self, term: &Term) -> Result<()> {
        match term {
            Term::Universe(_) => Ok(()),
            Term::Pi(name, dom, cod) | Term::Sigma(name, dom, cod) => {
                self.check_type(dom)?;
                let dom = self.eval(dom);
                self.under(name.clone(), dom, |c, _| c.check_type(cod))
            }
            _ => self.infer_universe(term).map(|_| ()),
        }
    }

    fn infer(&mut self, term: &Term) -> Result<Val> {
        let sig = self.sig;
        match term {
            Term::Var(index) => match self.scope.lookup(*index) {
                Some((_, ty)) => Ok(ty.clone()),
                None => Err(CheckError::new(
                    ErrorKind::UnboundVariable,
                    format!("variable #{index} is not bound"),
                )),
            },
            Term::Const(name) => match sig.get(name) {
                Some(entry) => Ok(eval(sig, &Default::default(), &entry.ty)),
                None => Err(CheckError::new(
                    ErrorKind::UnboundVariable,
                    format!("`{name}` is not defined"),
                )),
            },
            Term::Universe(Level::U0) => Ok(Value::universe(Level::U1)),
            Term::Universe(Level::U1) => Err(CheckError::new(
                ErrorKind::NoTypeForTopUniverse,
                "U1 is the top universe and has no type",
            )),
            Term::Pi(name, dom, cod) | Term::Sigma(name, dom, cod) => {
                let dom_level = self.infer_universe(dom)?;
                let dom = self.eval(dom);
                let cod_level = self.under(name.clone(), dom, |c, _| c.infer_universe(cod))?;
                Ok(Value::universe(dom_level.max(cod_level)))
            }
            Term::Lam(..) => Err(CheckError::new(
                ErrorKind::CannotInfer,
                format!(
                    "cannot infer the type of `{}`; it needs a type annotation",
                    self.show(term)
                ),
            )),
            Term::Pair(..) => Err(CheckError::new(
                ErrorKind::CannotInfer,
                format!("cannot infer the type of the pair `{}`", self.show(term)),
            )),
            Term::App(fun, arg) => {
                let fun_ty = self.infer(fun)?;
                match &*fun_ty {
                    Value::Pi(_, dom, cod) => {
                        self.check(arg, dom)?;
                        Ok(cod.apply(sig, self.eval(arg)))
                    }
                    _ => Err(CheckError::new(
                        ErrorKind::ExpectedFunctionType,
                        format!(
                            "`{}` is applied to an argument but has type `{}`",
                            self.show(fun),
                            self.show_ty(&fun_ty)
                        ),
                    )),
                }
            }
            Term::Fst(pair) | Term::Snd(pair) => {
                let pair_ty = self.infer(pair)?;
                match &*pair_ty {
                    Value::Sigma(_, first, second) => match term {
                        Term::Fst(_) => Ok(first.clone()),
                        _ => Ok(second.apply(sig, nbe::fst(self.eval(pair)))),
                    },
                    _ => Err(CheckError::new(
                        ErrorKind::ExpectedSigmaType,
                        format!(
                            "`{}` is projected but has type `{}`",
                            self.show(pair),
                            self.show_ty(&pair_ty)
                        ),
                    )),
                }
            }
            Term::Id(ty, lhs, rhs) => {
                let level = self.infer_universe(ty)?;
                let ty = self.eval(ty);
                self.check(lhs, &ty)?;
                self.check(rhs, &ty)?;
                Ok(Value::universe(level))
            }
            Term::Refl(subject) => {
                let ty = self.infer(subject)?;
                let subject = self.eval(subject);
                Ok(std::sync::Arc::new(Value::Id(ty, subject.clone(), subject)))
            }
            Term::J {
                motive,
                base,
                lhs,
                rhs,
                path,
            } => {
                let carrier = self.j_carrier(motive, lhs, path)?;
                self.check_j_motive(motive, &carrier)?;
                let motive_val = self.eval(motive);
                self.check(base, &j_base_type(sig, &carrier, &motive_val))?;
                self.check(lhs, &carrier)?;
                self.check(rhs, &carrier)?;
                let lhs = self.eval(lhs);
                let rhs = self.eval(rhs);
                let path_ty = std::sync::Arc::new(Value::Id(carrier, lhs.clone(), rhs.clone()));
                self.check(path, &path_ty)?;
                let result = nbe::apply(sig, nbe::apply(sig, motive_val, lhs), rhs);
                Ok(nbe::apply(sig, result, self.eval(path)))
            }
        }
    }

    /// Finds the type `X` a `J` eliminates over: from the motive's type when
    /// it can be inferred, otherwise from the path, otherwise from the left
    /// endpoint.
    fn j_carrier(&mut self, motive: &Term, lhs: &Term, path: &Term) -> Result<Val> {
        match self.infer(motive) {
            Ok(ty) => {
                return match &*ty {
                    Value::Pi(_, dom, _) => Ok(dom.clone()),
                    _ => Err(CheckError::new(
                        ErrorKind::ExpectedFunctionType,
                        format!(
                            "the motive of J has type `{}`, which is not a type family",
                            self.show_ty(&ty)
                        ),
                    )),
                };
            }
            Err(e) if !matches!(e.kind, ErrorKind::CannotInfer) => return Err(e),
            Err(_) => {}
        }
        match self.infer(path) {
            Ok(ty) => {
                return match &*ty {
                    Value::Id(carrier, _, _) => Ok(carrier.clone()),
                    _ => Err(CheckError::new(
                        ErrorKind::ExpectedIdType,
                        format!(
                            "the path `{}` given to J has type `{}`, which is not an identity type",
                            self.show(path),
                            self.show_ty(&ty)
                        ),
                    )),
                };
            }
            Err(e) if !matches!(e.kind, ErrorKind::CannotInfer) => return Err(e),
            Err(_) => {}
        }
        self.infer(lhs)
    }

    /// Checks the motive against `Pi (x y : X), Id X x y -> U_j` for some `j`.
    fn check_j_motive(&mut self, motive: &Term, carrier: &Val) -> Result<()> {
        let sig = self.sig;
        if !matches!(motive, Term::Lam(..)) {
            if let Ok(ty) = self.infer(motive) {
                for level in [Level::U0, Level::U1] {
                    if conv_types(sig, &self.scope, &ty, &j_motive_type(sig, carrier, level)) {
                        return Ok(());
                    }
                }
                let expected = j_motive_type(sig, carrier, Level::U1);
                return Err(self.mismatch(&expected, &ty, "J motive"));
            }
        }
        self.check(motive, &j_motive_type(sig, carrier, Level::U1))
    }

    fn mismatch(&self, expected: &Val, actual: &Val, what: &str) -> CheckError {
        let expected_term = self.quote_ty(expected);
        let actual_term = self.quote_ty(actual);
        let message = format!(
            "{what}: expected type `{}`, found `{}`",
            self.show(&expected_term),
            self.show(&actual_term)
        );
        CheckError::new(
            ErrorKind::ConversionFailure {
                expected: Box::new(expected_term),
                actual: Box::new(actual_term),
            },
            message,
        )
    }

    fn check(&mut self, term: &Term, ty: &Val) -> Result<()> {
        let sig = self.sig;
        match (term, &**ty) {
            (Term::Lam(name, body), Value::Pi(_, dom, cod)) => {
                self.under(name.clone(), dom.clone(), |c, var| {
                    c.check(body, &cod.apply(sig, var))
                })
            }
            (Term::Lam(..), _) => Err(CheckError::new(
                ErrorKind::ExpectedFunctionType,
                format!(
                    "a function was given where `{}` was expected",
                    self.show_ty(ty)
                ),
            )),
            (Term::Pair(first, second), Value::Sigma(_, first_ty, second_ty)) => {
                self.check(first, first_ty)?;
                let first = self.eval(first);
                self.check(second, &second_ty.apply(sig, first))
            }
            (Term::Pair(..), _) => Err(CheckError::new(
                ErrorKind::ExpectedSigmaType,
                format!(
                    "the pair `{}` cannot have type `{}`, which is not a Sigma type",
                    self.show(term),
                    self.show_ty(ty)
                ),
            )),
            (Term::Refl(subject), Value::Id(carrier, lhs, rhs)) => {
                self.check(subject, carrier)?;
                let subject_val = self.eval(subject);
                for (side, which) in [(lhs, "left"), (rhs, "right")] {
                    if !conv_values(sig, &self.scope, &subject_val, side, carrier) {
                        let expected = self.quote(side, carrier);
                        let actual = self.quote(&subject_val, carrier);
                        let message = format!(
                            "refl identifies `{}` with itself, but the {which} endpoint is `{}`",
                            self.show(&actual),
                            self.show(&expected)
                        );
                        return Err(CheckError::new(
                            ErrorKind::ConversionFailure {
                                expected: Box::new(expected),
                                actual: Box::new(actual),
                            },
                            message,
                        ));
                    }
                }
                Ok(())
            }
            _ => {
                let actual = self.infer(term)?;
                match (&*actual, &**ty) {
                    (Value::Universe(Level::U0), Value::Universe(Level::U1)) => Ok(()),
                    _ if conv_types(sig, &self.scope, &actual, ty) => Ok(()),
                    _ => Err(self.mismatch(ty, &actual, &format!("`{}`", self.show(term)))),
                }
            }
        }
    }
}

/// Infers the type of `term` in `ctx`, returned in normal form.
pub fn infer(sig: &Signature, ctx: &Context, term: &Term) -> Result<Term> {
    let mut checker = Checker::new(sig, Scope::from_context(sig, ctx));
    let ty = checker.infer(term)?;
    Ok(checker.quote_ty(&ty))
}

/// Checks that `term` inhabits `ty` in `ctx`.
pub fn check(sig: &Signature, ctx: &Context, term: &Term, ty: &Term) -> Result<()> {
    let mut checker = Checker::new(sig, Scope::from_context(sig, ctx));
    let ty = checker.eval(ty);
    checker.check(term, &ty)
}

/// Checks that `ty` is a well-formed (possibly large) type in `ctx`.
pub fn check_type(sig: &Signature, ctx: &Context, ty: &Term) -> Result<()> {
    Checker::new(sig, Scope::from_context(sig, ctx)).check_type(ty)
}

/// Checks one declaration and extends the signature with it.
pub fn check_decl(sig: &Signature, decl: &Declaration) -> Result<Signature> {
    let spans = &decl.spans;
    if let Some(name) = decl.name() {
        if sig.contains(name) {
            return Err(CheckError::new(
                ErrorKind::DuplicateDefinition,
                format!("`{name}` is already defined"),
            )
            .at(spans.name.or(spans.decl)));
        }
    }
    let mut checker = Checker::new(sig, Scope::new());
    checker.check_type(decl.ty()).map_err(|e| e.at(spans.ty))?;
    let ty = checker.eval(decl.ty());
    let mut extended = sig.clone();
    match &decl.kind {
        DeclKind::Def {
            name,
            ty: ty_term,
            body,
        } => {
            checker.check(body, &ty).map_err(|e| e.at(spans.body))?;
            extended.insert_unchecked(SignatureEntry {
                name: name.clone(),
                ty: ty_term.clone(),
                body: Some(body.clone()),
            });
        }
        DeclKind::Postulate { name, ty: ty_term } => {
            extended.insert_unchecked(SignatureEntry {
                name: name.clone(),
                ty: ty_term.clone(),
                body: None,
            });
        }
        DeclKind::Assert { lhs, rhs, .. } => {
            checker.check(lhs, &ty).map_err(|e| e.at(spans.body))?;
            checker.check(rhs, &ty).map_err(|e| e.at(spans.rhs))?;
            let lhs_val = checker.eval(lhs);
            let rhs_val = checker.eval(rhs);
            if !conv_values(sig, &checker.scope, &lhs_val, &rhs_val, &ty) {
                let lhs_nf = checker.quote(&lhs_val, &ty);
                let rhs_nf = checker.quote(&rhs_val, &ty);
                return Err(CheckError::new(
                    ErrorKind::AssertionFailure,
                    format!(
                        "the two sides are not definitionally equal: `{}` vs `{}`",
                        checker.show(&lhs_nf),
                        checker.show(&rhs_nf)
                    ),
                )
                .at(spans.decl));
            }
        }
    }
    Ok(extended)
}

/// Checks declarations in order, continuing past failures. A declaration
/// that refers to a failed one is skipped rather than reported again.
pub fn check_module(sig: &Signature, module: &Module) -> (Signature, Report) {
    #[cfg(not(target_arch = "wasm32"))]
    let start = std::time::Instant::now();
    let mut sig = sig.clone();
    let mut report = Report::default();
    let mut failed: Vec<Name> = Vec::new();
    for decl in &module.decls {
        let mut blocked_by = None;
        for term in decl_terms(decl) {
            term.for_each_const(&mut |name| {
                if blocked_by.is_none() && failed.contains(name) {
                    blocked_by = Some(name.clone());
                }
            });
        }
        if blocked_by.is_some() {
            if let Some(name) = decl.name() {
                report.skipped.push(name.clone());
                if !sig.contains(name) {
                    failed.push(name.clone());
                }
            }
            continue;
        }
        match check_decl(&sig, decl) {
            Ok(extended) => {
                sig = extended;
                if let Some(name) = decl.name() {
                    report.checked_names.push(name.clone());
                }
            }
            Err(error) => {
                if let Some(name) = decl.name() {
                    if !matches!(error.kind, ErrorKind::DuplicateDefinition) {
                        failed.push(name.clone());
                    }
                }
                report.errors.push(error.at(decl.spans.decl));
            }
        }
    }
    #[cfg(not(target_arch = "wasm32"))]
    {
        report.elapsed = start.elapsed();
    }
    (sig, report)
}

fn decl_terms(decl: &Declaration) -> Vec<&Term> {
    match &decl.kind {
        DeclKind::Def { ty, body, .. } => vec![ty, body],
        DeclKind::Postulate { ty, .. } => vec![ty],
        DeclKind::Assert { lhs, rhs, ty } => vec![ty, lhs, rhs],
    }
}
