//! Core syntax of the calculus.
//!
//! Variables are de Bruijn indices counted from the innermost binder. Binder
//! names are kept only as hints for printing and never affect equality.

use std::fmt;
use std::sync::Arc;

use indexmap::IndexMap;

use crate::surface::Span;

/// Binder name hint.
pub type Name = Arc<str>;

/// One of the two universes. `U0 : U1`, and `U1` has no type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    U0,
    U1,
}

impl Level {
    pub fn max(self, other: Level) -> Level {
        std::cmp::max(self, other)
    }

    pub fn index(self) -> u8 {
        match self {
            Level::U0 => 0,
            Level::U1 => 1,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U{}", self.index())
    }
}

#[derive(Clone, Debug)]
pub enum Term {
    Var(usize),
    Universe(Level),
    Pi(Name, Arc<Term>, Arc<Term>),
    Lam(Name, Arc<Term>),
    App(Arc<Term>, Arc<Term>),
    Sigma(Name, Arc<Term>, Arc<Term>),
    Pair(Arc<Term>, Arc<Term>),
    Fst(Arc<Term>),
    Snd(Arc<Term>),
    Id(Arc<Term>, Arc<Term>, Arc<Term>),
    Refl(Arc<Term>),
    /// The identity eliminator, always fully applied.
    J {
        motive: Arc<Term>,
        base: Arc<Term>,
        lhs: Arc<Term>,
        rhs: Arc<Term>,
        path: Arc<Term>,
    },
    Const(Name),
}

impl Term {
    pub fn var(index: usize) -> Term {
        Term::Var(index)
    }

    pub fn universe(level: Level) -> Term {
        Term::Universe(level)
    }

    pub fn pi(name: &str, domain: Term, codomain: Term) -> Term {
        Term::Pi(name.into(), Arc::new(domain), Arc::new(codomain))
    }

    /// Non-dependent function type. `codomain` is given at the same depth as
    /// `domain` and is shifted under the anonymous binder.
    pub fn arrow(domain: Term, codomain: Term) -> Term {
        Term::pi("_", domain, codomain.shift(1, 0))
    }

    pub fn lam(name: &str, body: Term) -> Term {
        Term::Lam(name.into(), Arc::new(body))
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        Term::App(Arc::new(fun), Arc::new(arg))
    }

    /// Left-nested application of `fun` to every argument.
    pub fn apps(fun: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(fun, Term::app)
    }

    pub fn sigma(name: &str, first: Term, second: Term) -> Term {
        Term::Sigma(name.into(), Arc::new(first), Arc::new(second))
    }

    /// Binary product, the non-dependent special case of `Sigma`.
    pub fn product(first: Term, second: Term) -> Term {
        Term::sigma("_", first, second.shift(1, 0))
    }

    pub fn pair(first: Term, second: Term) -> Term {
        Term::Pair(Arc::new(first), Arc::new(second))
    }

    pub fn fst(pair: Term) -> Term {
        Term::Fst(Arc::new(pair))
    }

    pub fn snd(pair: Term) -> Term {
        Term::Snd(Arc::new(pair))
    }

    pub fn id(ty: Term, lhs: Term, rhs: Term) -> Term {
        Term::Id(Arc::new(ty), Arc::new(lhs), Arc::new(rhs))
    }

    pub fn refl(subject: Term) -> Term {
        Term::Refl(Arc::new(subject))
    }

    pub fn j(motive: Term, base: Term, lhs: Term, rhs: Term, path: Term) -> Term {
        Term::J {
            motive: Arc::new(motive),
            base: Arc::new(base),
            lhs: Arc::new(lhs),
            rhs: Arc::new(rhs),
            path: Arc::new(path),
        }
    }

    pub fn constant(name: &str) -> Term {
        Term::Const(name.into())
    }

    /// True iff every variable index is bound when the term sits under
    /// `depth` binders.
    pub fn scope_check(&self, depth: usize) -> bool {
        match self {
            Term::Var(index) => *index < depth,
            Term::Universe(_) | Term::Const(_) => true,
            Term::Pi(_, a, b) | Term::Sigma(_, a, b) => {
                a.scope_check(depth) && b.scope_check(depth + 1)
            }
            Term::Lam(_, body) => body.scope_check(depth + 1),
            Term::App(a, b) | Term::Pair(a, b) => a.scope_check(depth) && b.scope_check(depth),
            Term::Fst(t) | Term::Snd(t) | Term::Refl(t) => t.scope_check(depth),
            Term::Id(a, b, c) => {
                a.scope_check(depth) && b.scope_check(depth) && c.scope_check(depth)
            }
            Term::J {
                motive,
                base,
                lhs,
                rhs,
                path,
            } => [motive, base, lhs, rhs, path]
                .iter()
                .all(|t| t.scope_check(depth)),
        }
    }

    /// Alpha-equivalence: identical trees, ignoring binder name hints.
    pub fn structural_eq(&self, other: &Term) -> bool {
        use Term::*;
        match (self, other) {
            (Var(a), Var(b)) => a == b,
            (Universe(a), Universe(b)) => a == b,
            (Const(a), Const(b)) => a == b,
            (Pi(_, a1, b1), Pi(_, a2, b2)) | (Sigma(_, a1, b1), Sigma(_, a2, b2)) => {
                a1.structural_eq(a2) && b1.structural_eq(b2)
            }
            (Lam(_, b1), Lam(_, b2)) => b1.structural_eq(b2),
            (App(f1, a1), App(f2, a2)) | (Pair(f1, a1), Pair(f2, a2)) => {
                f1.structural_eq(f2) && a1.structural_eq(a2)
            }
            (Fst(a), Fst(b)) | (Snd(a), Snd(b)) | (Refl(a), Refl(b)) => a.structural_eq(b),
            (Id(a1, b1, c1), Id(a2, b2, c2)) => {
                a1.structural_eq(a2) && b1.structural_eq(b2) && c1.structural_eq(c2)
            }
            (
                J {
                    motive: m1,
                    base: f1,
                    lhs: a1,
                    rhs: b1,
                    path: p1,
                },
                J {
                    motive: m2,
                    base: f2,
                    lhs: a2,
                    rhs: b2,
                    path: p2,
                },
            ) => {
                m1.structural_eq(m2)
                    && f1.structural_eq(f2)
                    && a1.structural_eq(a2)
                    && b1.structural_eq(b2)
                    && p1.structural_eq(p2)
            }
            _ => false,
        }
    }

    /// Adds `amount` to every variable index `>= cutoff`.
    pub fn shift(&self, amount: usize, cutoff: usize) -> Term {
        let arc = |t: &Arc<Term>, c: usize| Arc::new(t.shift(amount, c));
        match self {
            Term::Var(index) if *index >= cutoff => Term::Var(index + amount),
            Term::Var(_) | Term::Universe(_) | Term::Const(_) => self.clone(),
            Term::Pi(n, a, b) => Term::Pi(n.clone(), arc(a, cutoff), arc(b, cutoff + 1)),
            Term::Sigma(n, a, b) => Term::Sigma(n.clone(), arc(a, cutoff), arc(b, cutoff + 1)),
            Term::Lam(n, body) => Term::Lam(n.clone(), arc(body, cutoff + 1)),
            Term::App(a, b) => Term::App(arc(a, cutoff), arc(b, cutoff)),
            Term::Pair(a, b) => Term::Pair(arc(a, cutoff), arc(b, cutoff)),
            Term::Fst(t) => Term::Fst(arc(t, cutoff)),
            Term::Snd(t) => Term::Snd(arc(t, cutoff)),
            Term::Refl(t) => Term::Refl(arc(t, cutoff)),
            Term::Id(a, b, c) => Term::Id(arc(a, cutoff), arc(b, cutoff), arc(c, cutoff)),
            Term::J {
                motive,
                base,
                lhs,
                rhs,
                path,
            } => Term::J {
                motive: arc(motive, cutoff),
                base: arc(base, cutoff),
                lhs: arc(lhs, cutoff),
                rhs: arc(rhs, cutoff),
                path: arc(path, cutoff),
            },
        }
    }

    /// Whether the variable with the given index (relative to this term)
    /// occurs free.
    pub fn mentions_var(&self, index: usize) -> bool {
        match self {
            Term::Var(i) => *i == index,
            Term::Universe(_) | Term::Const(_) => false,
            Term::Pi(_, a, b) | Term::Sigma(_, a, b) => {
                a.mentions_var(index) || b.mentions_var(index + 1)
            }
            Term::Lam(_, body) => body.mentions_var(index + 1),
            Term::App(a, b) | Term::Pair(a, b) => a.mentions_var(index) || b.mentions_var(index),
            Term::Fst(t) | Term::Snd(t) | Term::Refl(t) => t.mentions_var(index),
            Term::Id(a, b, c) => {
                a.mentions_var(index) || b.mentions_var(index) || c.mentions_var(index)
            }
            Term::J {
                motive,
                base,
                lhs,
                rhs,
                path,
            } => [motive, base, lhs, rhs, path]
                .iter()
                .any(|t| t.mentions_var(index)),
        }
    }

    /// Calls `f` on the name of every constant in the term.
    pub fn for_each_const(&self, f: &mut impl FnMut(&Name)) {
        match self {
            Term::Const(name) => f(name),
            Term::Var(_) | Term::Universe(_) => {}
            Term::Pi(_, a, b) | Term::Sigma(_, a, b) | Term::App(a, b) | Term::Pair(a, b) => {
                a.for_each_const(f);
                b.for_each_const(f);
            }
            Term::Lam(_, t) | Term::Fst(t) | Term::Snd(t) | Term::Refl(t) => t.for_each_const(f),
            Term::Id(a, b, c) => {
                a.for_each_const(f);
                b.for_each_const(f);
                c.for_each_const(f);
            }
            Term::J {
                motive,
                base,
                lhs,
                rhs,
                path,
            } => {
                for t in [motive, base, lhs, rhs, path] {
                    t.for_each_const(f);
                }
            }
        }
    }
}

/// Telescope of local variables, innermost last.
#[derive(Clone, Debug, Default)]
pub struct Context {
    entries: Vec<(Name, Term)>,
}

impl Context {
    pub fn new() -> Context {
        Context::default()
    }

    /// Extends the context. `ty` is interpreted relative to the current
    /// entries.
    pub fn push(&mut self, name: &str, ty: Term) {
        self.entries.push((name.into(), ty));
    }

    pub fn with(mut self, name: &str, ty: Term) -> Context {
        self.push(name, ty);
        self
    }

    pub fn pop(&mut self) -> Option<(Name, Term)> {
        self.entries.pop()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(Name, Term)] {
        &self.entries
    }

    pub fn names(&self) -> impl Iterator<Item = &Name> {
        self.entries.iter().map(|(n, _)| n)
    }

    /// True iff every entry's type is scope-correct relative to its prefix.
    pub fn is_well_scoped(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(depth, (_, ty))| ty.scope_check(depth))
    }
}

/// A checked global: a definition when `body` is present, a postulate
/// otherwise.
#[derive(Clone, Debug)]
pub struct SignatureEntry {
    pub name: Name,
    pub ty: Term,
    pub body: Option<Term>,
}

/// Ordered, name-unique sequence of checked globals.
#[derive(Clone, Debug, Default)]
pub struct Signature {
    entries: IndexMap<Name, SignatureEntry>,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    pub fn get(&self, name: &str) -> Option<&SignatureEntry> {
        self.entries.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &SignatureEntry> {
        self.entries.values()
    }

    pub fn names(&self) -> impl Iterator<Item = &Name> {
        self.entries.keys()
    }

    /// Appends an entry without checking it. Returns `false` and leaves the
    /// signature unchanged if the name is taken.
    pub(crate) fn insert_unchecked(&mut self, entry: SignatureEntry) -> bool {
        if self.entries.contains_key(&entry.name) {
            return false;
        }
        self.entries.insert(entry.name.clone(), entry);
        true
    }
}

/// Source positions attached to a declaration, when it came from a file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DeclSpans {
    pub decl: Option<Span>,
    pub name: Option<Span>,
    pub ty: Option<Span>,
    /// Body of a definition, or left-hand side of an assertion.
    pub body: Option<Span>,
    pub rhs: Option<Span>,
}

#[derive(Clone, Debug)]
pub enum DeclKind {
    Def { name: Name, ty: Term, body: Term },
    Postulate { name: Name, ty: Term },
    Assert { lhs: Term, rhs: Term, ty: Term },
}

#[derive(Clone, Debug)]
pub struct Declaration {
    pub kind: DeclKind,
    pub spans: DeclSpans,
}

impl Declaration {
    pub fn def(name: &str, ty: Term, body: Term) -> Declaration {
        Declaration {
            kind: DeclKind::Def {
                name: name.into(),
                ty,
                body,
            },
            spans: DeclSpans::default(),
        }
    }

    pub fn postulate(name: &str, ty: Term) -> Declaration {
        Declaration {
            kind: DeclKind::Postulate {
                name: name.into(),
                ty,
            },
            spans: DeclSpans::default(),
        }
    }

    pub fn assert(lhs: Term, rhs: Term, ty: Term) -> Declaration {
        Declaration {
            kind: DeclKind::Assert { lhs, rhs, ty },
            spans: DeclSpans::default(),
        }
    }

    pub fn name(&self) -> Option<&Name> {
        match &self.kind {
            DeclKind::Def { name, .. } | DeclKind::Postulate { name, .. } => Some(name),
            DeclKind::Assert { .. } => None,
        }
    }

    pub fn ty(&self) -> &Term {
        match &self.kind {
            DeclKind::Def { ty, .. }
            | DeclKind::Postulate { ty, .. }
            | DeclKind::Assert { ty, .. } => ty,
        }
    }

    pub fn body(&self) -> Option<&Term> {
        match &self.kind {
            DeclKind::Def { body, .. } => Some(body),
            _ => None,
        }
    }
}

/// A sequence of declarations checked in order.
#[derive(Clone, Debug, Default)]
pub struct Module {
    pub decls: Vec<Declaration>,
}

impl Module {
    pub fn new(decls: Vec<Declaration>) -> Module {
        Module { decls }
    }

    pub fn is_empty(&self) -> bool {
        self.decls.is_empty()
    }

    /// Names of definitions and postulates, in order.
    pub fn names(&self) -> Vec<Name> {
        self.decls
            .iter()
            .filter_map(|d| d.name().cloned())
            .collect()
    }

    pub fn find(&self, name: &str) -> Option<&Declaration> {
        self.decls
            .iter()
            .find(|d| d.name().is_some_and(|n| &**n == name))
    }

    /// Concatenation, `self` first.
    pub fn concat(mut self, other: Module) -> Module {
        self.decls.extend(other.decls);
        self
    }
}
