//! Normalization by evaluation and the definitional equality check.
//!
//! Terms are evaluated to [`Value`]s, then read back into terms guided by
//! their types. Readback is type-directed so that normal forms are η-long:
//! anything at a `Pi` type comes back as a lambda and anything at a `Sigma`
//! type as a pair. Two terms are convertible when their normal forms are
//! structurally equal.
//!
//! Definitions unfold as soon as they are evaluated; postulates stay opaque.
//! `J` computes whenever its path evaluates to `refl`.

use std::sync::Arc;

use crate::syntax::{Context, Level, Name, Signature, Term};
use crate::value::{Closure, Elim, Env, Head, Val, Value};

pub fn eval(sig: &Signature, env: &Env, term: &Term) -> Val {
    match term {
        Term::Var(index) => match env.lookup(*index) {
            Some(value) => value.clone(),
            None => panic!("eval: variable {index} out of scope at depth {}", env.len()),
        },
        Term::Universe(level) => Value::universe(*level),
        Term::Pi(name, dom, cod) => Arc::new(Value::Pi(
            name.clone(),
            eval(sig, env, dom),
            Closure {
                env: env.clone(),
                body: cod.clone(),
            },
        )),
        Term::Sigma(name, first, second) => Arc::new(Value::Sigma(
            name.clone(),
            eval(sig, env, first),
            Closure {
                env: env.clone(),
                body: second.clone(),
            },
        )),
        Term::Lam(name, body) => Arc::new(Value::Lam(
            name.clone(),
            Closure {
                env: env.clone(),
                body: body.clone(),
            },
        )),
        Term::App(fun, arg) => apply(sig, eval(sig, env, fun), eval(sig, env, arg)),
        Term::Pair(a, b) => Arc::new(Value::Pair(eval(sig, env, a), eval(sig, env, b))),
        Term::Fst(pair) => fst(eval(sig, env, pair)),
        Term::Snd(pair) => snd(eval(sig, env, pair)),
        Term::Id(ty, lhs, rhs) => Arc::new(Value::Id(
            eval(sig, env, ty),
            eval(sig, env, lhs),
            eval(sig, env, rhs),
        )),
        Term::Refl(subject) => Arc::new(Value::Refl(eval(sig, env, subject))),
        Term::J {
            motive,
            base,
            lhs,
            rhs,
            path,
        } => j(
            sig,
            eval(sig, env, motive),
            eval(sig, env, base),
            eval(sig, env, lhs),
            eval(sig, env, rhs),
            eval(sig, env, path),
        ),
        Term::Const(name) => match sig.get(name) {
            Some(entry) => match &entry.body {
                Some(body) => eval(sig, &Env::new(), body),
                None => Arc::new(Value::Neutral(Head::Const(name.clone()), Vec::new())),
            },
            None => panic!("eval: unknown constant `{name}`"),
        },
    }
}

impl Closure {
    pub fn apply(&self, sig: &Signature, arg: Val) -> Val {
        eval(sig, &self.env.extend(arg), &self.body)
    }
}

fn push_elim(head: &Head, spine: &[Elim], elim: Elim) -> Val {
    let mut spine = spine.to_vec();
    spine.push(elim);
    Arc::new(Value::Neutral(head.clone(), spine))
}

pub fn apply(sig: &Signature, fun: Val, arg: Val) -> Val {
    match &*fun {
        Value::Lam(_, body) => body.apply(sig, arg),
        Value::Neutral(head, spine) => push_elim(head, spine, Elim::App(arg)),
        other => panic!("apply: not a function: {other:?}"),
    }
}

pub fn fst(pair: Val) -> Val {
    match &*pair {
        Value::Pair(a, _) => a.clone(),
        Value::Neutral(head, spine) => push_elim(head, spine, Elim::Fst),
        other => panic!("fst: not a pair: {other:?}"),
    }
}

pub fn snd(pair: Val) -> Val {
    match &*pair {
        Value::Pair(_, b) => b.clone(),
        Value::Neutral(head, spine) => push_elim(head, spine, Elim::Snd),
        other => panic!("snd: not a pair: {other:?}"),
    }
}

pub fn j(sig: &Signature, motive: Val, base: Val, lhs: Val, rhs: Val, path: Val) -> Val {
    match &*path {
        Value::Refl(subject) => apply(sig, base, subject.clone()),
        Value::Neutral(head, spine) => push_elim(
            head,
            spine,
            Elim::J {
                motive,
                base,
                lhs,
                rhs,
            },
        ),
        other => panic!("J: not a path: {other:?}"),
    }
}

/// Types of the free variables in scope, by de Bruijn level.
#[derive(Clone, Debug, Default)]
pub struct Scope {
    names: Vec<Name>,
    types: Vec<Val>,
}

impl Scope {
    pub fn new() -> Scope {
        Scope::default()
    }

    /// Evaluates every entry of a syntactic context.
    pub fn from_context(sig: &Signature, ctx: &Context) -> Scope {
        let mut scope = Scope::new();
        for (name, ty) in ctx.entries() {
            let ty = eval(sig, &scope.env(), ty);
            scope.push(name.clone(), ty);
        }
        scope
    }

    pub fn depth(&self) -> usize {
        self.types.len()
    }

    pub fn env(&self) -> Env {
        Env::vars(self.depth())
    }

    /// Binds a new variable and returns it.
    pub fn push(&mut self, name: Name, ty: Val) -> Val {
        let var = Value::var(self.depth());
        self.names.push(name);
        self.types.push(ty);
        var
    }

    pub fn pop(&mut self) {
        self.names.pop();
        self.types.pop();
    }

    pub fn names(&self) -> &[Name] {
        &self.names
    }

    /// Looks up a de Bruijn index, returning the variable's name and type.
    pub fn lookup(&self, index: usize) -> Option<(&Name, &Val)> {
        let level = self.depth().checked_sub(index + 1)?;
        Some((&self.names[level], &self.types[level]))
    }

    fn level_to_index(&self, level: usize) -> usize {
        self.depth() - 1 - level
    }
}

/// Type-directed readback of values into normal forms.
pub struct Quote<'a> {
    sig: &'a Signature,
    scope: Scope,
}

impl<'a> Quote<'a> {
    pub fn new(sig: &'a Signature, scope: Scope) -> Quote<'a> {
        Quote { sig, scope }
    }

    fn under<T>(&mut self, name: Name, ty: Val, f: impl FnOnce(&mut Self, Val) -> T) -> T {
        let var = self.scope.push(name, ty);
        let result = f(self, var);
        self.scope.pop();
        result
    }

    /// Reads back `value`, which must inhabit `ty`.
    pub fn value(&mut self, value: &Val, ty: &Val) -> Term {
        let sig = self.sig;
        match &**ty {
            Value::Pi(pi_name, dom, cod) => {
                let name = match &**value {
                    Value::Lam(name, _) if &**name != "_" => name.clone(),
                    _ => pi_name.clone(),
                };
                let body = self.under(name.clone(), dom.clone(), |q, var| {
                    let result = apply(sig, value.clone(), var.clone());
                    q.value(&result, &cod.apply(sig, var))
                });
                Term::Lam(name, Arc::new(body))
            }
            Value::Sigma(_, first_ty, second_ty) => {
                let first = fst(value.clone());
                let second = snd(value.clone());
                let first_term = self.value(&first, first_ty);
                let second_term = self.value(&second, &second_ty.apply(sig, first));
                Term::pair(first_term, second_term)
            }
            Value::Universe(_) => self.ty(value),
            Value::Id(carrier, _, _) => match &**value {
                Value::Refl(subject) => Term::refl(self.value(subject, carrier)),
                Value::Neutral(head, spine) => self.neutral(head, spine).0,
                other => panic!("readback: {other:?} is not an identification"),
            },
            Value::Neutral(..) => match &**value {
                Value::Neutral(head, spine) => self.neutral(head, spine).0,
                other => panic!("readback: {other:?} at a neutral type"),
            },
            other => panic!("readback: {other:?} is not a type"),
        }
    }

    /// Reads back a type value.
    pub fn ty(&mut self, ty: &Val) -> Term {
        let sig = self.sig;
        match &**ty {
            Value::Universe(level) => Term::Universe(*level),
            Value::Pi(name, dom, cod) | Value::Sigma(name, dom, cod) => {
                let dom_term = self.ty(dom);
                let cod_term = self.under(name.clone(), dom.clone(), |q, var| {
                    q.ty(&cod.apply(sig, var))
                });
                if matches!(&**ty, Value::Pi(..)) {
                    Term::Pi(name.clone(), Arc::new(dom_term), Arc::new(cod_term))
                } else {
                    Term::Sigma(name.clone(), Arc::new(dom_term), Arc::new(cod_term))
                }
            }
            Value::Id(carrier, lhs, rhs) => Term::id(
                self.ty(carrier),
                self.value(lhs, carrier),
                self.value(rhs, carrier),
            ),
            Value::Neutral(head, spine) => self.neutral(head, spine).0,
            other => panic!("readback: {other:?} is not a type"),
        }
    }

    /// Reads back a neutral, returning its term and its type.
    fn neutral(&mut self, head: &Head, spine: &[Elim]) -> (Term, Val) {
        let sig = self.sig;
        let (mut term, mut ty) = match head {
            Head::Var(level) => (
                Term::Var(self.scope.level_to_index(*level)),
                self.scope.types[*level].clone(),
            ),
            Head::Const(name) => {
                let entry = sig
                    .get(name)
                    .unwrap_or_else(|| panic!("readback: unknown constant `{name}`"));
                (Term::Const(name.clone()), eval(sig, &Env::new(), &entry.ty))
            }
        };
        for (i, elim) in spine.iter().enumerate() {
            let so_far = || Arc::new(Value::Neutral(head.clone(), spine[..i].to_vec()));
            match (elim, &*ty.clone()) {
                (Elim::App(arg), Value::Pi(_, dom, cod)) => {
                    term = Term::app(term, self.value(arg, dom));
                    ty = cod.apply(sig, arg.clone());
                }
                (Elim::Fst, Value::Sigma(_, first_ty, _)) => {
                    term = Term::fst(term);
                    ty = first_ty.clone();
                }
                (Elim::Snd, Value::Sigma(_, _, second_ty)) => {
                    term = Term::snd(term);
                    ty = second_ty.apply(sig, fst(so_far()));
                }
                (
                    Elim::J {
                        motive,
                        base,
                        lhs,
                        rhs,
                    },
                    Value::Id(carrier, _, _),
                ) => {
                    let motive_ty = j_motive_type(sig, carrier, Level::U1);
                    let base_ty = j_base_type(sig, carrier, motive);
                    let motive_term = self.value(motive, &motive_ty);
                    let base_term = self.value(base, &base_ty);
                    let lhs_term = self.value(lhs, carrier);
                    let rhs_term = self.value(rhs, carrier);
                    term = Term::j(motive_term, base_term, lhs_term, rhs_term, term);
                    ty = apply(
                        sig,
                        apply(sig, apply(sig, motive.clone(), lhs.clone()), rhs.clone()),
                        so_far(),
                    );
                }
                (elim, ty) => panic!("readback: eliminator {elim:?} at type {ty:?}"),
            }
        }
        (term, ty)
    }
}

/// `Pi (x y : X), Id X x y -> U_level`
pub fn j_motive_type(sig: &Signature, carrier: &Val, level: Level) -> Val {
    let term = Term::pi(
        "x",
        Term::var(0),
        Term::pi(
            "y",
            Term::var(1),
            Term::pi(
                "p",
                Term::id(Term::var(2), Term::var(1), Term::var(0)),
                Term::Universe(level),
            ),
        ),
    );
    let mut env = Env::new();
    env.push(carrier.clone());
    eval(sig, &env, &term)
}

/// `Pi (x : X), motive x x (refl x)`
pub fn j_base_type(sig: &Signature, carrier: &Val, motive: &Val) -> Val {
    let term = Term::pi(
        "x",
        Term::var(1),
        Term::apps(
            Term::var(1),
            [Term::var(0), Term::var(0), Term::refl(Term::var(0))],
        ),
    );
    let mut env = Env::new();
    env.push(carrier.clone());
    env.push(motive.clone());
    eval(sig, &env, &term)
}

/// β-normal, η-long form of `term` at type `ty` in `ctx`.
pub fn normalize(sig: &Signature, ctx: &Context, term: &Term, ty: &Term) -> Term {
    let scope = Scope::from_context(sig, ctx);
    let env = scope.env();
    let value = eval(sig, &env, term);
    let ty = eval(sig, &env, ty);
    Quote::new(sig, scope).value(&value, &ty)
}

/// Normal form of a type in `ctx`.
pub fn normalize_type(sig: &Signature, ctx: &Context, ty: &Term) -> Term {
    let scope = Scope::from_context(sig, ctx);
    let value = eval(sig, &scope.env(), ty);
    Quote::new(sig, scope).ty(&value)
}

/// Definitional equality of two terms at a common type.
pub fn convertible(sig: &Signature, ctx: &Context, a: &Term, b: &Term, ty: &Term) -> bool {
    normalize(sig, ctx, a, ty).structural_eq(&normalize(sig, ctx, b, ty))
}

pub(crate) fn conv_values(sig: &Signature, scope: &Scope, a: &Val, b: &Val, ty: &Val) -> bool {
    let mut quote = Quote::new(sig, scope.clone());
    quote.value(a, ty).structural_eq(&quote.value(b, ty))
}

pub(crate) fn conv_types(sig: &Signature, scope: &Scope, a: &Val, b: &Val) -> bool {
    let mut quote = Quote::new(sig, scope.clone());
    quote.ty(a).structural_eq(&quote.ty(b))
}
