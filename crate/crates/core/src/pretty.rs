//! Printing core terms back into the surface syntax.
//!
//! Binder names come from the hints stored in the term. A hint that would
//! shadow a variable in scope, or capture a global constant mentioned in the
//! term, is primed until it is fresh, so the output re-elaborates to the
//! same core term.

use std::collections::HashSet;
use std::fmt::Write;

use crate::syntax::{Context, Name, Term};

// Precedence levels, loosest first.
const TERM: u8 = 0;
const PROD: u8 = 1;
const APP: u8 = 2;
const ATOM: u8 = 3;

/// Renders `term`, whose free variables are named by `ctx`.
pub fn print(term: &Term, ctx: &Context) -> String {
    let names: Vec<Name> = ctx.names().cloned().collect();
    print_in(term, &names)
}

/// Renders `term`, whose free variables are named by `names` (outermost
/// first).
pub fn print_in(term: &Term, names: &[Name]) -> String {
    let mut consts = HashSet::new();
    term.for_each_const(&mut |name| {
        consts.insert(name.to_string());
    });
    let mut printer = Printer {
        names: names.iter().map(|n| n.to_string()).collect(),
        consts,
        out: String::new(),
    };
    printer.term(term, TERM);
    printer.out
}

struct Printer {
    names: Vec<String>,
    consts: HashSet<String>,
    out: String,
}

impl Printer {
    fn fresh(&self, hint: &str, used: bool) -> String {
        let mut name = match hint {
            "_" if used => "x".to_owned(),
            "_" => return "_".to_owned(),
            _ => hint.to_owned(),
        };
        while self.names.contains(&name) || self.consts.contains(&name) {
            name.push('\'');
        }
        name
    }

    fn with_binder(&mut self, name: String, f: impl FnOnce(&mut Self)) {
        self.names.push(name);
        f(self);
        self.names.pop();
    }

    fn term(&mut self, term: &Term, prec: u8) {
        let needed = match term {
            Term::Pi(..) | Term::Lam(..) => TERM,
            Term::Sigma(_, _, second) if second.mentions_var(0) => TERM,
            Term::Sigma(..) => PROD,
            Term::App(..)
            | Term::Fst(_)
            | Term::Snd(_)
            | Term::Refl(_)
            | Term::Id(..)
            | Term::J { .. } => APP,
            Term::Var(_) | Term::Universe(_) | Term::Const(_) | Term::Pair(..) => ATOM,
        };
        if needed < prec {
            self.out.push('(');
            self.unparenthesized(term, TERM);
            self.out.push(')');
        } else {
            self.unparenthesized(term, prec);
        }
    }

    fn unparenthesized(&mut self, term: &Term, prec: u8) {
        match term {
            Term::Var(index) => {
                let name = self
                    .names
                    .len()
                    .checked_sub(index + 1)
                    .map(|level| self.names[level].clone())
                    .unwrap_or_else(|| format!("#{index}"));
                self.out.push_str(&name);
            }
            Term::Universe(level) => {
                let _ = write!(self.out, "{level}");
            }
            Term::Const(name) => self.out.push_str(name),
            Term::Pi(hint, dom, cod) => {
                if cod.mentions_var(0) {
                    let name = self.fresh(hint, true);
                    let _ = write!(self.out, "Pi ({name} : ");
                    self.term(dom, TERM);
                    self.out.push_str("), ");
                    self.with_binder(name, |p| p.term(cod, TERM));
                } else {
                    self.term(dom, PROD);
                    self.out.push_str(" -> ");
                    self.with_binder("_".to_owned(), |p| p.term(cod, TERM));
                }
            }
            Term::Sigma(hint, first, second) => {
                if second.mentions_var(0) {
                    let name = self.fresh(hint, true);
                    let _ = write!(self.out, "Sig ({name} : ");
                    self.term(first, TERM);
                    self.out.push_str("), ");
                    self.with_binder(name, |p| p.term(second, TERM));
                } else {
                    self.term(first, APP);
                    self.out.push_str(" * ");
                    // A binder to the right of `*` extends to the end, which
                    // is only safe when nothing follows the product.
                    let is_binder = match &**second {
                        Term::Lam(..) => true,
                        Term::Pi(_, _, body) | Term::Sigma(_, _, body) => body.mentions_var(0),
                        _ => false,
                    };
                    let right = if prec == TERM && is_binder {
                        TERM
                    } else {
                        PROD
                    };
                    self.with_binder("_".to_owned(), |p| p.term(second, right));
                }
            }
            Term::Lam(..) => {
                self.out.push_str("fun");
                let mut body = term;
                let mut bound = 0;
                while let Term::Lam(hint, inner) = body {
                    let name = self.fresh(hint, inner.mentions_var(0));
                    let _ = write!(self.out, " {name}");
                    self.names.push(name);
                    bound += 1;
                    body = inner;
                }
                self.out.push_str(" => ");
                self.term(body, TERM);
                self.names.truncate(self.names.len() - bound);
            }
            Term::App(fun, arg) => {
                self.term(fun, APP);
                self.out.push(' ');
                self.term(arg, ATOM);
            }
            Term::Pair(first, second) => {
                self.out.push('(');
                self.term(first, TERM);
                self.out.push_str(" , ");
                self.term(second, TERM);
                self.out.push(')');
            }
            Term::Fst(t) => self.keyword("fst", &[t]),
            Term::Snd(t) => self.keyword("snd", &[t]),
            Term::Refl(t) => self.keyword("refl", &[t]),
            Term::Id(ty, lhs, rhs) => self.keyword("Id", &[ty, lhs, rhs]),
            Term::J {
                motive,
                base,
                lhs,
                rhs,
                path,
            } => self.keyword("J", &[motive, base, lhs, rhs, path]),
        }
    }

    fn keyword(&mut self, keyword: &str, args: &[&Term]) {
        self.out.push_str(keyword);
        for arg in args {
            self.out.push(' ');
            self.term(arg, ATOM);
        }
    }
}
