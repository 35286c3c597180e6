//! Shared test support: corpus subterms paired with their types, and the
//! kernel properties checked over them.

#![allow(dead_code)]

use mltt::corpus;
use mltt::nbe::normalize_type;
use mltt::{
    check, check_module, convertible, infer, normalize, Context, DeclKind, Level, Signature, Term,
};

/// A well-typed corpus subterm, its context, and its type in normal form.
#[derive(Clone, Debug)]
pub struct Sample {
    pub ctx: Context,
    pub term: Term,
    pub ty: Term,
}

/// The signature of the univalence and extras corpora together.
pub fn corpus_signature() -> Signature {
    let module = corpus::corpus_core().concat(corpus::corpus_extras());
    let (sig, report) = check_module(&Signature::new(), &module);
    assert!(
        report.is_success(),
        "corpus does not check: {:?}",
        report.errors
    );
    sig
}

/// Every subterm of the corpus whose type can be determined, found by
/// walking bodies against their declared types and types by inference.
pub fn corpus_samples(sig: &Signature) -> Vec<Sample> {
    let module = corpus::corpus_core()
        .concat(corpus::core_asserts())
        .concat(corpus::corpus_extras());
    let mut walker = Walker {
        sig,
        out: Vec::new(),
    };
    let mut ctx = Context::new();
    for decl in &module.decls {
        match &decl.kind {
            DeclKind::Def { ty, body, .. } => {
                walker.walk(&mut ctx, ty, None);
                walker.walk(&mut ctx, body, Some(ty.clone()));
            }
            DeclKind::Postulate { ty, .. } => walker.walk(&mut ctx, ty, None),
            DeclKind::Assert { lhs, rhs, ty } => {
                walker.walk(&mut ctx, ty, None);
                walker.walk(&mut ctx, lhs, Some(ty.clone()));
                walker.walk(&mut ctx, rhs, Some(ty.clone()));
            }
        }
    }
    walker.out
}

struct Walker<'a> {
    sig: &'a Signature,
    out: Vec<Sample>,
}

impl Walker<'_> {
    fn walk(&mut self, ctx: &mut Context, term: &Term, expected: Option<Term>) {
        let sig = self.sig;
        let ty = match expected {
            Some(ty) => ty,
            None => match infer(sig, ctx, term) {
                Ok(ty) => ty,
                Err(_) => return,
            },
        };
        let ty = normalize_type(sig, ctx, &ty);
        self.out.push(Sample {
            ctx: ctx.clone(),
            term: term.clone(),
            ty: ty.clone(),
        });
        match term {
            Term::Var(_) | Term::Universe(_) | Term::Const(_) => {}
            Term::Pi(name, domain, codomain) | Term::Sigma(name, domain, codomain) => {
                self.walk(ctx, domain, None);
                ctx.push(name, (**domain).clone());
                self.walk(ctx, codomain, None);
                ctx.pop();
            }
            Term::Lam(name, body) => {
                if let Term::Pi(_, domain, codomain) = &ty {
                    ctx.push(name, (**domain).clone());
                    self.walk(ctx, body, Some((**codomain).clone()));
                    ctx.pop();
                }
            }
            Term::App(fun, arg) => {
                self.walk(ctx, fun, None);
                if let Ok(fun_ty) = infer(sig, ctx, fun) {
                    if let Term::Pi(_, domain, _) = normalize_type(sig, ctx, &fun_ty) {
                        self.walk(ctx, arg, Some((*domain).clone()));
                    }
                }
            }
            Term::Pair(first, second) => {
                if let Term::Sigma(name, a, b) = &ty {
                    self.walk(ctx, first, Some((**a).clone()));
                    let instance = Term::app(Term::lam(name, (**b).clone()), (**first).clone());
                    let second_ty = normalize_type(sig, ctx, &instance);
                    self.walk(ctx, second, Some(second_ty));
                }
            }
            Term::Fst(pair) | Term::Snd(pair) => self.walk(ctx, pair, None),
            Term::Refl(subject) => {
                let carrier = match &ty {
                    Term::Id(carrier, _, _) => Some((**carrier).clone()),
                    _ => None,
                };
                self.walk(ctx, subject, carrier);
            }
            Term::Id(carrier, lhs, rhs) => {
                self.walk(ctx, carrier, None);
                self.walk(ctx, lhs, Some((**carrier).clone()));
                self.walk(ctx, rhs, Some((**carrier).clone()));
            }
            Term::J {
                motive,
                base,
                lhs,
                rhs,
                path,
            } => {
                let Some(carrier) = self.carrier(ctx, lhs, path) else {
                    return;
                };
                let motive_ty = Term::pi(
                    "x",
                    carrier.clone(),
                    Term::pi(
                        "y",
                        carrier.shift(1, 0),
                        Term::arrow(
                            Term::id(carrier.shift(2, 0), Term::var(1), Term::var(0)),
                            Term::universe(Level::U1),
                        ),
                    ),
                );
                let base_ty = Term::pi(
                    "x",
                    carrier.clone(),
                    Term::apps(
                        motive.shift(1, 0),
                        [Term::var(0), Term::var(0), Term::refl(Term::var(0))],
                    ),
                );
                let base_ty = normalize_type(sig, ctx, &base_ty);
                self.walk(ctx, motive, Some(motive_ty));
                self.walk(ctx, base, Some(base_ty));
                self.walk(ctx, lhs, Some(carrier.clone()));
                self.walk(ctx, rhs, Some(carrier.clone()));
                let path_ty = Term::id(carrier, (**lhs).clone(), (**rhs).clone());
                self.walk(ctx, path, Some(path_ty));
            }
        }
    }

    fn carrier(&self, ctx: &Context, lhs: &Term, path: &Term) -> Option<Term> {
        if let Ok(ty) = infer(self.sig, ctx, path) {
            if let Term::Id(carrier, _, _) = normalize_type(self.sig, ctx, &ty) {
                return Some((*carrier).clone());
            }
        }
        infer(self.sig, ctx, lhs)
            .ok()
            .map(|ty| normalize_type(self.sig, ctx, &ty))
    }
}

/// Samples with a function type, padded to `at_least` by abstracting other
/// samples over their innermost variable.
pub fn pi_samples(samples: &[Sample], at_least: usize) -> Vec<Sample> {
    let mut out: Vec<Sample> = samples
        .iter()
        .filter(|s| matches!(s.ty, Term::Pi(..)))
        .cloned()
        .collect();
    for s in samples {
        if out.len() >= at_least {
            break;
        }
        let mut ctx = s.ctx.clone();
        if let Some((name, domain)) = ctx.pop() {
            out.push(Sample {
                ctx,
                term: Term::lam(&name, s.term.clone()),
                ty: Term::pi(&name, domain, s.ty.clone()),
            });
        }
    }
    out
}

/// Samples with a pair type, padded to `at_least` with pairs of a sample
/// with itself.
pub fn sigma_samples(samples: &[Sample], at_least: usize) -> Vec<Sample> {
    let mut out: Vec<Sample> = samples
        .iter()
        .filter(|s| matches!(s.ty, Term::Sigma(..)))
        .cloned()
        .collect();
    for s in samples {
        if out.len() >= at_least {
            break;
        }
        out.push(Sample {
            ctx: s.ctx.clone(),
            term: Term::pair(s.term.clone(), s.term.clone()),
            ty: Term::product(s.ty.clone(), s.ty.clone()),
        });
    }
    out
}

/// `t` wrapped in a redex that reduces back to it.
pub fn beta_expand(t: &Term) -> Term {
    Term::app(Term::lam("z", t.shift(1, 0)), Term::universe(Level::U0))
}

pub fn eta_expand_fun(t: &Term, name: &str) -> Term {
    Term::lam(name, Term::app(t.shift(1, 0), Term::var(0)))
}

pub fn eta_expand_pair(t: &Term) -> Term {
    Term::pair(Term::fst(t.clone()), Term::snd(t.clone()))
}

/// A property that failed on one sample.
#[derive(Debug)]
pub struct Violation {
    pub property: &'static str,
    pub term: String,
}

fn violation(property: &'static str, s: &Sample) -> Violation {
    let names: Vec<_> = s.ctx.names().cloned().collect();
    Violation {
        property,
        term: mltt::pretty::print_in(&s.term, &names),
    }
}

pub fn idempotence(sig: &Signature, s: &Sample) -> Result<(), Violation> {
    let once = normalize(sig, &s.ctx, &s.term, &s.ty);
    let twice = normalize(sig, &s.ctx, &once, &s.ty);
    if once.structural_eq(&twice) && once.scope_check(s.ctx.len()) {
        Ok(())
    } else {
        Err(violation("idempotence", s))
    }
}

pub fn reflexivity(sig: &Signature, s: &Sample) -> Result<(), Violation> {
    if convertible(sig, &s.ctx, &s.term, &s.term, &s.ty) {
        Ok(())
    } else {
        Err(violation("reflexivity", s))
    }
}

/// Symmetry on the pair (t, normal form of t), which is convertible, and on
/// (t, other), which usually is not.
pub fn symmetry(sig: &Signature, s: &Sample, other: &Term) -> Result<(), Violation> {
    let normal = normalize(sig, &s.ctx, &s.term, &s.ty);
    let forward = convertible(sig, &s.ctx, &s.term, &normal, &s.ty);
    let backward = convertible(sig, &s.ctx, &normal, &s.term, &s.ty);
    let there = convertible(sig, &s.ctx, &s.term, other, &s.ty);
    let back = convertible(sig, &s.ctx, other, &s.term, &s.ty);
    if forward && backward && there == back {
        Ok(())
    } else {
        Err(violation("symmetry", s))
    }
}

/// Transitivity along t ~ normal form ~ a beta-expanded t.
pub fn transitivity(sig: &Signature, s: &Sample) -> Result<(), Violation> {
    let normal = normalize(sig, &s.ctx, &s.term, &s.ty);
    let expanded = beta_expand(&s.term);
    let ab = convertible(sig, &s.ctx, &s.term, &normal, &s.ty);
    let bc = convertible(sig, &s.ctx, &normal, &expanded, &s.ty);
    let ac = convertible(sig, &s.ctx, &s.term, &expanded, &s.ty);
    if ab && bc && ac {
        Ok(())
    } else {
        Err(violation("transitivity", s))
    }
}

pub fn eta_pi(sig: &Signature, s: &Sample) -> Result<(), Violation> {
    let Term::Pi(name, _, _) = &s.ty else {
        return Err(violation("eta for functions", s));
    };
    let expanded = eta_expand_fun(&s.term, name);
    // A lambda applied directly is not inferable, so only other terms are
    // re-checked after expansion.
    let rechecks = matches!(s.term, Term::Lam(..)) || check(sig, &s.ctx, &expanded, &s.ty).is_ok();
    if convertible(sig, &s.ctx, &s.term, &expanded, &s.ty) && rechecks {
        Ok(())
    } else {
        Err(violation("eta for functions", s))
    }
}

pub fn eta_sigma(sig: &Signature, s: &Sample) -> Result<(), Violation> {
    let expanded = eta_expand_pair(&s.term);
    if matches!(s.ty, Term::Sigma(..)) && convertible(sig, &s.ctx, &s.term, &expanded, &s.ty) {
        Ok(())
    } else {
        Err(violation("eta for pairs", s))
    }
}

pub fn subject_reduction(sig: &Signature, s: &Sample) -> Result<(), Violation> {
    let normal = normalize(sig, &s.ctx, &s.term, &s.ty);
    match check(sig, &s.ctx, &normal, &s.ty) {
        Ok(()) => Ok(()),
        Err(_) => Err(violation("subject reduction", s)),
    }
}

/// Whether two samples live in the same context.
pub fn same_scope(a: &Sample, b: &Sample) -> bool {
    a.ctx.len() == b.ctx.len()
        && a.ctx
            .entries()
            .iter()
            .zip(b.ctx.entries())
            .all(|((_, x), (_, y))| x.structural_eq(y))
}

/// Direct checking succeeds, and where inference succeeds its answer is
/// convertible with the sample's type.
pub fn coherence(sig: &Signature, s: &Sample) -> Result<(), Violation> {
    if check(sig, &s.ctx, &s.term, &s.ty).is_err() {
        return Err(violation("infer/check coherence", s));
    }
    match infer(sig, &s.ctx, &s.term) {
        Err(_) => Ok(()),
        Ok(inferred) => {
            let inferred = normalize_type(sig, &s.ctx, &inferred);
            let widened = matches!(
                (&inferred, &s.ty),
                (Term::Universe(Level::U0), Term::Universe(Level::U1))
            );
            let same = inferred.structural_eq(&s.ty);
            let deterministic = infer(sig, &s.ctx, &s.term)
                .map(|again| normalize_type(sig, &s.ctx, &again).structural_eq(&inferred))
                .unwrap_or(false);
            if (same || widened) && deterministic {
                Ok(())
            } else {
                Err(violation("infer/check coherence", s))
            }
        }
    }
}

/// The category of the first error `source` produces, from lexing through
/// checking, or `None` if it is accepted.
pub fn first_error(source: &str) -> Option<String> {
    use mltt::surface::{elaborate, parse, SourceError};
    let surface = match parse(source) {
        Ok(surface) => surface,
        Err(SourceError::Lex(_)) => return Some("LexError".into()),
        Err(SourceError::Parse(_)) => return Some("ParseError".into()),
        Err(SourceError::Elab(errors)) => return Some(errors[0].category().into()),
    };
    let module = match elaborate(&surface) {
        Ok(module) => module,
        Err(errors) => return Some(errors[0].category().into()),
    };
    let (_, report) = check_module(&Signature::new(), &module);
    report.errors.first().map(|e| e.category().to_owned())
}

const ATOMS: &str = "postulate N : U0 ; postulate zero : N ; postulate one : N ; ";

/// Ill-formed inputs with the category each must be rejected with.
pub fn negative_cases() -> Vec<(&'static str, String, &'static str)> {
    let atoms = |rest: &str| format!("{ATOMS}{rest}");
    vec![
        (
            "pair against an atomic type",
            atoms("def bad : N := (zero , zero) ;"),
            "ExpectedSigmaType",
        ),
        (
            "atomic element against a product",
            atoms("def bad : N * N := zero ;"),
            "ConversionFailure",
        ),
        (
            "the top universe has no type",
            "def bad : U1 := U1 ;".into(),
            "NoTypeForTopUniverse",
        ),
        (
            "unbound name",
            "def bad : U0 -> U0 := fun x => y ;".into(),
            "UnboundVariable",
        ),
        (
            "J with three arguments",
            "def bad : U0 -> U0 := fun A => J A A A ;".into(),
            "ArityError",
        ),
        (
            "Id with two arguments",
            "def bad : U0 -> U0 := fun A => Id A A ;".into(),
            "ArityError",
        ),
        (
            "applying a non-function",
            atoms("def bad : N := zero zero ;"),
            "ExpectedFunctionType",
        ),
        (
            "projecting from a non-pair",
            atoms("def bad : N := fst zero ;"),
            "ExpectedSigmaType",
        ),
        (
            "J on something that is not a path",
            atoms("def bad : N := J (fun x y p => N) (fun x => zero) zero zero zero ;"),
            "ExpectedIdType",
        ),
        (
            "inferring a bare lambda",
            "def bad : U0 := (fun x => x) U0 ;".into(),
            "CannotInfer",
        ),
        (
            "element used as a type",
            atoms("postulate bad : zero ;"),
            "ExpectedUniverse",
        ),
        (
            "duplicate definition",
            "postulate N : U0 ; postulate N : U0 ;".into(),
            "DuplicateDefinition",
        ),
        (
            "distinct postulates asserted equal",
            atoms("assert zero == one : N ;"),
            "AssertionFailure",
        ),
        (
            "refl between distinct postulates",
            atoms("def bad : Id N zero one := refl zero ;"),
            "ConversionFailure",
        ),
        (
            "U0 is not small",
            "def bad : U0 := U0 ;".into(),
            "ConversionFailure",
        ),
        (
            "large type at U0",
            "def bad : U0 := Pi (X : U0), X ;".into(),
            "ConversionFailure",
        ),
        (
            "lambda against a universe",
            "def bad : U1 := fun x => x ;".into(),
            "ExpectedFunctionType",
        ),
        (
            "postulates do not unfold",
            atoms("postulate M : U0 ; def bad : M := zero ;"),
            "ConversionFailure",
        ),
        ("stray character", "def bad : U0 := @ ;".into(), "LexError"),
        (
            "missing type annotation",
            "def f := 3 ;".into(),
            "ParseError",
        ),
    ]
}
