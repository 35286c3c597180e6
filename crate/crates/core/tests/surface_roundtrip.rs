//! Printing and parsing agree, Unicode and ASCII spellings agree, and
//! errors point at the right text.

use mltt::corpus;
use mltt::surface::{elaborate, load, parse, tokenize, ElabError, TokenKind};
use mltt::{pretty, Context, Module, Term};
use proptest::prelude::*;

const GLOBALS: [&str; 3] = ["c", "d", "x"];

fn preamble() -> String {
    GLOBALS
        .iter()
        .map(|g| format!("postulate {g} : U0 ;\n"))
        .collect()
}

/// Reads back a closed term printed by the pretty printer.
fn reparse(printed: &str) -> Term {
    let source = format!("{}def t : U0 := {printed} ;", preamble());
    let module = load(&source).unwrap_or_else(|e| panic!("{e}\n{source}"));
    module.decls.last().unwrap().body().unwrap().clone()
}

/// Replaces every keyword and operator that has a Unicode spelling by it.
fn to_unicode(source: &str) -> String {
    let tokens = tokenize(source).unwrap();
    let mut out = String::new();
    let mut last = 0;
    for token in tokens {
        let alias = match token.kind {
            TokenKind::Pi => "Π",
            TokenKind::Sig => "Σ",
            TokenKind::Fun => "λ",
            TokenKind::Arrow => "→",
            TokenKind::Star => "×",
            TokenKind::ColonEq => "≔",
            _ => continue,
        };
        out.push_str(&source[last..token.span.start.offset]);
        out.push_str(alias);
        last = token.span.end.offset;
    }
    out.push_str(&source[last..]);
    out
}

fn modules_agree(a: &Module, b: &Module) -> bool {
    a.decls.len() == b.decls.len()
        && a.decls.iter().zip(&b.decls).all(|(x, y)| {
            x.name() == y.name()
                && x.ty().structural_eq(y.ty())
                && match (x.body(), y.body()) {
                    (Some(p), Some(q)) => p.structural_eq(q),
                    (None, None) => true,
                    _ => false,
                }
        })
}

#[test]
fn corpus_definitions_survive_printing() {
    let module = corpus::corpus_core().concat(corpus::corpus_extras());
    let globals: Vec<String> = module.names().iter().map(|n| n.to_string()).collect();
    let mut prefix = String::new();
    for decl in &module.decls {
        let name = decl.name().unwrap();
        for term in [Some(decl.ty()), decl.body()].into_iter().flatten() {
            let printed = pretty::print(term, &Context::new());
            let source = format!("{prefix}def probe : U0 := {printed} ;");
            let reparsed = load(&source).unwrap_or_else(|e| panic!("{name}: {e}\n{printed}"));
            let back = reparsed.decls.last().unwrap().body().unwrap();
            assert!(back.structural_eq(term), "{name}: {printed}");
        }
        prefix.push_str(&format!("postulate {name} : U0 ;\n"));
    }
    assert_eq!(globals.len(), 16);
}

#[test]
fn normal_forms_survive_printing() {
    let module = corpus::corpus_core();
    let (sig, _) = mltt::check_module(&mltt::Signature::new(), &module);
    let prefix: String = module
        .names()
        .iter()
        .map(|n| format!("postulate {n} : U0 ;\n"))
        .collect();
    for entry in sig.iter() {
        let Some(body) = &entry.body else { continue };
        let normal = mltt::normalize(&sig, &Context::new(), body, &entry.ty);
        let printed = pretty::print(&normal, &Context::new());
        let source = format!("{prefix}def probe : U0 := {printed} ;");
        let back = load(&source)
            .unwrap()
            .decls
            .last()
            .unwrap()
            .body()
            .unwrap()
            .clone();
        assert!(back.structural_eq(&normal), "{}: {printed}", entry.name);
    }
}

#[test]
fn unicode_corpus_elaborates_identically() {
    for (name, source) in corpus::FILES {
        let prefix = match name {
            "axiom-univalence.mltt" => corpus::UNIVALENCE_SOURCE,
            "axiom-k.mltt" => corpus::EXTRAS_SOURCE,
            _ => "",
        };
        let ascii = format!("{prefix}\n{source}");
        let unicode = to_unicode(&ascii);
        assert_ne!(ascii, unicode, "{name}");
        let a = load(&ascii).unwrap();
        let b = load(&unicode).unwrap();
        assert!(modules_agree(&a, &b), "{name}");
    }
}

#[test]
fn arrow_and_product_are_sugar() {
    let pairs = [
        ("A -> B", "Pi (_ : A), B"),
        ("A * B", "Sig (_ : A), B"),
        ("A -> B -> A", "Pi (_ : A), Pi (_ : B), A"),
        ("A * B -> A", "Pi (_ : Sig (_ : A), B), A"),
    ];
    for (sugar, plain) in pairs {
        let wrap = |t: &str| format!("postulate A : U0 ; postulate B : U0 ; def t : U0 := {t} ;");
        let a = load(&wrap(sugar)).unwrap();
        let b = load(&wrap(plain)).unwrap();
        assert!(modules_agree(&a, &b), "{sugar}");
    }
}

#[test]
fn binders_scope_to_the_right() {
    let source = "postulate A : U0 ; postulate B : U0 ; postulate C : U0 ;
                  def t : U0 := Pi (x : A), B -> C ;";
    let ty = load(source).unwrap().decls[3].body().unwrap().clone();
    let expected = Term::pi(
        "x",
        Term::constant("A"),
        Term::arrow(Term::constant("B"), Term::constant("C")),
    );
    assert!(ty.structural_eq(&expected));
}

fn binder_name() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["x", "y", "x'", "_", "c", "f"])
}

fn leaf(depth: usize) -> BoxedStrategy<Term> {
    let constant = prop::sample::select(GLOBALS.to_vec()).prop_map(Term::constant);
    let universe = prop_oneof![
        Just(Term::universe(mltt::Level::U0)),
        Just(Term::universe(mltt::Level::U1))
    ];
    if depth == 0 {
        prop_oneof![constant, universe].boxed()
    } else {
        prop_oneof![3 => (0..depth).prop_map(Term::var), 1 => constant, 1 => universe].boxed()
    }
}

/// Closed-under-`depth` terms of bounded size, with every constructor.
fn arb_term(depth: usize, budget: u32) -> BoxedStrategy<Term> {
    if budget == 0 {
        return leaf(depth);
    }
    let sub = move |d: usize| arb_term(d, budget - 1);
    prop_oneof![
        2 => leaf(depth),
        1 => (binder_name(), sub(depth), sub(depth + 1)).prop_map(|(n, a, b)| Term::pi(n, a, b)),
        1 => (binder_name(), sub(depth), sub(depth + 1)).prop_map(|(n, a, b)| Term::sigma(n, a, b)),
        1 => (binder_name(), sub(depth + 1)).prop_map(|(n, b)| Term::lam(n, b)),
        2 => (sub(depth), sub(depth)).prop_map(|(f, a)| Term::app(f, a)),
        1 => (sub(depth), sub(depth)).prop_map(|(a, b)| Term::pair(a, b)),
        1 => sub(depth).prop_map(Term::fst),
        1 => sub(depth).prop_map(Term::snd),
        1 => (sub(depth), sub(depth), sub(depth)).prop_map(|(t, a, b)| Term::id(t, a, b)),
        1 => sub(depth).prop_map(Term::refl),
        1 => (sub(depth), sub(depth), sub(depth), sub(depth), sub(depth))
            .prop_map(|(m, b, x, y, p)| Term::j(m, b, x, y, p)),
    ]
    .boxed()
}

/// Joins tokens with assorted whitespace and comments.
fn respace(source: &str, separators: &[usize]) -> String {
    const SEPARATORS: [&str; 4] = [" ", "\n  ", " -- note\n", "\t"];
    let tokens = tokenize(source).unwrap();
    let mut out = String::new();
    for (i, token) in tokens.iter().enumerate() {
        if i > 0 {
            out.push_str(SEPARATORS[separators[i % separators.len()] % SEPARATORS.len()]);
        }
        out.push_str(&source[token.span.start.offset..token.span.end.offset]);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn print_then_parse_is_identity(t in arb_term(0, 4)) {
        let printed = pretty::print(&t, &Context::new());
        let back = reparse(&printed);
        prop_assert!(back.structural_eq(&t), "{}", printed);
    }

    #[test]
    fn elaborated_terms_are_well_scoped(t in arb_term(0, 4)) {
        let back = reparse(&pretty::print(&t, &Context::new()));
        prop_assert!(back.scope_check(0));
    }

    #[test]
    fn unicode_spelling_is_equivalent(t in arb_term(0, 4)) {
        let source = format!("{}def t : U0 := {} ;", preamble(), pretty::print(&t, &Context::new()));
        let a = load(&source).unwrap();
        let b = load(&to_unicode(&source)).unwrap();
        prop_assert!(modules_agree(&a, &b));
    }

    #[test]
    fn layout_is_irrelevant(t in arb_term(0, 4), seps in prop::collection::vec(0usize..4, 1..8)) {
        let source = format!("{}def t : U0 := {} ;", preamble(), pretty::print(&t, &Context::new()));
        let a = load(&source).unwrap();
        let b = load(&respace(&source, &seps)).unwrap();
        prop_assert!(modules_agree(&a, &b));
    }

    #[test]
    fn unbound_names_are_located(
        t in arb_term(0, 3),
        seps in prop::collection::vec(0usize..4, 1..8),
        name in "zz[a-z0-9']{0,4}",
    ) {
        let printed = pretty::print(&t, &Context::new());
        let source = respace(&format!("{}def t : U0 := ({printed}) {name} ;", preamble()), &seps);
        let errors = elaborate(&parse(&source).unwrap()).unwrap_err();
        prop_assert_eq!(errors.len(), 1);
        let ElabError::UnboundVariable { name: found, span } = &errors[0] else {
            panic!("unexpected {:?}", errors[0]);
        };
        prop_assert_eq!(found, &name);
        prop_assert!(span.start.offset <= span.end.offset && span.end.offset <= source.len());
        prop_assert_eq!(&source[span.start.offset..span.end.offset], name.as_str());
        let line = source.lines().nth(span.start.line as usize - 1).unwrap();
        let col = line.char_indices().nth(span.start.col as usize - 1).map(|(i, _)| i).unwrap();
        prop_assert!(line[col..].starts_with(name.as_str()));
    }

    #[test]
    fn every_node_has_an_ordered_span(t in arb_term(0, 4)) {
        let source = format!("def t : U0 := {} ;", pretty::print(&t, &Context::new()));
        let module = parse(&source).unwrap();
        fn walk(t: &mltt::surface::SurfaceTerm, len: usize) -> bool {
            use mltt::surface::SurfaceKind as K;
            let ok = t.span.start.offset <= t.span.end.offset
                && t.span.end.offset <= len
                && t.span.start.line >= 1
                && t.span.start.col >= 1
                && (t.span.start.line, t.span.start.col) <= (t.span.end.line, t.span.end.col);
            ok && match &t.kind {
                K::Var(_) | K::Universe(_) => true,
                K::Pi(_, a, b) | K::Sigma(_, a, b) => walk(a, len) && walk(b, len),
                K::Fun(_, b) => walk(b, len),
                K::Arrow(a, b) | K::Product(a, b) | K::App(a, b) | K::Pair(a, b) => walk(a, len) && walk(b, len),
                K::Prim(_, args) => args.iter().all(|a| walk(a, len)),
            }
        }
        let mltt::surface::SurfaceDeclKind::Def { body, .. } = &module.decls[0].kind else { unreachable!() };
        prop_assert!(walk(body, source.len()));
    }
}
