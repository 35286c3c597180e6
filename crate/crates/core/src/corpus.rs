//! The bundled corpus: the univalence type and its prerequisites, a few
//! extra definitions, and the two mutually inconsistent axioms.
//!
//! Every definition is built here directly in de Bruijn form and also ships
//! as surface source under `corpus/`. The two are kept in agreement by the
//! test suite.

use crate::syntax::{Declaration, Level, Module, Term};

pub const UNIVALENCE_SOURCE: &str = include_str!("../../../corpus/univalence.mltt");
pub const EXTRAS_SOURCE: &str = include_str!("../../../corpus/extras.mltt");
pub const AXIOM_UNIVALENCE_SOURCE: &str = include_str!("../../../corpus/axiom-univalence.mltt");
pub const AXIOM_K_SOURCE: &str = include_str!("../../../corpus/axiom-k.mltt");

/// File name and contents of every bundled source file.
pub const FILES: [(&str, &str); 4] = [
    ("univalence.mltt", UNIVALENCE_SOURCE),
    ("extras.mltt", EXTRAS_SOURCE),
    ("axiom-univalence.mltt", AXIOM_UNIVALENCE_SOURCE),
    ("axiom-k.mltt", AXIOM_K_SOURCE),
];

/// The construction steps, in dependency order.
pub const CORE_NAMES: [&str; 12] = [
    "isSingleton",
    "fiber",
    "isEquiv",
    "Eq",
    "singletonType",
    "eta",
    "phi",
    "g",
    "h",
    "idIsEquiv",
    "IdToEq",
    "isUnivalent",
];

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub declared_type: Term,
    /// Absent for postulates.
    pub body: Option<Term>,
    /// What the entry is about.
    pub topic: &'static str,
}

impl CorpusEntry {
    fn def(
        name: &'static str,
        topic: &'static str,
        declared_type: Term,
        body: Term,
    ) -> CorpusEntry {
        CorpusEntry {
            name,
            declared_type,
            body: Some(body),
            topic,
        }
    }

    fn postulate(name: &'static str, topic: &'static str, declared_type: Term) -> CorpusEntry {
        CorpusEntry {
            name,
            declared_type,
            body: None,
            topic,
        }
    }

    pub fn to_decl(&self) -> Declaration {
        match &self.body {
            Some(body) => Declaration::def(self.name, self.declared_type.clone(), body.clone()),
            None => Declaration::postulate(self.name, self.declared_type.clone()),
        }
    }
}

fn module(entries: &[CorpusEntry]) -> Module {
    Module::new(entries.iter().map(CorpusEntry::to_decl).collect())
}

fn v(index: usize) -> Term {
    Term::var(index)
}

fn c(name: &str) -> Term {
    Term::constant(name)
}

fn u0() -> Term {
    Term::universe(Level::U0)
}

fn u1() -> Term {
    Term::universe(Level::U1)
}

fn call<const N: usize>(name: &str, args: [Term; N]) -> Term {
    Term::apps(c(name), args)
}

/// The twelve definitions leading to the univalence type.
pub fn core_entries() -> Vec<CorpusEntry> {
    let topic = "univalence type";
    vec![
        // fun X => Sig (c : X), Pi (x : X), Id X c x
        CorpusEntry::def(
            "isSingleton",
            topic,
            Term::arrow(u1(), u1()),
            Term::lam(
                "X",
                Term::sigma("c", v(0), Term::pi("x", v(1), Term::id(v(2), v(1), v(0)))),
            ),
        ),
        // fun X Y f y => Sig (x : X), Id Y (f x) y
        CorpusEntry::def(
            "fiber",
            topic,
            Term::pi(
                "X",
                u1(),
                Term::pi(
                    "Y",
                    u1(),
                    Term::arrow(Term::arrow(v(1), v(0)), Term::arrow(v(0), u1())),
                ),
            ),
            Term::lam(
                "X",
                Term::lam(
                    "Y",
                    Term::lam(
                        "f",
                        Term::lam(
                            "y",
                            Term::sigma("x", v(3), Term::id(v(3), Term::app(v(2), v(0)), v(1))),
                        ),
                    ),
                ),
            ),
        ),
        // fun X Y f => Pi (y : Y), isSingleton (fiber X Y f y)
        CorpusEntry::def(
            "isEquiv",
            topic,
            Term::pi(
                "X",
                u1(),
                Term::pi("Y", u1(), Term::arrow(Term::arrow(v(1), v(0)), u1())),
            ),
            Term::lam(
                "X",
                Term::lam(
                    "Y",
                    Term::lam(
                        "f",
                        Term::pi(
                            "y",
                            v(1),
                            call("isSingleton", [call("fiber", [v(3), v(2), v(1), v(0)])]),
                        ),
                    ),
                ),
            ),
        ),
        // fun X Y => Sig (f : X -> Y), isEquiv X Y f
        CorpusEntry::def(
            "Eq",
            topic,
            Term::arrow(u1(), Term::arrow(u1(), u1())),
            Term::lam(
                "X",
                Term::lam(
                    "Y",
                    Term::sigma(
                        "f",
                        Term::arrow(v(1), v(0)),
                        call("isEquiv", [v(2), v(1), v(0)]),
                    ),
                ),
            ),
        ),
        // fun X x => Sig (y : X), Id X y x
        CorpusEntry::def(
            "singletonType",
            topic,
            Term::pi("X", u0(), Term::arrow(v(0), u0())),
            Term::lam(
                "X",
                Term::lam("x", Term::sigma("y", v(1), Term::id(v(2), v(0), v(1)))),
            ),
        ),
        // fun X x => (x , refl x)
        CorpusEntry::def(
            "eta",
            topic,
            Term::pi(
                "X",
                u0(),
                Term::pi("x", v(0), call("singletonType", [v(1), v(0)])),
            ),
            Term::lam("X", Term::lam("x", Term::pair(v(0), Term::refl(v(0))))),
        ),
        // fun X y x p => J (fun y x p => Id (singletonType X x) (eta X x) (y , p))
        //                  (fun x => refl (eta X x)) y x p
        CorpusEntry::def(
            "phi",
            topic,
            Term::pi(
                "X",
                u0(),
                Term::pi(
                    "y",
                    v(0),
                    Term::pi(
                        "x",
                        v(1),
                        Term::pi(
                            "p",
                            Term::id(v(2), v(1), v(0)),
                            Term::id(
                                call("singletonType", [v(3), v(1)]),
                                call("eta", [v(3), v(1)]),
                                Term::pair(v(2), v(0)),
                            ),
                        ),
                    ),
                ),
            ),
            Term::lam(
                "X",
                Term::lam(
                    "y",
                    Term::lam(
                        "x",
                        Term::lam(
                            "p",
                            Term::j(
                                Term::lam(
                                    "y",
                                    Term::lam(
                                        "x",
                                        Term::lam(
                                            "p",
                                            Term::id(
                                                call("singletonType", [v(6), v(1)]),
                                                call("eta", [v(6), v(1)]),
                                                Term::pair(v(2), v(0)),
                                            ),
                                        ),
                                    ),
                                ),
                                Term::lam("x", Term::refl(call("eta", [v(4), v(0)]))),
                                v(2),
                                v(1),
                                v(0),
                            ),
                        ),
                    ),
                ),
            ),
        ),
        // fun X x s => phi X (fst s) x (snd s)
        CorpusEntry::def(
            "g",
            topic,
            Term::pi(
                "X",
                u0(),
                Term::pi(
                    "x",
                    v(0),
                    Term::pi(
                        "s",
                        call("singletonType", [v(1), v(0)]),
                        Term::id(
                            call("singletonType", [v(2), v(1)]),
                            call("eta", [v(2), v(1)]),
                            v(0),
                        ),
                    ),
                ),
            ),
            Term::lam(
                "X",
                Term::lam(
                    "x",
                    Term::lam(
                        "s",
                        call("phi", [v(2), Term::fst(v(0)), v(1), Term::snd(v(0))]),
                    ),
                ),
            ),
        ),
        // fun X x => (eta X x , g X x)
        CorpusEntry::def(
            "h",
            topic,
            Term::pi(
                "X",
                u0(),
                Term::pi(
                    "x",
                    v(0),
                    Term::sigma(
                        "c",
                        call("singletonType", [v(1), v(0)]),
                        Term::pi(
                            "s",
                            call("singletonType", [v(2), v(1)]),
                            Term::id(call("singletonType", [v(3), v(2)]), v(1), v(0)),
                        ),
                    ),
                ),
            ),
            Term::lam(
                "X",
                Term::lam(
                    "x",
                    Term::pair(call("eta", [v(1), v(0)]), call("g", [v(1), v(0)])),
                ),
            ),
        ),
        // fun X y => h X y
        CorpusEntry::def(
            "idIsEquiv",
            topic,
            Term::pi(
                "X",
                u0(),
                call("isEquiv", [v(0), v(0), Term::lam("x", v(0))]),
            ),
            Term::lam("X", Term::lam("y", call("h", [v(1), v(0)]))),
        ),
        // fun X Y p => J (fun X Y p => Eq X Y) (fun X => ((fun x => x) , idIsEquiv X)) X Y p
        CorpusEntry::def(
            "IdToEq",
            topic,
            Term::pi(
                "X",
                u0(),
                Term::pi(
                    "Y",
                    u0(),
                    Term::arrow(Term::id(u0(), v(1), v(0)), call("Eq", [v(1), v(0)])),
                ),
            ),
            Term::lam(
                "X",
                Term::lam(
                    "Y",
                    Term::lam(
                        "p",
                        Term::j(
                            Term::lam(
                                "X",
                                Term::lam("Y", Term::lam("p", call("Eq", [v(2), v(1)]))),
                            ),
                            Term::lam(
                                "X",
                                Term::pair(Term::lam("x", v(0)), call("idIsEquiv", [v(0)])),
                            ),
                            v(2),
                            v(1),
                            v(0),
                        ),
                    ),
                ),
            ),
        ),
        // Pi (X Y : U0), isEquiv (Id U0 X Y) (Eq X Y) (IdToEq X Y)
        CorpusEntry::def(
            "isUnivalent",
            topic,
            u1(),
            Term::pi(
                "X",
                u0(),
                Term::pi(
                    "Y",
                    u0(),
                    call(
                        "isEquiv",
                        [
                            Term::id(u0(), v(1), v(0)),
                            call("Eq", [v(1), v(0)]),
                            call("IdToEq", [v(1), v(0)]),
                        ],
                    ),
                ),
            ),
        ),
    ]
}

/// The construction of the univalence type as a module.
pub fn corpus_core() -> Module {
    module(&core_entries())
}

/// The computation-rule assertions shipped alongside the core definitions.
pub fn core_asserts() -> Module {
    // fun X x => phi X x x (refl x)  ==  fun X x => refl (eta X x)
    let phi_on_refl = Declaration::assert(
        Term::lam(
            "X",
            Term::lam("x", call("phi", [v(1), v(0), v(0), Term::refl(v(0))])),
        ),
        Term::lam("X", Term::lam("x", Term::refl(call("eta", [v(1), v(0)])))),
        Term::pi(
            "X",
            u0(),
            Term::pi(
                "x",
                v(0),
                Term::id(
                    call("singletonType", [v(1), v(0)]),
                    call("eta", [v(1), v(0)]),
                    Term::pair(v(0), Term::refl(v(0))),
                ),
            ),
        ),
    );
    // fun X => IdToEq X X (refl X)  ==  fun X => ((fun x => x) , idIsEquiv X)
    let id_to_eq_on_refl = Declaration::assert(
        Term::lam("X", call("IdToEq", [v(0), v(0), Term::refl(v(0))])),
        Term::lam(
            "X",
            Term::pair(Term::lam("x", v(0)), call("idIsEquiv", [v(0)])),
        ),
        Term::pi("X", u0(), call("Eq", [v(0), v(0)])),
    );
    Module::new(vec![phi_on_refl, id_to_eq_on_refl])
}

/// `fun X => Pi (x y : X), Pi (p q : Id X x y), Id (Id X x y) p q`
fn all_paths_equal() -> Term {
    Term::lam(
        "X",
        Term::pi(
            "x",
            v(0),
            Term::pi(
                "y",
                v(1),
                Term::pi(
                    "p",
                    Term::id(v(2), v(1), v(0)),
                    Term::pi(
                        "q",
                        Term::id(v(3), v(2), v(1)),
                        Term::id(Term::id(v(4), v(3), v(2)), v(1), v(0)),
                    ),
                ),
            ),
        ),
    )
}

pub fn extras_entries() -> Vec<CorpusEntry> {
    vec![
        CorpusEntry::def(
            "K",
            "identity types",
            Term::arrow(u0(), u0()),
            all_paths_equal(),
        ),
        CorpusEntry::def(
            "isSet",
            "universes",
            Term::arrow(u0(), u0()),
            all_paths_equal(),
        ),
        // fun X Y f => Sig (g : Y -> X), (Pi (x : X), Id X (g (f x)) x) * (Pi (y : Y), Id Y (f (g y)) y)
        CorpusEntry::def(
            "Iso",
            "isomorphisms",
            Term::pi(
                "X",
                u0(),
                Term::pi("Y", u0(), Term::arrow(Term::arrow(v(1), v(0)), u0())),
            ),
            Term::lam(
                "X",
                Term::lam(
                    "Y",
                    Term::lam(
                        "f",
                        Term::sigma(
                            "g",
                            Term::arrow(v(1), v(2)),
                            Term::product(
                                Term::pi(
                                    "x",
                                    v(3),
                                    Term::id(v(4), Term::app(v(1), Term::app(v(2), v(0))), v(0)),
                                ),
                                Term::pi(
                                    "y",
                                    v(2),
                                    Term::id(v(3), Term::app(v(2), Term::app(v(1), v(0))), v(0)),
                                ),
                            ),
                        ),
                    ),
                ),
            ),
        ),
        // Sig (G : U0), isSet G * Sig (e : G), Sig (m : G * G -> G), Pi (x : G), Id G (m (e , x)) x
        CorpusEntry::def(
            "Grp",
            "universes",
            u1(),
            Term::sigma(
                "G",
                u0(),
                Term::product(
                    call("isSet", [v(0)]),
                    Term::sigma(
                        "e",
                        v(0),
                        Term::sigma(
                            "m",
                            Term::arrow(Term::product(v(1), v(1)), v(1)),
                            Term::pi(
                                "x",
                                v(2),
                                Term::id(v(3), Term::app(v(1), Term::pair(v(2), v(0))), v(0)),
                            ),
                        ),
                    ),
                ),
            ),
        ),
    ]
}

/// `K`, `isSet`, `Iso` and the beginning of `Grp`.
pub fn corpus_extras() -> Module {
    module(&extras_entries())
}

/// The univalence axiom and the K axiom, as two separate modules. The first
/// goes on top of [`corpus_core`], the second on top of [`corpus_extras`].
pub fn corpus_axioms() -> (Module, Module) {
    let univalence =
        CorpusEntry::postulate("univalenceAxiom", "univalence axiom", c("isUnivalent"));
    let k = CorpusEntry::postulate("kAxiom", "K axiom", Term::pi("X", u0(), call("K", [v(0)])));
    (module(&[univalence]), module(&[k]))
}
