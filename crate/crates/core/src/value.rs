//! Semantic domain: values in weak head normal form.

use std::sync::Arc;

use crate::syntax::{Level, Name, Term};

pub type Val = Arc<Value>;

#[derive(Clone, Debug)]
pub enum Value {
    Universe(Level),
    Pi(Name, Val, Closure),
    Sigma(Name, Val, Closure),
    Lam(Name, Closure),
    Pair(Val, Val),
    Id(Val, Val, Val),
    Refl(Val),
    /// A stuck computation: a variable or postulate under eliminators.
    Neutral(Head, Vec<Elim>),
}

impl Value {
    /// The free variable bound at de Bruijn level `level`.
    pub fn var(level: usize) -> Val {
        Arc::new(Value::Neutral(Head::Var(level), Vec::new()))
    }

    pub fn universe(level: Level) -> Val {
        Arc::new(Value::Universe(level))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Head {
    /// Free variable, counted from the outermost binder.
    Var(usize),
    /// Postulated constant; never unfolds.
    Const(Name),
}

#[derive(Clone, Debug)]
pub enum Elim {
    App(Val),
    Fst,
    Snd,
    /// `J` blocked on the neutral it is applied to, which is its path.
    J {
        motive: Val,
        base: Val,
        lhs: Val,
        rhs: Val,
    },
}

/// Values for the free variables of a term, indexed by de Bruijn level.
#[derive(Clone, Debug, Default)]
pub struct Env {
    values: Vec<Val>,
}

impl Env {
    pub fn new() -> Env {
        Env::default()
    }

    /// The identity environment for `depth` free variables.
    pub fn vars(depth: usize) -> Env {
        Env {
            values: (0..depth).map(Value::var).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn push(&mut self, value: Val) {
        self.values.push(value);
    }

    pub fn extend(&self, value: Val) -> Env {
        let mut env = self.clone();
        env.push(value);
        env
    }

    /// Looks up a de Bruijn index.
    pub fn lookup(&self, index: usize) -> Option<&Val> {
        self.values
            .len()
            .checked_sub(index + 1)
            .map(|i| &self.values[i])
    }
}

/// A term under one binder together with the environment it was built in.
#[derive(Clone, Debug)]
pub struct Closure {
    pub env: Env,
    pub body: Arc<Term>,
}
