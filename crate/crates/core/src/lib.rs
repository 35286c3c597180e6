//! A minimal Martin-Löf type theory: `Pi`, `Sigma`, identity types with `J`,
//! and two universes `U0 : U1`, together with a bundled development of the
//! univalence type.
//!
//! The pipeline is [`surface`] (text to core terms), [`check`] (bidirectional
//! type checking) and [`nbe`] (evaluation, normal forms and definitional
//! equality).

pub mod check;
pub mod cli;
pub mod corpus;
pub mod nbe;
pub mod pretty;
pub mod surface;
pub mod syntax;
pub mod value;

pub use check::{
    check, check_decl, check_module, check_type, infer, CheckError, ErrorKind, Report,
};
pub use nbe::{convertible, eval, normalize, normalize_type};
pub use pretty::print;
pub use syntax::{
    Context, DeclKind, Declaration, Level, Module, Name, Signature, SignatureEntry, Term,
};
