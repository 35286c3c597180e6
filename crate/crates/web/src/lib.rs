//! Browser bindings: check a development, print the normal form of one of
//! its definitions, and fetch the bundled corpus files. `www/index.html` is
//! the page that drives them.

use mltt::surface::{elaborate, parse, SourceError, Span};
use mltt::{check_module, normalize, pretty, Context, Report, Signature};
use wasm_bindgen::prelude::*;

/// What checking one source text produced.
pub struct Outcome {
    pub signature: Signature,
    pub report: Option<Report>,
    pub diagnostics: Vec<String>,
}

fn locate(span: Span, category: &str, message: &str) -> String {
    format!(
        "{}:{}: error: {category}: {message}",
        span.start.line, span.start.col
    )
}

pub fn check_text(source: &str) -> Outcome {
    let failed = |diagnostics| Outcome {
        signature: Signature::new(),
        report: None,
        diagnostics,
    };
    let surface = match parse(source) {
        Ok(surface) => surface,
        Err(SourceError::Lex(e)) => {
            return failed(vec![locate(e.span, "LexError", &e.to_string())])
        }
        Err(SourceError::Parse(e)) => {
            return failed(vec![locate(e.span, "ParseError", &e.to_string())])
        }
        Err(SourceError::Elab(_)) => unreachable!("parsing does not elaborate"),
    };
    let module = match elaborate(&surface) {
        Ok(module) => module,
        Err(errors) => {
            return failed(
                errors
                    .iter()
                    .map(|e| locate(e.span(), e.category(), &e.to_string()))
                    .collect(),
            )
        }
    };
    let (signature, report) = check_module(&Signature::new(), &module);
    let diagnostics = report
        .errors
        .iter()
        .map(|e| match e.span {
            Some(span) => locate(span, e.category(), &e.message),
            None => format!("error: {e}"),
        })
        .collect();
    Outcome {
        signature,
        report: Some(report),
        diagnostics,
    }
}

/// The summary line, then one diagnostic per line.
#[wasm_bindgen]
pub fn check(source: &str) -> String {
    let outcome = check_text(source);
    let summary = match &outcome.report {
        Some(report) => report.to_string(),
        None => format!(
            "checked 0 definitions, {} errors",
            outcome.diagnostics.len()
        ),
    };
    std::iter::once(summary)
        .chain(outcome.diagnostics)
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn normal_form(source: &str, name: &str) -> Result<String, String> {
    let outcome = check_text(source);
    let entry = match outcome.signature.get(name) {
        Some(entry) => entry,
        None if outcome.diagnostics.is_empty() => {
            return Err(format!("no definition named `{name}`"))
        }
        None => return Err(outcome.diagnostics.join("\n")),
    };
    let body = entry
        .body
        .as_ref()
        .ok_or_else(|| format!("`{name}` is a postulate and has no body"))?;
    let ctx = Context::new();
    Ok(pretty::print(
        &normalize(&outcome.signature, &ctx, body, &entry.ty),
        &ctx,
    ))
}

/// The normal form of `name`, or the reason there is none.
#[wasm_bindgen]
pub fn norm(source: &str, name: &str) -> String {
    normal_form(source, name).unwrap_or_else(|e| e)
}

/// The contents of a bundled corpus file, or the empty string.
#[wasm_bindgen]
pub fn corpus_file(name: &str) -> String {
    let (_, text) = mltt::corpus::FILES
        .iter()
        .find(|(n, _)| *n == name)
        .copied()
        .unwrap_or(("", ""));
    text.to_owned()
}
