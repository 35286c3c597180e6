//! Command-line driver.
//!
//! Exit codes: 0 on success, 1 when checking or an assertion fails, 2 on
//! usage, I/O, lexical or syntax errors. Diagnostics go to standard error as
//! `FILE:LINE:COL: error: CATEGORY: message`.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::check::{check_module, CheckError, Report};
use crate::corpus;
use crate::nbe::normalize;
use crate::pretty;
use crate::surface::{elaborate, parse_source, SourceError, Span};
use crate::syntax::{Context, Module, Signature};

#[derive(Debug, Parser)]
#[command(name = "mltt", about = "Check Martin-Löf type theory developments")]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
    /// List every checked definition and the time taken.
    #[arg(short, long, global = true)]
    pub verbose: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check files, concatenated in the order given.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Check files, then print the normal form of one definition.
    Norm {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long = "def", value_name = "NAME")]
        def_name: String,
    },
    /// Write the bundled corpus to a directory, or verify the copy in
    /// `corpus/`, and check it.
    Corpus {
        #[arg(long = "out", value_name = "DIR")]
        out_dir: Option<PathBuf>,
    },
}

/// One line of output on standard error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub file: String,
    pub line: u32,
    pub col: u32,
    pub category: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}: error: {}: {}",
            self.file, self.line, self.col, self.category, self.message
        )
    }
}

struct Failure {
    code: i32,
    diagnostics: Vec<Diagnostic>,
}

impl Failure {
    fn usage(file: &str, category: &str, message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            diagnostics: vec![Diagnostic {
                file: file.to_owned(),
                line: 1,
                col: 1,
                category: category.to_owned(),
                message: message.into(),
            }],
        }
    }
}

/// Source files loaded as one concatenated module.
struct Loaded {
    files: Vec<String>,
    module: Module,
}

impl Loaded {
    fn diagnostic(&self, span: Option<Span>, category: &str, message: &str) -> Diagnostic {
        let (file, line, col) = match span {
            Some(span) => (
                self.files
                    .get(span.source as usize)
                    .cloned()
                    .unwrap_or_default(),
                span.start.line,
                span.start.col,
            ),
            None => (self.files.first().cloned().unwrap_or_default(), 1, 1),
        };
        Diagnostic {
            file,
            line,
            col,
            category: category.to_owned(),
            message: message.to_owned(),
        }
    }

    fn check_error(&self, error: &CheckError) -> Diagnostic {
        self.diagnostic(error.span, error.category(), &error.message)
    }
}

fn load_sources(sources: &[(String, String)]) -> Result<Loaded, Failure> {
    let files: Vec<String> = sources.iter().map(|(name, _)| name.clone()).collect();
    let mut surface = crate::surface::SurfaceModule::default();
    for (id, (name, text)) in sources.iter().enumerate() {
        let parsed = parse_source(text, id as u32).map_err(|error| {
            let (category, span) = match &error {
                SourceError::Lex(e) => ("LexError", e.span),
                SourceError::Parse(e) => ("ParseError", e.span),
                SourceError::Elab(_) => unreachable!("parsing does not elaborate"),
            };
            Failure {
                code: 2,
                diagnostics: vec![Diagnostic {
                    file: name.clone(),
                    line: span.start.line,
                    col: span.start.col,
                    category: category.to_owned(),
                    message: error.to_string(),
                }],
            }
        })?;
        surface = surface.concat(parsed);
    }
    let loaded = Loaded {
        files,
        module: Module::default(),
    };
    match elaborate(&surface) {
        Ok(module) => Ok(Loaded { module, ..loaded }),
        Err(errors) => Err(Failure {
            code: 1,
            diagnostics: errors
                .iter()
                .map(|e| loaded.diagnostic(Some(e.span()), e.category(), &e.to_string()))
                .collect(),
        }),
    }
}

fn read_files(paths: &[PathBuf]) -> Result<Vec<(String, String)>, Failure> {
    paths
        .iter()
        .map(|path| {
            let name = path.display().to_string();
            fs::read_to_string(path)
                .map(|text| (name.clone(), text))
                .map_err(|e| Failure::usage(&name, "IoError", e.to_string()))
        })
        .collect()
}

/// Loads and checks `sources`, writing diagnostics and, unless `quiet`, the
/// summary line.
fn check_sources(
    sources: &[(String, String)],
    verbose: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(Loaded, Signature, Report), i32> {
    let loaded = match load_sources(sources) {
        Ok(loaded) => loaded,
        Err(failure) => {
            for d in &failure.diagnostics {
                let _ = writeln!(err, "{d}");
            }
            if failure.code == 1 {
                let _ = writeln!(
                    out,
                    "checked 0 definitions, {} errors",
                    failure.diagnostics.len()
                );
            }
            return Err(failure.code);
        }
    };
    let (sig, report) = check_module(&Signature::new(), &loaded.module);
    for error in &report.errors {
        let _ = writeln!(err, "{}", loaded.check_error(error));
    }
    if verbose {
        for name in &report.checked_names {
            let _ = writeln!(out, "ok {name}");
        }
        for name in &report.skipped {
            let _ = writeln!(out, "skipped {name}");
        }
        let _ = writeln!(out, "time {:.3}s", report.elapsed.as_secs_f64());
    }
    Ok((loaded, sig, report))
}

fn cmd_check(files: &[PathBuf], verbose: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let sources = match read_files(files) {
        Ok(sources) => sources,
        Err(failure) => return report_failure(failure, err),
    };
    match check_sources(&sources, verbose, out, err) {
        Ok((_, _, report)) => {
            let _ = writeln!(out, "{report}");
            if report.is_success() {
                0
            } else {
                1
            }
        }
        Err(code) => code,
    }
}

fn cmd_norm(
    files: &[PathBuf],
    def_name: &str,
    verbose: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let sources = match read_files(files) {
        Ok(sources) => sources,
        Err(failure) => return report_failure(failure, err),
    };
    let (loaded, sig, report) = match check_sources(&sources, verbose, &mut std::io::sink(), err) {
        Ok(result) => result,
        Err(code) => return code,
    };
    let entry = match sig.get(def_name) {
        Some(entry) => entry,
        None if loaded.module.find(def_name).is_some() => {
            let _ = writeln!(err, "{report}");
            return 1;
        }
        None => {
            let file = loaded.files.first().cloned().unwrap_or_default();
            return report_failure(
                Failure::usage(
                    &file,
                    "UsageError",
                    format!("no definition named `{def_name}`"),
                ),
                err,
            );
        }
    };
    let Some(body) = &entry.body else {
        let file = loaded.files.first().cloned().unwrap_or_default();
        return report_failure(
            Failure::usage(
                &file,
                "UsageError",
                format!("`{def_name}` is a postulate and has no body"),
            ),
            err,
        );
    };
    let ctx = Context::new();
    let normal = normalize(&sig, &ctx, body, &entry.ty);
    let _ = writeln!(out, "{}", pretty::print(&normal, &ctx));
    if report.is_success() {
        0
    } else {
        1
    }
}

/// The file combinations the corpus is checked in.
pub const CORPUS_CHECKS: [&[&str]; 4] = [
    &["univalence.mltt"],
    &["univalence.mltt", "axiom-univalence.mltt"],
    &["extras.mltt"],
    &["extras.mltt", "axiom-k.mltt"],
];

fn cmd_corpus(
    out_dir: Option<&Path>,
    verbose: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let dir = match out_dir {
        Some(dir) => {
            let written = fs::create_dir_all(dir).and_then(|()| {
                corpus::FILES
                    .iter()
                    .try_for_each(|(name, text)| fs::write(dir.join(name), text))
            });
            if let Err(e) = written {
                return report_failure(
                    Failure::usage(&dir.display().to_string(), "IoError", e.to_string()),
                    err,
                );
            }
            dir.to_path_buf()
        }
        None => PathBuf::from("corpus"),
    };
    let mut code = 0;
    for (name, text) in corpus::FILES {
        let path = dir.join(name);
        let shown = path.display().to_string();
        match fs::read_to_string(&path) {
            Ok(on_disk) if on_disk == text => {}
            Ok(_) => {
                let d = Diagnostic {
                    file: shown,
                    line: 1,
                    col: 1,
                    category: "CorpusMismatch".into(),
                    message: "differs from the bundled copy".into(),
                };
                let _ = writeln!(err, "{d}");
                code = code.max(1);
            }
            Err(e) => return report_failure(Failure::usage(&shown, "IoError", e.to_string()), err),
        }
    }
    for combination in CORPUS_CHECKS {
        let sources: Vec<(String, String)> = combination
            .iter()
            .map(|name| {
                let text = corpus::FILES.iter().find(|(n, _)| n == name).unwrap().1;
                (dir.join(name).display().to_string(), text.to_owned())
            })
            .collect();
        match check_sources(&sources, verbose, out, err) {
            Ok((_, _, report)) => {
                let _ = writeln!(out, "{}: {report}", combination.join(" + "));
                if !report.is_success() {
                    code = code.max(1);
                }
            }
            Err(c) => code = code.max(c),
        }
    }
    if let Err(message) = builders_agree() {
        let _ = writeln!(
            err,
            "{}",
            Diagnostic {
                file: dir.join("univalence.mltt").display().to_string(),
                line: 1,
                col: 1,
                category: "CorpusMismatch".into(),
                message,
            }
        );
        code = code.max(1);
    }
    code
}

/// Compares the bundled sources against the programmatic builders, one
/// definition at a time.
pub fn builders_agree() -> Result<(), String> {
    let (axiom_univalence, axiom_k) = corpus::corpus_axioms();
    let pairs = [
        (
            corpus::UNIVALENCE_SOURCE,
            corpus::corpus_core().concat(corpus::core_asserts()),
            None,
        ),
        (corpus::EXTRAS_SOURCE, corpus::corpus_extras(), None),
        (
            corpus::AXIOM_UNIVALENCE_SOURCE,
            axiom_univalence,
            Some(corpus::UNIVALENCE_SOURCE),
        ),
        (corpus::AXIOM_K_SOURCE, axiom_k, Some(corpus::EXTRAS_SOURCE)),
    ];
    for (source, built, prefix) in pairs {
        let text = match prefix {
            Some(prefix) => format!("{prefix}\n{source}"),
            None => source.to_owned(),
        };
        let parsed = crate::surface::load(&text).map_err(|e| e.to_string())?;
        let skip = match prefix {
            Some(prefix) => crate::surface::load(prefix)
                .map_err(|e| e.to_string())?
                .decls
                .len(),
            None => 0,
        };
        let parsed = &parsed.decls[skip..];
        if parsed.len() != built.decls.len() {
            return Err(format!(
                "{} declarations in the source, {} built",
                parsed.len(),
                built.decls.len()
            ));
        }
        for (a, b) in parsed.iter().zip(&built.decls) {
            let label = a.name().map_or("assert".to_owned(), |n| n.to_string());
            if a.name() != b.name() {
                return Err(format!(
                    "`{label}` appears where `{:?}` was built",
                    b.name()
                ));
            }
            let same_body = match (&a.kind, &b.kind) {
                (
                    crate::syntax::DeclKind::Assert {
                        lhs: l1, rhs: r1, ..
                    },
                    crate::syntax::DeclKind::Assert {
                        lhs: l2, rhs: r2, ..
                    },
                ) => l1.structural_eq(l2) && r1.structural_eq(r2),
                _ => match (a.body(), b.body()) {
                    (Some(x), Some(y)) => x.structural_eq(y),
                    (None, None) => true,
                    _ => false,
                },
            };
            if !a.ty().structural_eq(b.ty()) || !same_body {
                return Err(format!(
                    "`{label}` differs from its programmatic construction"
                ));
            }
        }
    }
    Ok(())
}

fn report_failure(failure: Failure, err: &mut dyn Write) -> i32 {
    for d in &failure.diagnostics {
        let _ = writeln!(err, "{d}");
    }
    failure.code
}

/// Runs the command line `args` (without the program name).
pub fn run_with<S: AsRef<str>>(args: &[S], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let argv = std::iter::once("mltt").chain(args.iter().map(|a| a.as_ref()));
    let config = match CliConfig::try_parse_from(argv) {
        Ok(config) => config,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let rendered = e.to_string();
            let first = rendered
                .lines()
                .next()
                .unwrap_or("")
                .trim_start_matches("error: ");
            let _ = writeln!(err, "<command line>:1:1: error: UsageError: {first}");
            let _ = write!(
                err,
                "{}",
                rendered.split_once('\n').map_or("", |(_, rest)| rest)
            );
            return 2;
        }
    };
    match &config.command {
        Command::Check { files } => cmd_check(files, config.verbose, out, err),
        Command::Norm { files, def_name } => cmd_norm(files, def_name, config.verbose, out, err),
        Command::Corpus { out_dir } => cmd_corpus(out_dir.as_deref(), config.verbose, out, err),
    }
}

/// Runs against the process's standard streams.
pub fn run<S: AsRef<str>>(args: &[S]) -> i32 {
    run_with(
        args,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}
