//! Acceptance criteria, one line each. Run with
//! `cargo test -p mltt --test acceptance`.

mod common;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use mltt::corpus::{self, CORE_NAMES};
use mltt::surface::load;
use mltt::{check_decl, check_module, DeclKind, Signature};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .unwrap()
}

fn mltt(args: &[&str]) -> (Output, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_mltt"))
        .current_dir(workspace_root())
        .args(args)
        .output()
        .expect("the mltt binary runs");
    (out, start.elapsed())
}

fn expect_exit(args: &[&str], code: i32, summary: &str) -> Result<Duration, String> {
    let (out, elapsed) = mltt(args);
    let stdout = String::from_utf8_lossy(&out.stdout);
    if out.status.code() != Some(code) {
        return Err(format!(
            "`mltt {}` exited with {:?}: {}",
            args.join(" "),
            out.status.code(),
            String::from_utf8_lossy(&out.stderr).trim()
        ));
    }
    if stdout.trim_end() != summary {
        return Err(format!(
            "`mltt {}` printed {:?}",
            args.join(" "),
            stdout.trim_end()
        ));
    }
    Ok(elapsed)
}

fn univalence_checks() -> Outcome {
    let elapsed = expect_exit(
        &["check", "corpus/univalence.mltt"],
        0,
        "checked 12 definitions, 0 errors",
    )?;
    if elapsed >= Duration::from_secs(1) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "12 definitions in {:.0} ms",
        elapsed.as_secs_f64() * 1000.0
    ))
}

fn axioms_layer() -> Outcome {
    expect_exit(
        &[
            "check",
            "corpus/univalence.mltt",
            "corpus/axiom-univalence.mltt",
        ],
        0,
        "checked 13 definitions, 0 errors",
    )?;
    expect_exit(
        &["check", "corpus/extras.mltt", "corpus/axiom-k.mltt"],
        0,
        "checked 5 definitions, 0 errors",
    )?;
    Ok("univalence + axiom-univalence, extras + axiom-k".into())
}

fn j_computes() -> Outcome {
    let module = load(corpus::UNIVALENCE_SOURCE).map_err(|e| e.to_string())?;
    let (sig, report) = check_module(&Signature::new(), &module);
    if !report.is_success() {
        return Err(format!("{:?}", report.errors));
    }
    let asserts: Vec<_> = module
        .decls
        .iter()
        .filter(|d| matches!(d.kind, DeclKind::Assert { .. }))
        .collect();
    if asserts.len() != 2 {
        return Err(format!("{} asserts in univalence.mltt", asserts.len()));
    }
    let mut j_sites = 0;
    for assert in &asserts {
        check_decl(&sig, assert).map_err(|e| e.to_string())?;
        let DeclKind::Assert { lhs, .. } = &assert.kind else {
            unreachable!()
        };
        lhs.for_each_const(&mut |name| {
            if &**name == "phi" || &**name == "IdToEq" {
                j_sites += 1;
            }
        });
    }
    if j_sites != 2 {
        return Err("the asserts do not cover both J sites".into());
    }
    Ok("phi and IdToEq on refl".into())
}

fn negative_suite() -> Outcome {
    let cases = common::negative_cases();
    let mut wrong = Vec::new();
    for (description, source, expected) in &cases {
        let found = common::first_error(source);
        if found.as_deref() != Some(*expected) {
            wrong.push(format!("{description}: expected {expected}, got {found:?}"));
        }
    }
    if cases.len() < 12 {
        return Err(format!("only {} cases", cases.len()));
    }
    if !wrong.is_empty() {
        return Err(wrong.join("; "));
    }
    Ok(format!(
        "{} inputs rejected with the expected category",
        cases.len()
    ))
}

fn property_suites() -> Outcome {
    let start = Instant::now();
    let sig = common::corpus_signature();
    let samples = common::corpus_samples(&sig);
    let pis = common::pi_samples(&samples, 100);
    let sigmas = common::sigma_samples(&samples, 100);
    type Property = fn(&Signature, &common::Sample) -> Result<(), common::Violation>;
    let suites: [(&str, &[common::Sample], Property); 7] = [
        ("idempotence", &samples, common::idempotence),
        ("reflexivity", &samples, common::reflexivity),
        ("transitivity", &samples, common::transitivity),
        ("eta for functions", &pis, common::eta_pi),
        ("eta for pairs", &sigmas, common::eta_sigma),
        ("subject reduction", &samples, common::subject_reduction),
        ("infer/check coherence", &samples, common::coherence),
    ];
    let mut instances = 0;
    for (name, set, property) in suites {
        if set.len() < 100 {
            return Err(format!("{name}: only {} instances", set.len()));
        }
        if let Some(v) = set.iter().find_map(|s| property(&sig, s).err()) {
            return Err(format!("{name} fails on {}", v.term));
        }
        instances += set.len();
    }
    // Symmetry over every pair of samples sharing a scope and a type.
    let mut pairs = 0;
    for (i, a) in samples.iter().enumerate() {
        for b in samples[i..]
            .iter()
            .filter(|b| common::same_scope(a, b) && b.ty.structural_eq(&a.ty))
        {
            if common::symmetry(&sig, a, &b.term).is_err() {
                return Err(format!("symmetry fails at sample {i}"));
            }
            pairs += 1;
        }
    }
    if pairs < 100 {
        return Err(format!("symmetry: only {pairs} pairs"));
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(10) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "{} samples, {instances} instances and {pairs} symmetry pairs in {:.2} s",
        samples.len(),
        elapsed.as_secs_f64()
    ))
}

/// Type-checks the Agda transcription of the corpus.
fn oracle() -> Outcome {
    let oracle_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/oracle");
    let source =
        fs::read_to_string(oracle_dir.join("Univalence.agda")).map_err(|e| e.to_string())?;
    for name in CORE_NAMES {
        if !source.lines().any(|l| l.starts_with(&format!("{name} :"))) {
            return Err(format!("{name} is missing from the transcription"));
        }
    }
    let work = tempfile::tempdir().map_err(|e| e.to_string())?;
    fs::write(work.path().join("Univalence.agda"), &source).map_err(|e| e.to_string())?;
    let data_dir = oracle_dir.join("data");

    // The Python distribution of Agda overrides Agda_datadir and ships
    // without its primitive modules, so it is driven directly.
    let python = Command::new("python3")
        .current_dir(work.path())
        .env("Agda_datadir", &data_dir)
        .args([
            "-c",
            "import os, sys, agda; os.environ['Agda_datadir'] = sys.argv[1]; \
             sys.exit(agda.main(['agda', '--no-libraries', 'Univalence.agda']))",
        ])
        .arg(&data_dir)
        .output();
    let (runner, out) = match python {
        Ok(out) if !String::from_utf8_lossy(&out.stderr).contains("ModuleNotFoundError") => {
            ("agda (Python package)", out)
        }
        _ => match Command::new("agda")
            .current_dir(work.path())
            .args(["--no-libraries", "Univalence.agda"])
            .output()
        {
            Ok(out) => ("agda", out),
            Err(_) => return Err(
                "Agda is not installed; install it with `pip install agda` or `cabal install Agda`"
                    .into(),
            ),
        },
    };
    if out.status.success() {
        Ok(format!(
            "{runner} accepts all 12 definitions, both computation rules and the extras"
        ))
    } else {
        Err(format!(
            "{runner} rejected the transcription: {}{}",
            String::from_utf8_lossy(&out.stdout).trim(),
            String::from_utf8_lossy(&out.stderr).trim()
        ))
    }
}

fn extras_check() -> Outcome {
    expect_exit(
        &["check", "corpus/extras.mltt"],
        0,
        "checked 4 definitions, 0 errors",
    )?;
    let (_, report) = check_module(&Signature::new(), &corpus::corpus_extras());
    let names: Vec<&str> = report.checked_names.iter().map(|n| &**n).collect();
    if names != ["K", "isSet", "Iso", "Grp"] || !report.is_success() {
        return Err(format!("{names:?}, {:?}", report.errors));
    }
    Ok("K, isSet, Iso, Grp".into())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("univalence corpus checks", univalence_checks),
        ("axiom layering", axioms_layer),
        ("J computation rule", j_computes),
        ("negative suite", negative_suite),
        ("kernel property suites", property_suites),
        ("oracle equivalence", oracle),
        ("extras corpus", extras_check),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({detail})", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
