use std::collections::BTreeMap;
use std::path::PathBuf;

use gcrf::commands::{Level, Output};
use gcrf::fuzz::{quasi_classical_corpus, Family};
use gcrf::instance_file::{format_instance, parse_instance, InputError, LoadedInstance};
use gcrf::library::{builtin_names, builtin_text};
use gcrf::run_args;
use gcrf_core::structures::check_quasi_classical;
use proptest::prelude::*;

fn gcrf(args: &[&str]) -> Output {
    run_args(std::iter::once("gcrf").chain(args.iter().copied()))
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, text).expect("scratch files are writable");
    p
}

#[test]
fn submanifold_example_exit_codes() {
    let src = "builtin:heisenberg-distribution-r5";
    assert_eq!(gcrf(&["check", src, "--level", "submanifold"]).code, 0);
    let missing = gcrf(&["check", src, "--level", "integrable"]);
    assert_eq!(missing.code, 2);
    assert!(missing.stdout.contains("verdict: error"), "{}", missing.stdout);
}

#[test]
fn perturbed_pair_fails_with_concomitant_witness() {
    let out = gcrf(&["--json", "check", "builtin:perturbed-holomorphic-r6", "-l", "integrable"]);
    assert_eq!(out.code, 1);
    let doc: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let cond = doc["conditions"].as_array().unwrap().iter().find(|c| c["id"] == "integrable:concomitant").unwrap();
    assert_eq!(cond["verdict"], "fail");
    assert!(!cond["witnesses"].as_array().unwrap().is_empty());
}

/// Over every built-in and level: the exit code is 2 exactly when the level
/// does not apply, otherwise 0 exactly when every deciding condition passes;
/// text and JSON agree, and recorded expectations hold.
#[test]
fn exit_code_contract_over_the_library() {
    for name in builtin_names() {
        let src = format!("builtin:{name}");
        let m = gcrf::commands::load(&src, None).unwrap();
        for level in Level::ALL {
            let text = gcrf(&["check", &src, "-l", level.as_str()]);
            let json = gcrf(&["--json", "check", &src, "-l", level.as_str()]);
            assert_eq!(text.code, json.code, "{name} {}", level.as_str());
            let doc: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
            let conds = doc["conditions"].as_array().unwrap();
            let all_pass = conds.iter().all(|c| c["verdict"] == "pass");
            let expected = if doc["error"].is_string() {
                2
            } else if all_pass {
                0
            } else {
                1
            };
            assert_eq!(json.code, expected, "{name} {}", level.as_str());
            if !level.applicable(&m.instance) {
                assert_eq!(json.code, 2, "{name} {} lacks data", level.as_str());
            }
            if json.code == 1 {
                let failing = conds.iter().filter(|c| c["verdict"] == "fail");
                assert!(failing.clone().count() > 0);
                assert!(failing.clone().all(|c| c["failures"].as_u64().unwrap() > 0), "{name} {}", level.as_str());
            }
            if let Some(v) = m.expect.get(level.as_str()) {
                assert_eq!(json.code, if v.is_pass() { 0 } else { 1 }, "{name} {} expectation", level.as_str());
            }
        }
    }
}

#[test]
fn unknown_level_and_bad_arguments_are_usage_errors() {
    assert_eq!(gcrf(&["check", "builtin:complex-r2", "-l", "holonomy"]).code, 2);
    assert_eq!(gcrf(&["check"]).code, 2);
    assert_eq!(gcrf(&["frobnicate"]).code, 2);
    assert_eq!(gcrf(&["check", "builtin:nonexistent", "-l", "f"]).code, 2);
    assert_eq!(gcrf(&["check", "/nonexistent/instance.json", "-l", "f"]).code, 2);
    assert_eq!(gcrf(&["--help"]).code, 0);
}

#[test]
fn eval_examples() {
    let src = "builtin:heisenberg-distribution-r5";
    assert_eq!(gcrf(&["eval", src, "lie(X1, X2)"]).stdout, "-2*d/dx3\n");
    assert_eq!(gcrf(&["eval", src, "courant((0,a),(0,b))"]).stdout, "(0, 0)\n");
    assert_eq!(gcrf(&["eval", "builtin:so3-r3", "schouten(pi, pi)"]).stdout, "0\n");
    assert_eq!(gcrf(&["eval", "builtin:symplectic-r2", "schouten(pi, pi)"]).stdout, "0\n");
    let json = gcrf(&["--json", "eval", src, "lie(X1, X2)"]);
    let doc: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(doc["value"], "-2*d/dx3");
}

#[test]
fn eval_errors_point_at_the_offending_token() {
    let out = gcrf(&["eval", "builtin:heisenberg-distribution-r5", "lie(X1, Y9)"]);
    assert_eq!(out.code, 2);
    let lines: Vec<&str> = out.stderr.lines().collect();
    assert_eq!(lines[0], "lie(X1, Y9)");
    assert_eq!(lines[1].find('^'), Some("lie(X1, ".len()), "{}", out.stderr);
    assert_eq!(gcrf(&["eval", "builtin:heisenberg-distribution-r5", "lie(X1,"]).code, 2);
    // A is absent from this file
    assert_eq!(gcrf(&["eval", "builtin:heisenberg-distribution-r5", "nijenhuis(X1, X2)"]).code, 2);
}

#[test]
fn format_is_idempotent_on_the_library() {
    for name in builtin_names() {
        let once = gcrf(&["format", &format!("builtin:{name}")]);
        assert_eq!(once.code, 0, "{name}");
        let first = parse_instance(builtin_text(name).unwrap(), name).unwrap();
        let again = parse_instance(&once.stdout, name).unwrap();
        assert_eq!(first, again, "{name}");
        assert_eq!(format_instance(&again), once.stdout, "{name}");
        assert_eq!(first.digest(), again.digest(), "{name}");
    }
}

#[test]
fn fuzzed_pairs_survive_the_round_trip() {
    for case in quasi_classical_corpus(7, 25) {
        let m = LoadedInstance {
            name: case.name.clone(),
            description: None,
            instance: case.instance,
            vectors: BTreeMap::new(),
            forms: BTreeMap::new(),
            expect: BTreeMap::new(),
        };
        let text = format_instance(&m);
        let back = parse_instance(&text, &case.name).unwrap();
        assert_eq!(back, m, "{}", case.name);
        assert_eq!(format_instance(&back), text);
    }
}

#[test]
fn fuzzer_families_stay_within_bounds() {
    for case in quasi_classical_corpus(19, 40) {
        let m = &case.instance;
        assert!(m.dim() <= 6, "{}", case.name);
        assert!(m.pi.comps().all(|(_, c)| c.degree().unwrap_or(0) <= 2), "{}", case.name);
        let a = m.a.as_ref().unwrap();
        assert!(check_quasi_classical(a, &m.pi).passed(), "{}", case.name);
        if case.family != Family::Rotated {
            assert!(a.rows().iter().flatten().all(|e| e.is_constant()), "{}", case.name);
        }
    }
    let names: Vec<String> = quasi_classical_corpus(19, 40).into_iter().map(|c| c.name).collect();
    let again: Vec<String> = quasi_classical_corpus(19, 40).into_iter().map(|c| c.name).collect();
    assert_eq!(names, again);
}

#[test]
fn parse_errors_are_positioned() {
    let bad_json = scratch("bad-json.json", "{\n  \"coordinates\": [\"x\", \"y\"],\n  \"pi\": [[0, 1, \"1\"]\n");
    let out = gcrf(&["check", bad_json.to_str().unwrap(), "-l", "f"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 4"), "{}", out.stderr);

    let text = "{\"coordinates\": [\"x\", \"y\"], \"pi\": [[0, 1, \"1\"], [0, 1, \"x +\"]]}";
    match parse_instance(text, "inline") {
        Err(InputError::Field { field, msg, .. }) => {
            assert_eq!(field, "pi[1]");
            assert!(msg.contains("x +"), "{msg}");
        }
        other => panic!("{other:?}"),
    }
    let text = "{\"coordinates\": [\"x\", \"y\"], \"A\": [[\"0\", \"1\"], [\"1\"]]}";
    match parse_instance(text, "inline") {
        Err(InputError::Field { field, .. }) => assert_eq!(field, "A[1]"),
        other => panic!("{other:?}"),
    }
    let text = "{\"coordinates\": [\"x\", \"y\"], \"colour\": 3}";
    assert!(matches!(parse_instance(text, "inline"), Err(InputError::Json { .. })));
}

#[test]
fn base_point_override() {
    let src = "builtin:holomorphic-r4";
    let plain = gcrf(&["--json", "check", src, "-l", "crf"]);
    let moved = gcrf(&["--json", "--base-point", "1,0,1/2,0", "check", src, "-l", "crf"]);
    assert_eq!(plain.code, 0);
    assert_eq!(moved.code, 0);
    let digest = |o: &Output| serde_json::from_str::<serde_json::Value>(&o.stdout).unwrap()["digest"].clone();
    assert_ne!(digest(&plain), digest(&moved));
    assert_eq!(gcrf(&["--base-point", "1,2", "check", src, "-l", "crf"]).code, 2);
    assert_eq!(gcrf(&["--base-point", "1,2,x,0", "check", src, "-l", "crf"]).code, 2);
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["check", "builtin:leafwise-holomorphic-r5", "-l", "integrable"][..],
        &["--json", "check", "builtin:complex-times-contact-r7", "-l", "normality"],
        &["--json", "cohomology", "builtin:so3-r3", "-D", "2", "--bigrading"],
        &["cohomology", "builtin:holomorphic-r4", "-D", "1", "--spectral"],
    ] {
        let a = gcrf(args);
        let b = gcrf(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.code, b.code);
    }
}

#[test]
fn cohomology_examples() {
    let out = gcrf(&["--json", "cohomology", "builtin:symplectic-r2", "-D", "3"]);
    assert_eq!(out.code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(doc["tables"]["cohomology"]["betti"][0], 1);
    let quad = gcrf(&["cohomology", "builtin:quadratic-r2", "-D", "2"]);
    assert_eq!(quad.code, 2);
    assert!(quad.stdout.contains("degree"), "{}", quad.stdout);
}

#[test]
fn binary_reports_exit_codes() {
    let run = |args: &[&str]| {
        std::process::Command::new(env!("CARGO_BIN_EXE_gcrf")).args(args).output().unwrap().status.code()
    };
    assert_eq!(run(&["check", "builtin:heisenberg-distribution-r5", "-l", "submanifold"]), Some(0));
    assert_eq!(run(&["check", "builtin:perturbed-holomorphic-r6", "-l", "integrable"]), Some(1));
    assert_eq!(run(&["check", "builtin:heisenberg-distribution-r5", "-l", "integrable"]), Some(2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Corrupted documents never crash the checker and always land on an exit
    /// code of the contract; errors carry a message.
    #[test]
    fn corrupted_documents_keep_the_exit_contract(pos in 0usize..2000, byte in prop::sample::select(b"0123456789xy,[]{}\":+-* ".to_vec()), level in 0usize..Level::ALL.len()) {
        let mut text = builtin_text("complex-r2").unwrap().as_bytes().to_vec();
        let k = pos % text.len();
        text[k] = byte;
        let Ok(text) = String::from_utf8(text) else { return Ok(()) };
        let path = scratch(&format!("corrupt-{pos}-{byte}-{level}.json"), &text);
        let out = gcrf(&["--json", "check", path.to_str().unwrap(), "-l", Level::ALL[level].as_str()]);
        prop_assert!(matches!(out.code, 0..=2));
        if out.code == 2 {
            prop_assert!(!out.stderr.is_empty() || out.stdout.contains("\"error\""));
        }
        let _ = std::fs::remove_file(path);
    }
}
