use std::process::Command;

use polhom::cli::{run, EXIT_INPUT, EXIT_OK, EXIT_RESOURCE};
use polhom::report::Report;
use serde_json::Value;

fn polhom(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("polhom").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn closure_centralizer_example() {
    let (code, out, _) = polhom(&[
        "closure", "--builtin", "chain-semilattice:2", "--arity", "2", "--tuples", "01,10", "--mode", "centralizer",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "{00,01,10,11}");
}

#[test]
fn closure_json() {
    let (code, out, _) = polhom(&[
        "closure", "--builtin", "fork-semilattice", "--arity", "1", "--tuples", "1,2", "--mode", "algebraic", "--json",
    ]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["mode"], "algebraic");
}

#[test]
fn check_sdc_unary_example() {
    let (code, out, _) = polhom(&["check", "sdc", "--builtin", "monounary:0,0,1,0", "--max-arity", "2", "--json"]);
    assert_eq!(code, EXIT_OK);
    let r: Report = serde_json::from_str(&out).unwrap();
    let v = &r.properties[0].verdict.as_ref().unwrap();
    assert_eq!(v.value.as_str(), "exact-false");
    let w = v.witness.as_ref().unwrap();
    assert_eq!(w.level(), 1);
    assert!(r.properties[0].witness_text.as_ref().unwrap().contains("S={0,1}"));
}

#[test]
fn analyze_semilattice_example() {
    let (code, out, _) = polhom(&[
        "analyze", "--builtin", "chain-semilattice:2", "--max-power", "3", "--max-arity", "3", "--json",
    ]);
    assert_eq!(code, EXIT_OK);
    let r: Report = serde_json::from_str(&out).unwrap();
    assert_eq!(r.bounds.max_power, Some(3));
    let value = |p: &str| r.verdict(p.parse().unwrap()).unwrap().value.as_str();
    assert_eq!(value("sdc"), "exact-true");
    assert_eq!(value("cbullet"), "exact-false");
    let w = r.verdict("cbullet".parse().unwrap()).unwrap().witness.as_ref().unwrap();
    assert_eq!(w.level(), 3);
    assert!(r.cross_check.is_empty());
}

#[test]
fn text_report_fields_appear_in_json() {
    let (_, text, _) = polhom(&["analyze", "--builtin", "fork-semilattice"]);
    let (_, json, _) = polhom(&["analyze", "--builtin", "fork-semilattice", "--json"]);
    let r: Report = serde_json::from_str(&json).unwrap();
    assert!(text.contains(&r.algebra));
    for p in &r.properties {
        let v = p.verdict.as_ref().unwrap();
        assert!(text.contains(&format!("{}: {}", p.property, v.value)));
        if let Some(w) = &p.witness_text {
            assert!(text.contains(w.as_str()));
        }
    }
}

#[test]
fn json_is_deterministic_apart_from_timing() {
    let args = ["analyze", "--builtin", "chain-lattice:2", "--json"];
    let a: Report = serde_json::from_str(&polhom(&args).1).unwrap();
    let b: Report = serde_json::from_str(&polhom(&args).1).unwrap();
    assert_eq!(a.without_timing().to_json(), b.without_timing().to_json());
}

#[test]
fn reads_algebra_files() {
    let (code, out, _) = polhom(&["show", &data("meet2.alg")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "algebra m2\nsize 2\nop meet 2\n0 0\n0 1\nend\n");
    let (code, out, _) = polhom(&["check", "pol-hom", &data("impl2.alg")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("pol-hom: true-up-to-bound [K=2]"));
}

#[test]
fn qe_output() {
    let (code, out, _) = polhom(&["qe", "--builtin", "monounary:1,2,0,0", "--formula", "Ey. f^2(y)=x1 & f(y)=x2"]);
    assert_eq!(code, EXIT_OK);
    assert!(!out.contains('E'));
    let (code, _, err) = polhom(&["qe", "--builtin", "monounary:0,0,1,0", "--formula", "Ey. f(y)=x1"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(!err.is_empty());
}

#[test]
fn input_errors_exit_one() {
    for args in [
        &["check", "nonsense", "--builtin", "cyclic:2"][..],
        &["analyze", "--builtin", "cyclic:0"],
        &["analyze", "/no/such/file.alg"],
        &["analyze"],
        &["closure", "--builtin", "cyclic:2", "--arity", "2", "--tuples", "012", "--mode", "algebraic"],
        &["frobnicate"],
    ] {
        let (code, _, err) = polhom(args);
        assert_eq!(code, EXIT_INPUT, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn resource_bound_exits_two() {
    let (code, _, err) = polhom(&["check", "sdc", &data("impl2.alg"), "--max-nodes", "3"]);
    assert_eq!(code, EXIT_RESOURCE);
    assert!(err.contains("resource bound"));
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = polhom(&["--help"]);
    assert_eq!(code, EXIT_OK);
    for cmd in ["analyze", "check", "closure", "qe", "selftest"] {
        assert!(out.contains(cmd));
    }
}

#[test]
fn binary_runs() {
    let out = Command::new(env!("CARGO_BIN_EXE_polhom"))
        .args(["check", "hom-hom", "--builtin", "product:cyclic:2,cyclic:4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("hom-hom: exact-false"));
    let out = Command::new(env!("CARGO_BIN_EXE_polhom")).arg("analyze").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}
