use std::path::PathBuf;
use std::process::{Command, Output};

use bihamil_cli::analyses;
use bihamil_cli::io::{algebra_to_json, pair_to_json};
use bihamil_core::catalog;
use serde_json::Value;

fn bihamil(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bihamil")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = bihamil(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bihamil-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn every_subcommand_has_a_registered_analysis() {
    let names: Vec<&str> = analyses::registry().iter().map(|a| a.name()).collect();
    assert_eq!(names, ["check-jacobi", "pencil", "classify", "orbit", "reduce", "integrals"]);
    for n in names {
        assert!(analyses::lookup(n).is_some());
    }
    assert!(analyses::lookup("nope").is_none());
}

#[test]
fn report_envelope() {
    let r = json(&["check-jacobi", "--algebra", "so3"]);
    assert_eq!(r["schema"], "bihamil/1");
    assert_eq!(r["command"], "check-jacobi");
    assert_eq!(r["config"]["seed"], 42);
    assert_eq!(r["config"]["lambda_samples"], 7);
    assert_eq!(r["input_digest"].as_str().unwrap().len(), 64);
    assert_eq!(r["payload"]["jacobi_holds"], true);
    assert_eq!(r["payload"]["is_poisson_pair"], true);
}

#[test]
fn catalog_algebra_files_give_the_same_digest() {
    for name in catalog::algebra_names() {
        let text = serde_json::to_string(&algebra_to_json(&catalog::algebra(name).unwrap())).unwrap();
        let path = temp_file(&format!("{name}.json"), &text);
        let a = json(&["check-jacobi", "--algebra", name]);
        let b = json(&["check-jacobi", "--algebra-file", path.to_str().unwrap()]);
        assert_eq!(a["input_digest"], b["input_digest"], "{name}");
        assert_eq!(b["payload"]["jacobi_holds"], true);
    }
}

#[test]
fn perturbed_algebra_file_reports_failure_with_exit_zero() {
    let text = r#"{"name":"so3-perturbed","dim":3,"brackets":[
        {"i":0,"j":1,"k":2,"re":"1"},{"i":0,"j":1,"k":0,"re":"1"},
        {"i":1,"j":2,"k":0,"re":"1"},{"i":0,"j":2,"k":1,"re":"-1"}]}"#;
    let path = temp_file("perturbed.json", text);
    let r = json(&["check-jacobi", "--algebra-file", path.to_str().unwrap()]);
    assert_eq!(r["payload"]["jacobi_holds"], false);
    assert!(!r["payload"]["nonzero_components"].as_array().unwrap().is_empty());
}

#[test]
fn exit_codes() {
    let bad_json = temp_file("bad.json", "{ not json");
    assert_eq!(bihamil(&["check-jacobi", "--algebra-file", bad_json.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(bihamil(&["classify", "--algebra", "so3", "--point", "(1,2)"]).status.code(), Some(2));
    assert_eq!(bihamil(&["classify", "--algebra", "nope"]).status.code(), Some(2));
    assert_eq!(bihamil(&["classify", "--algebra", "so3", "--point", "1,2,3"]).status.code(), Some(2));
    assert_eq!(bihamil(&["classify", "--algebra", "so3", "--points", "0"]).status.code(), Some(2));
    let out = bihamil(&["reduce", "--algebra", "so3", "--point", "(0,0,0)"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Sing"));
    assert_eq!(bihamil(&["classify", "--fixture", "kron_2068"]).status.code(), Some(2));
    assert_eq!(bihamil(&["check-jacobi", "--algebra", "so3"]).status.code(), Some(0));
}

#[test]
fn non_skew_pair_is_an_input_error() {
    // a field with a single constant component evaluates to a skew matrix;
    // mismatched sizes do not
    let pair = r#"{"first":{"num_vars":2,"kind":"real","terms":[{"i":0,"j":1,"coeff":{"re":"1"},"exponents":[0,0]}]},
                  "second":{"num_vars":3,"kind":"real","terms":[]}}"#;
    let path = temp_file("pair.json", pair);
    assert_eq!(bihamil(&["pencil", "--pair-file", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn pencil_from_pair_file_matches_fixture() {
    let f = catalog::kron_2068();
    let path = temp_file("kron.json", &serde_json::to_string(&pair_to_json(&f)).unwrap());
    let a = json(&["pencil", "--fixture", "kron_2068", "--point", "(1,2,0,3,4,5)"]);
    let b = json(&["pencil", "--pair-file", path.to_str().unwrap(), "--point", "(1,2,0,3,4,5)"]);
    assert_eq!(a["payload"]["points"], b["payload"]["points"]);
    assert_eq!(a["payload"]["points"][0]["kronecker_block_dims"], serde_json::json!([1, 5]));
}

#[test]
fn points_file_is_accepted() {
    let path = temp_file("points.json", r#"[[{"re":"1"},{"re":"0","im":"1"},{"re":"0"}]]"#);
    let r = json(&["classify", "--algebra", "so3", "--points-file", path.to_str().unwrap()]);
    let p = &r["payload"]["points"][0];
    assert_eq!(p["in_sing"], false);
    assert_eq!(p["in_incompleteness"], false);
}

#[test]
fn documented_examples() {
    let r = json(&["reduce", "--algebra", "so3", "--point", "(1,i,0)"]);
    let p = &r["payload"]["points"][0];
    assert_eq!((p["complete"].clone(), p["minimal"].clone(), p["quotient_dim"].clone()), (true.into(), true.into(), 1.into()));

    let r = json(&["orbit", "--algebra", "d45", "--points", "2"]);
    for p in r["payload"]["points"].as_array().unwrap() {
        assert_eq!((p["orbit_dim"].as_u64(), p["cr_dim"].as_u64()), (Some(6), Some(2)));
    }

    let r = json(&["integrals", "--algebra", "so3", "--degree", "2", "--lambda-samples", "5"]);
    assert_eq!(r["payload"]["member_count"], 5);
    assert_eq!(r["payload"]["involutive"], true);
    assert_eq!(r["payload"]["g0_invariant"], true);

    let r = json(&["classify", "--algebra", "so3", "--point", "(0,0,0)"]);
    let p = &r["payload"]["points"][0];
    assert!(p["in_sing"] == true && p["in_incompleteness"] == true && p["in_irregularity"] == true);

    let r = json(&["pencil", "--fixture", "jordan4_lam(3)", "--points", "1"]);
    let p = &r["payload"]["points"][0];
    assert_eq!(p["verdict"]["complete"], false);
    assert_eq!(p["verdict"]["degenerate_directions"][0]["label"], "(3:1)");
}

#[test]
fn text_output_and_output_file() {
    let out = bihamil(&["classify", "--algebra", "so3", "--point", "(1,i,0)"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("bihamil "));
    assert!(text.contains("Sing: false"));
    let dir = std::env::temp_dir().join(format!("bihamil-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("report.json");
    let out = bihamil(&["classify", "--algebra", "so3", "--points", "2", "--format", "json", "--output", target.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(target).unwrap()).unwrap();
    assert_eq!(v["payload"]["points"].as_array().unwrap().len(), 2);
}

#[test]
fn empty_family_warns() {
    let r = json(&["integrals", "--algebra", "sl2r", "--degree", "1"]);
    assert_eq!(r["payload"]["member_count"], 0);
    assert_eq!(r["warnings"].as_array().unwrap().len(), 1);
}
