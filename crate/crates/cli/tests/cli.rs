use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tbtensor::io::{hypergraph_from_json, hypergraph_to_json, tensor_from_json, tensor_to_json};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tbtensor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn ok(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stdout)
    );
    stdout_json(&out)
}

fn domain_error(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(1), "{args:?}");
    let v = stdout_json(&out);
    assert!(v["detail"].is_string());
    v["error"].as_str().unwrap().to_string()
}

#[test]
fn classify_reports_upper_second_type() {
    let single_entry = fixture("single_entry.json");
    let v = ok(&[
        "classify",
        "--tensor",
        &single_entry,
        "--partition",
        "1,1,1",
        "--kind",
        "utb2",
    ]);
    assert_eq!(v, json!({ "result": true }));
    let v = ok(&[
        "classify",
        "--tensor",
        &single_entry,
        "--partition",
        "1,1,1",
        "--kind",
        "utb1",
    ]);
    assert_eq!(v, json!({ "result": false }));
}

#[test]
fn third_type_determinant_is_a_domain_error() {
    let det_gap = fixture("det_gap.json");
    let code = domain_error(&[
        "det",
        "--tensor",
        &det_gap,
        "--partition",
        "1,1",
        "--kind",
        "utb3",
    ]);
    assert_eq!(code, "ThirdTypeUnsupported");
}

#[test]
fn usage_errors_exit_with_two() {
    let det_gap = fixture("det_gap.json");
    for args in [
        vec![
            "det",
            "--tensor",
            &det_gap,
            "--partition",
            "1,1",
            "--kind",
            "bogus",
        ],
        vec![
            "det",
            "--tensor",
            &det_gap,
            "--partition",
            "1,x",
            "--kind",
            "utb1",
        ],
        vec!["classify", "--tensor", &det_gap],
        vec!["normal-form", "--tensor", &det_gap, "--type", "4th"],
        vec!["frobnicate"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn every_verb_has_help() {
    for verb in [
        "classify",
        "blocks",
        "product",
        "det",
        "spectrum",
        "rho",
        "oracle",
        "left-inverse",
        "right-inverse",
        "verify",
        "mtensor",
        "normal-form",
        "first-type-normal",
        "hypergraph-rho",
    ] {
        let out = run(&[verb, "--help"]);
        assert_eq!(out.status.code(), Some(0), "{verb}");
        assert!(!out.stdout.is_empty());
    }
}

#[test]
fn missing_and_malformed_inputs() {
    let code = domain_error(&["rho", "--tensor", "/no/such/file.json"]);
    assert_eq!(code, "IoError");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"order":3,"dim":2,"entries":[{"i":[1,1,3],"v":1.0}]}"#,
    )
    .unwrap();
    let code = domain_error(&["rho", "--tensor", bad.to_str().unwrap()]);
    assert_eq!(code, "IndexOutOfRange");

    std::fs::write(&bad, "not json").unwrap();
    let code = domain_error(&["rho", "--tensor", bad.to_str().unwrap()]);
    assert_eq!(code, "InvalidJson");
}

#[test]
fn output_is_deterministic() {
    let det_gap = fixture("det_gap.json");
    let hub = fixture("hub.json");
    let hyper = fixture("hypergraph.json");
    let cases: Vec<Vec<&str>> = vec![
        vec![
            "oracle",
            "--tensor",
            &det_gap,
            "--restarts",
            "8",
            "--iters",
            "100",
            "--seed",
            "3",
        ],
        vec!["rho", "--tensor", &hub],
        vec!["product", &det_gap, &hub],
        vec!["normal-form", "--tensor", &hub, "--type", "2nd"],
        vec!["hypergraph-rho", "--edges", &hyper],
    ];
    for args in cases {
        let (a, b) = (run(&args), run(&args));
        assert_eq!(a.status.code(), b.status.code(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn fixtures_round_trip() {
    for name in [
        "single_entry.json",
        "det_gap.json",
        "hub.json",
        "z2.json",
        "unit_times_matrix.json",
    ] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let t = tensor_from_json(&text).unwrap();
        let again = tensor_to_json(&t);
        assert_eq!(tensor_from_json(&again).unwrap(), t, "{name}");
        assert_eq!(again, text.trim_end(), "{name}");
    }
    let text = std::fs::read_to_string(fixture("hypergraph.json")).unwrap();
    let h = hypergraph_from_json(&text).unwrap();
    assert_eq!(hypergraph_to_json(&h), text.trim_end());
}

#[test]
fn output_flag_writes_the_document() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("inv.json");
    let a = fixture("unit_times_matrix.json");
    let out = run(&[
        "right-inverse",
        "--tensor",
        &a,
        "-k",
        "2",
        "-o",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());

    let written = std::fs::read_to_string(&target).unwrap();
    let b = tensor_from_json(&written).unwrap();
    assert_eq!((b.order(), b.dim()), (2, 2));
    assert_eq!(b.get(&[0, 0]), 0.5);
    assert_eq!(b.get(&[0, 1]), -0.5);
    assert_eq!(b.get(&[1, 1]), 1.0);

    let v = ok(&["verify", "--right", target.to_str().unwrap(), &a]);
    assert_eq!(v, json!({ "result": true }));
    let v = ok(&["verify", "--left", target.to_str().unwrap(), &a]);
    assert_eq!(v, json!({ "result": false }));
}

#[test]
fn left_inverse_of_a_z_tensor() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("left.json");
    let a = fixture("z2.json");
    let out = run(&[
        "left-inverse",
        "--tensor",
        &a,
        "-k",
        "2",
        "-o",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = ok(&[
        "verify",
        "--left",
        target.to_str().unwrap(),
        &a,
        "--tol",
        "1e-12",
    ]);
    assert_eq!(v, json!({ "result": true }));
    assert_eq!(
        domain_error(&["left-inverse", "--tensor", &fixture("hub.json"), "-k", "2"]),
        "NoLeftInverse"
    );
}

#[test]
fn determinant_and_spectrum_of_a_blocked_tensor() {
    let hub = fixture("hub.json");
    let v = ok(&[
        "det",
        "--tensor",
        &hub,
        "--partition",
        "3,1",
        "--kind",
        "utb1",
    ]);
    assert_eq!(v["value"], json!(0.0));
    let v = ok(&[
        "spectrum",
        "--tensor",
        &hub,
        "--partition",
        "3,1",
        "--kind",
        "utb1",
    ]);
    assert_eq!(v["degree"], json!(32));
    let total: u64 = v["items"]
        .as_array()
        .unwrap()
        .iter()
        .map(|it| it["eigs"].as_array().unwrap().len() as u64 * it["exp"].as_u64().unwrap())
        .sum();
    assert_eq!(total, 32);
}

#[test]
fn radius_and_oracle_on_the_two_dimensional_example() {
    let det_gap = fixture("det_gap.json");
    let v = ok(&["rho", "--tensor", &det_gap]);
    assert!(v["rho"].as_f64().unwrap() > 0.0);
    let v = ok(&["oracle", "--tensor", &det_gap]);
    assert!((v["min_norm"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    assert_eq!(v["witness"].as_array().unwrap().len(), 2);
}

#[test]
fn m_tensor_classification() {
    let v = ok(&["mtensor", "--tensor", &fixture("z2.json")]);
    assert_eq!(v["z"], json!(true));
    assert_eq!(v["nonsingular_m"], json!(true));
    assert_eq!(v["s"], json!(3.0));
    assert!((v["rho"].as_f64().unwrap() - 1.0).abs() < 1e-8);

    let v = ok(&["mtensor", "--tensor", &fixture("single_entry.json")]);
    assert_eq!(
        v,
        json!({ "z": false, "m": false, "nonsingular_m": false, "s": null, "rho": null })
    );
}

#[test]
fn structure_verbs() {
    let single_entry = fixture("single_entry.json");
    let hub = fixture("hub.json");
    let v = ok(&["blocks", "--tensor", &hub, "--kind", "utb1"]);
    assert_eq!(v, json!({ "partitions": [[3, 1]] }));
    let v = ok(&["blocks", "--tensor", &hub, "--partition", "3,1"]);
    assert_eq!(v["blocks"].as_array().unwrap().len(), 2);

    let v = ok(&["normal-form", "--tensor", &single_entry, "--type", "3rd"]);
    assert_eq!(v["kind"], json!("utb3"));
    let v = ok(&["first-type-normal", "--tensor", &single_entry]);
    assert_eq!(v["partition"], json!([1, 1, 1]));

    let v = ok(&["first-type-normal", "--tensor", &fixture("det_gap.json")]);
    assert_eq!(v, json!("none"));
}

#[test]
fn hypergraph_components() {
    let v = ok(&["hypergraph-rho", "--edges", &fixture("hypergraph.json")]);
    assert!((v["rho"].as_f64().unwrap() - 1.0).abs() < 1e-8);
    let comps = v["components"].as_array().unwrap();
    assert_eq!(comps.len(), 2);
    assert_eq!(comps[1]["vertices"], json!([4, 5, 6]));
}
