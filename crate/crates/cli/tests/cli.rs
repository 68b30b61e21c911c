//! End-to-end runs of the `poset-coho` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures");
    dir.join(name).display().to_string()
}

fn temp_file(name: &str, contents: &str) -> String {
    let path = std::env::temp_dir().join(format!("poset-coho-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path.display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_poset-coho")).args(args).output().unwrap()
}

/// Runs the binary, checks the exit code and parses the report.
fn report(args: &[&str], code: i32) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(code), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn groups(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|g| g["group"].as_str().unwrap().to_string()).collect()
}

#[test]
fn validate_accepts_the_projective_plane() {
    let r = report(&["validate", &fixture("rp2.poset.json")], 0);
    assert_eq!(r["status"], "ok");
    assert_eq!(r["simplex_like"]["holds"], true);
}

#[test]
fn malformed_json_exits_with_2() {
    let path = temp_file("malformed.json", "{\"objects\": [");
    let out = run(&["validate", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    assert_eq!(run(&["validate", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn broken_grading_exits_with_1_and_a_witness() {
    let path = temp_file(
        "bad-grading.json",
        r#"{"objects": [{"id": "a", "degree": 2}, {"id": "b", "degree": 0}], "relations": [["a", "b"]]}"#,
    );
    let r = report(&["validate", &path], 1);
    assert_eq!(r["status"], "invalid");
    assert_eq!(r["witness"][0]["kind"], "preceding_step");
    assert_eq!(r["witness"][0]["p"], "a");
}

#[test]
fn negative_degrees_need_the_shift_flag() {
    let path = temp_file(
        "negative.json",
        r#"{"objects": [{"id": "e", "degree": 0}, {"id": "u", "degree": -1}, {"id": "v", "degree": -1}],
            "relations": [["e", "u"], ["e", "v"]]}"#,
    );
    report(&["cohomology", &path], 1);
    let r = report(&["cohomology", &path, "--shift-degrees"], 0);
    assert_eq!(groups(&r["cohomology"]), ["Z", "0"]);
}

#[test]
fn projective_plane_cohomology_by_every_method() {
    for method in ["auto", "sequence", "simplicial", "oracle"] {
        let r = report(&["cohomology", &fixture("rp2.poset.json"), "--method", method], 0);
        assert_eq!(groups(&r["cohomology"]), ["Z", "0", "Z/2"], "{method}");
    }
}

#[test]
fn vertex_order_flag() {
    let r = report(&["cohomology", &fixture("rp2.poset.json"), "--vertex-order", "x,w,v"], 0);
    assert_eq!(groups(&r["cohomology"]), ["Z", "0", "Z/2"]);
    report(&["cohomology", &fixture("rp2.poset.json"), "--vertex-order", "x,w"], 1);
}

#[test]
fn signed_layers_poset() {
    let r = report(&["cohomology", &fixture("signed_layers.poset.json")], 0);
    assert_eq!(r["method"], "oracle");
    assert_eq!(groups(&r["cohomology"]), ["Z", "0", "Z^4"]);
    let r = report(
        &[
            "cohomology",
            &fixture("signed_layers.poset.json"),
            "--method",
            "sequence",
            "--local-family",
            &fixture("signed_layers.family.json"),
        ],
        0,
    );
    assert_eq!(groups(&r["cohomology"]), ["Z", "0", "Z^4"]);
    report(&["cohomology", &fixture("signed_layers.poset.json"), "--method", "simplicial"], 1);
}

#[test]
fn torsion_tower_higher_limits() {
    let poset = fixture("torsion_tower.poset.json");
    let functor = fixture("torsion_tower.functor.json");
    let r = report(&["cohomology", &poset, "--coefficients", &functor], 0);
    assert_eq!(groups(&r["higher_limits"])[..2], ["Z/2", "Z/2"]);
    assert_eq!(r["methods"][1], "shift");
    let witnesses: Vec<&str> =
        r["condensed"][1]["violations"].as_array().unwrap().iter().map(|v| v["object"].as_str().unwrap()).collect();
    assert_eq!(witnesses, ["x2", "y2"]);
    let r = report(&["cohomology", &poset, "--coefficients", &functor, "--method", "oracle"], 0);
    assert_eq!(groups(&r["higher_limits"])[..2], ["Z/2", "Z/2"]);
}

#[test]
fn unchecked_sequence_with_free_coefficients() {
    let r = report(
        &[
            "cohomology",
            &fixture("signed_layers.poset.json"),
            "--coefficients",
            &fixture("signed_layers.functor.json"),
            "--unchecked",
            "--local-family",
            &fixture("signed_layers.family.json"),
        ],
        0,
    );
    assert_eq!(groups(&r["cohomology"]), ["Z", "0", "Z^4"]);
}

#[test]
fn reduce_projective_plane() {
    let r = report(&["reduce", &fixture("rp2.poset.json"), &fixture("rp2.global.json")], 0);
    assert_eq!(r["family"]["family_betti"], serde_json::json!([1, 1, 1]));
    let omega = &r["reduced"]["complex"]["differentials"];
    assert_eq!(omega[0], serde_json::json!([[0]]));
    assert_eq!(omega[1][0][0].as_i64().unwrap().abs(), 2);
    assert_eq!(groups(&r["reduced"]["cohomology"]), ["Z", "0", "Z/2"]);
    assert_eq!(r["inequalities"]["hold"], true);
}

#[test]
fn reduce_with_whole_family_reproduces_full_complex() {
    let family = temp_file(
        "all.json",
        r#"{"K": {"0": ["v", "w", "x"], "1": ["a", "b", "c", "d", "e", "f"], "2": ["A", "B", "C", "D"]}}"#,
    );
    let r = report(&["reduce", &fixture("rp2.poset.json"), &family], 0);
    assert_eq!(r["reduced"]["complex"]["ranks"], serde_json::json!([3, 6, 4]));
    assert_eq!(r["reduced"]["agrees_with_full"], true);
}

#[test]
fn reduce_rejects_invalid_family_with_witness() {
    let family = temp_file("short.json", r#"{"K": {"0": ["x"], "1": ["d", "e", "f"], "2": ["A", "B", "C"]}}"#);
    let r = report(&["reduce", &fixture("rp2.poset.json"), &family], 1);
    assert_eq!(r["family"]["valid"], false);
    let v = &r["family"]["violations"][0];
    assert_eq!(v["condition"], "not_injective");
    assert_eq!(v["n"], 2);
    assert!(r.get("reduced").is_none());
}

#[test]
fn morse_commands() {
    let r = report(&["morse", &fixture("path.morse.json")], 0);
    assert_eq!(r["family"]["family_betti"], serde_json::json!([1, 0]));
    let r = report(&["morse", &fixture("triangle.morse.json")], 0);
    assert_eq!(r["critical_counts"], serde_json::json!([1, 1]));
    let r = report(&["morse", &fixture("triangle_constant.morse.json")], 1);
    assert_eq!(r["witness"]["failure"], "cofaces");
    let r = report(&["validate", &fixture("triangle_constant.morse.json")], 1);
    assert_eq!(r["morse"]["holds"], false);
}

#[test]
fn coxeter_command() {
    for name in ["a2", "a1xa1", "a3", "b3", "i2_5"] {
        let r = report(&["coxeter", &fixture(&format!("{name}.coxeter.json"))], 0);
        assert_eq!(r["is_sphere"], true, "{name}");
    }
    let r = report(&["coxeter", &fixture("a3.coxeter.json")], 0);
    assert_eq!(r["order"], 24);
    assert_eq!(r["complex"]["degree_counts"], serde_json::json!([14, 36, 24]));
    let r = report(&["coxeter", &fixture("b3.coxeter.json"), "--max-cells", "10"], 1);
    assert!(r["error"].as_str().unwrap().contains("10"));
    let h3 = temp_file("h3.json", r#"{"generators": ["a", "b", "c"], "matrix": [[1, 5, 2], [5, 1, 3], [2, 3, 1]]}"#);
    report(&["coxeter", &h3], 1);
}

#[test]
fn reports_are_byte_stable() {
    for args in [
        vec!["reduce".to_string(), fixture("rp2.poset.json"), fixture("rp2.global.json")],
        vec!["coxeter".to_string(), fixture("b3.coxeter.json"), "--pretty".into()],
        vec!["selfcheck".to_string(), "--seed".into(), "9".into(), "--count".into(), "5".into()],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}

#[test]
fn timing_adds_a_field() {
    let r = report(&["cohomology", &fixture("rp2.poset.json"), "--timing"], 0);
    assert!(r["timing_ms"].is_number());
    let r = report(&["cohomology", &fixture("rp2.poset.json")], 0);
    assert!(r.get("timing_ms").is_none());
}

#[test]
fn selfcheck_passes() {
    let r = report(&["selfcheck", "--seed", "42", "--count", "25"], 0);
    assert_eq!(r["passed"], 25);
    assert_eq!(r["seed"], 42);
}

#[test]
fn validate_functor_and_family_files() {
    let poset = fixture("signed_layers.poset.json");
    let r = report(&["validate", &fixture("signed_layers.functor.json"), "--poset", &poset], 0);
    assert_eq!(r["free"], true);
    report(&["validate", &fixture("signed_layers.family.json"), "--poset", &poset], 0);
    assert_eq!(run(&["validate", &fixture("signed_layers.family.json")]).status.code(), Some(2));
    let inadequate = temp_file(
        "inadequate.json",
        r#"{"J": {"c": {"1": ["c"], "0": ["f"]}, "d": {"1": ["d"], "0": ["g"]}, "e": {"1": ["e"], "0": ["h"]},
                  "a": {"2": ["a"], "1": ["c"], "0": ["f", "g"]}, "b": {"2": ["b"], "1": ["e"], "0": ["h"]}}}"#,
    );
    let r = report(&["validate", &inadequate, "--poset", &poset], 1);
    let v = &r["violations"][0];
    assert_eq!(v["condition"], "rank_equation");
    assert_eq!(v["object"], "a");
    assert_eq!(v["sum"], 2);
    let r = report(&["validate", &fixture("rp2.global.json"), "--poset", &fixture("rp2.poset.json")], 0);
    assert_eq!(r["family"]["valid"], true);
}
