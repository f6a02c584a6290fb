use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn qsqc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsqc"))
        .current_dir(root())
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = qsqc(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn validate(kind: &str, doc: &Value) {
    let text = std::fs::read_to_string(root().join("schema/report.schema.json")).unwrap();
    let mut schema: Value = serde_json::from_str(&text).unwrap();
    let obj = schema.as_object_mut().unwrap();
    obj.remove("anyOf");
    obj.insert("$ref".into(), Value::String(format!("#/definitions/{kind}")));
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let msgs: Vec<String> = match compiled.validate(doc) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    assert!(msgs.is_empty(), "{kind} does not validate: {msgs:#?}");
}

#[test]
fn verify_c12_with_oracle() {
    let (code, doc) = json(&["verify", "data/c12.chk", "data/omega12.om", "--d", "5", "--oracle"]);
    assert_eq!(code, 0);
    validate("verify_report", &doc);
    assert_eq!(doc["certificate"]["status"], "certified");
    assert_eq!(doc["certificate"]["dimension"], 2);
    assert_eq!(doc["oracle"]["ok"], true);
    assert_eq!(doc["oracle"]["errors_checked"], 46_666);
}

#[test]
fn verify_sampled_oracle_is_partial() {
    let (code, doc) = json(&[
        "verify", "data/c12.chk", "data/omega12.om", "--d", "5", "--oracle", "--sample", "5000", "--seed", "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["oracle"]["partial"], true);
    assert_eq!(doc["oracle"]["errors_checked"], 5000);
}

#[test]
fn wrong_omega_is_rejected_on_distance() {
    let (code, doc) = json(&["verify", "data/c83.chk", "data/omega83_wrong.om", "--d", "3"]);
    assert_eq!(code, 1);
    validate("verify_report", &doc);
    let reason = &doc["certificate"]["reasons"][0];
    assert_eq!(reason["condition"], "qsc_distance");
    assert!(reason["first"].is_u64() && reason["second"].is_u64());
}

#[test]
fn oracle_failure_sets_exit_status() {
    let (code, doc) = json(&["verify", "data/c83.chk", "data/omega83_wrong.om", "--d", "3", "--oracle"]);
    assert_eq!(code, 1);
    assert_eq!(doc["oracle"]["ok"], false);
    assert!(doc["oracle"]["witness"]["weight"].as_u64().unwrap() <= 2);
}

#[test]
fn search_gv_instance() {
    let (code, doc) = json(&["search", "data/c9.chk", "--d", "2", "--L", "3"]);
    assert_eq!(code, 0);
    validate("search_report", &doc);
    assert_eq!(doc["size"], 3);
    assert_eq!(doc["certificate"]["status"], "certified");
}

#[test]
fn search_reports_not_found() {
    let (code, doc) = json(&["search", "data/c9.chk", "--d", "4", "--maximize"]);
    assert_eq!(code, 1);
    validate("search_report", &doc);
    assert!(doc["reason"].as_str().unwrap().contains("d_m"));
}

#[test]
fn search_writes_omega_file() {
    let dir = std::env::temp_dir().join(format!("qsqc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("found.om");
    let status = qsqc(&["search", "data/c9.chk", "--d", "2", "--L", "4", "--output", out.to_str().unwrap()]);
    assert_eq!(status.status.code(), Some(0));
    let verify = qsqc(&["verify", "data/c9.chk", out.to_str().unwrap(), "--d", "2"]);
    assert_eq!(verify.status.code(), Some(0));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn analyze_bounds_ust_validate() {
    let (code, doc) = json(&["analyze", "data/c9.chk", "--d", "2"]);
    assert_eq!(code, 0);
    validate("analyze_report", &doc);
    assert_eq!(doc["profile"]["lowweight"][0], "000000001|000000000");

    let (code, doc) = json(&["bounds", "data/c9.chk", "data/omega9.om", "--d", "2"]);
    assert_eq!(code, 0);
    validate("bounds_report", &doc);
    assert_eq!(doc["hamming_type"]["holds"], true);

    let (code, doc) = json(&["ust", "data/c9.chk", "data/omega9.om"]);
    assert_eq!(code, 0);
    validate("ust_summary", &doc);
    assert_eq!(doc["report"]["strict"], true);
}

#[test]
fn examples_sweep() {
    let (code, doc) = json(&["examples"]);
    assert_eq!(code, 0);
    validate("examples_report", &doc);
    let names: Vec<&str> = doc["examples"].as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["c8", "c81", "c82", "c83", "c12", "c9", "c7"]);

    let out = qsqc(&["examples", "c8-family"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for factored in ["2^3·1", "2^2·2", "2^1·4", "2^0·8"] {
        assert!(text.contains(&format!("((8, 8, 3)) via ((8, {factored}, 3))")), "{text}");
    }
    let text = String::from_utf8(qsqc(&["examples", "c7"]).stdout).unwrap();
    assert!(text.contains("ust 2 > 1") && text.contains("d(C) = 1"), "{text}");
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(qsqc(&["verify", "data/c8.chk"]).status.code(), Some(2));
    assert_eq!(qsqc(&["search", "data/c9.chk", "--d", "2"]).status.code(), Some(2));
    assert_eq!(qsqc(&["examples", "nonexistent"]).status.code(), Some(2));
    let (code, doc) = json(&["analyze", "missing.chk"]);
    assert_eq!(code, 2);
    validate("error_report", &doc);

    let dir = std::env::temp_dir().join(format!("qsqc-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.chk");
    std::fs::write(&bad, "10|0\n").unwrap();
    let out = qsqc(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn oracle_refused_above_limit() {
    let dir = std::env::temp_dir().join(format!("qsqc-big-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let n = 15;
    let row = format!("{}|{}", "0".repeat(n), "1".repeat(n));
    std::fs::write(dir.join("big.chk"), format!("{row}\n")).unwrap();
    std::fs::write(dir.join("big.om"), format!("{}|{}\n", "0".repeat(n), "0".repeat(n))).unwrap();
    let chk = dir.join("big.chk");
    let om = dir.join("big.om");
    let out = qsqc(&["verify", chk.to_str().unwrap(), om.to_str().unwrap(), "--d", "1", "--oracle"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("refused"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn hamming_norm_option() {
    let (code, doc) = json(&["verify", "data/c9.chk", "data/omega9.om", "--d", "2", "--norm", "hamming"]);
    validate("verify_report", &doc);
    assert_eq!(doc["certificate"]["norm"], "hamming");
    assert_eq!(doc["certificate"]["required_qsc_distance"], 3);
    assert_eq!(code, if doc["certificate"]["status"] == "certified" { 0 } else { 1 });
}
