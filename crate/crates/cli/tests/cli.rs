use std::process::{Command, Output};

use serde_json::{json, Value};

fn bernoulli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bernoulli"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn values(doc: &Value) -> Vec<Value> {
    doc["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.get("value").or_else(|| r.get("row")).unwrap().clone())
        .collect()
}

#[test]
fn compute_bernoulli() {
    let out = bernoulli(&["compute", "bernoulli", "--n-max", "4", "--no-meta"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["sequence"], "bernoulli");
    assert_eq!(values(&doc), vec![json!("1/1"), json!("-1/2"), json!("1/6"), json!("0/1"), json!("-1/30")]);
}

#[test]
fn compute_stirling2_triangle() {
    let doc = json_of(&bernoulli(&["compute", "stirling2", "--n-max", "3", "--no-meta"]));
    assert_eq!(
        values(&doc),
        vec![
            json!(["1/1"]),
            json!(["0/1", "1/1"]),
            json!(["0/1", "1/1", "1/1"]),
            json!(["0/1", "1/1", "3/1", "1/1"]),
        ]
    );
}

#[test]
fn compute_harmonic() {
    let doc = json_of(&bernoulli(&["compute", "harmonic", "--n-max", "3", "--no-meta"]));
    assert_eq!(values(&doc), vec![json!("1/1"), json!("3/2"), json!("11/6")]);
}

#[test]
fn compute_parameterised_sequences() {
    let doc = json_of(&bernoulli(&["compute", "hw", "--n-max", "2", "--x", "-1/2", "--no-meta"]));
    assert_eq!(values(&doc), vec![json!("-1/2"), json!("5/8")]);
    let doc = json_of(&bernoulli(&["compute", "poly_bernoulli", "--p", "1", "--n-max", "2", "--no-meta"]));
    // B_n(1) for p = 1
    assert_eq!(values(&doc), vec![json!("1/1"), json!("1/2"), json!("1/6")]);
}

#[test]
fn series_dumps() {
    let doc = json_of(&bernoulli(&["series", "stirling2-egf", "--k", "2", "--order", "5", "--no-meta"]));
    let egf: Vec<&str> = doc["egf"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(egf, ["0/1", "0/1", "1/1", "3/1", "7/1", "15/1"]);

    let doc = json_of(&bernoulli(&["series", "harmonic-ogf", "--order", "4", "--no-meta"]));
    assert_eq!(doc["ordinary"], json!(["0/1", "1/1", "3/2", "11/6", "25/12"]));

    let doc = json_of(&bernoulli(&["series", "polybern", "--p", "2", "--order", "3", "--no-meta"]));
    assert_eq!(doc["egf"], json!(["1/1", "1/4", "-1/36", "-1/24"]));
}

#[test]
fn diagonal_of_main_is_reported() {
    let out = bernoulli(&["verify", "MAIN", "--n-max", "10", "--include-j-equals-n", "--no-meta"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json_of(&out);
    let failures = doc["failures"].as_array().unwrap();
    assert_eq!(failures.len(), 10);
    assert!(failures.iter().all(|f| f["rhs"].is_null() && f["error"].as_str().unwrap().contains("indeterminate")));
    assert!(doc["notes"].as_array().unwrap().iter().any(|n| n.as_str().unwrap().contains("indeterminate")));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["compute", "zeta"][..],
        &["compute", "hw", "--n-max", "3"],
        &["compute", "poly_bernoulli"],
        &["compute", "bernoulli", "--n-max", "0"],
        &["verify", "NOT_AN_IDENTITY"],
        &["verify", "MAIN", "--j-min", "5", "--j-max", "2"],
        &["congruence", "C9"],
        &["series", "zeta-ogf"],
        &["series", "stirling2-egf"],
        &["frobnicate"],
    ] {
        assert_eq!(bernoulli(args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(bernoulli(&["--help"]).status.code(), Some(0));
}

#[test]
fn congruence_selection_and_skips() {
    let out = bernoulli(&["congruence", "C1,C4", "--p-max", "13", "--no-meta"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["suite"], "congruence C1,C4");
    // C1 at 3,5,7,11,13 and C4 from 5 up
    assert_eq!(doc["cases"], 9);
    assert!(doc["notes"].as_array().unwrap().iter().any(|n| n.as_str().unwrap().contains("C4 skipped at p = 3")));
}

#[test]
fn mutated_identity_failure_record() {
    let out = bernoulli(&["verify", "H1", "--n-max", "5", "--inject-off-by-one", "H1", "--no-meta"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json_of(&out);
    let f = &doc["failures"][0];
    assert_eq!(f["id"], "H1");
    assert!(f["lhs"].as_str().unwrap().contains('/'));
    assert!(f["params"]["n"].is_number());
}

#[test]
fn reports_are_byte_deterministic() {
    let args = ["verify", "POLYX", "--n-max", "6", "--no-meta"];
    let a = bernoulli(&args).stdout;
    let b = bernoulli(&args).stdout;
    assert_eq!(a, b);
    assert!(!String::from_utf8(a).unwrap().contains("generated_at"));
}

#[test]
fn meta_header_is_optional() {
    let doc = json_of(&bernoulli(&["compute", "harmonic", "--n-max", "1"]));
    assert_eq!(doc["meta"]["tool"], "bernoulli-cli");
}

#[test]
fn csv_and_markdown_projections() {
    let out = bernoulli(&["verify", "H2", "--n-max", "4", "--inject-off-by-one", "H2", "--format", "csv", "--no-meta"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("kind,id,params,lhs,rhs,detail"));
    assert!(lines.next().unwrap().starts_with("summary,verify H2,"));
    assert_eq!(text.lines().filter(|l| l.starts_with("failure,H2,")).count(), 3);

    let out = bernoulli(&["compute", "bernoulli", "--n-max", "2", "--format", "markdown", "--no-meta"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("| 2 | 1/6 |"));
}

#[test]
fn writes_to_file() {
    let dir = std::env::temp_dir().join(format!("bernoulli-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("b.json");
    let out = bernoulli(&["compute", "bernoulli", "--n-max", "2", "--no-meta", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(values(&doc), vec![json!("1/1"), json!("-1/2"), json!("1/6")]);
    std::fs::remove_dir_all(dir).unwrap();
}
