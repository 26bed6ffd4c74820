use std::process::{Command, Output};

fn gfc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gfc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn decompose_real_eigen_blocks() {
    let out = gfc(&[
        "decompose",
        "--input",
        r#"{"field":"real","group":{"cyclic":2},"eigen":{"plus1":0,"minus1":1}}"#,
    ]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        r#"{"field":"real","dimV0":0,"mMinus1":1,"factors":[]}"#
    );
}

#[test]
fn decompose_is_idempotent_on_decompositions() {
    let doc = r#"{"field":"real","dimV0":0,"mMinus1":1,"factors":[]}"#;
    let out = gfc(&["decompose", "--input", doc]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), doc);
}

#[test]
fn decompose_complex_weights() {
    let out = gfc(&[
        "decompose",
        "--input",
        r#"{"field":"complex","group":{"cyclic":3},"weights":[0,1]}"#,
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dimV0"], 1);
    assert_eq!(v["factors"][0]["multiplicity"], 1);
}

#[test]
fn schema_violation_exits_2() {
    let out = gfc(&["decompose", "--input", r#"{"field":"real","group":{}}"#]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn quaternionic_factor_exits_3() {
    let out = gfc(&[
        "cohomology",
        "--input",
        r#"{"field":"real","dimV0":0,"mMinus1":0,"factors":[{"label":"k1","k":1,"multiplicity":1,"realDim":4}]}"#,
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn infeasible_invariants_exit_4() {
    let out = gfc(&["invariants", "--r", "3", "--s", "3", "--dim-v0", "6", "--dim-w", "6"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn cohomology_classical_line() {
    let out = gfc(&[
        "cohomology",
        "--input",
        r#"{"field":"real","dimV0":1,"mMinus1":0,"factors":[]}"#,
        "--max-degree",
        "4",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["betti"], serde_json::json!([1, 0, 0, 1, 0]));
    assert_eq!(v["truncationBound"], 2);
}

#[test]
fn cohomology_reports_unknown_above_window() {
    let out = gfc(&[
        "cohomology",
        "--input",
        r#"{"field":"real","dimV0":1,"mMinus1":0,"factors":[]}"#,
        "--max-degree",
        "7",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // degree 7 cochains vanish but the window still ends somewhere; the
    // table never silently truncates
    assert_eq!(v["betti"].as_array().unwrap().len(), 8);
}

#[test]
fn oracle_sign_block_matches() {
    let out = gfc(&[
        "oracle",
        "--input",
        r#"{"field":"real","dimV0":0,"mMinus1":1,"factors":[]}"#,
        "--max-degree",
        "4",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["match"], true);
    assert_eq!(v["ce"], v["weil"]);
}

#[test]
fn classes_matrix_group_two_reports() {
    let out = gfc(&[
        "classes",
        "--input",
        r#"{"field":"real","group":{"matrices":[[[1,0],[0,1]],[[-1,0],[0,-1]]]}}"#,
        "--max-degree",
        "2",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let list = v.as_array().unwrap();
    assert_eq!(list.len(), 2);
    assert_eq!(list[0]["ring"]["decomposition"]["dimV0"], 2);
    assert_eq!(list[1]["ring"]["decomposition"]["mMinus1"], 2);
    // class equation: sizes sum to the group order
    let total: u64 = list.iter().map(|e| e["classSize"].as_u64().unwrap()).sum();
    assert_eq!(total, 2);
}

#[test]
fn invariants_verdict_and_exit() {
    let out = gfc(&["invariants", "--r", "1", "--s", "1", "--dim-v0", "2", "--dim-w", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["predicted"], 1);
    assert_eq!(v["bruteForce"], 1);
    assert_eq!(v["match"], true);
}

#[test]
fn table_format_renders_text() {
    let out = gfc(&[
        "decompose",
        "--input",
        r#"{"field":"real","dimV0":0,"mMinus1":1,"factors":[]}"#,
        "--format",
        "table",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("field: real"));
    assert!(text.contains("mMinus1: 1"));
}

#[test]
fn json_output_is_byte_deterministic() {
    let args = [
        "classes",
        "--input",
        r#"{"field":"complex","dimV0":1,"mMinus1":0,"factors":[{"label":"k1","k":1,"multiplicity":1,"realDim":2}]}"#,
        "--mode",
        "relative-gl",
        "--max-degree",
        "4",
    ];
    let a = gfc(&args);
    let b = gfc(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn invalid_mode_rejected() {
    let out = gfc(&[
        "cohomology",
        "--input",
        r#"{"field":"real","dimV0":1,"mMinus1":0,"factors":[]}"#,
        "--mode",
        "sideways",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
