//! End-to-end checks of the command-line binary: golden outputs on
//! the pinned example, structured errors, and the documented exit
//! codes.

use std::process::{Command, Output};

const CURVE: &str = r#"{"f":["-1","0","0","0","0","1"]}"#;
const DIVISOR: &str = r#"[{"point":"infinity","mult":1}]"#;
const PINNED_REPORT: &str = r#"{"order":3,"gap_sequence":[2,4],"sw_prefix":[-2,0],"n_used":2,"formulas":{"sw":3,"gap":3,"thm41":3}}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thetakp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_line(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).trim().to_string()
}

fn stderr_kind(out: &Output) -> String {
    let v: serde_json::Value = serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim())
        .expect("stderr is structured JSON");
    v["error"]["kind"].as_str().expect("error has a kind").to_string()
}

#[test]
fn order_emits_the_pinned_report() {
    let out = run(&[
        "order", "--curve", CURVE, "--divisor", DIVISOR, "--point", "infinity",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_line(&out), PINNED_REPORT);
}

#[test]
fn h0_of_the_trivial_bundle() {
    let out = run(&["h0", "--curve", CURVE, "--divisor", "[]"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_line(&out), r#"{"h0":1}"#);
}

#[test]
fn gaps_and_weight_of_the_pinned_example() {
    let out = run(&[
        "gaps", "--curve", CURVE, "--divisor", DIVISOR, "--point", "infinity",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_line(&out), r#"{"gaps":[2],"weight":1}"#);

    let out = run(&[
        "weight", "--curve", CURVE, "--divisor", DIVISOR, "--point", "infinity",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_line(&out), r#"{"weight":1}"#);
}

#[test]
fn theta_order_matches_the_exact_value() {
    let out = run(&[
        "theta-order", "--curve", CURVE, "--divisor", DIVISOR, "--point", "infinity",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_line(&out), r#"{"numeric":3}"#);
}

#[test]
fn verify_agrees_on_the_pinned_example() {
    let out = run(&[
        "verify", "--curve", CURVE, "--divisor", DIVISOR, "--point", "infinity",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_line(&out)).unwrap();
    assert_eq!(v["order"], 3);
    assert_eq!(v["numeric"], 3);
    assert_eq!(v["agree"], true);
}

#[test]
fn malformed_curve_is_exit_two() {
    let out = run(&[
        "order", "--curve", r#"{"f":["1","0""#, "--divisor", DIVISOR, "--point", "infinity",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_kind(&out), "invalid-input");
    assert!(out.stdout.is_empty());
}

#[test]
fn non_squarefree_curve_is_exit_two() {
    let out = run(&[
        "order",
        "--curve",
        r#"{"f":["0","0","1","0","0","0","0","1"]}"#,
        "--divisor",
        DIVISOR,
        "--point",
        "infinity",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_kind(&out), "invalid-input");
}

#[test]
fn wrong_divisor_degree_is_exit_two() {
    let out = run(&[
        "order", "--curve", CURVE, "--divisor", "[]", "--point", "infinity",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_kind(&out), "invalid-input");
}

#[test]
fn improper_twist_is_exit_two() {
    let out = run(&[
        "order", "--curve", CURVE, "--divisor", DIVISOR, "--point", "infinity", "--n", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_kind(&out), "invalid-input");
}

#[test]
fn missing_required_flag_is_exit_two() {
    let out = run(&["order", "--curve", CURVE, "--point", "infinity"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_kind(&out), "invalid-input");
}

#[test]
fn json_out_and_file_arguments_round_trip() {
    let dir = std::env::temp_dir().join(format!("thetakp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let curve_path = dir.join("curve.json");
    let report_path = dir.join("report.json");
    std::fs::write(&curve_path, CURVE).unwrap();

    let out = run(&[
        "order",
        "--curve",
        &format!("@{}", curve_path.display()),
        "--divisor",
        DIVISOR,
        "--point",
        "infinity",
        "--json-out",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let body = std::fs::read_to_string(&report_path).unwrap();
    assert_eq!(body.trim(), PINNED_REPORT);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn larger_twist_reports_its_window() {
    let out = run(&[
        "order", "--curve", CURVE, "--divisor", DIVISOR, "--point", "infinity", "--n", "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_line(&out)).unwrap();
    assert_eq!(v["order"], 3);
    assert_eq!(v["n_used"], 3);
    assert_eq!(v["gap_sequence"], serde_json::json!([1, 3, 5]));
}
