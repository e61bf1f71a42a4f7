use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn plumbline(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plumbline"))
        .args(args)
        .env_remove("PLUMBLINE_TOL")
        .output()
        .expect("binary runs")
}

fn json_stdout(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn temp_file(name: &str, contents: &Value) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("plumbline-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string(contents).unwrap()).unwrap();
    path
}

fn curve(tau: [&str; 2], point: &str, c: [&str; 2]) -> Value {
    json!({ "tau": tau, "marks": [{ "point": point, "c": c }] })
}

#[test]
fn counts_alkanes() {
    let o = plumbline(&["alkanes", "count", "--max", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_stdout(&o)["counts"], json!([1, 1, 1, 2, 3, 5, 9, 18]));
}

#[test]
fn enumerates_alkanes() {
    let o = plumbline(&["alkanes", "enum", "--genus", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_stdout(&o);
    let n = v.as_array().or_else(|| v["alkanes"].as_array()).map(Vec::len);
    assert_eq!(n, Some(5), "{v}");
}

#[test]
fn relations_verify_passes_in_exact_mode() {
    let o = plumbline(&["relations", "verify", "--genus", "4", "--trials", "5", "--order", "17", "--exact"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn relations_verify_fails_with_corrupted_octic() {
    let o = plumbline(&["relations", "verify", "--genus", "4", "--exact", "--corrupted-octic"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn relations_verify_rejects_small_genus_and_order() {
    assert_eq!(plumbline(&["relations", "verify", "--genus", "3"]).status.code(), Some(2));
    assert_eq!(plumbline(&["relations", "verify", "--genus", "4", "--order", "9"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(plumbline(&["periods", "tree", "--config", "/nonexistent/x.json"]).status.code(), Some(2));
    assert_eq!(plumbline(&["alkanes", "count", "--bogus"]).status.code(), Some(2));
    assert_eq!(plumbline(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(plumbline(&["alkanes", "count", "--max", "8", "--exact", "--numeric"]).status.code(), Some(2));
    assert_eq!(plumbline(&["--help"]).status.code(), Some(0));
}

#[test]
fn invalid_tolerance_exits_two() {
    let o = Command::new(env!("CARGO_BIN_EXE_plumbline"))
        .args(["alkanes", "count", "--max", "3"])
        .env("PLUMBLINE_TOL", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn selftest_is_deterministic_and_detects_corruption() {
    let a = plumbline(&["selftest", "--seed", "7"]);
    let b = plumbline(&["selftest", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_stdout(&a)["summary"]["failed"], json!(0));
    let bad = plumbline(&["selftest", "--inject-corrupted-octic"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn out_flag_writes_the_report() {
    let dir = std::env::temp_dir().join(format!("plumbline-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dims.json");
    let o = plumbline(&["surfaces", "dims", "--genus", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v.to_string().contains("36"), "{v}");
}

#[test]
fn surfaces_egamma_reports_h_minus_one() {
    let o = plumbline(&["surfaces", "egamma", "--genus", "5", "--trials", "2", "--exact"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("\"span_dim\": 4"), "{text}");
}

#[test]
fn periods_from_config_files() {
    let a = curve(["1/3", "2"], "Half", ["2", "0"]);
    let b = curve(["0", "3/2"], "TauHalf", ["1", "-1"]);
    let pair = temp_file("pair.json", &json!({ "curve_a": a, "curve_b": b }));
    let o = plumbline(&["periods", "pair", "--config", pair.to_str().unwrap(), "--exact"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));

    let star = temp_file(
        "star.json",
        &json!({
            "curves": [
                curve(["0", "1"], "O", ["1", "0"]),
                curve(["1/2", "2"], "O", ["2", "0"]),
                curve(["0", "3"], "O", ["1", "1"]),
                curve(["1/4", "1"], "O", ["3", "0"]),
            ],
            "attachment_points": [["0", "0"], ["1", "0"], ["2", "0"], ["5", "0"]],
        }),
    );
    for mode in ["--exact", "--numeric"] {
        let o = plumbline(&["periods", "star", "--config", star.to_str().unwrap(), mode]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }

    let mark = |p: &str| json!({ "point": p, "c": ["1", "0"] });
    let tree = temp_file(
        "tree.json",
        &json!({
            "alkane": { "genus": 3, "edges": [[1, 2], [2, 3]] },
            "taus": [["0", "1"], ["0", "2"], ["1/2", "1"]],
            "edges": [
                { "edge": [1, 2], "variable": "t_1_2", "mark_i": mark("O"), "mark_j": mark("O") },
                { "edge": [2, 3], "variable": "t_2_3", "mark_i": mark("Half"), "mark_j": mark("O") },
            ],
        }),
    );
    let o = plumbline(&["periods", "tree", "--config", tree.to_str().unwrap(), "--exact"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}
