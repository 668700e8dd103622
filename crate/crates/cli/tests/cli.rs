use std::process::{Command, Output};

use serde_json::Value;

fn bmw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bmw")).args(args).env_remove("BMW_MAX_N").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn rep_r1_n3_passes() {
    let out = bmw(&["rep", "--r", "1", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["modules"].as_array().unwrap().len(), 4);
}

#[test]
fn basis_r3_n2_totals_27() {
    let v = json(&bmw(&["basis", "--r", "3", "--n", "2"]));
    assert_eq!(v["total"], 27);
}

#[test]
fn tabs_count_r1_n4_is_105() {
    let out = bmw(&["tabs", "--r", "1", "--n", "4", "--count"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["sum_sq"], 105);
}

#[test]
fn every_command_runs_with_defaults() {
    for c in ["params", "tabs", "rep", "identities", "omega", "br2", "basis", "rank", "gram", "classify"] {
        let out = bmw(&[c]);
        assert_eq!(out.status.code(), Some(0), "{c}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["command"], c);
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(bmw(&["rank", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(bmw(&["params", "--r", "2"]).status.code(), Some(2));
    assert_eq!(bmw(&["gram", "--n", "3"]).status.code(), Some(2));
    assert_eq!(bmw(&["basis", "--n", "7"]).status.code(), Some(2));
    assert_eq!(bmw(&["rep", "--precision", "8"]).status.code(), Some(2));
    let capped = Command::new(env!("CARGO_BIN_EXE_bmw")).args(["basis", "--n", "3"]).env("BMW_MAX_N", "2").output().unwrap();
    assert_eq!(capped.status.code(), Some(2));
    let raised = Command::new(env!("CARGO_BIN_EXE_bmw")).args(["basis", "--n", "7"]).env("BMW_MAX_N", "8").output().unwrap();
    assert_eq!(raised.status.code(), Some(0));
}

#[test]
fn reports_are_byte_identical() {
    for args in [&["rep", "--r", "3", "--n", "2"][..], &["rank", "--r", "1", "--n", "3"], &["omega", "--r", "3", "--n", "2", "--seed", "4"]] {
        let a = bmw(args);
        let b = bmw(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    assert!(json(&bmw(&["rank", "--timing"]))["rank"]["elapsed_ms"].is_u64());
    assert!(json(&bmw(&["rank"]))["rank"].get("elapsed_ms").is_none());
}

#[test]
fn csv_and_out_file() {
    let dir = std::env::temp_dir().join(format!("bmw-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("basis.csv");
    let out = bmw(&["basis", "--r", "3", "--n", "2", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("f,lambda,std,r_pow_f,cosets,delta"));
    let delta: u64 = lines.map(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap().pow(2)).sum();
    assert_eq!(delta, 27);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn preset_file_drives_parameters() {
    let dir = std::env::temp_dir().join(format!("bmw-preset-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p.txt");
    std::fs::write(&path, "# three parameters\nr = 3\nq = 3\nk = 9, -5, 2\nalpha = -1\n").unwrap();
    let out = bmw(&["params", "--preset", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["r"], 3);
    assert_eq!(v["alpha"], -1);
    assert_eq!(v["q"], "3/1");
    assert_eq!(bmw(&["params", "--preset", path.to_str().unwrap(), "--r", "5"]).status.code(), Some(2));
    assert_eq!(bmw(&["params", "--preset", "/nonexistent/preset"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn failing_check_exits_1_with_json_detail() {
    // u = 2, 3, 5 at q = 2 puts contents too close together; the module build refuses them
    let dir = std::env::temp_dir().join(format!("bmw-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p.txt");
    std::fs::write(&path, "r = 3\nq = 2\nu = 2, 3, 5\n").unwrap();
    let out = bmw(&["rep", "--preset", path.to_str().unwrap(), "--n", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).expect("json failure detail");
    assert_eq!(err["pass"], false);
    assert_eq!(err["command"], "rep");
    std::fs::remove_dir_all(&dir).unwrap();
}
