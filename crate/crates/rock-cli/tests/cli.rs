use std::process::{Command, Output};

use serde_json::Value;

fn rock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rock"))
        .args(args)
        .env_remove("ROCK_CHAR")
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = rock(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout)
        .unwrap()
        .trim_end()
        .to_string()
}

#[test]
fn documented_examples() {
    assert_eq!(stdout(&["core", "4,1", "3"]), "1,1");
    assert_eq!(stdout(&["rouquier", "3", "3"]), "6,4,2,2,1,1");
    assert_eq!(stdout(&["lr", "-", "-", "-"]), "1");
    assert_eq!(stdout(&["weight", "6,4,2,2,1,1", "3"]), "0");
}

#[test]
fn abacus_json_lists_runner_rows() {
    let v: Value =
        serde_json::from_str(&stdout(&["abacus", "6,4,2,2,1,1", "3", "15", "--json"])).unwrap();
    assert_eq!(
        v["runners"],
        serde_json::json!([[0, 1, 2], [0, 1, 2, 3, 4], [0, 1, 2, 3, 4, 5, 6]])
    );
}

#[test]
fn outputs_reparse() {
    let core = stdout(&["core", "7,3,2", "3"]);
    assert_eq!(stdout(&["core", &core, "3"]), core);
    let image = stdout(&["mullineux", "[-|2,1|1]"]);
    assert_eq!(image, "[-|1|2,1]");
    assert_eq!(stdout(&["mullineux", &image]), "[-|2,1|1]");
}

#[test]
fn malformed_input_exits_1_with_error_object() {
    for args in [
        &["core", "4,x", "3"][..],
        &["mullineux", "1|2"],
        &["core", "4,1", "1"],
    ] {
        let out = rock(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        let err: Value = serde_json::from_slice(&out.stderr).unwrap();
        assert!(err["error"].is_string() && err["message"].is_string());
    }
}

#[test]
fn schur_oracle_csv() {
    let csv = stdout(&["weyl", "dec", "2", "2", "2", "--csv"]);
    assert_eq!(csv, ",2,\"1,1\"\n2,1,1\n\"1,1\",0,1");
}

#[test]
fn decmat_json_shape() {
    let v: Value = serde_json::from_str(&stdout(&["decmat", "rock", "2", "1", "--json"])).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    assert_eq!(v["cols"].as_array().unwrap().len(), 1);
}

#[test]
fn verification_commands_pass() {
    stdout(&["double", "verify", "s1", "2", "--char", "2"]);
    stdout(&["double", "verify", "tri:2", "1"]);
    stdout(&["schiver", "build", "A1", "1", "2"]);
    stdout(&["walk", "1", "2", "3"]);
    stdout(&["walk", "1", "1", "3", "--side", "schiver"]);
    let v: Value = serde_json::from_str(&stdout(&["powersum", "2", "2", "--json"])).unwrap();
    assert_eq!(v["complex"]["homology"], serde_json::json!([1, 3]));
}

#[test]
fn characteristic_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_rock"))
        .args(["double", "verify", "s1", "1", "--json"])
        .env("ROCK_CHAR", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["characteristic"], 2);

    let out = Command::new(env!("CARGO_BIN_EXE_rock"))
        .args(["double", "verify", "s1", "1"])
        .env("ROCK_CHAR", "two")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reports_have_no_csv_form() {
    assert_eq!(
        rock(&["walk", "1", "1", "2", "--csv"]).status.code(),
        Some(1)
    );
}
