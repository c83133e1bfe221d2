use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn rlag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rlag")).args(args).output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    rlag(args).status.code().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = rlag(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rlag-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["bogus"]), 4);
    assert_eq!(code(&["run", "--routes", "square"]), 4);
    assert_eq!(code(&["base", "flip", "--face", "0", "--edge", "0,1"]), 4);
    assert_eq!(code(&["--emit-matrices", "les"]), 4);
    assert_eq!(code(&["square", "--form", "/nonexistent/form.json"]), 4);
    assert_eq!(code(&["cohomology", "--sheaf", "R3f"]), 4);
}

#[test]
fn disagreeing_routes_exit_two() {
    let args = ["run", "--side", "f", "--routes", "direct,square", "--form", "cube:4", "--assume-simply-connected", "--assume-rank-one"];
    let out = rlag(&args);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("agreement: Fail"));
}

#[test]
fn all_routes_on_the_quintic_side() {
    let dir = scratch("run");
    let out = rlag(&["--out", dir.to_str().unwrap(), "run", "--side", "f", "--routes", "all", "--form", "derived", "--assume-simply-connected"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("run.json")).unwrap()).unwrap();
    assert_eq!(report["agreement"], "pass");
    let routes = report["sides"][0]["routes"].as_array().unwrap();
    assert_eq!(routes.len(), 3);
    for r in routes {
        assert_eq!(r["h"], serde_json::json!([2, 29, 29, 2]), "{}", r["route"]);
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn monodromy_table_and_euler_characteristic() {
    let table = json(&["mono", "table"]);
    let rows: Vec<(&str, &str)> = table.as_array().unwrap().iter().map(|r| (r["label"].as_str().unwrap(), r["action"].as_str().unwrap())).collect();
    assert_eq!(rows.len(), 12);
    assert_eq!(rows[0], ("12,1", "(23)(47)"));
    assert_eq!(rows[11], ("34,4", "(17)(35)"));

    let euler = json(&["mono", "euler"]);
    assert_eq!((euler["negative"].as_u64(), euler["positive"].as_u64()), (Some(250), Some(50)));
    assert_eq!(euler["euler_characteristic"], -200);

    let comps = json(&["mono", "components"]);
    assert_eq!(comps["global"]["components"].as_array().unwrap().len(), 2);
}

#[test]
fn reports_are_deterministic() {
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|i| {
            let dir = scratch(&format!("det{i}"));
            let out = rlag(&["--out", dir.to_str().unwrap(), "--seed", "3", "cohomology", "--refine", "2", "--sheaf", "coverdual"]);
            assert!(out.status.success());
            let bytes = std::fs::read(dir.join("cohomology.json")).unwrap();
            std::fs::remove_dir_all(&dir).unwrap();
            bytes
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    let report: Value = serde_json::from_slice(&runs[0]).unwrap();
    assert_eq!(report["dims"], serde_json::json!([2, 101, 101, 2]));
}

#[test]
fn flip_experiment_exit_status() {
    assert_eq!(code(&["flip-experiment", "--side", "fdual"]), 0);
    assert_eq!(code(&["flip-experiment"]), 3);
    assert_eq!(code(&["flip-experiment", "--face", "12"]), 4);
}
