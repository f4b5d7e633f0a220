use std::process::{Command, Output};

fn nilcox(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilcox")).args(args).env_remove("NILCOX_CACHE_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

#[test]
fn kschur_example() {
    let o = nilcox(&["kschur", "-k", "2", "--lambda", "1,1"]);
    assert!(o.status.success());
    let mut terms: Vec<String> = stdout(&o).split(" + ").map(str::to_string).collect();
    terms.sort();
    assert_eq!(terms, ["u_0u_1", "u_1u_2", "u_2u_0"]);
    let h = nilcox(&["kschur", "-k", "2", "--lambda", "1,1", "--basis", "h"]);
    assert_eq!(stdout(&h), "-h(2) + h(1,1)");
}

#[test]
fn apply_example() {
    let o = nilcox(&["apply", "-k", "2", "--op", "D[2,1]", "--elem", "1,2,1,0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "2u_0 + u_2 + u_1");
    let window = nilcox(&["apply", "-k", "2", "--op", "U1", "--elem", "w:[0,2,4]"]);
    let word = nilcox(&["apply", "-k", "2", "--op", "U1", "--elem", "0"]);
    assert_eq!(stdout(&window), stdout(&word));
    let latex = nilcox(&["apply", "-k", "2", "--op", "U1", "--elem", "0", "--format", "latex"]);
    assert!(stdout(&latex).contains("\\mathbf{u}_1\\mathbf{u}_0"));
}

#[test]
fn output_is_stable() {
    let args = ["strong", "-k", "2", "-u", "0,1,2,0", "--format", "json"];
    let a = nilcox(&args);
    let b = nilcox(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["kschur"]["basis"], "kschur");
    assert_eq!(v["kschur"]["coeffs"][0]["index"], serde_json::json!([1, 1, 1, 1]));
}

#[test]
fn reproduce_passes() {
    let o = nilcox(&["reproduce", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let checks: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert!(checks.iter().all(|c| c["passed"] == true));
}

#[test]
fn verify_all_passes() {
    let o = nilcox(&["verify", "-k", "2", "-L", "6", "--all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let reports: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert!(reports.len() >= 10);
    assert!(reports.iter().all(|r| r["passed"] == true && r["failures"].as_array().unwrap().is_empty()));
}

#[test]
fn exit_codes() {
    assert_eq!(nilcox(&["apply", "-k", "2", "--op", "Q3", "--elem", "0"]).status.code(), Some(2));
    assert_eq!(nilcox(&["apply", "-k", "2", "--op", "U1", "--elem", "0,0"]).status.code(), Some(2));
    assert_eq!(nilcox(&["verify", "-k", "2", "-L", "3", "--identity", "bogus"]).status.code(), Some(2));
    assert_eq!(nilcox(&["bogus"]).status.code(), Some(2));
    assert_eq!(nilcox(&["elements", "-k", "2", "-L", "40"]).status.code(), Some(3));
}

#[test]
fn graph_formats_and_cache() {
    let dir = std::env::temp_dir().join(format!("nilcox-cache-{}", std::process::id()));
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_nilcox"))
            .args(["graph", "-k", "2", "-L", "3", "--which", "strong", "--format", "json"])
            .env("NILCOX_CACHE_DIR", &dir)
            .output()
            .unwrap()
    };
    let first = run();
    assert!(first.status.success());
    assert!(dir.join("graph-strong-k2-L3.json").exists());
    assert_eq!(first.stdout, run().stdout);
    assert_eq!(first.stdout, nilcox(&["graph", "-k", "2", "-L", "3", "--which", "strong", "--format", "json"]).stdout);
    std::fs::remove_dir_all(&dir).unwrap();

    let v: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["edges"][0].as_object().unwrap().len(), 3);
    let dot = nilcox(&[
        "graph", "-k", "2", "-L", "4", "--which", "strong", "--top", "1,2,1,0", "--top", "0,1,2,0", "--top", "0,2,1,0",
    ]);
    assert_eq!(stdout(&dot).matches(" -> ").count(), 34);
    let weak = nilcox(&["graph", "-k", "2", "-L", "2", "--which", "weak"]);
    assert!(stdout(&weak).starts_with("digraph weak"));
}

#[test]
fn elements_listing() {
    let o = nilcox(&["elements", "-k", "2", "-L", "4", "--grassmannian", "--format", "json"]);
    let list: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    // 0-Grassmannian elements of lengths 0..=4 match 2-bounded partitions: 1+1+2+2+3
    assert_eq!(list.len(), 9);
}
