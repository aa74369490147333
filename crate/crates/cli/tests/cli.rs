use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uqminus")).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn verify_factorization_passes() {
    let o = run(&["verify", "--type", "A2", "--word", "1", "--max-height", "6", "--check", "factorization"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["theorem"], "factorization");
    assert_eq!(v["type"], "A2");
    assert_eq!(v["epsilon"], 1);
    assert_eq!(v["pass"], true);
    assert_eq!(v["weights"].as_array().unwrap().len(), 28);
}

#[test]
fn usage_errors_exit_two() {
    let o = run(&["verify", "--type", "A2", "--word", "1,1", "--max-height", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--word: non-reduced word at position 2"));

    let o = run(&["basis", "--type", "E8"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--type"));

    let o = run(&["pbw", "--type", "A2", "--word", "1,2", "--epsilon", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--epsilon"));

    let o = run(&["verify", "--type", "A2", "--word", "1", "--check", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));

    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn basis_writes_dual_divided_power() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let o = run(&["basis", "--type", "A1", "--max-height", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let w2 = v["weights"].as_array().unwrap().iter().find(|w| w["weight"] == serde_json::json!([2])).unwrap();
    let up = &w2["columns"][0]["up"]["coords"]["11"];
    assert_eq!(up["num"], serde_json::json!({"1": 1}));
    assert_eq!(up["den"], serde_json::json!({"0": 1}));
}

#[test]
fn pbw_reports_transition_matrix() {
    let o = run(&["pbw", "--type", "A2", "--word", "1,2,1", "--epsilon", "+1", "--weight", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let w = &v["weights"][0];
    assert_eq!(w["transition"]["matrix"], serde_json::json!([["1", "0"], ["q", "1"]]));
    assert_eq!(w["transition"]["columns"], serde_json::json!(["b[21]", "b[12]"]));
    assert_eq!(w["monomials"][0]["norm"], "1 - q^2");
    assert_eq!(w["monomials"][1]["label"], "b[12]");
}

#[test]
fn gcm_file_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b2.json");
    std::fs::write(&path, r#"{"gcm": [[2, -2], [-1, 2]], "d": [1, 2], "labels": ["a", "b"]}"#).unwrap();
    let o = run(&["crystal", "--gcm", path.to_str().unwrap(), "--max-height", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("weight,vertex,index,eps,phi,eps_star,phi_star,f,e,f_star,e_star\n"));
    assert!(text.lines().any(|l| l.starts_with("\"(0,0)\",u,a,")));

    std::fs::write(&path, r#"{"gcm": [[2, -1], [-2, 3]], "d": [1, 1]}"#).unwrap();
    assert_eq!(run(&["crystal", "--gcm", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_all_with_split() {
    let o = run(&["verify", "--type", "A2", "--word", "1,2,1", "--epsilon", "-1", "--split", "1", "--max-height", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["reports"].as_array().unwrap().len(), 6);
    assert_eq!(v["pass"], true);
}
