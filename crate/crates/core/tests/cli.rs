use std::path::PathBuf;
use std::process::{Command, Output};

use orbithull::io::{self, ProblemSpec};
use orbithull::RennerMonoid;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbithull")).args(args).output().expect("binary runs")
}

fn run_on(cmd: &str, file: &str, extra: &[&str]) -> Output {
    let path = fixture(file);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn classify_reports_type_and_saturation() {
    let o = run_on("classify", "a2.json", &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Finite; μ∈Q^sat\n"));
    let o = run_on("classify", "a1_affine.json", &[]);
    assert!(stdout(&o).starts_with("Affine; μ∉Q^sat\n"));
    assert!(stdout(&o).contains("J0 = {2}, J> = {1}"));
    let o = run_on("classify", "aab.json", &["--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["components"][0]["strongly_hyperbolic"], true);
}

#[test]
fn input_errors_exit_with_two() {
    let o = run_on("classify", "malformed.json", &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("a_{1,2} is positive"));

    let dir = std::env::temp_dir().join(format!("orbithull-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let broken = dir.join("broken.json");
    std::fs::write(&broken, "{\"cartan\": [[2, -1],\n  [-1, 2]],\n  \"mu\": [1, }").unwrap();
    let o = run(&["faces", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));

    let o = run_on("renner", "a2.json", &["--mul", "{\"unit\": \"9\"}"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["faces"]).status.code(), Some(2));
}

#[test]
fn faces_counts_and_truncation() {
    let o = run_on("faces", "a2.json", &[]);
    assert!(stdout(&o).starts_with("14 faces (complete)\n"));
    let o = run_on("faces", "a1_affine.json", &["--bound", "4"]);
    assert!(stdout(&o).starts_with("12 faces (truncated at bound 4)\n"));
    let o = run_on("faces", "a2.json", &["--bound", "0", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["faces"].as_array().unwrap().len(), 5);
    assert!(v["faces"].as_array().unwrap().iter().all(|f| f["sigma"] == ""));
}

#[test]
fn output_is_deterministic_and_out_writes_file() {
    let a = run_on("faces", "a1_affine.json", &["--bound", "3", "--dot"]);
    let b = run_on("faces", "a1_affine.json", &["--bound", "3", "--dot"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("digraph faces {"));
    assert!(stdout(&a).contains("[label=\"|{1}\"]"));

    let dir = std::env::temp_dir().join(format!("orbithull-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("table.json");
    let o = run_on("renner", "a2.json", &["--table", "--json", "--out", target.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 79);
    assert_eq!(v["complete"], true);
}

#[test]
fn renner_products_and_axioms() {
    let x = r#"{"unit": "1 2", "sigma": "2", "I": [1]}"#;
    let doc = ProblemSpec::parse(&std::fs::read_to_string(fixture("a2.json")).unwrap()).unwrap();
    let monoid = RennerMonoid::new(doc.dominant_point().unwrap()).unwrap();
    let parsed = io::parse_element(&monoid, x).unwrap();
    let inverse = io::element_json(&monoid.inverse(&parsed));
    let o = run_on("renner", "a2.json", &["--mul", &format!("{x};{inverse};{x}"), "--json"]);
    let p: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(p["product"], io::element_json(&parsed));

    let o = run_on("renner", "a1_affine.json", &["--verify-grm", "--bound", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("grm axioms: pass\n"));
    let o = run_on("renner", "a2.json", &[]);
    assert_eq!(stdout(&o).lines().count(), 6);
}

#[test]
fn oracle_and_weights_exit_codes() {
    assert_eq!(run_on("oracle", "a2.json", &[]).status.code(), Some(0));
    assert_eq!(run_on("oracle", "b2.json", &[]).status.code(), Some(0));
    let o = run_on("oracle", "aab.json", &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("{1} or {2}"));
    assert_eq!(run_on("oracle", "aab.json", &["--slice", "2"]).status.code(), Some(0));
    let o = run_on("weights", "a1_affine.json", &["--depth", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("19 weights with depth at most 10\n"));
}
