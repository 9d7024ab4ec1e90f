use std::process::{Command, Output};

use serde_json::Value;

fn forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_forge"))
        .args(args)
        .env_remove("FORGE_FIXTURES")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = forge(args);
    let code = out.status.code().unwrap();
    let value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stderr)));
    (value, code)
}

#[test]
fn graph_check_passes_on_catalog_graph() {
    let (v, code) = json(&["graph", "check", "cycle:4"]);
    assert_eq!(code, 0);
    assert_eq!(v["vertices"], 4);
    assert_eq!(v["assumptions"]["connected"]["status"], "pass");
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(forge(&["graph", "check", "nope:1"]).status.code(), Some(2));
    assert_eq!(forge(&["graph", "frobnicate"]).status.code(), Some(2));
    assert_eq!(forge(&["product", "pl", "prism:3", "--pattern", "1,x"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"vertices": 2, "edges": [[0, 0]], "base": 0}"#).unwrap();
    let out = forge(&["graph", "check", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("self-loop"));
}

#[test]
fn graph_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k13.json");
    std::fs::write(&path, r#"{"vertices": 4, "edges": [[0,1],[0,2],[0,3]], "base": 1}"#).unwrap();
    let (v, code) = json(&["hyper", "conditions", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["s1"]["holds"], false);
}

#[test]
fn cayley_realize_prism_with_explicit_generators() {
    let (v, code) = json(&["cayley", "realize", "zmod:3,2", "--gens", "(1,0);(2,0);(0,1)"]);
    assert_eq!(code, 0);
    assert_eq!(v["vertices"], 6);
    assert_eq!(v["edges"], 9);
    assert_eq!(v["s3"]["holds"], true);
    assert_eq!(forge(&["cayley", "realize", "zmod:3,2", "--gens", "(1,0);(0,1)"]).status.code(), Some(2));
}

#[test]
fn cayley_realize_lattice_ball() {
    let (v, _) = json(&["cayley", "realize", "lattice:2", "--radius", "3"]);
    assert_eq!(v["vertices"], 25);
    assert_eq!(v["complete"], false);
    assert_eq!(v["sphere_sizes"], serde_json::json!([1, 4, 8, 12]));
    assert_eq!(forge(&["cayley", "realize", "lattice:2"]).status.code(), Some(2));
    let out = forge(&["cayley", "realize", "lattice:2", "--radius", "30", "--cap-elements", "100"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_written_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let out = forge(&["hyper", "table", "lattice:1", "--bound", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["bound"], 4);
    assert_eq!(v["rows"][1][1]["0"], "1/2");
    assert_eq!(v["rows"][1][1]["2"], "1/2");
}

#[test]
fn classify_reports_verdicts() {
    let (v, _) = json(&["hyper", "classify", "prism:3"]);
    assert_eq!(v["verdict"], "Hypergroup");
    let (v, _) = json(&["hyper", "classify", "tree:binary:6"]);
    assert_eq!(v["commutative"], false);
}

#[test]
fn product_routes_agree_on_prism() {
    let (pl, _) = json(&["product", "pl", "prism:3", "--pattern", "1,2,1"]);
    assert_eq!(pl["distribution"], serde_json::json!({"0": "2/9", "1": "10/27", "2": "11/27"}));
    let (j, _) = json(&["product", "j", "prism:3", "--pattern", "1,2,1"]);
    let (brute, _) = json(&["product", "brute", "prism:3", "--pattern", "1,2,1"]);
    assert_eq!(j["distribution"], serde_json::json!({"0": "2/9", "1": "1/3", "2": "4/9"}));
    assert_eq!(j["distribution"], brute["distribution"]);
}

#[test]
fn monte_carlo_is_reproducible_per_seed() {
    let args = ["product", "mc", "prism:3", "--pattern", "1,2,1", "--trials", "20000"];
    let (a, _) = json(&args);
    let (b, _) = json(&args);
    assert_eq!(a, b);
    let mut seeded = args.to_vec();
    seeded.extend(["--seed", "7"]);
    let (c, _) = json(&seeded);
    assert_ne!(a["distribution"]["counts"], c["distribution"]["counts"]);
    assert_eq!(c["distribution"]["seed"], 7);
}

#[test]
fn tsv_output() {
    let out = forge(&["product", "j", "prism:3", "--pattern", "1,2,1", "--format", "tsv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "distribution.1\t1/3"));
}

#[test]
fn walk_commands() {
    let (law, code) = json(&["walk", "joint", "cycle:4", "--depth", "2"]);
    assert_eq!(code, 0);
    assert_eq!(law["depth"], 2);
    let (m, _) = json(&["walk", "markov", "cycle:4", "--depth", "3"]);
    assert_eq!(m["is_iid"], true);
    let dir = tempfile::tempdir().unwrap();
    let alpha = dir.path().join("alpha.json");
    std::fs::write(&alpha, r#"{"1": "1/2"}"#).unwrap();
    let (m, _) = json(&["walk", "markov", "cycle:4", "--alpha", alpha.to_str().unwrap()]);
    assert_eq!(m["is_markov"], true);
    assert_eq!(forge(&["walk", "joint", "tree:binary:4"]).status.code(), Some(2));
}

#[test]
fn matrix_commands() {
    let (n, _) = json(&["matrix", "norms", "lattice:1", "--k", "1"]);
    assert_eq!(n["c_k"], "5/4");
    assert_eq!(n["d_k"], 2);
    let (c, code) = json(&["matrix", "commute", "lattice:2"]);
    assert_eq!((c["consistent"].clone(), code), (Value::Bool(true), 0));
    let (s, code) = json(&["matrix", "stationary", "cycle:4"]);
    assert_eq!(code, 0);
    assert_eq!(s["pi"], serde_json::json!(["1/4", "1/2", "1/4"]));
    let (irr, _) = json(&["matrix", "irreducible", "cycle:4", "--k", "2"]);
    assert_eq!(irr["irreducible"], false);
    let (mc, code) = json(&["matrix", "maincoro", "cycle:5", "--pattern", "1,2"]);
    assert_eq!((mc["holds"].clone(), code), (Value::Bool(true), 0));
    assert_eq!(forge(&["matrix", "maincoro", "tree:binary:6", "--pattern", "1,1"]).status.code(), Some(2));
    let out = forge(&["matrix", "maincoro", "tree:binary:6", "--pattern", "1,1", "--informational"]);
    assert_ne!(out.status.code(), Some(2));
}

#[test]
fn search_small() {
    let (v, code) = json(&["search", "conjecture", "--max-vertices", "5", "--bases", "canonical"]);
    assert_eq!(v["graphs_per_size"], serde_json::json!([1, 1, 2, 6, 21]));
    let clean = v["counterexamples"].as_array().unwrap().is_empty();
    assert_eq!(code, if clean { 0 } else { 1 });
}

#[test]
fn paper_regression_reports_mismatches() {
    let (v, code) = json(&["paper-regression"]);
    assert_eq!(code, 1);
    assert_eq!(v["failed"], 3);
}

#[test]
fn fixture_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("figure3.json"), r#"{"vertices": 3, "edges": [[0,1],[1,2]], "base": 0}"#)
        .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_forge"))
        .args(["graph", "check", "figure:3"])
        .env("FORGE_FIXTURES", dir.path())
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["vertices"], 3);
    let (v, _) = json(&["graph", "check", "figure:3"]);
    assert_ne!(v["vertices"], 3);
}
