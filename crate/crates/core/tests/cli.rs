//! End-to-end behaviour of the `bnalg` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn bnalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bnalg")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn analyze_reports_structure() {
    let v = json(&bnalg(&["analyze", "--graph", &fixture("collider_chain.json")]));
    assert_eq!(v["toric_criterion"], false);
    assert_eq!(v["perfect"], false);
    assert_eq!(v["graph"]["n"], 4);
    assert_eq!(v["reduced_statements"].as_array().unwrap().len(), 2);
    assert_eq!(v["degrees"][0]["kernel_dim"], 5);
    assert_eq!(v["degrees"][0]["equal"], true);
    assert!(v["witness"].is_null());
}

#[test]
fn analyze_diamond_is_toric_with_a_cycle() {
    let v = json(&bnalg(&["analyze", "--graph", &fixture("diamond.json")]));
    assert_eq!(v["toric_criterion"], true);
    assert_eq!(v["induced_cycles"], serde_json::json!([[1, 2, 3, 4]]));
}

#[test]
fn param_lists_sixteen_pairs() {
    let v = json(&bnalg(&["param", "--graph", &fixture("two_sinks.json")]));
    let rows = v["basis"].as_array().unwrap();
    assert_eq!(rows.len(), 16);
    assert_eq!(rows[1]["index"], "x_111+");
    assert_eq!(rows[1]["image"], "t1__1*t2__1*t3_11_1*z");
}

#[test]
fn param_rejects_non_toric_graph() {
    let out = bnalg(&["param", "--graph", &fixture("collider_chain.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn ci_gens_counts() {
    let v = json(&bnalg(&["ci-gens", "--graph", &fixture("collider_chain.json")]));
    assert_eq!(v["generator_count"], 5);
    assert_eq!(v["global_dim"], 5);
}

#[test]
fn kernel_in_both_bases_has_equal_dimension() {
    let std = json(&bnalg(&["kernel", "--graph", &fixture("two_sinks.json"), "--degree", "2"]));
    let plus = json(&bnalg(&["kernel", "--graph", &fixture("two_sinks.json"), "--degree", "2", "--basis", "plus"]));
    assert_eq!(std["kernel_dim"], plus["kernel_dim"]);
    assert_eq!(plus["basis"], "plus");
    assert_eq!(std["elements"].as_array().unwrap().len(), std["kernel_dim"].as_u64().unwrap() as usize);
}

#[test]
fn check_gss_omits_elements() {
    let v = json(&bnalg(&["check-gss", "--graph", &fixture("collider_tail_binary.json"), "--degree", "2"]));
    assert_eq!(v["equal"], true);
    assert!(v.get("elements").is_none());
}

#[test]
fn witness_detm() {
    let v = json(&bnalg(&["witness", "--type", "detM", "--graph", &fixture("collider_tail_ternary.json")]));
    assert_eq!(v["type"], "detM");
    assert_eq!(v["certificate"]["in_kernel"], true);
    assert_eq!(v["certificate"]["outside_global"], true);
}

#[test]
fn witness_deg4_precondition() {
    let out = bnalg(&["witness", "--type", "deg4", "--graph", &fixture("collider_chain.json")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn guard_exit_code() {
    let out = bnalg(&["kernel", "--graph", &fixture("collider_chain.json"), "--max-monomials", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds limit"));
}

#[test]
fn invalid_input_exit_code() {
    assert_eq!(bnalg(&["analyze", "--graph", "/nonexistent/graph.json"]).status.code(), Some(1));
    assert_eq!(bnalg(&["analyze"]).status.code(), Some(1));
    assert_eq!(bnalg(&["analyze", "--graph", &fixture("collider_chain.json"), "--format", "xml"]).status.code(), Some(1));
}

#[test]
fn cyclic_graph_is_invalid() {
    let dir = std::env::temp_dir().join(format!("bnalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cycle.json");
    std::fs::write(
        &path,
        r#"{"variables":[{"id":1,"levels":2},{"id":2,"levels":2}],"edges":[[1,2],[2,1]]}"#,
    )
    .unwrap();
    let out = bnalg(&["analyze", "--graph", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    let args = ["rank", "--graph", &fixture("collider_chain.json")];
    let a = bnalg(&args);
    let b = bnalg(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn text_format() {
    let out = bnalg(&["analyze", "--graph", &fixture("collider_chain.json"), "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("toric criterion: false"));
    assert!(s.contains("degree 2: kernel 5 ci 5 equal true"));
}

#[test]
fn version_goes_to_stdout() {
    let out = bnalg(&["--version"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("bnalg"));
}
