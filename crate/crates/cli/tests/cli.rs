//! End-to-end runs of the `amalgamlab` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amalgamlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("amalgamlab-{}-{name}", std::process::id()))
}

#[test]
fn catalog_list_has_25_rows() {
    let o = run(&["catalog", "list"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().skip(1).count(), 25);
    let q26 = text.lines().find(|l| l.starts_with("Q2^6")).unwrap();
    let cols: Vec<&str> = q26.split_whitespace().collect();
    assert_eq!(cols[4], "8");
    assert!(cols.contains(&"M16"));
}

#[test]
fn catalog_filter_s4() {
    let o = run(&["catalog", "list", "--filter", "s=4"]);
    assert_eq!(stdout(&o).lines().skip(1).count(), 6);
    assert_eq!(run(&["catalog", "list", "--filter", "x"]).status.code(), Some(2));
}

#[test]
fn verify_q1_1_passes() {
    let o = run(&["verify", "Q1^1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1/1 rows pass"));
}

#[test]
fn verify_q3_1_reports_three_double_cosets() {
    let o = run(&["verify", "Q3^1", "--json"]);
    // The literal relators for this row do not present B.
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let check = |name: &str| {
        report["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap().clone()
    };
    assert_eq!(check("double_cosets")["observed"], "3");
    assert_eq!(check("primitive_classes")["observed"], "1");
    assert_eq!(check("s")["observed"], "3");
    assert_eq!(report["schema"], 1);
}

#[test]
fn unknown_row_is_a_usage_error() {
    assert_eq!(run(&["verify", "Q9^9"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
}

#[test]
fn tiny_order_bound_is_a_resource_error() {
    let o = run(&["graph", "Q2^2", "--max-order", "100"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn presentation_q2_3_orders() {
    let o = run(&["presentation", "Q2^3", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("orders (B, G_x, G_e) = (4, 20, 8)"));
}

#[test]
fn enumerate_completions_q1_2() {
    let o = run(&["enumerate-completions", "Q1^2", "--max-cosets", "10000", "--limit", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("gives order 120 on 12 vertices"));
}

#[test]
fn graph_q4_1_emits_42_vertices() {
    let path = temp_path("q41.txt");
    let o = run(&["graph", "Q4^1", "--emit", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("42 vertices, 105 edges"));
    let g = amalgamlab::graphsym::Graph::parse_edge_list(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(g.vertex_count(), 42);
    assert_eq!(g.valency(), Some(5));
}

#[test]
fn verify_all_matches_golden() {
    let path = temp_path("all.json");
    let o = run(&["verify", "all", "--quiet", "--json", path.to_str().unwrap()]);
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("15/25 rows pass"));
    let golden = include_str!("golden/verify_all.json");
    assert_eq!(text.trim_end(), golden.trim_end());
}
