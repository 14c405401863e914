use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_widthforge"))
        .args(args)
        .env_remove("WIDTHFORGE_BUDGET_SECS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn width_eval_reports_drawn_cut() {
    let out = run(&["width-eval", path(&data("fig1.graph")), path(&data("fig1.tree")), "--param", "mim"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["param"], "mim");
    let drawn = v["per_edge"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["cut_a"].as_array().unwrap().len() == 4)
        .unwrap();
    assert_eq!(drawn["value"], 4);

    let out = run(&["width-eval", path(&data("fig1.graph")), path(&data("fig1.tree")), "--param", "sim"]);
    assert_eq!(json(&out)["width"], 1);
}

#[test]
fn width_eval_rejects_linear_on_non_caterpillar() {
    let dir = tempfile::tempdir().unwrap();
    let tree = dir.path().join("balanced.tree");
    std::fs::write(&tree, "(((a1,a2),(a3,a4)),((b1,b2),(b3,b4)));\n").unwrap();
    let out = run(&["width-eval", path(&data("fig1.graph")), tree.to_str().unwrap(), "--param", "Omim", "--linear"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("caterpillar"));
}

#[test]
fn width_exact_and_decide() {
    let g = data("fig1.graph");
    let out = run(&["width-exact", path(&g), "--param", "sim"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "solved");
    assert_eq!(v["width"], 1);

    let out = run(&["decide", path(&g), "--param", "mim", "--w", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["answer"], "no");

    let out = run(&["decide", path(&g), "--param", "mim", "--w", "2", "--linear", "--max-nodes", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["answer"], "inconclusive");
}

#[test]
fn reduce_prints_and_writes_gadgets() {
    let out = run(&["reduce", path(&data("one-quartet.q")), "--gadget", "sim"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("8 6\n"), "{text}");

    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("h.graph");
    let out = run(&["reduce", path(&data("one-quartet.q")), "--gadget", "mimH", "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["vertices"], 13);
    let roles: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("h.graph.roles.json")).unwrap()).unwrap();
    assert_eq!(roles["omega"]["role"], "omega");
    assert_eq!(roles["g:a:0"]["point"], "a");
    assert!(std::fs::read_to_string(&target).unwrap().starts_with("13 "));
}

#[test]
fn solve_uqc_modes() {
    let out = run(&["solve-uqc", path(&data("one-quartet.q")), "--caterpillar"]);
    let v = json(&out);
    assert_eq!(v["satisfiable"], true);
    assert_eq!(v["order"].as_array().unwrap().len(), 4);
    let out = run(&["solve-uqc", path(&data("unsat2.q"))]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["satisfiable"], false);
}

#[test]
fn verify_suites() {
    let out = run(&["verify", "sim", path(&data("unsat2.q"))]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "verified");
    let claims: Vec<&str> = v["outcomes"].as_array().unwrap().iter().map(|o| o["claim"].as_str().unwrap()).collect();
    assert!(claims.contains(&"sim.no-decomposition-of-sim-width-1"));

    let out = run(&["verify", "mim", path(&data("one-quartet.q"))]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["verify", "structure", path(&data("unsat2.q"))]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_reports_inconclusive_with_exit_two() {
    let out = run(&["verify", "mim", path(&data("unsat2.q")), "--max-nodes", "10"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["status"], "inconclusive");
    let last = v["outcomes"].as_array().unwrap().last().unwrap().clone();
    assert!(last["evidence"]["stats"]["nodes"].as_u64().is_some());
}

#[test]
fn gen_is_deterministic() {
    let a = run(&["gen", "random-graph", "--n", "7", "--seed", "3"]);
    let b = run(&["gen", "random-graph", "--n", "7", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let q = run(&["gen", "random-uqc", "--points", "6", "--quartets", "3", "--seed", "1"]);
    assert!(String::from_utf8(q.stdout).unwrap().starts_with("points: a b c d e f\n"));
}

#[test]
fn bad_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.q");
    std::fs::write(&bad, "points: a b c d\na b | c z\n").unwrap();
    let out = run(&["solve-uqc", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let out = run(&["width-exact", "missing.graph", "--param", "mim"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["width-exact", path(&data("fig1.graph")), "--param", "MIM"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn single_thread_output_is_reproducible() {
    let g = data("fig1.graph");
    let strip = |o: Output| {
        let mut v = json(&o);
        v["stats"]["elapsed"] = Value::Null;
        v
    };
    let a = strip(run(&["width-exact", path(&g), "--param", "omim", "--linear"]));
    let b = strip(run(&["width-exact", path(&g), "--param", "omim", "--linear"]));
    assert_eq!(a, b);
}
