use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_coarsegraph"));
    c.env_remove("COARSEGRAPH_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("coarsegraph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write(name: &str, v: &Value) -> String {
    let p = scratch(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p.display().to_string()
}

#[test]
fn generate_grid_window() {
    let out = run(&["generate", "--source", "grid2", "--radius", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["graph"]["n"], 25);
    assert_eq!(v["radius"], 3);
    assert_eq!(v["source"], "grid2");
}

#[test]
fn planarize_two_triangles() {
    let out = run(&["planarize", "--input", &fixture("two_triangles.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let c = &json(&out)["constants"];
    for (key, want) in [("A1", 1), ("A2", 3), ("B", 1), ("C", 0), ("alpha", 1), ("beta", 17)] {
        assert_eq!(c[key], want, "{key}");
    }
}

#[test]
fn planarize_generated_tree_sum() {
    let out = run(&["generate", "--source", "tree_sum_planar", "--seed", "4", "--pieces", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let path = write("tree_sum.json", &json(&out));
    let out = run(&["planarize", "--input", &path]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&out)["report"]["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn broken_cover_exits_one_with_witnesses() {
    let cover = serde_json::json!({"r": 1, "claimed_D": 2, "families": [[[0, 1], [2, 3]], [[5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15]]]});
    let path = write("broken_cover.json", &cover);
    let out = run(&["cover", "check", "--n", "4", "--cover", &path]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["passed"], false);
    assert_eq!(v["covering"], false);
    assert_eq!(v["uncovered"], serde_json::json!([4]));
    assert_eq!(v["disjointness_witness"]["vertices"], serde_json::json!([1, 2]));
    assert_eq!(v["diameter_witness"]["distance"], 5);
}

#[test]
fn built_cover_rechecks() {
    let out = run(&["cover", "build", "--method", "grid", "--n", "20", "--r", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let path = write("grid_cover.json", &json(&out));
    let out = run(&["cover", "check", "--n", "20", "--cover", &path]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["families"], 3);
}

#[test]
fn cover_sample_csv() {
    let out = run(&["cover", "sample", "--method", "layered", "--n", "32", "--rs", "2,4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "r,D,families,c");
    assert_eq!(lines.len(), 3);
}

#[test]
fn claw_certificate_rechecks() {
    let out = run(&["fatminor", "claw", "--m", "3", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let mut v = json(&out);
    let path = write("claw.json", &v);
    let out = run(&["fatminor", "verify", "--input", &path]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["violations"], serde_json::json!([]));

    v["certificate"]["k"] = serde_json::json!(1000);
    let path = write("claw_too_fat.json", &v);
    let out = run(&["fatminor", "verify", "--input", &path]);
    assert_eq!(out.status.code(), Some(1));
    let clauses: Vec<String> = json(&out)["violations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["clause"].as_str().unwrap().to_string())
        .collect();
    assert!(clauses.iter().any(|c| c == "separation"), "{clauses:?}");
}

#[test]
fn search_result_rechecks() {
    let grid = run(&["generate", "--source", "grid2", "--radius", "4"]);
    let graph = write("grid_graph.json", &json(&grid)["graph"]);
    let out = run(&["fatminor", "search", "--graph", &graph, "--pattern", "K2", "--k", "2", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let cert = write("found.json", &json(&out));
    let out = run(&["fatminor", "verify", "--graph", &graph, "--cert", &cert]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn qi_measure_identity_and_bounds() {
    let grid = run(&["generate", "--source", "grid2", "--radius", "2"]);
    let graph = write("small_grid.json", &json(&grid)["graph"]);
    let n = json(&grid)["graph"]["n"].as_u64().unwrap();
    let map: Vec<[u64; 2]> = (0..n).map(|i| [i, i]).collect();
    let map = write("id_map.json", &serde_json::json!({ "map": map }));
    let out = run(&[
        "qi-measure", "--domain", &graph, "--codomain", &graph, "--map", &map, "--a", "1", "--lambda", "1", "--eps", "0",
        "--radius", "0",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["is_qi"], true);
    assert_eq!(v["distortion"]["c1"]["exact"], "1/1");
    assert_eq!(v["embedding"]["b"], 1);
}

#[test]
fn drawing_planarization_and_power_bound() {
    let out = run(&["generate", "--source", "one_planar_grid", "--width", "4", "--height", "4", "--seed", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let input = write("drawn.json", &v);
    let out = run(&["lcr", "planarize-drawing", "--input", &input]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["planar"], true);

    let f2 = write("f2.json", &json(&out)["f2"]);
    let guest = write("drawn_graph.json", &v["graph"]);
    let out = run(&["lcr", "bound", "--host", &f2, "--guest", &guest, "--k", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let b = json(&out);
    assert_eq!(b["within_formula"], true);
    let out = run(&["lcr", "realize", "--host", &f2, "--guest", &guest, "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["paths"].as_array().unwrap().iter().all(|p| p.as_array().unwrap().len() <= 3));
}

#[test]
fn pipeline_planted_chain() {
    for seed in ["0", "1", "2"] {
        let out = run(&["pipeline", "drawn-qi", "--seed", seed]);
        assert_eq!(out.status.code(), Some(0), "seed {seed}");
        assert_eq!(json(&out)["within_formula"], true);
    }
}

#[test]
fn deterministic_across_threads() {
    let args = ["generate", "--source", "tree_sum_planar", "--seed", "9"];
    let a = bin().args(args).arg("--threads").arg("1").output().unwrap();
    let b = bin().args(args).env("COARSEGRAPH_THREADS", "4").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    let path = write("det.json", &json(&a));
    let p1 = run(&["planarize", "--input", &path]);
    let p2 = run(&["planarize", "--input", &path, "--threads", "3"]);
    assert_eq!(p1.stdout, p2.stdout);
}

#[test]
fn out_flag_writes_file() {
    let target = scratch("window.json");
    let out = run(&["generate", "--source", "binary_tree", "--radius", "2", "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(target).unwrap()).unwrap();
    assert_eq!(v["graph"]["n"], 7);
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(run(&["generate", "--source", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["planarize", "--input", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(run(&["cover", "frobnicate"]).status.code(), Some(2));
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("planarize"));
}

#[test]
fn reads_stdin() {
    use std::io::Write;
    use std::process::Stdio;
    let text = std::fs::read_to_string(fixture("two_triangles.json")).unwrap();
    let mut child = bin()
        .args(["planarize", "--input", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["constants"]["beta"], 17);
}
