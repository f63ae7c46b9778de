//! End-to-end tests against the real binary: schema-stable reports,
//! exit-code taxonomy, and reproducibility of seeded commands.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sepgrad"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn write_graph(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn gen_grid3_n2_is_k8() {
    let text = stdout_of(&["gen", "grid3", "--n", "2"]);
    let expected = sepgrad_core::graph::write_edge_list(&sepgrad_core::Graph::complete(8));
    assert_eq!(text, format!("{expected}\n"));
}

#[test]
fn gen_k1t_t3_is_c6() {
    let text = stdout_of(&["gen", "k1t", "--t", "3"]);
    let g = sepgrad_core::graph::parse_edge_list(&text).unwrap();
    assert_eq!((g.n(), g.m()), (6, 6));
    assert!((0..6).all(|v| g.degree(v) == 2));
}

#[test]
fn pack_grid_schema_is_stable() {
    let text = stdout_of(&["pack", "grid", "--n", "4", "--eps", "1"]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["meta"]["mode"], "grid");
    assert_eq!(doc["meta"]["eps"], "1");
    assert_eq!(doc["meta"]["bound"], 8);
    assert_eq!(doc["meta"]["seed"], serde_json::Value::Null);
    assert_eq!(doc["meta"]["thickness"], "1");
    let entries = doc["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 3);
    for e in entries {
        assert_eq!(e["weight"], "1/3");
        assert!(e["set"].is_array());
    }
}

#[test]
fn expander_verify_csv_row_shape_and_determinism() {
    let a = stdout_of(&["expander-verify", "--n", "8", "--m", "1", "--seed", "3"]);
    let b = stdout_of(&["expander-verify", "--n", "8", "--m", "1", "--seed", "3"]);
    assert_eq!(a, b, "same seed must produce identical bytes");
    let mut lines = a.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,d,alpha,m,n_prime,separator_found,bound"
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row.len(), 7);
    assert_eq!(row[0], "8");
    assert_eq!(row[1], "3");
    assert_eq!(row[3], "1");
    assert_eq!(row[4], "20");
    let found: f64 = row[5].parse().unwrap();
    let bound: f64 = row[6].parse().unwrap();
    assert!(found >= bound);

    let json = stdout_of(&[
        "expander-verify",
        "--n",
        "8",
        "--m",
        "1",
        "--seed",
        "3",
        "--format",
        "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(doc["n"], 8);
    assert_eq!(doc["n_prime"], 20);
}

#[test]
fn exit_codes_follow_the_taxonomy() {
    let dir = tempfile::tempdir().unwrap();
    let big = write_graph(
        dir.path(),
        "big.el",
        &sepgrad_core::graph::write_edge_list(&sepgrad_core::Graph::path(40)),
    );
    // Refusal: exact separation over the size limit.
    let out = run(&["separate", "exact", "--input", &big]);
    assert_eq!(out.status.code(), Some(3));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["error"], "too_large");

    // Argument error: malformed input file.
    let bad = write_graph(dir.path(), "bad.el", "2 1\n0 0\n");
    let out = run(&["separate", "exact", "--input", &bad]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["error"], "parse");

    // Success path writes the requested file and exits 0.
    let small = write_graph(
        dir.path(),
        "p5.el",
        &sepgrad_core::graph::write_edge_list(&sepgrad_core::Graph::path(5)),
    );
    let out_path = dir.path().join("sep.json");
    let out = run(&[
        "separate",
        "exact",
        "--input",
        &small,
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(doc["size"], 1);
    assert_eq!(doc["balanced"], true);
}

#[test]
fn decompose_then_layer_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_graph(
        dir.path(),
        "p90.el",
        &sepgrad_core::graph::write_edge_list(&sepgrad_core::Graph::path(90)),
    );
    let dec_path = dir.path().join("dec.json");
    let out = run(&[
        "decompose",
        "--input",
        &graph,
        "--tw-budget",
        "1",
        "-o",
        dec_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout_of(&[
        "pack",
        "layered",
        "--input",
        &graph,
        "--decomposition",
        dec_path.to_str().unwrap(),
        "--k",
        "3",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["meta"]["mode"], "layered");
    assert_eq!(doc["entries"].as_array().unwrap().len(), 3);
}

#[test]
fn ptas_pipeline_on_k8() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_graph(
        dir.path(),
        "r2.el",
        &stdout_of(&["gen", "grid3", "--n", "2"]),
    );
    let pack_path = dir.path().join("pack.json");
    let out = run(&[
        "pack",
        "grid",
        "--n",
        "2",
        "--eps",
        "1",
        "-o",
        pack_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout_of(&[
        "ptas",
        "--input",
        &graph,
        "--pack",
        pack_path.to_str().unwrap(),
        "--eps",
        "1/2",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    // K_8 has independence number 1 and the trivial packing is exact.
    assert_eq!(doc["size"], 1);
    assert_eq!(doc["support_index"], 0);
}

#[test]
fn subgraph_pipeline_with_iterated_packing() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = write_graph(dir.path(), "c6.el", &stdout_of(&["gen", "k1t", "--t", "3"]));
    let p3 = write_graph(dir.path(), "p3.el", "3 2\n0 1\n1 2\n");
    let k4 = write_graph(
        dir.path(),
        "k4.el",
        &sepgrad_core::graph::write_edge_list(&sepgrad_core::Graph::complete(4)),
    );
    let pack_path = dir.path().join("pack.json");
    let out = run(&[
        "pack",
        "iterated",
        "--input",
        &c6,
        "--eps",
        "1",
        "--delta",
        "0.5",
        "--iota",
        "0.25",
        "--seed",
        "0",
        "-o",
        pack_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let found = stdout_of(&[
        "subgraph",
        "--input",
        &c6,
        "--pattern",
        &p3,
        "--pack",
        pack_path.to_str().unwrap(),
    ]);
    assert_eq!(
        serde_json::from_str::<serde_json::Value>(&found).unwrap()["found"],
        true
    );
    let missing = stdout_of(&[
        "subgraph",
        "--input",
        &c6,
        "--pattern",
        &k4,
        "--pack",
        pack_path.to_str().unwrap(),
    ]);
    assert_eq!(
        serde_json::from_str::<serde_json::Value>(&missing).unwrap()["found"],
        false
    );
}

#[test]
fn nabla_report_schema() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = write_graph(dir.path(), "c6.el", &stdout_of(&["gen", "k1t", "--t", "3"]));
    let text = stdout_of(&["nabla", "brute", "--input", &c6, "--k", "1"]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["k"], 1);
    assert_eq!(doc["density"], "1");
    assert!(doc["certificate"]["trees"].is_array());
    let greedy = stdout_of(&["nabla", "greedy", "--input", &c6, "--k", "1"]);
    let gdoc: serde_json::Value = serde_json::from_str(&greedy).unwrap();
    assert_eq!(gdoc["density"], "1");
}

#[test]
fn densify_and_shallow_reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let k16 = write_graph(
        dir.path(),
        "k16.el",
        &sepgrad_core::graph::write_edge_list(&sepgrad_core::Graph::complete(16)),
    );
    let args = [
        "densify", "--input", &k16, "--t", "2", "--eps", "0.3", "--c", "0.5", "--seed", "4",
    ];
    let a = stdout_of(&args);
    let b = stdout_of(&args);
    assert_eq!(a, b);
    let doc: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert!(doc["outcome"].is_string());

    let grid = write_graph(
        dir.path(),
        "grid.el",
        &sepgrad_core::graph::write_edge_list(&sepgrad_core::Graph::grid2d(10, 10)),
    );
    let shallow = stdout_of(&[
        "shallow-clique",
        "--input",
        &grid,
        "--eps",
        "1",
        "--seed",
        "0",
    ]);
    let sdoc: serde_json::Value = serde_json::from_str(&shallow).unwrap();
    assert_eq!(sdoc["m"], 18);
    assert_eq!(sdoc["t"], 2);
}

#[test]
fn params_reports() {
    let text = stdout_of(&[
        "params",
        "iter3",
        "--k",
        "16",
        "--delta",
        "0.75",
        "--mu",
        "1",
        "--b",
        "2.718281828459045",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["m"], 72);
    assert_eq!(doc["t"], 3);
    assert!((doc["eps"].as_f64().unwrap() - 1.0 / 12.0).abs() < 1e-12);

    let sc = stdout_of(&[
        "params",
        "split-constants",
        "--c",
        "1",
        "--delta",
        "0.5",
        "--iota",
        "0.25",
        "--max-deg",
        "3",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&sc).unwrap();
    assert_eq!(doc["c1"], 105.0);

    let eb = stdout_of(&["params", "expansion-bound", "--k", "1", "--g-value", "2"]);
    let doc: serde_json::Value = serde_json::from_str(&eb).unwrap();
    assert_eq!(doc["f"], 4.0);
}

#[test]
fn profile_emits_csv_with_reference_curve() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = write_graph(dir.path(), "c6.el", &stdout_of(&["gen", "k1t", "--t", "3"]));
    let text = stdout_of(&["profile", "--input", &c6, "--k-max", "1"]);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "k,nabla_estimate,reference");
    assert_eq!(lines.next().unwrap(), "0,1.000000,1.000000");
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "1");
    assert_eq!(row[1], "1.000000");
    assert!((row[2].parse::<f64>().unwrap() - std::f64::consts::E).abs() < 1e-5);
}

#[test]
fn cli_matches_direct_library_call() {
    // The binary is a thin wrapper: same parameters and seed give the
    // same numbers as calling the library.
    let json = stdout_of(&[
        "expander-verify",
        "--n",
        "10",
        "--m",
        "1",
        "--seed",
        "12",
        "--format",
        "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    let direct =
        sepgrad_core::expanders::expander_separator_experiment(10, 1, 12).unwrap();
    assert_eq!(doc["separator_found"], direct.separator_found);
    assert_eq!(doc["n_prime"], direct.n_prime);
    assert_eq!(doc["alpha"], format!("{}", direct.alpha_exact));
    assert_eq!(doc["bound"].as_f64().unwrap(), direct.bound);
}

#[test]
fn profile_uses_greedy_beyond_exact_range() {
    let dir = tempfile::tempdir().unwrap();
    let p100 = write_graph(
        dir.path(),
        "p100.el",
        &sepgrad_core::graph::write_edge_list(&sepgrad_core::Graph::path(100)),
    );
    let text = stdout_of(&["profile", "--input", &p100, "--k-max", "2"]);
    assert_eq!(text.lines().count(), 4);
    for line in text.lines().skip(1) {
        let est: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!((0.0..=1.0).contains(&est), "path density stays below 1");
    }
}

#[test]
fn pack_iterated_sample_mode_records_seed() {
    let dir = tempfile::tempdir().unwrap();
    let p200 = write_graph(
        dir.path(),
        "p200.el",
        &sepgrad_core::graph::write_edge_list(&sepgrad_core::Graph::path(200)),
    );
    let args = [
        "pack",
        "iterated",
        "--input",
        &p200,
        "--eps",
        "1",
        "--delta",
        "0.5",
        "--iota",
        "0.25",
        "--mode",
        "sample",
        "--samples",
        "50",
        "--seed",
        "9",
    ];
    let a = stdout_of(&args);
    let b = stdout_of(&args);
    assert_eq!(a, b);
    let doc: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(doc["meta"]["mode"], "sample");
    assert_eq!(doc["meta"]["seed"], 9);
}

#[test]
fn gen_regular_is_reproducible_and_requires_seed() {
    let a = stdout_of(&["gen", "regular", "--n", "10", "--seed", "6"]);
    let b = stdout_of(&["gen", "regular", "--n", "10", "--seed", "6"]);
    assert_eq!(a, b);
    let out = run(&["gen", "regular", "--n", "10"]);
    assert_eq!(out.status.code(), Some(2), "missing --seed is a usage error");
}
