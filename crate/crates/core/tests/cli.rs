//! End-to-end checks of the `influence-duel` binary: subcommand behavior,
//! file outputs, config handling and exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_influence-duel"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn gen_graph_writes_a_loadable_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ws.txt");
    let out = run(&[
        "gen-graph",
        "--model",
        "ws",
        "--n",
        "24",
        "--k",
        "4",
        "--p",
        "0.3",
        "--seed",
        "7",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let loaded = influence_duel::graph::load_edge_list(&path).unwrap();
    assert_eq!(loaded.graph.node_count(), 24);
    assert_eq!(loaded.graph.edge_count(), 48);
}

#[test]
fn play_writes_text_and_json_traces() {
    let dir = tempfile::tempdir().unwrap();
    let trace_txt = dir.path().join("game.log");
    let out = run(&[
        "play",
        "--graph",
        "ws:20:4:0.3",
        "--black",
        "min-threshold",
        "--red",
        "random",
        "--seed",
        "3",
        "--trace",
        trace_txt.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    assert!(stdout(&out).contains("result="));
    let text = std::fs::read_to_string(&trace_txt).unwrap();
    assert!(text.lines().next().unwrap().starts_with("t=0 player="));

    let trace_json = dir.path().join("game.json");
    let out = run(&[
        "play",
        "--graph",
        "ws:20:4:0.3",
        "--black",
        "min-threshold",
        "--red",
        "random",
        "--seed",
        "3",
        "--trace",
        trace_json.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&trace_json).unwrap()).unwrap();
    assert!(v["trace"].as_array().unwrap().len() as u64 == v["turns"].as_u64().unwrap());
}

#[test]
fn match_csv_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let args = |out: &Path| {
        vec![
            "match".to_string(),
            "--dataset".into(),
            "sw".into(),
            "--black".into(),
            "random".into(),
            "--red".into(),
            "min-threshold".into(),
            "--games".into(),
            "5".into(),
            "--seed".into(),
            "99".into(),
            "--out".into(),
            out.to_str().unwrap().to_string(),
        ]
    };
    let p1 = dir.path().join("a.csv");
    let p2 = dir.path().join("b.csv");
    assert!(bin().args(args(&p1)).output().unwrap().status.success());
    assert!(bin().args(args(&p2)).output().unwrap().status.success());
    assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
    // Companion plot data appears beside the results.
    assert!(dir.path().join("a.plot.csv").exists());
    let header = std::fs::read_to_string(&p1).unwrap();
    assert!(header.starts_with(
        "run_id,starter,winner,black_nodes,red_nodes,turns,graph_n,graph_m,seed\n"
    ));
}

#[test]
fn match_on_a_file_dataset_samples_a_community() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("clique.txt");
    let mut text = String::new();
    for i in 0..8u32 {
        for j in (i + 1)..8 {
            text.push_str(&format!("{i} {j}\n"));
        }
    }
    std::fs::write(&edges, text).unwrap();
    let dataset = format!("file:{}", edges.display());
    let csv = dir.path().join("out.csv");
    let out = run(&[
        "match",
        "--dataset",
        &dataset,
        "--black",
        "random",
        "--red",
        "random",
        "--games",
        "2",
        "--target-cluster",
        "8",
        "--sample",
        "5",
        "--seed",
        "1",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let body = std::fs::read_to_string(&csv).unwrap();
    for row in body.lines().skip(1) {
        assert_eq!(row.split(',').nth(6).unwrap(), "5"); // graph_n
    }
}

#[test]
fn randomness_table_prints_rows() {
    let out = run(&[
        "randomness",
        "--dataset",
        "sw",
        "--black",
        "min-threshold",
        "--red",
        "max-threshold",
        "--graphs",
        "2",
        "--runs",
        "3",
        "--seed",
        "4",
    ]);
    assert!(out.status.success(), "{out:?}");
    let text = stdout(&out);
    assert!(text.contains("graph"));
    assert!(text.contains("pooled:"));
}

#[test]
fn tokens_exp_runs_a_formation() {
    let out = run(&[
        "tokens-exp",
        "--formation",
        "fire-vs-one",
        "--dataset",
        "er",
        "--games",
        "2",
        "--iterations",
        "15",
        "--seed",
        "2",
    ]);
    assert!(out.status.success(), "{out:?}");
    assert!(stdout(&out).contains("tokens-exp: games=2"));
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.conf");
    std::fs::write(
        &cfg,
        "dataset = er\nblack = random\nred = random\ngames = 3\nseed = 5\n",
    )
    .unwrap();
    let out = run(&["match", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success(), "{out:?}");
    assert!(stdout(&out).contains("games=3"));
    // An explicit flag beats the file.
    let out = run(&["match", "--config", cfg.to_str().unwrap(), "--games", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("games=2"));
}

#[test]
fn heuristic_weights_come_from_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("weights.conf");
    std::fs::write(
        &good,
        "alpha = 0.4\nbeta = 0.3\ngamma = 0.2\nlambda = 0.1\nnlt-bonus = 3\n",
    )
    .unwrap();
    let out = run(&[
        "play",
        "--graph",
        "ws:16:4:0.3",
        "--black",
        "eps-mcts",
        "--red",
        "random",
        "--iterations",
        "30",
        "--config",
        good.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    // Weights that do not sum to one are a usage error.
    let bad = dir.path().join("bad.conf");
    std::fs::write(&bad, "alpha = 0.9\n").unwrap();
    let out = run(&[
        "play",
        "--graph",
        "ws:16:4:0.3",
        "--black",
        "eps-mcts",
        "--red",
        "random",
        "--config",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exit_codes_distinguish_usage_and_data_errors() {
    // Unknown strategy name: usage error.
    let out = run(&[
        "match", "--dataset", "sw", "--black", "nope", "--red", "random", "--games", "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    // Unknown flag: usage error.
    let out = run(&["play", "--nonsense"]);
    assert_eq!(out.status.code(), Some(1));
    // Missing input file: data error.
    let out = run(&[
        "play",
        "--graph",
        "/definitely/not/here.txt",
        "--black",
        "random",
        "--red",
        "random",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // Valid invocations exit zero.
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn invalid_generator_parameters_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.txt");
    let out = run(&[
        "gen-graph",
        "--model",
        "er",
        "--n",
        "10",
        "--p",
        "1.5",
        "--seed",
        "0",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    // Missing required model-specific flag.
    let out = run(&[
        "gen-graph",
        "--model",
        "ba",
        "--n",
        "10",
        "--seed",
        "0",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}
