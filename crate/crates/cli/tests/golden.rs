use std::path::PathBuf;
use std::process::{Command, Output};

const CASES: &[(&str, &[&str])] = &[
    ("eigen_swap.json", &["eigen", "--matrix", "swap.csv", "--tol", "1e-6"]),
    ("eigen_tri.csv", &["eigen", "--matrix", "tri.txt", "--format", "csv"]),
    ("eigen_block.json", &["eigen", "--matrix", "block.json", "--tol", "1e-6", "--digits", "12"]),
    ("eigen_block.newick", &["eigen", "--matrix", "block.json", "--format", "newick"]),
    ("embed_tree5.json", &["embed", "--tree", "tree5.nwk"]),
    ("embed_tree7.csv", &["embed", "--tree", "tree7.nwk", "--format", "csv"]),
    ("dh_tree7.json", &["dh", "--tree", "tree7.nwk"]),
    ("dh_matching.newick", &["dh", "--matching", "1-4,2-3,5-6", "--format", "newick"]),
    ("tn_graph4.dot", &["tn-graph", "--n", "4"]),
    ("tn_graph4.json", &["tn-graph", "--n", "4", "--format", "json"]),
    ("counts4.csv", &["counts", "--n", "4"]),
    ("counts5.json", &["counts", "--n", "5", "--format", "json"]),
    ("complex3.json", &["complex", "--n", "3"]),
    ("complex4_full.csv", &["complex", "--n", "4", "--cover", "full", "--format", "csv"]),
    ("complex3_kapranov.dot", &["complex", "--n", "3", "--cover", "kapranov", "--format", "dot"]),
    ("fold3.json", &["fold", "--n", "3"]),
    ("fold4.csv", &["fold", "--n", "4", "--format", "csv"]),
    ("degree3.json", &["degree", "--n", "3", "--samples", "20", "--seed", "5"]),
    ("period256.json", &["period", "--nodes", "256"]),
    ("period16.csv", &["period", "--nodes", "16", "--format", "csv"]),
    ("volume4.json", &["volume", "--n", "4", "--samples", "20000", "--seed", "7"]),
];

fn dir(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eigentree"))
        .args(args)
        .current_dir(dir("fixtures"))
        .env_remove("EIGENTREE_THREADS")
        .output()
        .expect("binary runs")
}

#[test]
fn outputs_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    for (golden, args) in CASES {
        let first = run(args);
        assert!(first.status.success(), "{args:?}: {}", String::from_utf8_lossy(&first.stderr));
        let second = run(args);
        assert_eq!(first.stdout, second.stdout, "{args:?} differs between runs");
        let path = dir("golden").join(golden);
        if update {
            std::fs::write(&path, &first.stdout).unwrap();
            continue;
        }
        let expected = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        if expected != first.stdout {
            failures.push(*golden);
        }
    }
    assert!(failures.is_empty(), "outputs differ from golden files: {failures:?}");
}

#[test]
fn thread_count_does_not_change_results() {
    let args = ["volume", "--n", "5", "--samples", "300000", "--seed", "3"];
    let mut outs = Vec::new();
    for threads in ["1", "3"] {
        let o = Command::new(env!("CARGO_BIN_EXE_eigentree"))
            .args(args)
            .env("EIGENTREE_THREADS", threads)
            .output()
            .unwrap();
        assert!(o.status.success());
        outs.push(o.stdout);
    }
    assert_eq!(outs[0], outs[1]);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(code(&["counts", "--n", "4"]), Some(0));
    assert_eq!(code(&["--help"]), Some(0));
    assert_eq!(code(&["frobnicate"]), Some(1));
    assert_eq!(code(&["counts", "--n", "4", "--unknown"]), Some(1));
    assert_eq!(code(&["eigen", "--matrix", "missing.csv"]), Some(1));
    assert_eq!(code(&["embed", "--newick", "((1,2),3"]), Some(1));
    assert_eq!(code(&["period", "--nodes", "0"]), Some(1));
    assert_eq!(code(&["complex", "--n", "6"]), Some(3));
    assert_eq!(code(&["tn-graph", "--n", "4", "--format", "newick"]), Some(1));
    let bad = Command::new(env!("CARGO_BIN_EXE_eigentree"))
        .args(["counts", "--n", "4"])
        .env("EIGENTREE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn example_invocations() {
    let o = String::from_utf8(run(&["counts", "--n", "4"]).stdout).unwrap();
    assert_eq!(o.lines().nth(1), Some("4,5,15,12,24,120,-6"));
    let v: serde_json::Value = serde_json::from_slice(&run(&["eigen", "--matrix", "swap.csv", "--tol", "1e-6"]).stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["spectrum"], serde_json::json!([-1.0, 1.0]));
    assert_eq!(v["tree"], "(1,2);");
    let v: serde_json::Value = serde_json::from_slice(&run(&["period", "--nodes", "256"]).stdout).unwrap();
    assert!((v["value"].as_f64().unwrap() - 1.64493407).abs() < 1e-8);
}

#[test]
fn writes_to_a_file() {
    let out = std::env::temp_dir().join(format!("eigentree-golden-{}.csv", std::process::id()));
    let o = run(&["counts", "--n", "3", "--output", out.to_str().unwrap()]);
    assert!(o.status.success() && o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    std::fs::remove_file(&out).unwrap();
    assert_eq!(text, "n,catalan,topologies,tiles_full,tiles_or,cubes_or,chi_or\n3,2,3,3,6,12,0\n");
}
