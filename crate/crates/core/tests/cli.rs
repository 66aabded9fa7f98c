use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_interdep"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn json(dir: &Path, args: &[&str]) -> Value {
    let out = run(dir, args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn with_network() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &[
            "gen", "--family", "type1", "--n", "10", "--k", "2", "--seed", "1", "--out", "n.itdn",
        ],
    );
    assert!(out.status.success());
    dir
}

#[test]
fn solver_output_has_common_shape() {
    let dir = with_network();
    let d = dir.path();
    for cmd in ["mr", "mrb", "greedy", "round", "anneal1", "anneal2"] {
        let v = json(d, &[cmd, "--net", "n.itdn", "--d", "3"]);
        for key in ["value", "witness", "method", "elapsed_ms"] {
            assert!(v.get(key).is_some(), "{cmd} lacks {key}: {v}");
        }
        assert!(v["elapsed_ms"].is_null());
        assert_eq!(
            v["witness"].as_array().unwrap().len() as u64,
            v["value"].as_u64().unwrap()
        );
    }
    let timed = json(d, &["mr", "--net", "n.itdn", "--d", "3", "--timing"]);
    assert!(timed["elapsed_ms"].is_number());
}

#[test]
fn exact_methods_agree() {
    let dir = with_network();
    for target in ["1", "4", "10"] {
        let a = json(dir.path(), &["mr", "--net", "n.itdn", "--d", target]);
        let b = json(
            dir.path(),
            &["mr", "--net", "n.itdn", "--d", target, "--method", "bnb"],
        );
        assert_eq!(a["value"], b["value"]);
    }
}

#[test]
fn cascade_trace_is_json_lines() {
    let dir = with_network();
    let out = run(
        dir.path(),
        &[
            "cascade", "--net", "n.itdn", "--remove", "a:4,b:2", "--trace",
        ],
    );
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(lines.len() >= 2);
    assert_eq!(lines[0]["stage"], 0);
}

#[test]
fn bench_writes_fixed_header() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(
        d.join("c.toml"),
        "seeds = 2\n\n[[experiment]]\nfamily = \"type1\"\nn = [8]\nk = [2]\nD = [2]\nalgorithms = [\"exact\", \"greedy\"]\n",
    )
    .unwrap();
    assert!(run(d, &["bench", "--config", "c.toml", "--out", "r.csv"])
        .status
        .success());
    let csv = std::fs::read_to_string(d.join("r.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("instance_id,family,n,k1,k2,D,algorithm,removal_size,runtime_ms,seed")
    );
    assert_eq!(lines.count(), 4);
    assert!(run(d, &["summarize", "--in", "r.csv"]).status.success());
}

#[test]
fn errors_exit_nonzero() {
    let dir = with_network();
    let d = dir.path();
    for args in [
        vec!["mr", "--net", "n.itdn", "--d", "11"],
        vec!["mr", "--net", "missing.itdn", "--d", "1"],
        vec!["cascade", "--net", "n.itdn", "--remove", "c:1"],
        vec![
            "gen", "--family", "type2", "--n", "9", "--k1", "1", "--k2", "2",
        ],
        vec!["design", "--k", "7"],
    ] {
        let out = run(d, &args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(
            String::from_utf8_lossy(&out.stderr).starts_with("error:"),
            "{args:?}"
        );
    }
}
