use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;

fn enumfpt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_enumfpt")).args(args).env_remove("ENUMFPT_SEED").output().expect("binary runs")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn solve_vertex_cover_single_edge() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "edge.txt", "graph 2 1\n1 2\n");
    let out = enumfpt(&["solve", "--problem", "vertex-cover", "--input", &input, "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1\n2\n");
}

#[test]
fn solve_with_no_solutions_exits_zero() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "t3.txt", "tournament 3\n1 2\n2 3\n3 1\n");
    let out = enumfpt(&["solve", "--problem", "fvst", "--input", &input, "--k", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn unboxed_ilp_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "unbox.txt", "ilp 1 0\n");
    let out = enumfpt(&["solve", "--problem", "ilp", "--input", &input, "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unbounded"));
}

#[test]
fn bad_flags_and_input_exit_two() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "bad.txt", "graph 2 1\n1 3\n");
    assert_eq!(enumfpt(&["solve", "--problem", "vertex-cover", "--input", &input, "--k", "1"]).status.code(), Some(2));
    assert_eq!(enumfpt(&["solve", "--problem", "nonsense", "--input", &input, "--k", "1"]).status.code(), Some(2));
    let good = write(dir.path(), "g.txt", "graph 2 1\n1 2\n");
    assert_eq!(enumfpt(&["solve", "--problem", "vertex-cover", "--input", &good]).status.code(), Some(2));
    assert_eq!(enumfpt(&["solve", "--problem", "vertex-cover", "--input", "/nonexistent/x", "--k", "1"]).status.code(), Some(2));
}

#[test]
fn ndjson_limit_and_stats() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "m.txt", "graph 6 3\n1 2\n3 4\n5 6\n");
    let stats = dir.path().join("stats.json");
    let out = enumfpt(&[
        "solve", "--problem", "vertex-cover", "--input", &input, "--k", "3", "--format", "ndjson", "--limit", "5",
        "--stats", stats.to_str().unwrap(), "--verify",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 5);
    for (i, rec) in lines.iter().enumerate() {
        assert_eq!(rec["index"], i);
        assert!(rec["solution"].is_string());
        assert!(rec["delay_ns"].is_u64());
    }
    assert!(stdout(&out).starts_with("{\"solution\":"));
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(stats).unwrap()).unwrap();
    assert_eq!(report["solution_count"], 5);
    assert!(report["max_delay_ns"].as_u64() >= report["mean_delay_ns"].as_u64());
}

#[test]
fn steiner_and_longest_path_from_files() {
    let dir = TempDir::new().unwrap();
    let st = write(dir.path(), "s.txt", "wgraph 5 5\n1 2 1\n2 3 2\n3 4 1\n2 5 1\n5 3 1\nterminals 2\n1 4\n");
    let out = enumfpt(&["solve", "--problem", "steiner", "--input", &st, "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut got: Vec<&str> = text.lines().collect();
    got.sort();
    assert_eq!(got, vec!["1 2,2 3,3 4", "1 2,2 5,3 4,3 5"]);

    let c4 = write(dir.path(), "c4.txt", "graph 4 4\n1 2\n2 3\n3 4\n4 1\n");
    let out = enumfpt(&["solve", "--problem", "longest-path", "--input", &c4, "--k", "3", "--family-size-report"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("colorings="));
}

#[test]
fn check_passes_and_corruption_writes_bundle() {
    let out = enumfpt(&["check", "--problem", "closest-string", "--trials", "50", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = enumfpt(&["check", "--problem", "steiner", "--trials", "50", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));

    let dir = TempDir::new().unwrap();
    let bundle = dir.path().join("bundle.json");
    let out = enumfpt(&[
        "check", "--problem", "vertex-cover", "--trials", "5", "--corrupt", "--bundle", bundle.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let m: serde_json::Value = serde_json::from_str(&fs::read_to_string(bundle).unwrap()).unwrap();
    assert_eq!(m["duplicate"].as_array().unwrap().len(), 1);
    assert!(m["instance"].as_str().unwrap().starts_with("graph"));
}

#[test]
fn seed_comes_from_environment() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_enumfpt"))
            .args(["generate", "--problem", "fvst", "--n", "5"])
            .env("ENUMFPT_SEED", seed)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("3"), run("3"));
    let explicit = enumfpt(&["generate", "--problem", "fvst", "--n", "5", "--seed", "3"]).stdout;
    assert_eq!(run("3"), explicit);
}

#[test]
fn bench_matching_family() {
    let out = enumfpt(&["bench", "--problem", "vertex-cover", "--family", "matching", "--range", "4..6"]);
    assert_eq!(out.status.code(), Some(0));
    let recs: Vec<serde_json::Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(recs.iter().map(|r| r["count"].as_u64().unwrap()).collect::<Vec<_>>(), vec![16, 32, 64]);
    assert!(recs.iter().all(|r| r["pass"] == true && r["problem"] == "vertex-cover"));
    for key in ["seed", "params", "first_ns", "max_ns", "mean_ns"] {
        assert!(recs[0].get(key).is_some(), "missing {key}");
    }
    let out = enumfpt(&["bench", "--problem", "vertex-cover", "--family", "stars"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_enumfpt"))
        .args(["solve", "--problem", "vertex-cover", "--input", "-", "--k", "2"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"graph 3 2\n1 2\n2 3\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut got: Vec<&str> = text.lines().collect();
    got.sort();
    assert_eq!(got, vec!["1 2", "1 3", "2", "2 3"]);
}
