use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const FIG1: &str = "6 8\n4 0 3\n4 1 1\n0 2 5\n1 3 5\n0 1 2\n2 3 6\n2 5 2\n3 5 1\n";

fn postman(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_postman"))
        .args(args)
        .env_remove("POSTMAN_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn exact_reports_worked_example() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "fig1.txt", FIG1);
    let v: Value = serde_json::from_str(&stdout(&postman(&["exact", s(&g)]))).unwrap();
    assert_eq!(v["m_min"], 5);
    assert_eq!(v["l_t"], 30);
    assert_eq!(v["matching"], serde_json::json!([[0, 1], [2, 3]]));
    let circuit = v["circuit"].as_array().unwrap();
    assert_eq!(circuit.first(), circuit.last());

    let csv = stdout(&postman(&[
        "--format",
        "csv",
        "exact",
        s(&g),
        "--no-circuit",
    ]));
    assert!(csv.starts_with("m_min,l_t,matching"));
    assert!(csv.lines().nth(1).unwrap().starts_with("5,30,0-1 2-3"));
}

#[test]
fn qubo_file_round_trips_through_exact_sampler() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "fig1.txt", FIG1);
    let q = dir.path().join("fig1.qubo");
    stdout(&postman(&["qubo", s(&g), "--p", "8", "-o", s(&q)]));
    let text = std::fs::read_to_string(&q).unwrap();
    assert!(text.lines().any(|l| l == "p qubo 0 12 12 54"), "{text}");

    let v: Value =
        serde_json::from_str(&stdout(&postman(&["sample", s(&q), "--sampler", "exact"]))).unwrap();
    assert_eq!(v["e0"], 5);
    assert_eq!(v["e1"], 10);
    assert_eq!(v["ground_states"].as_array().unwrap().len(), 4);
}

#[test]
fn generation_is_reproducible() {
    let args = [
        "--format", "csv", "gen", "--n", "9", "--count", "5", "--w-hi", "7", "--seed", "42",
    ];
    let a = stdout(&postman(&args));
    let b = stdout(&postman(&args));
    assert_eq!(a, b);
    let other = stdout(&postman(&[
        "--format", "csv", "gen", "--n", "9", "--count", "5", "--w-hi", "7", "--seed", "43",
    ]));
    assert_ne!(a, other);
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "fig1.txt", FIG1);
    let q = dir.path().join("fig1.qubo");
    stdout(&postman(&["qubo", s(&g), "--p", "8", "-o", s(&q)]));
    let run = |threads: &str| {
        stdout(&postman(&[
            "--threads",
            threads,
            "sample",
            s(&q),
            "--reads",
            "64",
            "--sweeps",
            "50",
            "--seed",
            "5",
        ]))
    };
    assert_eq!(run("1"), run("3"));
    let defects = |threads: &str| {
        stdout(&postman(&[
            "--threads",
            threads,
            "defects",
            s(&g),
            "--deltas",
            "1,5",
        ]))
    };
    assert_eq!(defects("1"), defects("4"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(postman(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        postman(&["--threads", "0", "exact", "x"]).status.code(),
        Some(1)
    );

    let missing = dir.path().join("missing.txt");
    assert_eq!(postman(&["exact", s(&missing)]).status.code(), Some(2));
    let bad = write(dir.path(), "bad.txt", "6 8\n0 1 x\n");
    let out = postman(&["exact", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let triangle = write(dir.path(), "tri.txt", "3 3\n0 1 1\n1 2 1\n2 0 1\n");
    assert_eq!(postman(&["qubo", s(&triangle)]).status.code(), Some(3));
    let g = write(dir.path(), "fig1.txt", FIG1);
    let out = postman(&["qubo", s(&g), "--p", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("penalty"));

    assert_eq!(postman(&["--help"]).status.code(), Some(0));
}

#[test]
fn metrics_reads_simulate_output() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "fig1.txt", FIG1);
    let q = dir.path().join("fig1.qubo");
    let run = dir.path().join("run.json");
    stdout(&postman(&["qubo", s(&g), "--p", "8", "-o", s(&q)]));
    stdout(&postman(&[
        "simulate",
        s(&q),
        "--m",
        "3",
        "--jf",
        "1.5",
        "--reads",
        "100",
        "--sweeps",
        "100",
        "-o",
        s(&run),
    ]));
    let sim: Value = serde_json::from_str(&std::fs::read_to_string(&run).unwrap()).unwrap();
    let v: Value = serde_json::from_str(&stdout(&postman(&[
        "metrics",
        "--samples",
        s(&run),
        "--model",
        s(&q),
    ])))
    .unwrap();
    assert_eq!(v["hits"], sim["metrics"]["hits"]);
    assert_eq!(v["total"], 100);
}
