use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use flowlag::bench::{run_bench, write_csv};
use flowlag::format::serialize_instance;
use flowlag::solve::{Method, SolveSettings};
use flowlag_core::generate::{generate, GeneratorParams};
use serde_json::Value;

fn flowlag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flowlag")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{}: {:?}", e, String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn single_job_makespan() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "one.json", r#"{"machines":3,"jobs":[{"processing":[2,0,4]}],
        "lags":[{"job":0,"from":0,"to":2,"min":5,"max":null}]}"#);
    let out = flowlag(&["solve", "--method", "bnb", &inst]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["value"], 11);
    assert_eq!(doc["optimal"], true);
    assert_eq!(doc["permutation"], serde_json::json!([0]));
    assert_eq!(doc["start"], serde_json::json!([[0, 2, 7]]));
}

#[test]
fn inconsistent_lag_exits_1_citing_job_and_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "bad.json", r#"{"machines":2,"jobs":[{"processing":[1,1]},{"processing":[2,2]}],
        "lags":[{"job":1,"from":0,"to":1,"min":5,"max":3}]}"#);
    for method in ["bnb", "neh", "brute-perm", "brute-general"] {
        let out = flowlag(&["solve", "--method", method, &inst]);
        assert_eq!(out.status.code(), Some(1), "{}", method);
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains("job 1") && err.contains("positive cycle (1,0) -> (1,1) -> (1,0)"), "{}", err);
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn invalid_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "rev.json", r#"{"machines":2,"jobs":[{"processing":[1,1]}],
        "lags":[{"job":0,"from":1,"to":0,"min":0,"max":null}]}"#);
    let out = flowlag(&["solve", &inst]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("from_op < to_op"));
    assert_eq!(flowlag(&["solve", "/nonexistent/x.json"]).status.code(), Some(2));
    let out = flowlag(&["solve", "--method", "f2-restricted", &inst]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn node_limit_exits_3_with_a_solution() {
    let dir = tempfile::tempdir().unwrap();
    let inst = generate(&GeneratorParams { jobs: 9, machines: 4, seed: 5, ..Default::default() }).unwrap();
    let path = write(dir.path(), "big.json", &serialize_instance(&inst));
    let out = flowlag(&["solve", "--node-limit", "5", &path]);
    assert_eq!(out.status.code(), Some(3));
    let doc = json(&out);
    assert_eq!(doc["optimal"], false);
    assert!(doc["nodes_explored"].as_u64().unwrap() <= 5);
    assert!(doc["value"].as_i64().unwrap() >= doc["root_lower_bound"].as_i64().unwrap());
}

#[test]
fn generate_is_byte_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let args = ["generate", "--jobs", "6", "--machines", "3", "--seed", "99", "--arbitrary-lags", "--due", "10:300"];
    assert!(flowlag(&[&args[..], &["--output", a.to_str().unwrap()]].concat()).status.success());
    let b = flowlag(&args);
    assert!(b.status.success());
    assert_eq!(fs::read(&a).unwrap(), b.stdout);
    let parsed = flowlag::format::parse_instance(&String::from_utf8(b.stdout).unwrap()).unwrap();
    assert_eq!(parsed.jobs(), 6);
    assert!(parsed.due.is_some() && parsed.release.is_none());
}

#[test]
fn evaluate_matches_solve() {
    let dir = tempfile::tempdir().unwrap();
    let inst = generate(&GeneratorParams { jobs: 5, seed: 12, due: Some((0, 300)), ..Default::default() }).unwrap();
    let path = write(dir.path(), "i.json", &serialize_instance(&inst));
    for crit in ["cmax", "lmax"] {
        let solved = json(&flowlag(&["solve", "--criterion", crit, &path]));
        let perm: Vec<String> =
            solved["permutation"].as_array().unwrap().iter().map(|v| v.to_string()).collect();
        let out = flowlag(&["evaluate", &path, "--criterion", crit, "--perm", &perm.join(",")]);
        assert_eq!(out.status.code(), Some(0));
        let doc = json(&out);
        assert_eq!(doc["value"], solved["value"]);
        assert_eq!(doc["start"], solved["start"]);
    }
    assert_eq!(flowlag(&["evaluate", &path, "--perm", "0,1,1,2,3"]).status.code(), Some(2));
}

#[test]
fn check_and_gantt_accept_solver_output() {
    let dir = tempfile::tempdir().unwrap();
    let inst = generate(&GeneratorParams { jobs: 4, machines: 2, seed: 3, ..Default::default() }).unwrap();
    let path = write(dir.path(), "i.json", &serialize_instance(&inst));
    for method in ["bnb", "brute-general", "neh"] {
        let out = flowlag(&["solve", "--method", method, &path]);
        let sched = write(dir.path(), "s.json", &String::from_utf8(out.stdout).unwrap());
        let check = flowlag(&["check", &path, &sched]);
        assert_eq!(check.status.code(), Some(0), "{}", String::from_utf8_lossy(&check.stdout));
        assert_eq!(json(&check)["feasible"], true);
        let svg = flowlag(&["gantt", &path, &sched]);
        assert_eq!(svg.status.code(), Some(0));
        assert_eq!(String::from_utf8(svg.stdout.clone()).unwrap().matches("<rect").count(), 8);
        assert_eq!(flowlag(&["gantt", &path, &sched]).stdout, svg.stdout);
    }
}

#[test]
fn check_reports_violations() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "i.json", r#"{"machines":2,"jobs":[{"processing":[2,3]}],
        "lags":[{"job":0,"from":0,"to":1,"min":1,"max":null}]}"#);
    let sched = write(dir.path(), "s.json", r#"{"start":[[0,2]]}"#);
    let out = flowlag(&["check", &inst, &sched]);
    assert_eq!(out.status.code(), Some(2));
    let doc = json(&out);
    assert_eq!(doc["feasible"], false);
    assert!(doc["violations"][0].as_str().unwrap().starts_with("min lag: 2 - 2 < 1"));
    let gantt = flowlag(&["gantt", &inst, &sched]);
    assert_eq!(gantt.status.code(), Some(2));
    assert!(gantt.stdout.is_empty());
    assert!(String::from_utf8_lossy(&gantt.stderr).contains("min lag"));
}

#[test]
fn gantt_single_job_example() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "i.json", r#"{"machines":2,"jobs":[{"processing":[2,3]}]}"#);
    let sched = write(dir.path(), "s.json", r#"{"start":[[0,3]]}"#);
    let svg = String::from_utf8(flowlag(&["gantt", &inst, &sched]).stdout).unwrap();
    assert_eq!(svg.matches("<rect").count(), 2);
    assert!(svg.contains(r#"data-job="0" data-machine="0" data-start="0" data-end="2""#));
    assert!(svg.contains(r#"data-job="0" data-machine="1" data-start="3" data-end="6""#));
}

#[test]
fn f2_restricted_uses_seed_or_given_order() {
    let dir = tempfile::tempdir().unwrap();
    let params = GeneratorParams { jobs: 5, machines: 2, unbounded_probability: 1.0, seed: 8, ..Default::default() };
    let path = write(dir.path(), "i.json", &serialize_instance(&generate(&params).unwrap()));
    let out = flowlag(&["solve", "--method", "f2-restricted", "--m1-order", "4,3,2,1,0", &path]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["orders"][0], serde_json::json!([4, 3, 2, 1, 0]));
    let a = flowlag(&["solve", "--method", "f2-restricted", "--seed", "3", &path]);
    let b = flowlag(&["solve", "--method", "f2-restricted", "--seed", "3", &path]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bench_over_generated_instances() {
    let dir = tempfile::tempdir().unwrap();
    for k in 0..500u64 {
        let params = GeneratorParams {
            jobs: 1 + (k % 7) as usize,
            machines: 1 + (k / 7 % 4) as usize,
            seed: 50_000 + k,
            ..Default::default()
        };
        write(dir.path(), &format!("inst{:03}.json", k), &serialize_instance(&generate(&params).unwrap()));
    }
    let rows = run_bench(dir.path(), &[Method::Bnb, Method::BrutePerm], &SolveSettings::default()).unwrap();
    assert_eq!(rows.len(), 1000);
    for pair in rows.chunks(2) {
        assert_eq!(pair[0].instance, pair[1].instance);
        assert_eq!((pair[0].method.as_str(), pair[1].method.as_str()), ("bnb", "brute-perm"));
        assert!(pair[0].value.is_some());
        assert_eq!(pair[0].value, pair[1].value, "{}", pair[0].instance);
    }

    let mut buf = Vec::new();
    write_csv(&rows, &mut buf).unwrap();
    let mut reader = csv::Reader::from_reader(buf.as_slice());
    assert_eq!(reader.headers().unwrap(), vec!["instance", "method", "value", "optimal", "nodes", "millis"]);
    let records: Vec<csv::StringRecord> = reader.records().collect::<Result<_, _>>().unwrap();
    assert_eq!(records.len(), 1000);
    assert!(records.iter().all(|r| r.len() == 6));
}

#[test]
fn bench_cli_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..3 {
        let inst = generate(&GeneratorParams { jobs: 4, seed, ..Default::default() }).unwrap();
        write(dir.path(), &format!("{}.json", seed), &serialize_instance(&inst));
    }
    let out = flowlag(&["bench", dir.path().to_str().unwrap(), "--methods", "bnb,neh,brute-perm"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "instance,method,value,optimal,nodes,millis");
    assert_eq!(lines.len(), 10);
    assert!(lines[1].starts_with("0.json,bnb,") && lines[3].starts_with("0.json,brute-perm,"));
}
