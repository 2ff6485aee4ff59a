mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use indexmap::IndexMap;
use tempfile::TempDir;

use pan_galactic_division::cli::parse_instance;
use pan_galactic_division::model::{validate_instance, GameTrace, PictureId, PlayerId};

fn pgdiv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pgdiv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn generate_is_seed_deterministic() {
    let args = ["generate", "--players", "5", "--pictures", "7", "--suits", "3", "--seed", "11"];
    let a = pgdiv(&args);
    let b = pgdiv(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let inst = parse_instance(&stdout(&a)).unwrap();
    validate_instance(inst.clone()).unwrap();
    assert_eq!(inst.players[0], PlayerId::from("p0"));
    assert_eq!(inst.pictures[6], PictureId::from("b6"));

    let other = pgdiv(&["generate", "--players", "5", "--pictures", "7", "--suits", "3", "--seed", "12"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn run_reproduces_golden_walkthrough() {
    for name in ["walkthrough", "walkthrough_two_player"] {
        let dir = TempDir::new().unwrap();
        let trace = dir.path().join("trace.jsonl");
        let reduced = dir.path().join("reduced.json");
        let input = common::golden(&format!("{name}.json"));
        let out = pgdiv(&[
            "run",
            "--in",
            path_str(&input),
            "--trace",
            path_str(&trace),
            "--out",
            path_str(&reduced),
        ]);
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        let golden_trace = fs::read_to_string(common::golden(&format!("{name}.trace.jsonl"))).unwrap();
        let golden_reduced = fs::read_to_string(common::golden(&format!("{name}.reduced.json"))).unwrap();
        assert_eq!(fs::read_to_string(&trace).unwrap(), golden_trace, "{name} trace");
        assert_eq!(fs::read_to_string(&reduced).unwrap(), golden_reduced, "{name} reduced instance");
    }
}

#[test]
fn run_prints_walkthrough_events() {
    let input = common::golden("walkthrough.json");
    let out = pgdiv(&["run", "--in", path_str(&input)]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].contains("Chicken♠") && lines[0].contains("Ape♣"), "{}", lines[0]);
    assert!(lines[1].contains("Two♠") && lines[1].contains("Chicken♣"), "{}", lines[1]);
    assert_eq!(lines[2], "stable after 2 rounds (1 round pairs)");
}

#[test]
fn divide_twice_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let mut outputs = Vec::new();
    for i in 0..2 {
        let result = dir.path().join(format!("result{i}.json"));
        let trace = dir.path().join(format!("trace{i}.jsonl"));
        let out = pgdiv(&[
            "divide", "--players", "30", "--pictures", "40", "--suits", "4", "--seed", "3", "--out",
            path_str(&result), "--trace", path_str(&trace),
        ]);
        assert!(out.status.success());
        outputs.push((fs::read(&result).unwrap(), fs::read(&trace).unwrap(), out.stdout));
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn divide_generated_reports_three_steps() {
    let dir = TempDir::new().unwrap();
    let result = dir.path().join("result.json");
    let out = pgdiv(&[
        "divide", "--players", "50", "--pictures", "60", "--suits", "4", "--seed", "7", "--out",
        path_str(&result),
    ]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["steps"].as_array().unwrap().len(), 3);
    let map: IndexMap<PlayerId, PictureId> = serde_json::from_str(&fs::read_to_string(&result).unwrap()).unwrap();
    assert_eq!(map.len(), 50);
    let images: std::collections::HashSet<_> = map.values().collect();
    assert_eq!(images.len(), 50);
}

#[test]
fn divide_trace_lines_carry_suit_count() {
    let dir = TempDir::new().unwrap();
    let trace = dir.path().join("trace.jsonl");
    let input = common::golden("walkthrough_two_player.json");
    let out = pgdiv(&["divide", "--in", path_str(&input), "--trace", path_str(&trace)]);
    assert!(out.status.success());
    let text = fs::read_to_string(&trace).unwrap();
    let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(first["n_suits"], 4);
    assert_eq!(first["phase"], "shape_up");
}

#[test]
fn verify_accepts_true_claim_and_rejects_tampered() {
    let dir = TempDir::new().unwrap();
    let result = dir.path().join("result.json");
    let gen = ["--players", "12", "--pictures", "15", "--suits", "3", "--seed", "5"];
    let mut args = vec!["divide"];
    args.extend(gen);
    args.extend(["--out", path_str(&result)]);
    assert!(pgdiv(&args).status.success());

    let verify = |claim: &Path| {
        let mut args = vec!["verify"];
        args.extend(gen);
        args.extend(["--claim", path_str(claim)]);
        pgdiv(&args)
    };
    let ok = verify(&result);
    assert!(ok.status.success(), "{}", String::from_utf8_lossy(&ok.stderr));

    let mut map: IndexMap<PlayerId, PictureId> = serde_json::from_str(&fs::read_to_string(&result).unwrap()).unwrap();
    let first = map[0].clone();
    *map.get_index_mut(1).unwrap().1 = first;
    let tampered = dir.path().join("tampered.json");
    fs::write(&tampered, serde_json::to_string(&map).unwrap()).unwrap();
    assert_eq!(verify(&tampered).status.code(), Some(1));
}

#[test]
fn malformed_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"n_suits\": 2, \"players\": [").unwrap();
    assert_eq!(pgdiv(&["divide", "--in", path_str(&bad)]).status.code(), Some(2));
    assert_eq!(pgdiv(&["divide", "--in", "/nonexistent/input.json"]).status.code(), Some(2));
    assert_eq!(pgdiv(&["divide", "--players", "3"]).status.code(), Some(2));
}

#[test]
fn invalid_instances_exit_1() {
    assert_eq!(
        pgdiv(&["generate", "--players", "5", "--pictures", "4", "--suits", "2"]).status.code(),
        Some(1)
    );
    let dir = TempDir::new().unwrap();
    let dup = dir.path().join("dup.json");
    fs::write(
        &dup,
        r#"{"n_suits": 2, "players": ["a", "b"], "pictures": ["x", "y"],
            "deal": {"a": [["x", 0], ["x", 1]], "b": [["x", 0], ["y", 1]]}}"#,
    )
    .unwrap();
    assert_eq!(pgdiv(&["divide", "--in", path_str(&dup)]).status.code(), Some(1));
}

#[test]
fn golden_trace_files_parse_and_round_trip() {
    for name in ["walkthrough", "walkthrough_two_player"] {
        let text = fs::read_to_string(common::golden(&format!("{name}.trace.jsonl"))).unwrap();
        let trace = GameTrace::from_jsonl(&text).unwrap();
        assert_eq!(trace.to_jsonl(), text);
    }
}

#[test]
fn stats_batch_reports_overall_line() {
    let out = pgdiv(&[
        "stats", "--players", "20", "--pictures", "25", "--suits", "4", "--count", "6", "--jobs", "3",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("seed ")).count(), 6);
    assert!(text.lines().last().unwrap().starts_with("overall: instances=6 "));
}
