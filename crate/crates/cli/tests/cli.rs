//! End-to-end checks of the binary: formats, exit codes, reports.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_diamondlab"))
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("diamondlab-test-{name}-{}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

#[test]
fn lubell_of_the_empty_set_family() {
    let family = write_temp("empty", "n=3\n{}\n");
    let out = run(bin().args(["lubell", "--family"]).arg(&family));
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("lubell | 1/1"), "{text}");
}

#[test]
fn verify_exhaustive_lemma2_passes() {
    let out = run(bin().args(["verify", "lemma2", "--n", "3", "--exhaustive"]));
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("violations: 0"), "{text}");
}

#[test]
fn json_verdict_shape() {
    let out = run(bin().args(["verify", "case1", "--n-max", "12", "--format", "json"]));
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["table"], "case1");
    assert!(value["cases_checked"].as_u64().unwrap() > 0);
    assert_eq!(value["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn truncated_search_fails_when_exhaustive_demanded() {
    let out = run(bin().args([
        "search-la",
        "--n",
        "4",
        "--pattern",
        "diamond",
        "--exhaustive",
        "--node-budget",
        "10",
    ]));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn io_errors_exit_2() {
    let out = run(bin().args(["lubell", "--family", "/nonexistent/family.txt"]));
    assert_eq!(out.status.code(), Some(2));
    let garbled = write_temp("garbled", "m=3\nwhat\n");
    let out = run(bin().args(["lubell", "--family"]).arg(&garbled));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn witness_round_trips_through_the_family_format() {
    let witness = std::env::temp_dir().join(format!("diamondlab-w-{}", std::process::id()));
    let out = run(bin()
        .args(["lubell-star", "--n", "3", "--exhaustive", "--witness-out"])
        .arg(&witness));
    assert!(out.status.success());
    let saved = std::fs::read_to_string(&witness).unwrap();
    let reparsed = diamondlab::formats::parse_family(&saved).unwrap();
    assert_eq!(
        diamondlab_core::lattice::lubell(&reparsed),
        diamondlab_core::rational::frac(7, 3)
    );
}

#[test]
fn structure_files_drive_f_value() {
    let graph = write_temp("graph", "v=4\n1 2\n2 3\nw: 1,3\nw: -\n");
    let out = run(bin()
        .args(["f-value", "--n", "12", "--graph"])
        .arg(&graph));
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("|W| | 2"), "{text}");
    assert!(text.contains("worst f over W (|W|=8)"), "{text}");
}

#[test]
fn census_command_matches_definition() {
    let family = write_temp("census", "n=4\n{}\n1\n1,2\n1,2,3\n");
    let out = run(bin().args(["census", "--family"]).arg(&family));
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    // ∅ ⊂ {1} ⊂ {1,2} ⊂ {1,2,3}: 3! chains meet all four, the rest fewer.
    assert!(text.contains("i=4 | 6"), "{text}");
}
