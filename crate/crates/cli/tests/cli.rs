//! End-to-end tests of the `vnlab` binary: exit codes, report shapes, and
//! byte-level determinism of repeated runs.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_vnlab"))
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("vnlab-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn swap_action() -> PathBuf {
    write_temp(
        "swap.json",
        r#"{
            "group": {"elements": ["e", "g"], "table": [[0, 1], [1, 0]]},
            "space": {"atoms": ["x", "y"], "weights": ["1/2", "1/2"]},
            "perm": {"e": [0, 1], "g": [1, 0]}
        }"#,
    )
}

fn trivial_action() -> PathBuf {
    write_temp(
        "trivial.json",
        r#"{
            "group": {"elements": ["e", "g"], "table": [[0, 1], [1, 0]]},
            "space": {"atoms": ["x", "y"], "weights": ["1/2", "1/2"]},
            "perm": {"e": [0, 1], "g": [0, 1]}
        }"#,
    )
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

#[test]
fn crossed_reports_factor_for_free_ergodic_swap() {
    let out = bin().arg("crossed").arg(swap_action()).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["algebra"]["isFactor"], true);
    assert_eq!(v["algebra"]["dimension"], 4);
    assert_eq!(v["cartan"]["isMasa"], true);
    assert_eq!(v["action"]["isFree"], true);
}

#[test]
fn fm_check_consistent_pair_exits_zero() {
    let out = bin()
        .arg("fm-check")
        .arg(swap_action())
        .arg(trivial_action())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["oe"], false);
    assert_eq!(v["cartanEqual"], false);
    assert_eq!(v["consistent"], true);
}

#[test]
fn groupvna_reports_blocks() {
    let group = write_temp(
        "z3.json",
        r#"{"elements": ["0", "1", "2"], "table": [[0,1,2],[1,2,0],[2,0,1]]}"#,
    );
    let out = bin().arg("groupvna").arg(group).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["conjugacyClasses"], 3);
    assert_eq!(v["algebra"]["centerDim"], 3);
}

#[test]
fn icc_reports_failure_for_abelian_groups() {
    let out = bin()
        .args(["icc", "Z2", "-r", "2", "-R", "10", "--threshold", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["minConjugates"], 1);
    assert_eq!(v["passes"], false);
}

#[test]
fn itpfi_scan_lattice_is_all_in() {
    let spec = write_temp("powers.json", r#"{"kind": "powers", "lambda": 0.5}"#);
    let out = bin()
        .arg("itpfi")
        .arg("scan")
        .arg(&spec)
        .args(["--lattice-multiples", "5", "--lambda", "0.5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,verdict,maxBlockTerm"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 11);
    assert!(rows.iter().all(|r| r.split(',').nth(1) == Some("In")));
}

#[test]
fn mekler_graph_report_on_c5() {
    let graph = write_temp(
        "c5.json",
        r#"{"n": 5, "edges": [[0,1],[1,2],[2,3],[3,4],[4,0]]}"#,
    );
    let out = bin().arg("mekler").arg("graph").arg(graph).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["orderExponent"], 10);
    assert_eq!(v["nice"]["separated"], true);
    assert_eq!(v["fingerprint"]["abelianizationExp"], 5);
}

#[test]
fn mekler_iso_with_exact_search() {
    let p4 = write_temp("p4.json", r#"{"n": 4, "edges": [[0,1],[1,2],[2,3]]}"#);
    let p4r = write_temp("p4r.json", r#"{"n": 4, "edges": [[2,0],[0,3],[3,1]]}"#);
    let out = bin()
        .args(["mekler", "iso"])
        .arg(&p4)
        .arg(&p4r)
        .arg("--exact")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["graphIso"], true);
    assert_eq!(v["fingerprintsEqual"], true);
    assert_eq!(v["exactIso"], true);
}

#[test]
fn reduce_feldman_moore_holds() {
    let out = bin().args(["reduce", "feldman-moore"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["holds"], true);
}

#[test]
fn catalog_nice_finds_only_the_five_cycle() {
    let out = bin()
        .args(["catalog", "nice", "--max-n", "5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["classes"], 1);
    assert_eq!(v["entries"][0]["vertices"], 5);
    assert_eq!(v["entries"][0]["labeledCount"], 12);
}

#[test]
fn exit_codes_for_bad_inputs() {
    // unknown subcommand → 64 with usage text
    let out = bin().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));

    // malformed JSON → 1 with a location
    let bad = write_temp("bad.json", "{ not json");
    let out = bin().arg("crossed").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));

    // cap exceeded → 2
    let out = bin()
        .env("VNLAB_CAPS", "crossed_dim=3")
        .arg("crossed")
        .arg(swap_action())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // invalid tolerance → 1
    let out = bin()
        .args(["--tol", "0.5", "catalog", "nice"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    // unknown harness name → 1
    let out = bin().args(["reduce", "nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let spec = write_temp("powers-det.json", r#"{"kind": "powers", "lambda": 0.5}"#);
    let run = || {
        bin()
            .arg("itpfi")
            .arg("scan")
            .arg(&spec)
            .args(["--lattice-multiples", "4", "--lambda", "0.5", "--grid", "1.5,2.5"])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert_eq!(a.stdout, b.stdout);

    let run2 = || {
        bin()
            .arg("crossed")
            .arg(swap_action())
            .output()
            .unwrap()
    };
    assert_eq!(run2().stdout, run2().stdout);
}

#[test]
fn output_flag_writes_file() {
    let target = std::env::temp_dir().join("vnlab-cli-tests/out.json");
    let _ = std::fs::remove_file(&target);
    let out = bin()
        .arg("crossed")
        .arg(swap_action())
        .arg("--output")
        .arg(&target)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&target).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["algebra"]["isFactor"], true);
}
