use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const N5: &str = "lattice 5\n0 1\n0 2\n1 3\n2 4\n3 4\n";

fn frankl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frankl")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn certify_prints_the_injection() {
    let dir = tempfile::tempdir().unwrap();
    let n5 = write(dir.path(), "n5.lat", N5);
    let out = frankl(&["lattice", "certify", &n5, "--m", "3", "--x", "2", "--y", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("phi2 = {2↦0, 4↦3}"), "{text}");
    assert!(text.contains("witness 2"), "{text}");
}

#[test]
fn certify_rejects_a_non_left_modular_element() {
    let dir = tempfile::tempdir().unwrap();
    let n5 = write(dir.path(), "n5.lat", N5);
    let out = frankl(&["lattice", "certify", &n5, "--m", "2", "--x", "1", "--y", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not left-modular"));
}

#[test]
fn enumerate_scan_summary() {
    let out = frankl(&["lattice", "enumerate", "5", "--scan"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("5 lattices, 0 counterexamples\n"));
}

#[test]
fn enumerate_emits_parseable_files() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("six");
    let out = frankl(&["lattice", "enumerate", "6", "--emit-files", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let mut files: Vec<_> = fs::read_dir(&target).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert_eq!(files.len(), 15);
    let check = frankl(&["lattice", "check", files[0].to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0));
}

#[test]
fn group_check_json() {
    let out = frankl(&["group", "check", "sym:3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["report"]["report"]["satisfied"], true);
    assert_eq!(doc["report"]["certification"], "normal_quotient_generation");
    assert_eq!(doc["report"]["witness_subgroup"].as_array().unwrap().len(), 2);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["group", "check", "sym:4", "--format", "json"][..],
        &["lattice", "enumerate", "7", "--scan", "--format", "csv"][..],
        &["suite", "--max-lattice", "6", "--max-group", "12", "--jobs", "2"][..],
    ] {
        let a = frankl(args);
        let b = frankl(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn exit_codes_for_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let not_lattice = write(dir.path(), "bad.lat", "lattice 4\n0 1\n0 2\n1 3\n");
    assert_eq!(frankl(&["lattice", "check", &not_lattice]).status.code(), Some(2));
    let garbage = write(dir.path(), "garbage.lat", "lattice 3\n0 x\n");
    let out = frankl(&["lattice", "check", &garbage]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(frankl(&["group", "check", "foo:3"]).status.code(), Some(2));
    assert_eq!(frankl(&["group", "solvable-intervals", "alt:5"]).status.code(), Some(2));
    assert_eq!(frankl(&["group", "interval", "sym:3", "--h", "0,1,2"]).status.code(), Some(2));
    assert_eq!(frankl(&["group", "interval", "sym:3", "--h", "9"]).status.code(), Some(2));
    let capped = Command::new(env!("CARGO_BIN_EXE_frankl"))
        .args(["group", "check", "sym:5"])
        .env("FRANKL_MAX_ORDER", "100")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
}

#[test]
fn subgroup_lattice_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for spec in ["sym:4", "dicyclic:2", "direct:(cyclic:2,sym:3)"] {
        let path = dir.path().join("l.lat");
        let path = path.to_str().unwrap();
        assert_eq!(frankl(&["group", "lattice", spec, "--out", path]).status.code(), Some(0));
        let via_file = frankl(&["lattice", "check", path, "--format", "json"]);
        let via_group = frankl(&["group", "check", spec, "--format", "json"]);
        let a: serde_json::Value = serde_json::from_slice(&via_file.stdout).unwrap();
        let b: serde_json::Value = serde_json::from_slice(&via_group.stdout).unwrap();
        assert_eq!(a["report"]["satisfied"], b["report"]["report"]["satisfied"], "{spec}");
        assert_eq!(a["report"]["lattice_size"], b["subgroups"], "{spec}");
    }
}

#[test]
fn group_files_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let perm = write(dir.path(), "s4.grp", "group perm 4\n(1 2 3 4)\n(1 2)\n");
    let out = frankl(&["group", "check", &perm, "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let row = text.lines().nth(1).unwrap();
    assert!(row.contains(",24,30,true,"), "{row}");
    let cayley = write(dir.path(), "c3.grp", "group cayley 3\n0 1 2\n1 2 0\n2 0 1\n");
    assert_eq!(frankl(&["group", "check", &cayley]).status.code(), Some(0));
    let broken = write(dir.path(), "bad.grp", "group cayley 3\n0 1 2\n1 0 0\n2 0 1\n");
    assert_eq!(frankl(&["group", "check", &broken]).status.code(), Some(2));
}

#[test]
fn interval_and_solvable_commands() {
    let out = frankl(&["group", "interval", "dicyclic:2", "--h", "4", "--emit-certificate"]);
    assert_eq!(out.status.code(), Some(0));
    let out = frankl(&["group", "solvable-intervals", "sym:4", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().nth(1), Some("sym:4,120,0,120,0"));
}
