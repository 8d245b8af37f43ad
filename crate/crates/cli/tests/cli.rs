use std::path::PathBuf;
use std::process::{Command, Output};

use ulbordism::InvariantTuple;

fn ulb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ulb")).args(args).env_remove("BORDISM_SEED").output().expect("run ulb")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name);
    path.to_str().unwrap().to_owned()
}

#[test]
fn group_info_lists_both_groups() {
    let o = ulb(&["group-info", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("Z^3 + Z4^3 + Z2^2"), "{text}");
    assert!(text.contains("Z2^3 + Z^2"), "{text}");

    let json: serde_json::Value = serde_json::from_slice(&ulb(&["--format", "json", "group-info", "4"]).stdout).unwrap();
    assert_eq!(json["unoriented"]["z4"], 6);
    assert_eq!(json["unoriented"]["z2"], 8);
    assert_eq!(json["oriented"]["z"], 8);
}

#[test]
fn group_info_rejects_zero_components() {
    assert_eq!(ulb(&["group-info", "0"]).status.code(), Some(2));
}

#[test]
fn bordant_exit_codes() {
    let yes = ulb(&["bordant", "n=2; S[1,1](1,2)", "n=2; S[3](1,2)"]);
    assert_eq!(yes.status.code(), Some(0));
    assert_eq!(stdout(&yes).trim(), "bordant");

    let no = ulb(&["bordant", "n=2; S[1](1,2)", "n=2; S[3](1,2)"]);
    assert_eq!(no.status.code(), Some(1));
    assert_eq!(stdout(&no).trim(), "not bordant");

    let mismatched = ulb(&["bordant", "n=2; S[1](1,2)", "n=3; S[1](1,2)"]);
    assert_eq!(mismatched.status.code(), Some(2));
}

#[test]
fn normalize_reorders_single_beads() {
    let o = ulb(&["normalize", "n=3; N[0](2,3;1)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "N[0](1,2;3) + N[0](1,3;2)");
}

#[test]
fn json_invariants_round_trip() {
    let o = ulb(&["--format", "json", "invariants", "n=3; N[0](1,2;3) + S[1](1,3) + P[2](2)"]);
    assert_eq!(o.status.code(), Some(0));
    let records: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let record = &records[0];
    assert_eq!(record["kind"], "expression");
    let a: InvariantTuple = serde_json::from_value(record["invariants"].clone()).unwrap();
    assert_eq!(a.n(), 3);
    assert_eq!(a.e_values(), [0, 2, 0]);
    assert_eq!(a.d(1, 3).unwrap().value(), 1);
}

#[test]
fn movie_files_are_detected() {
    let path = fixture("positive-plane.movie");
    let o = ulb(&["--format", "json", "invariants", &path]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let records: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(records[0]["kind"], "movie");
    let a: InvariantTuple = serde_json::from_value(records[0]["invariants"].clone()).unwrap();
    assert_eq!(a.e_values(), [1]);

    let cross = ulb(&["bordant", &path, "n=1; P[1](1)"]);
    assert_eq!(cross.status.code(), Some(0));
}

#[test]
fn parse_errors_exit_two() {
    let o = ulb(&["invariants", "n=2; S[1](1,"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("offset"));
    assert_eq!(ulb(&["invariants", "n=2; S[1](1,7)"]).status.code(), Some(2));
}

#[test]
fn seed_does_not_change_movie_results() {
    let path = fixture("strand-1.movie");
    let a = ulb(&["--seed", "1", "invariants", &path]);
    let b = ulb(&["--seed", "99", "invariants", &path]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let c = Command::new(env!("CARGO_BIN_EXE_ulb")).args(["invariants", &path]).env("BORDISM_SEED", "7").output().unwrap();
    assert_eq!(stdout(&a), stdout(&c));
}

#[test]
fn selfcheck_passes() {
    let o = ulb(&["selfcheck"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}
