use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(format!("{name}.json"))
}

fn hkh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hkh")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_prints_the_loop_table() {
    let path = corpus("torus_loop_a");
    let o = hkh(&["compute", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "(0,-1,-1*[a]) : 1\n(0,1,1*[a]) : 1\n# [a] = (1,0)\n");
}

#[test]
fn classical_flavor_forgets_classes() {
    let path = corpus("torus_loop_a");
    let o = hkh(&["compute", path.to_str().unwrap(), "--flavor", "classical"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "(0,-1,0) : 1\n(0,1,0) : 1\n");
}

#[test]
fn json_output_carries_a_hash() {
    let path = corpus("trefoil_right");
    let o = hkh(&["compute", path.to_str().unwrap(), "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["diagram"].as_str().unwrap().len(), 64);
    assert_eq!(v["table"].as_array().unwrap().len(), 6);
}

#[test]
fn output_is_deterministic() {
    let path = corpus("figure_eight");
    let a = hkh(&["compute", path.to_str().unwrap(), "--format", "tsv"]);
    let b = hkh(&["compute", path.to_str().unwrap(), "--format", "tsv"]);
    assert_eq!(a.stdout, b.stdout);
    let moves = |seed: &str| hkh(&["verify-moves", path.to_str().unwrap(), "--seed", seed, "--max-sites", "20"]).stdout;
    assert_eq!(moves("3"), moves("3"));
}

#[test]
fn verify_commands_succeed() {
    let o = hkh(&["verify-table1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("45/45 cells hold"));
    let path = corpus("torus_example");
    let o = hkh(&["verify-d2", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("all slices zero"));
    let o = hkh(&["verify-moves", path.to_str().unwrap(), "--max-sites", "10"]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn bad_input_exits_with_two() {
    let dir = std::env::temp_dir().join(format!("hkh-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let o = hkh(&["compute", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    let dangling = dir.join("dangling.json");
    std::fs::write(&dangling, r#"{"genus":0,"edges":[{"id":0,"word":""}],"crossings":[{"id":0,"slots":[0,0,1,0]}]}"#).unwrap();
    assert_eq!(hkh(&["compute", dangling.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(hkh(&["compute", dir.join("missing.json").to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}
