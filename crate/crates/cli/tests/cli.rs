use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(format!("{name}.json"))
}

fn ngraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ngraph"))
        .args(args)
        .env_remove("NGRAPH_MAX_SWITCHABLES")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_exit_codes() {
    let out = ngraph(&["check", path(&fixture("or_contraction"))]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "sound: a | a |- a");

    let out = ngraph(&["check", path(&fixture("or_and_cycle"))]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("unsound: cyclic"));
}

#[test]
fn check_writes_witness() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("w.dot");
    let out = ngraph(&["check", path(&fixture("reused_discharge")), "--witness-dot", dot.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = fs::read_to_string(dot).unwrap();
    assert!(text.starts_with("graph switching"));
}

#[test]
fn bad_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.json");
    fs::write(&file, r#"{"nodes":[{"id":"x","formula":"a"},{"id":"y","formula":"b"}],"links":[{"kind":"AndI","premises":["x","y"],"conclusions":["x"]}]}"#).unwrap();
    let out = ngraph(&["check", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    fs::write(&file, "{").unwrap();
    assert_eq!(ngraph(&["check", file.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn resource_bound_from_env_and_flag() {
    let file = fixture("or_contraction");
    let out = Command::new(env!("CARGO_BIN_EXE_ngraph"))
        .args(["check", path(&file)])
        .env("NGRAPH_MAX_SWITCHABLES", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_ngraph"))
        .args(["check", path(&file), "--max-switchables", "1"])
        .env("NGRAPH_MAX_SWITCHABLES", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn empire_closure_and_oracle_agree() {
    let file = fixture("two_empires");
    for side in ["north", "south", "whole"] {
        let closure = ngraph(&["empire", path(&file), "--node", "a", "--side", side]);
        let oracle = ngraph(&["empire", path(&file), "--node", "a", "--side", side, "--oracle"]);
        assert_eq!(closure.status.code(), Some(0));
        assert_eq!(stdout(&closure), stdout(&oracle), "{side}");
    }
    let out = ngraph(&["empire", path(&file), "--node", "a", "--side", "south"]);
    assert!(stdout(&out).contains("labels: ~a & z, ~a, a, F"));
    let out = ngraph(&["empire", path(&file), "--node", "nope", "--side", "north"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn split_prints_both_halves() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("s.dot");
    let out = ngraph(&["split", path(&fixture("contraction_chain")), "--dot", dot.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("split node: a3 (a)"));
    assert!(text.contains("north: a | a |- a"));
    assert!(text.contains("south: a |- a | c"));
    assert!(fs::read_to_string(dot).unwrap().contains("cluster_north"));
}

#[test]
fn sequentialize_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["contraction_chain", "discharged_disjunction", "two_empires"] {
        let out = ngraph(&["sequentialize", path(&fixture(name)), "--format", "json"]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        let file = dir.path().join(format!("{name}.json"));
        fs::write(&file, &out.stdout).unwrap();
        let verified = ngraph(&["verify-lk", file.to_str().unwrap()]);
        assert_eq!(verified.status.code(), Some(0), "{name}");
    }
}

#[test]
fn encode_units_removes_constants() {
    let out = ngraph(&["sequentialize", path(&fixture("two_empires")), "--encode-units"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("a & ~a"));
    assert!(!text.contains("BotL") && !text.contains(" F"));
}

#[test]
fn verify_rejects_a_bad_step() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("d.json");
    fs::write(
        &file,
        r#"{"rule":"AndR","conclusion":{"antecedent":["a","b"],"succedent":["a | b"]},
            "premises":[{"rule":"Axiom","conclusion":{"antecedent":["a"],"succedent":["a"]}},
                        {"rule":"Axiom","conclusion":{"antecedent":["b"],"succedent":["b"]}}]}"#,
    )
    .unwrap();
    let out = ngraph(&["verify-lk", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    fs::write(&file, r#"{"rule":"Axiom","conclusion":{"antecedent":["a &"],"succedent":[]}}"#).unwrap();
    assert_eq!(ngraph(&["verify-lk", file.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn gen_writes_manifest_and_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("corpus");
    let out = ngraph(&["gen", "--sound", "--seed", "5", "--count", "4", "--out", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("manifest.json")).unwrap()).unwrap();
    let graphs = manifest["graphs"].as_array().unwrap();
    assert_eq!(graphs.len(), 4);
    assert_eq!(graphs[0]["seed"], 5);
    for g in graphs {
        let file = out_dir.join(g["file"].as_str().unwrap());
        assert_eq!(ngraph(&["check", file.to_str().unwrap()]).status.code(), Some(0));
    }

    let again = dir.path().join("again");
    ngraph(&["gen", "--sound", "--seed", "5", "--count", "4", "--out", again.to_str().unwrap()]);
    assert_eq!(fs::read(out_dir.join("sound-7.json")).unwrap(), fs::read(again.join("sound-7.json")).unwrap());

    let bad = dir.path().join("bad");
    let out = ngraph(&["gen", "--unsound", "--count", "3", "--out", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    for seed in 0..3 {
        let file = bad.join(format!("unsound-{seed}.json"));
        assert_eq!(ngraph(&["check", file.to_str().unwrap()]).status.code(), Some(1));
    }
}

#[test]
fn dot_export() {
    let out = ngraph(&["dot", path(&fixture("discharged_disjunction"))]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("digraph proofgraph"));
    assert!(text.contains("label=\"m\""));
}
