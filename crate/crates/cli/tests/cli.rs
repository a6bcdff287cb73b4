use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn mucat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mucat"))
        .args(args)
        .env_remove("MUC_CPINF_SEED")
        .output()
        .expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

#[test]
fn identity_is_equivalent_to_itself() {
    let id = fixture("id.json");
    let o = mucat(&["channel-equiv", path(&id), path(&id)]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["equivalent"], true);
    assert_eq!(v["seed"], 0);
    assert_eq!(v["tolerance"], 1e-9);
}

#[test]
fn inequivalent_channels_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let (id, disc) = (fixture("id.json"), fixture("discard2.json"));
    let o = mucat(&["channel-equiv", path(&id), path(&disc)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json_out(&o)["equivalent"], false);

    // discard then prepare |0⟩ differs from the identity on the same type
    let prep = dir.path().join("prep.json");
    std::fs::write(&prep, r#"{"dom":1,"cod":2,"ancilla":1,"body":{"rows":2,"cols":1,"entries":[[1,0],[0,0]]}}"#).unwrap();
    let replace = dir.path().join("replace.json");
    let o = mucat(&["channel-compose", path(&disc), path(&prep), "--out", path(&replace)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = mucat(&["channel-equiv", path(&replace), path(&id)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn discard_applies_the_trace() {
    let o = mucat(&["channel-apply", path(&fixture("discard2.json")), path(&fixture("rho.json"))]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!((v["rows"].as_u64(), v["cols"].as_u64()), (Some(1), Some(1)));
    let re = v["entries"][0][0].as_f64().unwrap();
    let im = v["entries"][0][1].as_f64().unwrap();
    assert!((re - 1.0).abs() < 1e-12 && im.abs() < 1e-12);
}

#[test]
fn law_suite_on_matrices() {
    let o = mucat(&["laws-run", "--model", "mat", "--trials", "100", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(lines.len() >= 30);
    assert!(lines.iter().all(|r| r["pass"] == true && r["seed"] == 7 && r["tolerance"] == 1e-9));
}

#[test]
fn law_filter_seed_from_environment_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("reports.jsonl");
    let o = Command::new(env!("CARGO_BIN_EXE_mucat"))
        .args(["laws-run", "--model", "cplane", "--filter", "DLDC7*", "--trials", "1", "--out", path(&out)])
        .env("MUC_CPINF_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert!(lines.iter().all(|r| r["seed"] == 99 && r["pass"] == true && r["tolerance"] == 1e-12));
}

#[test]
fn laws_list_includes_anchors() {
    let o = mucat(&["laws-list"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let laws: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(laws.len() >= 30);
    let u5a = laws.iter().find(|l| l["id"] == "U5a").unwrap();
    assert_eq!(u5a["anchor"], "(φ_A ⊗ φ_B) λ⊗ = mx φ_{A⊕B}");
}

#[test]
fn choi_purify_round_trip_on_stock_channels() {
    let dir = tempfile::tempdir().unwrap();
    for n in 1..=20 {
        let ch = fixture(&format!("channels/ch{n:02}.json"));
        let choi = dir.path().join(format!("choi{n}.json"));
        let pure = dir.path().join(format!("pure{n}.json"));
        assert_eq!(mucat(&["channel-choi", path(&ch), "--out", path(&choi)]).status.code(), Some(0));
        assert_eq!(mucat(&["channel-purify", path(&choi), "--out", path(&pure)]).status.code(), Some(0));
        let o = mucat(&["channel-equiv", path(&pure), path(&ch)]);
        assert_eq!(o.status.code(), Some(0), "fixture {n}");
    }
}

#[test]
fn decompose_lists_kraus_operators() {
    let o = mucat(&["channel-decompose", path(&fixture("discard2.json"))]);
    assert_eq!(o.status.code(), Some(0));
    let ops = json_out(&o)["operators"].as_array().unwrap().clone();
    assert_eq!(ops.len(), 2);
    assert!(ops.iter().all(|m| m["rows"] == 1 && m["cols"] == 2));
}

#[test]
fn fmat_check_accepts_and_rejects() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    std::fs::write(
        &good,
        r#"{"src":{"X":[1,4],"A":"fin","B":"fin"},"tgt":{"X":"omega","A":"fin","B":"all"},"entries":[[1,7,1.0,0.0]]}"#,
    )
    .unwrap();
    let o = mucat(&["fmat-check", path(&good)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_out(&o)["valid"], true);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"X":"omega","A":"fin","B":"fin"}"#).unwrap();
    let o = mucat(&["fmat-check", path(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    let v = json_out(&o);
    assert_eq!((v["kind"].as_str(), v["valid"].as_bool()), (Some("space"), Some(false)));
}

#[test]
fn usage_and_io_errors_exit_two() {
    assert_eq!(mucat(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(mucat(&["channel-equiv", "/nonexistent.json", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(mucat(&["laws-run", "--model", "hilb"]).status.code(), Some(2));
    assert_eq!(mucat(&["laws-run", "--tol", "-1"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{not json").unwrap();
    let o = mucat(&["channel-choi", path(&garbage)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}
