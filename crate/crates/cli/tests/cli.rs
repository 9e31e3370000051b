use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn amc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amc")).args(args).output().expect("amc runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("amc-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn horoball_distance_embeds_its_config() {
    let out = amc(&["horoball", "dist", "--from", "0,0", "--to", "100,0"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["config"]["command"], "horoball dist");
    assert_eq!(v["config"]["args"]["Dist"]["to"]["x"], 100);
    assert_eq!(v["result"]["exact"], v["result"]["estimate"]);
}

#[test]
fn farey_geodesic() {
    let v = json(&amc(&["farey", "dist", "--a", "1/0", "--b", "3/7"]));
    assert_eq!(v["result"]["distance"], 3);
    assert_eq!(v["result"]["geodesic"].as_array().unwrap().len(), 4);
}

#[test]
fn assert_flag_sets_the_exit_code() {
    let ok = amc(&["--assert", "marking", "validate", "--m", "s05_base.json"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = scratch("bad_marking.json");
    let text =
        std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data/fixtures/s11_base.json"))
            .unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["marking"]["transversals"] = serde_json::json!([[1, 0]]);
    std::fs::write(&bad, v.to_string()).unwrap();
    let path = bad.to_str().unwrap();
    let lenient = amc(&["marking", "validate", "--m", path]);
    assert_eq!(lenient.status.code(), Some(0));
    assert!(!json(&lenient)["result"]["violations"].as_array().unwrap().is_empty());
    let strict = amc(&["--assert", "marking", "validate", "--m", path]);
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn errors_exit_with_two() {
    let out = amc(&["regression", "--check", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nonsense"));
    let missing = amc(&["marking", "validate", "--m", "no_such_fixture.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn out_flag_writes_the_artifact() {
    let path = scratch("classify.json");
    let out =
        amc(&["--out", path.to_str().unwrap(), "cones", "classify", "--seq", "seq_quadratic.json", "--tau", "0.5"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["config"]["args"]["Classify"]["tau"], 0.5);
    assert_eq!(v["result"]["verdict"], "thin");
    assert_eq!(v["result"]["a"], 1);
}

#[test]
fn regression_check_passes_against_bundled_baselines() {
    let out = amc(&["--assert", "regression", "--check", "ball-s04-r6"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}
