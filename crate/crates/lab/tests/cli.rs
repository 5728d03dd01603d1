use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn lab() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lab"))
}

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

fn run(config: &Path, report: &Path, extra: &[&str]) -> Output {
    lab().arg("run").arg(config).arg("--report").arg(report).args(extra).output().expect("run lab")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn without_runtime(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("runtime");
    v
}

const Z8: &str = r#"{
  "schema_version": 1,
  "ring": { "kind": "residue", "modulus": 8 },
  "degree": 3,
  "ideals": { "A": { "gens": ["2"] }, "B": { "gens": ["4"] } },
  "checks": CHECKS
}"#;

fn z8(checks: &str) -> String {
    Z8.replace("CHECKS", checks)
}

#[test]
fn bundled_theorem1_scenario_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&scenario("theorem1_degenerate.json"), &dir.path().join("r.json"), &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let rep = read_json(&dir.path().join("r.json"));
    assert_eq!(rep["overall"], "pass");
    assert_eq!(rep["checks"].as_array().unwrap().len(), 5);
}

#[test]
fn every_bundled_scenario_passes() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["generation_z8.json", "commutators.json", "quadratic.json"] {
        let out = run(&scenario(name), &dir.path().join("r.json"), &[]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn empty_check_list() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "empty.json", &z8("[]"));
    let out = run(&cfg, &dir.path().join("r.json"), &[]);
    assert_eq!(out.status.code(), Some(0));
    let rep = read_json(&dir.path().join("r.json"));
    assert_eq!(rep["checks"], Value::Array(vec![]));
    assert_eq!(rep["schema_version"], 1);
}

#[test]
fn undeclared_ideal_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "bad.json", &z8(r#"[{ "claim": "lemma2", "ideals": ["D"] }]"#));
    let out = run(&cfg, &dir.path().join("r.json"), &[]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("undeclared ideal `D`"));
    assert!(!dir.path().join("r.json").exists());
}

#[test]
fn malformed_json_reports_a_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "bad.json", "{\n  \"schema_version\": 1,\n  \"ring\": 7\n}");
    let out = run(&cfg, &dir.path().join("r.json"), &[]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn failed_check_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let checks = r#"[{ "claim": "sk1", "params": { "order": "gauss", "primes": "p2:4", "expect": 3 } }]"#;
    let cfg = write(dir.path(), "fail.json", &z8(checks));
    let out = run(&cfg, &dir.path().join("r.json"), &[]);
    assert_eq!(out.status.code(), Some(1));
    let rep = read_json(&dir.path().join("r.json"));
    assert_eq!(rep["checks"][0]["result"]["verdict"]["status"], "fail");
}

#[test]
fn inconclusive_required_exits_two_and_optional_warns() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "tiny.json", &z8(r#"[{ "claim": "lemma2", "ideals": ["A"], "budget": 16 }]"#));
    assert_eq!(run(&cfg, &dir.path().join("r.json"), &[]).status.code(), Some(2));
    let checks = r#"[{ "claim": "lemma2", "ideals": ["A"], "budget": 16, "required": false }]"#;
    let cfg = write(dir.path(), "opt.json", &z8(checks));
    assert_eq!(run(&cfg, &dir.path().join("r.json"), &[]).status.code(), Some(0));
    let rep = read_json(&dir.path().join("r.json"));
    assert_eq!(rep["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn unmet_hypothesis_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "h.json", &z8(r#"[{ "claim": "lemma6", "ideals": ["A", "B"] }]"#));
    assert_eq!(run(&cfg, &dir.path().join("r.json"), &[]).status.code(), Some(3));
}

#[test]
fn reports_are_reproducible_apart_from_runtime() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = scenario("commutators.json");
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    run(&cfg, &a, &["--workers", "1"]);
    run(&cfg, &b, &["--workers", "4"]);
    let (ra, rb) = (read_json(&a), read_json(&b));
    assert!(ra.get("runtime").is_some());
    assert_eq!(
        serde_json::to_string(&without_runtime(ra)).unwrap(),
        serde_json::to_string(&without_runtime(rb)).unwrap()
    );
}

#[test]
fn seed_override_changes_digest() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = scenario("theorem1_degenerate.json");
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    run(&cfg, &a, &[]);
    run(&cfg, &b, &["--seed", "99"]);
    assert_ne!(read_json(&a)["scenario_digest"], read_json(&b)["scenario_digest"]);
}

#[test]
fn warm_cache_gives_identical_results() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let cfg = scenario("generation_z8.json");
    let (cold, warm, none) = (dir.path().join("cold.json"), dir.path().join("warm.json"), dir.path().join("none.json"));
    let c = cache.to_str().unwrap();
    run(&cfg, &cold, &["--cache", c]);
    run(&cfg, &warm, &["--cache", c]);
    run(&cfg, &none, &[]);
    let (cold, warm, none) = (read_json(&cold), read_json(&warm), read_json(&none));
    assert_eq!(cold["runtime"]["cache"]["disk_hits"], 0);
    assert!(warm["runtime"]["cache"]["disk_hits"].as_u64().unwrap() > 0);
    assert_eq!(warm["runtime"]["cache"]["computed"], 0);
    assert_eq!(without_runtime(cold.clone()), without_runtime(warm));
    assert_eq!(without_runtime(cold), without_runtime(none));
}

#[test]
fn list_claims_table() {
    let out = lab().arg("list-claims").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert!(rows.len() >= 20);
    assert!(rows.iter().any(|r| r.starts_with("theorem1 ") && r.contains("Theorem 1")));
    assert!(rows.iter().any(|r| r.starts_with("sk1 ") && r.contains("SK_1")));
    let json: Value = serde_json::from_slice(&lab().args(["list-claims", "--json"]).output().unwrap().stdout).unwrap();
    assert_eq!(json.as_array().unwrap().len(), rows.len());
}

#[test]
fn sk1_subcommand() {
    let out = lab().args(["sk1", "--order", "gauss", "--primes", "p2:4"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("= 2"));
    let out = lab().args(["sk1", "--order", "gauss", "--primes", "p9:1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn lattice_subcommand() {
    let out = lab().args(["lattice", "--p", "2", "--m", "2", "--json"]).output().unwrap();
    assert!(out.status.success());
    let t: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(t["modulus"], 8);
    assert_eq!(t["failures"], Value::Array(vec![]));
}
