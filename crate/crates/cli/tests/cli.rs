use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_descent-forge"));
    c.env_remove("DESCENT_FORGE_BUDGET_MB");
    c
}

fn instance(file: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../instances")
        .join(file)
        .to_string_lossy()
        .into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn check_passes_on_split2() {
    let o = bin().args(["check", &instance("split2-p3.toml")]).output().unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("gamma_monoid_iso"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn json_report_has_the_documented_keys() {
    let path = scratch("split2.json");
    let o = bin()
        .args(["check", &instance("split2-p2.toml"), "--json"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let keys = ["instance", "certificate", "monoids", "gamma", "gamma0", "prop31", "verdicts", "timing", "version"];
    assert_eq!(value.as_object().unwrap().len(), keys.len());
    let positions: Vec<usize> = keys.iter().map(|k| text.find(&format!("\n  \"{k}\":")).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{positions:?}");
    assert!(value["timing"].is_null());

    // a second run writes identical bytes
    let again = scratch("split2-again.json");
    bin().args(["check", &instance("split2-p2.toml"), "--json"]).arg(&again).output().unwrap();
    assert_eq!(text, std::fs::read_to_string(&again).unwrap());
}

#[test]
fn json_to_stdout() {
    let o = bin().args(["check", "dual-numbers(2)", "--json", "-", "--timing"]).output().unwrap();
    let value: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(value["instance"]["name"], "dual-numbers(2)");
    assert!(value["timing"]["total_ms"].is_number());
}

#[test]
fn which_selects_a_suite() {
    let o = bin()
        .args(["check", &instance("split2-p2.toml"), "--which", "prop31", "--json", "-"])
        .output()
        .unwrap();
    let value: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(value["gamma"].is_null());
    assert!(value["prop31"].is_object());
    let o = bin().args(["check", &instance("split2-p2.toml"), "--which", "nope"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn endos_and_invertibles() {
    let o = bin().args(["endos", &instance("mat2-p2.toml")]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("I^l (6)"));
    assert!(stdout(&o).contains("End (6)"));
    let o = bin().args(["invertibles", &instance("diag-mat2-p2.toml")]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Inv (2)"));
    assert!(stdout(&o).contains("Aut (2)"));
}

#[test]
fn comatrix_command() {
    let o = bin().args(["comatrix", &instance("comatrix-diag-mat2-p2.toml")]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("Aut(Sigma) (2)"), "{out}");
    assert!(out.contains("xi bijective: true"));
}

#[test]
fn invalid_input_exits_2() {
    let path = scratch("bad.toml");
    let text = std::fs::read_to_string(instance("split2-p2.toml")).unwrap().replace("p = 2", "p = 4");
    std::fs::write(&path, text).unwrap();
    let o = bin().arg("check").arg(&path).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("modulus must be prime"), "{}", stderr(&o));

    let o = bin().args(["check", "/nonexistent/instance.toml"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn budget_flags_trigger_the_guard() {
    let o = bin().args(["check", &instance("split2-p2.toml"), "--endo-budget", "1"]).output().unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("resource guard"));
}

#[test]
fn memory_guard_from_the_environment() {
    let o = bin()
        .env("DESCENT_FORGE_BUDGET_MB", "0")
        .args(["check", &instance("mat2-p2.toml")])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("DESCENT_FORGE_BUDGET_MB"));
    let o = bin()
        .env("DESCENT_FORGE_BUDGET_MB", "4096")
        .args(["check", &instance("mat2-p2.toml")])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn mutation_exits_1() {
    let o = bin().args(["check", "split2(2)", "--mutate"]).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn fuzz_command() {
    let o = bin()
        .args(["fuzz", "--p", "2", "--max-dim", "2", "--count", "20", "--seed", "7", "--json", "-"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(value["cases"].as_array().unwrap().len(), 20);
    let o = bin().args(["fuzz", "--count", "5", "--seed", "7", "--mutate"]).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn builtin_prints_the_shipped_file() {
    let o = bin().args(["builtin", "field4"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), std::fs::read_to_string(instance("field4.toml")).unwrap());
    let o = bin().args(["builtin", "nosuch(2)"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let o = bin().arg("selftest").output().unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("mutation: caught in 20 of 20"));
}
