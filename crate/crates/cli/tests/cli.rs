//! End-to-end checks of the `verify` binary: byte-stable reports, exit
//! codes, selectors, and the env-var seed default.

use std::process::Command;

fn verify() -> Command {
    Command::new(env!("CARGO_BIN_EXE_verify"))
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = std::env::temp_dir();
    let p1 = dir.join("ahv-cli-test-1.json");
    let p2 = dir.join("ahv-cli-test-2.json");
    for p in [&p1, &p2] {
        let status = verify()
            .args(["closure", "--samples", "25", "--seed", "42"])
            .arg("--out")
            .arg(p)
            .status()
            .unwrap();
        assert!(status.success());
    }
    let a = std::fs::read(&p1).unwrap();
    let b = std::fs::read(&p2).unwrap();
    assert_eq!(a, b, "canonical reports differ between reruns");
    assert!(p1.with_extension("timing.json").exists());
}

#[test]
fn failing_checks_exit_one() {
    // the levi campaign carries the two documented boundary-case failures
    let out = verify().args(["levi", "--seed", "42"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("FAIL levi/2.10/alpha=0"));
}

#[test]
fn config_errors_exit_two() {
    let out = verify()
        .args(["closure", "--range", "5,1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = verify()
        .args(["closure", "--samples", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn theorem_selector_narrows_reductions() {
    let out = verify()
        .args(["reductions", "--theorem", "4.1", "--seed", "42"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let ids: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .filter(|id| id.starts_with("reduction/4."))
        .collect();
    assert_eq!(ids, vec!["reduction/4.1a", "reduction/4.1b", "reduction/4.1c"]);
    for c in report["checks"].as_array().unwrap() {
        if c["id"].as_str().unwrap().starts_with("reduction/4.1") {
            assert_eq!(c["status"], "pass");
        }
    }
}

#[test]
fn seed_env_var_is_honored() {
    let out = verify()
        .args(["ode"])
        .env("AHV_SEED", "7")
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["config"]["seed"], 7);
}
