//! End-to-end tests against the compiled binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_geotomo"))
}

fn repo_config(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn run_ok(args: &[&str]) -> Output {
    let out = bin().args(args).output().unwrap();
    assert!(
        out.status.success(),
        "exit {:?}\nstderr: {}",
        out.status,
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

#[test]
fn quick_config_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let cfg = repo_config("quick.json");
    run_ok(&["run", &cfg, "--out", a.to_str().unwrap()]);
    run_ok(&["run", &cfg, "--out", b.to_str().unwrap()]);
    let ca = fs::read(&a).unwrap();
    let cb = fs::read(&b).unwrap();
    assert!(!ca.is_empty());
    assert_eq!(ca, cb);
}

#[test]
fn seed_override_changes_estimates() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let cfg = repo_config("quick.json");
    run_ok(&["run", &cfg, "--out", a.to_str().unwrap()]);
    run_ok(&["run", &cfg, "--seed", "1", "--out", b.to_str().unwrap()]);
    assert_ne!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn csv_report_shape() {
    let out = run_ok(&["run", &repo_config("quick.json")]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("check_id,"));
    assert!(header.contains(",verdict,"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().any(|r| r.starts_with("quotient-main,")));
    assert!(rows.iter().any(|r| r.starts_with("barany-furedi,")));
}

#[test]
fn json_report_parses() {
    let out = run_ok(&["run", &repo_config("quick.json"), "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for row in rows {
        assert!(row["check_id"].is_string());
        assert!(row["lhs"].is_number());
        assert!(row["rhs"].is_number());
        let verdict = row["verdict"].as_str().unwrap();
        assert!(matches!(
            verdict,
            "holds" | "holds-with-bound" | "inconclusive" | "violated"
        ));
    }
}

#[test]
fn summary_lines_go_to_stderr() {
    let out = run_ok(&["run", &repo_config("quick.json")]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("5 checks:"));
    assert!(err.contains("[holds]"));
}

#[test]
fn missing_config_fails_with_context() {
    let out = bin().args(["run", "/nonexistent/cfg.json"]).output().unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("reading config"), "stderr: {err}");
}

#[test]
fn malformed_config_fails_with_context() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "{ \"run\": { \"seed\": ").unwrap();
    let out = bin().args(["run", path.to_str().unwrap()]).output().unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("parsing config"), "stderr: {err}");
}

#[test]
fn unknown_body_fails_with_row_context() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    fs::write(
        &path,
        r#"{
            "run": { "samples": 1000, "timing": "fixed" },
            "checks": [
                { "check": "slicing", "body": "dodecahedron(3)", "k": 1 }
            ]
        }"#,
    )
    .unwrap();
    let out = bin().args(["run", path.to_str().unwrap()]).output().unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("row 0"), "stderr: {err}");
    assert!(err.contains("slicing"), "stderr: {err}");
}

#[test]
fn list_checkers_covers_suite() {
    let out = run_ok(&["list-checkers"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for id in [
        "quotient-main",
        "quotient-holder",
        "arb-ovr",
        "grinberg",
        "dpp",
        "barany-furedi",
        "main-proj",
        "slicing",
        "isotropy",
    ] {
        assert!(text.contains(id), "missing checker `{id}`");
    }
}

#[test]
fn list_bodies_covers_catalog() {
    let out = run_ok(&["list-bodies"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for family in ["ball(", "cube(", "lp_ball(", "simplex(", "ellipsoid(", "random_polytope("] {
        assert!(text.contains(family), "missing body family `{family}`");
    }
}
