//! Exit-status and wiring checks against the compiled `sg` binary.

use std::process::Command;

fn sg() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sg"))
}

#[test]
fn constants_prints_and_succeeds() {
    let out = sg().arg("constants").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("delta_t"));
    assert!(text.contains("2.000000000000e-5"));
}

#[test]
fn config_file_overrides_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"v": 1000.0}"#).unwrap();
    let out = sg().args(["constants", "--config"]).arg(&cfg).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    // Doubled speed halves the transit time.
    assert!(text.contains("1.000000000000e-5"), "{text}");
}

#[test]
fn validation_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, r#"{"sigma0": -1.0}"#).unwrap();
    let bad_config = sg().args(["constants", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(bad_config.status.code(), Some(1));
    assert!(String::from_utf8(bad_config.stderr).unwrap().contains("sigma0"));

    let zero_atoms = sg().args(["ensemble", "--n", "0"]).output().unwrap();
    assert_eq!(zero_atoms.status.code(), Some(1));

    let bad_theta = sg()
        .args(["trajectories", "--theta0", "sideways"])
        .output()
        .unwrap();
    assert_eq!(bad_theta.status.code(), Some(1));
}

#[test]
fn density_run_writes_files_and_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let out = sg()
        .args(["density", "--times", "0,0.21", "--grid-points", "256", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("manifest.json").exists());
    assert!(dir.path().join("density.svg").exists());
    assert!(dir.path().join("density_y_21.000cm.csv").exists());
}

#[test]
fn verify_quick_exits_zero() {
    let out = sg().args(["verify", "--level", "quick"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("verification PASSED"));

    let bad_level = sg().args(["verify", "--level", "medium"]).output().unwrap();
    assert_eq!(bad_level.status.code(), Some(1));
}
