//! End-to-end checks of the command-line interface: exit codes, flag
//! handling, and output files.

use std::path::Path;
use std::process::Output;

fn tridot(args: &[&str], dir: &Path) -> Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_tridot"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn simulate_writes_the_requested_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "run.cfg",
        "eta = 0.1\nomega_rabi = 0.05\nt_end = 10\nt_step = 1\nout = demo\n",
    );
    let out = tridot(&["simulate", &cfg], dir.path());
    assert!(out.status.success());
    assert!(dir.path().join("demo.csv").exists());
    assert!(dir.path().join("demo.svg").exists());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("wrote demo.csv"));
}

#[test]
fn no_svg_flag_and_out_override_are_honored() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "run.cfg",
        "eta = 0.1\nomega_rabi = 0.05\nt_end = 10\nt_step = 1\n",
    );
    let out = tridot(
        &["simulate", &cfg, "--no-svg", "--out", "elsewhere"],
        dir.path(),
    );
    assert!(out.status.success());
    assert!(dir.path().join("elsewhere.csv").exists());
    assert!(!dir.path().join("elsewhere.svg").exists());
    assert!(!dir.path().join("run.csv").exists());
}

#[test]
fn oracle_flag_switches_the_solver() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "run.cfg",
        "eta = 0.1\nomega_rabi = 0.05\nt_end = 10\nt_step = 1\noutputs = csv\n",
    );
    let out = tridot(&["simulate", &cfg, "--oracle"], dir.path());
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.path().join("run.csv")).unwrap();
    assert!(csv.contains("# solver = oracle"));
}

#[test]
fn validate_flag_records_the_deviation() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "run.cfg",
        "eta = 0.1\nomega_rabi = 0.05\nt_end = 10\nt_step = 1\noutputs = csv\nvalidate = true\n",
    );
    let out = tridot(&["simulate", &cfg], dir.path());
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.path().join("run.csv")).unwrap();
    assert!(csv.contains("# max_oracle_deviation = "));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("max propagator deviation"));
}

#[test]
fn config_errors_exit_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "bad.cfg", "eta = 0.1\nomega_rbi = 0.05\n");
    let out = tridot(&["simulate", &cfg], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("line 2"), "stderr: {stderr}");
    assert!(stderr.contains("omega_rbi"));

    let out = tridot(&["simulate", "missing.cfg"], dir.path());
    assert_eq!(out.status.code(), Some(2));

    let cfg = write_config(dir.path(), "invalid.cfg", "omega_rabi = -1\n");
    let out = tridot(&["simulate", &cfg], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("omega_rabi"));
}

#[test]
fn validation_suite_passes_and_the_corrupted_hook_fails() {
    let dir = tempfile::tempdir().unwrap();
    let out = tridot(&["validate"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.matches("PASS").count(), 8);
    assert!(stdout.contains("fig1 omega_rabi=0.1"));
    assert!(stdout.contains("fig2 delta=0.3"));

    let out = tridot(&["validate", "--perturb-oracle", "1e-3"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("FAIL"));
}

#[test]
fn fig1_produces_the_four_member_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let out = tridot(&["fig1", "--no-svg"], dir.path());
    assert!(out.status.success());
    for value in ["0.1", "0.05", "0.03", "0.01"] {
        let name = format!("fig1_omega_rabi_{value}.csv");
        assert!(dir.path().join(&name).exists(), "missing {name}");
    }
    assert!(!dir.path().join("fig1.svg").exists());

    let out = tridot(&["fig1", "--svg"], dir.path());
    assert!(out.status.success());
    assert!(dir.path().join("fig1.svg").exists());
}
