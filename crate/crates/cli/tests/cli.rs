use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn dpsbp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dpsbp"))
        .args(args)
        .output()
        .unwrap()
}

fn operators_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../operators")
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("run.cfg");
    fs::write(&path, text).unwrap();
    path.display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_builtin_and_files() {
    for op in ["builtin:dp2", "builtin:central2"] {
        let o = dpsbp(&["verify-operator", op, "--n", "16,64"]);
        assert_eq!(o.status.code(), Some(0), "{op}: {}", stdout(&o));
        assert!(stdout(&o).trim_end().ends_with("PASS"));
    }
    for file in ["dp2.op", "central2.op"] {
        let path = operators_dir().join(file);
        let o = dpsbp(&["verify-operator", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{file}: {}", stdout(&o));
    }
}

#[test]
fn verify_rejects_broken_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(operators_dir().join("dp2.op")).unwrap();
    // Breaking the first boundary weight violates the dual-pairing identity.
    let broken = text.replacen("1/4 5/4", "1/3 5/4", 1);
    assert_ne!(broken, text);
    let path = dir.path().join("broken.op");
    fs::write(&path, broken).unwrap();
    let o = dpsbp(&["verify-operator", path.to_str().unwrap(), "--n", "16"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("FAIL"));

    let o = dpsbp(&[
        "verify-operator",
        dir.path().join("missing.op").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_configs_exit_with_usage_code() {
    let dir = tempfile::tempdir().unwrap();
    for text in [
        "scenario = heat\n",
        "scenario = burgers-mms\nn = -3\n",
        "scenario burgers-mms\n",
    ] {
        let cfg = write_config(dir.path(), text);
        let o = dpsbp(&[
            "run",
            &cfg,
            "--out",
            dir.path().join("out").to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(2), "{text:?}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    }
    let o = dpsbp(&["run", dir.path().join("absent.cfg").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn run_writes_outputs_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "scenario = swe-mms-1d\nn = 32\nt_final = 0.05\nsnapshots = 0\n",
    );
    let out = dir.path().join("out");
    let o = dpsbp(&[
        "run",
        &cfg,
        "--out",
        out.to_str().unwrap(),
        "--override",
        "scheme=entropy_conserving",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let printed = stdout(&o);
    assert!(printed.contains("scheme = entropy_conserving"));
    let summary = fs::read_to_string(out.join("summary.txt")).unwrap();
    assert!(printed.starts_with(&summary));
    assert!(summary.contains("crashed = false"));
    assert!(out.join("diagnostics.csv").exists());
    assert!(out.join("snapshots/snapshot_000.csv").exists());
}

#[test]
fn diagnostics_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "scenario = euler-khi\nn = 16\nt_final = 0.1\nstride = 1\n",
    );
    let mut csvs = Vec::new();
    for name in ["a", "b"] {
        let out = dir.path().join(name);
        let o = dpsbp(&["run", &cfg, "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        csvs.push(fs::read(out.join("diagnostics.csv")).unwrap());
    }
    assert_eq!(csvs[0], csvs[1]);
}

#[test]
fn convergence_and_crash_study_tables() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "scenario = burgers-mms\nresolutions = 16, 32\nt_final = 0.1\n",
    );
    let out = dir.path().join("conv");
    let o = dpsbp(&["convergence", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let csv = fs::read_to_string(out.join("convergence.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3, "{csv}");

    let cfg = write_config(
        dir.path(),
        "scenario = euler-khi\nresolutions = 8\nt_final = 0.02\n",
    );
    let out = dir.path().join("crash");
    let o = dpsbp(&["crash-study", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let csv = fs::read_to_string(out.join("crash_matrix.csv")).unwrap();
    assert_eq!(csv.lines().count(), 4, "{csv}");
}

#[test]
fn probe_passes_for_swe() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "scenario = swe-mms-2d\nn = 12\ntrials = 5\n");
    let o = dpsbp(&["probe", &cfg]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS"));
}
