use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn cayley(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cayley")).args(args).output().expect("binary runs")
}

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn write_config(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn spectrum_run_passes_and_repeats_byte_for_byte() {
    let config = configs().join("spectrum_dihedral.toml");
    let config = config.to_str().unwrap();
    let first = cayley(&["spectrum", "--config", config, "--format", "json"]);
    let second = cayley(&["spectrum", "--config", config, "--format", "json"]);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    assert!(!first.stdout.is_empty());
    assert_eq!(first.stdout, second.stdout);
    let parsed: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert!(parsed.as_array().is_some_and(|rows| !rows.is_empty()));
}

#[test]
fn seeded_experiment_writes_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        let status = cayley(&["experiment", "additive-basis", "--seed", "5", "--out", out.to_str().unwrap()]);
        assert_eq!(status.status.code(), Some(0), "{}", String::from_utf8_lossy(&status.stderr));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert!(text.starts_with("instance,bound_name,"));
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
}

#[test]
fn floats_carry_twelve_significant_digits() {
    let config = configs().join("bounds_cyclic.toml");
    let out = cayley(&["bounds", "--config", config.to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    let row = text.lines().nth(1).expect("one data row");
    let bound = row.split(',').nth(9).unwrap();
    let mantissa = bound.split('e').next().unwrap().trim_start_matches('-').replace('.', "");
    assert_eq!(mantissa.len(), 12, "{bound}");
}

#[test]
fn failing_bound_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        &dir,
        "tail.toml",
        "[group]\nkind = \"cyclic\"\nn = 37\n[set]\nkind = \"named\"\nname = \"interval\"\nsize = 6\n[params]\ndelta = 0.5\neps = 0.25\n",
    );
    let out = cayley(&["bohr", "--config", &config]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains(",fail"));
}

#[test]
fn unmet_hypothesis_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        &dir,
        "bk.toml",
        "experiment = \"bk-sets\"\n[group]\nkind = \"cyclic\"\nn = 101\n[params]\nk = 2\nelements = [1, 2, 5]\nsize_constant = 5.0\n",
    );
    let out = cayley(&["experiment", "bk-sets", "--config", &config]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("hypothesis"));
}

#[test]
fn configuration_errors_exit_two() {
    assert_eq!(cayley(&["bounds"]).status.code(), Some(2));
    assert_eq!(cayley(&["bounds", "--config", "/nonexistent/run.toml"]).status.code(), Some(2));
    assert_eq!(cayley(&["experiment", "no-such-run"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(&dir, "bad.toml", "colour = 3\n[group]\nkind = \"cyclic\"\nn = 5\n");
    assert_eq!(cayley(&["spectrum", "--config", &config]).status.code(), Some(2));
}
