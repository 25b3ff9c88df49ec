use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_shadowbench"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("shadowbench-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn km_writes_csv_and_manifest() {
    let out = scratch("km.csv");
    let status = bin().args(["km-cube", "--d", "5", "--seed", "3", "--out"]).arg(&out).status().unwrap();
    assert_eq!(status.code(), Some(0));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 1 + 32);
    assert!(csv.starts_with("step,tight_rows,objective,x1,"));
    let manifest = std::fs::read_to_string(format!("{}.manifest", out.display())).unwrap();
    for key in ["version = ", "master_seed = 3", "derivation = ", "duration_seconds = ", "experiment = km-cube"] {
        assert!(manifest.contains(key), "{key}");
    }
}

#[test]
fn exit_codes() {
    // Config errors.
    assert_eq!(bin().args(["km-cube", "--d", "13"]).output().unwrap().status.code(), Some(1));
    assert_eq!(bin().args(["no-such-experiment"]).output().unwrap().status.code(), Some(1));
    assert_eq!(
        bin().args(["section-size", "--n", "3", "--d", "3", "--sigma", "0.1"]).output().unwrap().status.code(),
        Some(1)
    );
    assert_eq!(bin().args(["shadow-walk", "--n", "2", "--d", "2"]).output().unwrap().status.code(), Some(1));
    assert_eq!(bin().args(["km-cube", "--set", "typo=1"]).output().unwrap().status.code(), Some(1));
    // A failing check.
    let out = bin()
        .args(["singularity", "--n", "2", "--set", "mode=both", "--trials", "1000", "--set", "agree_slack_se=-1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // Budget.
    assert_eq!(bin().args(["singularity", "--n", "6"]).output().unwrap().status.code(), Some(3));
}

#[test]
fn config_file_with_flag_overrides() {
    let cfg = scratch("walk.cfg");
    std::fs::write(&cfg, "experiment = shadow-walk\nn = 8\nd = 2\ntrials = 10\nseed = 5\n").unwrap();
    let a = bin().arg("--config").arg(&cfg).output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    let b = bin().arg("--config").arg(&cfg).args(["--trials", "12"]).output().unwrap();
    let c = bin().args(["shadow-walk", "--n", "8", "--d", "2", "--trials", "12", "--seed", "5"]).output().unwrap();
    assert_eq!(b.stdout, c.stdout);
    assert_ne!(a.stdout, b.stdout);
    let rows = String::from_utf8(a.stdout).unwrap();
    let header = rows.lines().next().unwrap();
    assert_eq!(header, "trial,seed_index,n,d,flips,status,pivots");
}

#[test]
fn csv_is_identical_across_thread_counts() {
    let args = ["section-size", "--n", "12", "--d", "3", "--sigma", "0.05", "--trials", "15", "--seed", "9"];
    let a = bin().args(args).args(["--threads", "1"]).output().unwrap();
    let b = bin().args(args).args(["--threads", "8"]).output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
