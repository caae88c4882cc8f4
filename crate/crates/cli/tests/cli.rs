use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn kdvres(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kdvres"))
        .args(args)
        .env("KDVRES_CACHE_DIR", cache)
        .output()
        .expect("kdvres runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn gen_s_rerun_hits_the_cache() {
    let dir = TempDir::new().unwrap();
    let first = kdvres(dir.path(), &["gen-s", "--max", "12"]);
    assert_eq!(first.status.code(), Some(0), "{}", stderr(&first));
    assert!(stdout(&first).contains("S2 = −(1/2)u"));
    let files: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);

    let second = kdvres(dir.path(), &["gen-s", "--max", "12"]);
    assert_eq!(second.status.code(), Some(0));
    assert!(stderr(&second).contains("cache hit, verified identical"));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn corrupted_cache_is_an_identity_failure() {
    let dir = TempDir::new().unwrap();
    assert_eq!(
        kdvres(dir.path(), &["zeta", "--max", "5"]).status.code(),
        Some(0)
    );
    let entry = fs::read_dir(dir.path())
        .unwrap()
        .next()
        .unwrap()
        .unwrap()
        .path();
    let text = fs::read_to_string(&entry).unwrap().replace("-1/2", "-1/3");
    fs::write(&entry, text).unwrap();
    let out = kdvres(dir.path(), &["zeta", "--max", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("differs from a fresh computation"));
}

#[test]
fn cache_dir_flag_beats_the_environment() {
    let env_dir = TempDir::new().unwrap();
    let flag_dir = TempDir::new().unwrap();
    let out = kdvres(
        env_dir.path(),
        &[
            "bar-s",
            "--max",
            "6",
            "--cache-dir",
            flag_dir.path().to_str().unwrap(),
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fs::read_dir(env_dir.path()).unwrap().count(), 0);
    assert_eq!(fs::read_dir(flag_dir.path()).unwrap().count(), 1);
}

#[test]
fn json_reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let args = [
        "verify",
        "null-vectors",
        "--degree",
        "5",
        "--format",
        "json",
    ];
    let a = kdvres(dir.path(), &args);
    let b = kdvres(
        dir.path(),
        &[
            "--sequential",
            "verify",
            "null-vectors",
            "--degree",
            "5",
            "--format",
            "json",
        ],
    );
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["conventions"]["c_flow"], "-2");
    assert_eq!(v["conventions"]["c0"], "2");
    assert_eq!(v["passed"], true);
    let gens = v["data"]["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 2);
    assert_eq!(gens[0]["degree"], 4);
    assert_eq!(gens[0]["provenance"], "c-image");
    assert_eq!(gens[1]["expression"], "∂₃S₂ − ∂₁S₄");
}

#[test]
fn calibration_follows_the_flow_constant() {
    let dir = TempDir::new().unwrap();
    let out = kdvres(
        dir.path(),
        &["calibrate", "--c-flow", "1", "--format", "json"],
    );
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["data"]["c0"], "1/2");
    assert_eq!(v["conventions"]["c_flow"], "1");
}

#[test]
fn csv_lists_checks() {
    let dir = TempDir::new().unwrap();
    let out = kdvres(
        dir.path(),
        &["verify", "characters", "--order", "30", "--format", "csv"],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("check,passed,detail"));
    assert!(lines.all(|l| l.contains(",true,")));
}

#[test]
fn rejected_tau_exits_one() {
    let dir = TempDir::new().unwrap();
    let out = kdvres(
        dir.path(),
        &[
            "verify",
            "tau",
            "--tau",
            "soliton:p=1,dispersion=naive",
            "--t-degree",
            "5",
            "--z-order",
            "6",
        ],
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL hirota"));
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    for args in [
        &["gen-s", "--max", "3"][..],
        &["verify", "tau", "--tau", "breather"],
        &["calibrate", "--c-flow", "x"],
        &["frobnicate"],
        &["--format", "yaml", "gen-s"],
    ] {
        assert_eq!(kdvres(dir.path(), args).status.code(), Some(2), "{args:?}");
    }
    let conf = dir.path().join("bad.conf");
    fs::write(&conf, "dmax = 6\nspeed = fast\n").unwrap();
    let out = kdvres(
        dir.path(),
        &["--config", conf.to_str().unwrap(), "verify", "kernel"],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown key"));
}

#[test]
fn config_file_round_trips() {
    let dir = TempDir::new().unwrap();
    let conf = dir.path().join("run.conf");
    let text = format!(
        "dmax = 6\nqorder = 20\ntorder = 5\nzorder = 6\ntau = constant; soliton:p=1\ncache_dir = {}\nformat = json\n",
        dir.path().join("c").display()
    );
    fs::write(&conf, &text).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_kdvres"))
        .args(["--config", conf.to_str().unwrap(), "config"])
        .env_remove("KDVRES_CACHE_DIR")
        .output()
        .unwrap();
    assert_eq!(stdout(&out), text);
}

#[test]
fn verify_all_with_small_cutoffs() {
    let dir = TempDir::new().unwrap();
    let conf = dir.path().join("small.conf");
    fs::write(&conf, "dmax = 6\nqorder = 20\ntorder = 5\nzorder = 6\ntau = constant; soliton:p=1\nformat = json\n").unwrap();
    let out = kdvres(
        dir.path(),
        &["--config", conf.to_str().unwrap(), "verify", "all"],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = v["checks"].as_array().unwrap();
    for suite in [
        "null-vectors/",
        "kernel/",
        "ev2/",
        "characters/",
        "tau/",
        "equivalence/",
    ] {
        assert!(
            checks
                .iter()
                .any(|c| c["name"].as_str().unwrap().starts_with(suite)),
            "{suite}"
        );
    }
    assert!(checks
        .iter()
        .any(|c| c["name"] == "tau/control wrong Miwa sign is detected" && c["passed"] == true));
}
