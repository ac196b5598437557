use std::fs;
use std::process::{Command, Output};

fn frobsieve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frobsieve")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn ap_subcommand() {
    let o = frobsieve(&["ap", "0", "1", "7"]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "a_7 = -4  #E = 12  D = 3");
    let o = frobsieve(&["ap", "-1", "1", "1000003", "--naive"]);
    assert_eq!(code(&o), 0);
    let bsgs = frobsieve(&["ap", "-1", "1", "1000003"]);
    assert_eq!(o.stdout, bsgs.stdout);
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(code(&frobsieve(&["ap", "0", "0", "7"])), 2);
    assert_eq!(code(&frobsieve(&["ap", "0", "1", "3"])), 2);
    assert_eq!(code(&frobsieve(&["ap", "0", "1", "9"])), 2);
    assert_eq!(code(&frobsieve(&["match-count", "/nonexistent/config"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.conf");
    fs::write(&path, "[curve1]\nA = 0\nB = 0\n[curve2]\nA = 1\nB = 1\n[experiment]\nx_max = 1000\n").unwrap();
    let o = frobsieve(&["match-count", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    fs::write(&path, "[curve1]\nA = 1\nA = 2\n").unwrap();
    let o = frobsieve(&["match-count", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn verify_subcommands_pass() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = frobsieve(&["gl2-verify", "--out", out]);
    assert_eq!(code(&o), 0);
    let csv = fs::read_to_string(dir.path().join("gl2_verification.csv")).unwrap();
    assert!(csv.starts_with("q1,q2,d,s,t,formula,bruteforce,equal\n"));
    assert!(!csv.contains(",false"));
    let o = frobsieve(&["charsum-verify", "--out", out]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("brute force -1, intermediate 0"));
    let csv = fs::read_to_string(dir.path().join("charsum.csv")).unwrap();
    assert!(csv.starts_with("q,d,bruteforce,closed,agree\n3,1,1,1,true\n"));
}

#[test]
fn small_experiment_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("small.conf");
    fs::write(
        &cfg,
        "[curve1]\nA = -1\nB = 1\n[curve2]\nA = 2\nB = 3\n[experiment]\nx_max = 20000\ncheckpoints = 1000, 20000\nz_policy = fixed:60\nq1 = 3\nq2 = 7\n",
    )
    .unwrap();
    let cache = dir.path().join("cache");
    let out = dir.path().join("out");
    let args = |threads: &str| {
        vec![
            "experiment".to_string(),
            cfg.to_string_lossy().into_owned(),
            "--cache".into(),
            cache.to_string_lossy().into_owned(),
            "--out".into(),
            out.to_string_lossy().into_owned(),
            "--threads".into(),
            threads.into(),
        ]
    };
    let run = |threads| {
        let a = args(threads);
        let refs: Vec<&str> = a.iter().map(String::as_str).collect();
        frobsieve(&refs)
    };
    let first = run("2");
    assert_eq!(code(&first), 0, "{}", String::from_utf8_lossy(&first.stderr));
    for f in ["matches.csv", "growth.csv", "sieve_x1000.csv", "sieve_x20000.csv", "chebotarev.csv", "growth.svg"] {
        assert!(out.join(f).exists(), "{f}");
    }
    let growth = fs::read_to_string(out.join("growth.csv")).unwrap();
    let second = run("1");
    assert_eq!(code(&second), 0);
    assert_eq!(growth, fs::read_to_string(out.join("growth.csv")).unwrap());
    assert_eq!(first.stdout, second.stdout);
    let sieve = fs::read_to_string(out.join("sieve_x1000.csv")).unwrap();
    assert!(sieve.lines().skip(1).all(|l| l.starts_with('2') || l.starts_with('1')));
    assert!(fs::read_dir(&cache).unwrap().count() == 2);
}
