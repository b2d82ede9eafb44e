//! End-to-end runs of the `klab` binary: output shape and exit codes.

use std::process::{Command, Output};

fn klab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_klab")).args(args).output().expect("klab runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn count_prints_the_energy() {
    let o = klab(&["count", "--p", "7", "--interval", "0:3", "--k", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["J"], "19");
}

#[test]
fn expsum_and_lattice_and_resultant() {
    let o = klab(&["expsum", "max", "--p", "7", "--interval", "0:3"]);
    assert!(stdout(&o).contains("a_star: 2"), "{}", stdout(&o));
    let o = klab(&["lattice", "--p", "101", "--lambda", "5", "--bounds", "10,10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pass: true"));
    let o = klab(&["resultant", "--solution", "1,2,3,4"]);
    assert!(stdout(&o).contains("P: 4Z^2 + 20Z + 22"));
}

#[test]
fn sweep_writes_csv_and_reruns_identically() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let args = ["sweep", "--theorem", "T1", "--p", "101", "--N", "5,10", "--k", "2", "--no-timings"];
        let o = klab(&[&args[..], &["--out", path.to_str().unwrap()]].concat());
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read_to_string(path).unwrap()
    };
    let (a, b) = (run("a.csv"), run("b.csv"));
    let body = |s: &str| s.lines().filter(|l| !l.starts_with('#')).map(str::to_owned).collect::<Vec<_>>();
    assert_eq!(body(&a), body(&b));
    assert_eq!(body(&a).len(), 3);
    assert!(body(&a)[1].starts_with("T1,101,5,2,"));
}

#[test]
fn exit_codes() {
    // config errors
    assert_eq!(klab(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(klab(&["count", "--p", "8", "--interval", "0:3"]).status.code(), Some(2));
    assert_eq!(klab(&["sweep", "--theorem", "T1", "--p", "101", "--N", "200"]).status.code(), Some(2));
    assert_eq!(klab(&["count", "--p", "7", "--interval", "0:3", "--backend", "gpu"]).status.code(), Some(2));
    // resource errors
    assert_eq!(klab(&["bt-report", "--x", "1000000000", "--theta", "0.5"]).status.code(), Some(3));
    let o = klab(&["count", "--p", "7", "--interval", "0:3", "--out", "/nonexistent/dir/out.txt"]);
    assert_eq!(o.status.code(), Some(3));
    // a hypothesis failure is a check failure
    let o = klab(&["resultant", "--poly-p", "1,-1", "--poly-q", "1,-2", "--N", "10", "--cap", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_suite_passes() {
    let o = klab(&["verify", "identities"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().all(|l| l.starts_with("ok")));
}
