use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::process::{Command, Output};

use serde_json::Value;

fn kit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coercive-kit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn mean_zero_constant_in_report() {
    let out = kit(&["run", "--scenario", "mean-zero-h1", "--degree", "12"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    let cp = report["constants"]["C_p"].as_f64().unwrap();
    assert!((cp - (1.0 + 1.0 / (PI * PI))).abs() < 1e-8, "{cp}");
    assert_eq!(report["verdict"], "verified");
    assert_eq!(report["degree"], 12);
    for key in [
        "scenario",
        "parameters",
        "constants",
        "residual",
        "alpha",
        "beta",
        "gamma_sharp",
        "bound",
        "kernel_dim",
    ] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn navier_identity_residual() {
    let out = kit(&["run", "--scenario", "bilaplace-identity-navier", "--degree", "6"]);
    assert_eq!(code(&out), 0);
    assert!(json(&out)["residual"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn single_point_in_one_dimension_fails_hypothesis() {
    let out = kit(&["run", "--scenario", "point-constraints-h2", "--points", "0.5,0.5"]);
    assert_eq!(code(&out), 3);
    assert_eq!(json(&out)["verdict"], "hypothesis_failed");
}

#[test]
fn listing() {
    let out = kit(&["list"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("quadlaplace-coercivity-deltabc"));
    let kinds: BTreeSet<&str> = text.lines().filter_map(|l| l.split_whitespace().nth(1)).collect();
    assert_eq!(kinds.len(), 14);

    let filtered = stdout(&kit(&["list", "--filter", "poincare"]));
    assert_eq!(filtered.lines().count(), 4);
    assert!(filtered.lines().all(|l| l.contains("poincare")));
}

#[test]
fn sweep_csv_is_non_decreasing() {
    let out = kit(&[
        "sweep",
        "--scenario",
        "classical-poincare-m1",
        "--degrees",
        "4,6,8,10,12",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("degree,constant,residual"));
    let constants: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(constants.len(), 5);
    assert!(constants.windows(2).all(|w| w[1] >= w[0] - 1e-10), "{constants:?}");
}

#[test]
fn sweep_single_degree_and_descending() {
    let out = kit(&["sweep", "--scenario", "navier-h2", "--degrees", "6"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 2);

    let out = kit(&["sweep", "--scenario", "mean-zero-h1", "--degrees", "8,6,4"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("degrees"));
}

#[test]
fn malformed_flags_name_the_field() {
    for (args, field) in [
        (&["run", "--scenario", "nope"][..], "scenario"),
        (&["run", "--scenario", "mean-zero-h1", "--box", "1:0"][..], "box"),
        (&["run", "--scenario", "mean-zero-h1", "--tol", "-1"][..], "tol"),
        (
            &["run", "--scenario", "navier-h2", "--gamma-region", "full"][..],
            "gamma-region",
        ),
        (
            &["run", "--scenario", "boundary-trace-zero", "--gamma-region", "edge:1"][..],
            "gamma-region",
        ),
        (&["run", "--scenario", "mean-zero-h1", "--degree", "x"][..], "degree"),
        (&["run", "--scenario", "mean-zero-h1", "--format", "xml"][..], "format"),
    ] {
        let out = kit(args);
        assert_eq!(code(&out), 1, "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains(field), "{args:?}");
    }
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("r{i}.json"))).collect();
    for p in &paths {
        let out = kit(&[
            "run",
            "--scenario",
            "friedrichs-explicit,navier-h2",
            "--jobs",
            "2",
            "--output",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
        assert!(out.stdout.is_empty());
    }
    let a = std::fs::read(&paths[0]).unwrap();
    assert_eq!(a, std::fs::read(&paths[1]).unwrap());
    let reports: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(reports[0]["scenario"], "friedrichs-explicit");
    assert_eq!(reports[1]["scenario"], "navier-h2");
}

#[test]
fn whole_catalog_runs_without_errors() {
    let out = kit(&["run", "--scenario", "all", "--format", "csv"]);
    assert_ne!(code(&out), 1, "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 29);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",verified")), "{text}");
}

#[test]
fn overrides_reach_the_scenario() {
    let out = kit(&[
        "run",
        "--scenario",
        "boundary-trace-zero",
        "--gamma-region",
        "face:2:0.5",
        "--box",
        "0:2,0:1",
        "--degree",
        "6",
    ]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["parameters"]["gamma"], "face:2:0-0.5");
    assert_eq!(report["degree"], 6);
}
