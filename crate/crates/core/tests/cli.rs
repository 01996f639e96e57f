//! End-to-end checks of the command-line binary: exit codes, golden CSV
//! bytes, and byte-stability of seeded and file-producing commands.

use std::process::{Command, Output};

fn zd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zd"))
        .args(args)
        .output()
        .expect("failed to launch the zd binary")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is not UTF-8")
}

#[test]
fn exit_codes() {
    // enforceable relation
    let ok = zd(&["check", "--s", "0.5", "--l", "0"]);
    assert_eq!(ok.status.code(), Some(0), "stdout: {}", stdout(&ok));
    // enforceable relation, but infeasible at this discount factor
    let infeasible = zd(&["check", "--s", "0.5", "--l", "0", "--delta", "0.2"]);
    assert_eq!(infeasible.status.code(), Some(1));
    // slope out of range entirely
    let never = zd(&["check", "--s", "1.5", "--l", "0"]);
    assert_eq!(never.status.code(), Some(1));
    // invalid game parameters
    let invalid = zd(&["check", "--game", "pgg:n=5,r=7,c=1", "--s", "0.5", "--l", "0"]);
    assert_eq!(invalid.status.code(), Some(2));
    // malformed game spec
    let garbage = zd(&["check", "--game", "pgg:nonsense", "--s", "0.5", "--l", "0"]);
    assert_eq!(garbage.status.code(), Some(2));
}

#[test]
fn threshold_csv_golden() {
    let run = zd(&["threshold", "--mode", "extortion", "--s", "0.5"]);
    assert_eq!(run.status.code(), Some(0));
    assert_eq!(
        stdout(&run),
        "s,delta_tau,binding_term,closed_form_delta\n\
         0.5,0.285714285714,CooperationSpread,0.285714285714\n"
    );

    let run = zd(&[
        "threshold",
        "--game",
        "pgg:n=5,r=1.5,c=1",
        "--mode",
        "equalizer",
        "--l",
        "0.25",
        "--p0",
        "0.5",
    ]);
    assert_eq!(run.status.code(), Some(0));
    assert_eq!(
        stdout(&run),
        "l,p0,delta_tau,binding_term\n0.25,0.5,0.666666666667,Equalizer(1)\n"
    );
}

#[test]
fn threshold_sweep_is_byte_stable() {
    let args = ["threshold", "--mode", "generous", "--game", "nsd:n=5,b=2,c=1", "--s-range", "0.1:0.9:9"];
    let first = zd(&args);
    let second = zd(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout(&first), stdout(&second));
    // generous snowdrift threshold at s = 0.5 is 5/6
    assert!(
        stdout(&first).contains("0.5,0.833333333333,"),
        "missing expected row: {}",
        stdout(&first)
    );
}

#[test]
fn figures_are_byte_stable() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    for dir in [&dir_a, &dir_b] {
        let run = zd(&["figures", "--out", dir.path().to_str().unwrap()]);
        assert_eq!(run.status.code(), Some(0));
    }
    for name in ["fig1_pgg.csv", "fig2_nsd.csv"] {
        let a = std::fs::read(dir_a.path().join(name)).unwrap();
        let b = std::fs::read(dir_b.path().join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between runs");
        assert!(!a.contains(&b'\r'), "{name} must use LF line endings");
    }
    let fig1 = std::fs::read_to_string(dir_a.path().join("fig1_pgg.csv")).unwrap();
    let mut lines = fig1.lines();
    assert_eq!(lines.next(), Some("s,delta_tau"));
    // curve starts at the slope onset, where the threshold vanishes
    assert_eq!(lines.next(), Some("0.375,0"));
    // last line approaches full patience: delta_tau near 1
    let last = fig1.lines().last().unwrap();
    let tau: f64 = last.split(',').nth(1).unwrap().parse().unwrap();
    assert!(tau > 0.98 && tau < 1.0, "unexpected end of curve: {last}");

    let fig2 = std::fs::read_to_string(dir_a.path().join("fig2_nsd.csv")).unwrap();
    assert_eq!(fig2.lines().next(), Some("s,delta_tau"));
    // generous snowdrift curve passes close to 5/6 around s = 1/2
    assert!(fig2.contains("\n0.4995,0.833610833611\n"), "missing generous midpoint row");
}

#[test]
fn simulate_is_deterministic() {
    let args = [
        "simulate",
        "--s",
        "0.5",
        "--l",
        "0",
        "--delta",
        "0.5",
        "--opponents",
        "allc,alld,random:0.3,majority3",
        "--engine",
        "mc",
        "--runs",
        "3000",
        "--seed",
        "0x2a",
    ];
    let first = zd(&args);
    let second = zd(&args);
    assert_eq!(first.status.code(), Some(0), "stderr: {:?}", first.stderr);
    assert_eq!(stdout(&first), stdout(&second));
    assert!(stdout(&first).contains("\"seed\": 42"));
}

#[test]
fn json_format_parses() {
    let run = zd(&["threshold", "--mode", "extortion", "--s", "0.5", "--format", "json"]);
    assert_eq!(run.status.code(), Some(0));
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&run)).unwrap();
    assert_eq!(rows.len(), 1);
    let tau = rows[0]["delta_tau"].as_f64().unwrap();
    assert!((tau - 2.0 / 7.0).abs() < 1e-12);
}
