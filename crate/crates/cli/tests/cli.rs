use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn z2ca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_z2ca"))
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

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn put(&self, name: &str, text: &str) -> String {
        let path: PathBuf = self.0.path().join(name);
        std::fs::write(&path, text).unwrap();
        path.to_str().unwrap().to_string()
    }
}

const RIGHT_MOVER: &str = "N=4\nT=3\nrule=R\npsi0=01 00 00 00\n";

#[test]
fn simulate_prints_the_diagonal() {
    let f = Files::new();
    let s = f.put("s.txt", RIGHT_MOVER);
    let out = z2ca(&["simulate", &s, "--render", "text"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "t=3 □□ □□ □□ □■\nt=2 □□ □□ □■ □□\nt=1 □□ □■ □□ □□\nt=0 □■ □□ □□ □□\n"
    );
}

#[test]
fn diag_output_renders_like_the_scenario() {
    let f = Files::new();
    let s = f.put(
        "s.txt",
        "N=3\nT=2\nrule=RA\nS=advect_flip\npsi0=01 10 00\na0=10 00 01\n",
    );
    let diag = stdout(&z2ca(&["simulate", &s, "--render", "diag"]));
    assert!(diag.starts_with("DIAG N=3 T=2 kind=joint\n"));
    let d = f.put("d.txt", &diag);
    assert_eq!(stdout(&z2ca(&["render", &d])), stdout(&z2ca(&["simulate", &s])));
}

#[test]
fn transform_reports_validity_on_stderr() {
    let f = Files::new();
    let s = f.put("s.txt", &format!("{RIGHT_MOVER}phi=site:1,1\n"));
    let out = z2ca(&["transform", &s]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not valid under R: matter cell x=1 t=1"));
    let s = f.put("g.txt", &format!("{RIGHT_MOVER}phi=const:1\n"));
    let out = z2ca(&["transform", &s]);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("valid under R"));
    assert_eq!(stdout(&out).lines().last(), Some("t=0 ■□ ■■ ■■ ■■"));
    assert_eq!(code(&z2ca(&["transform", &f.put("n.txt", RIGHT_MOVER)])), 2);
}

#[test]
fn invariants_emit_bit_diagrams() {
    let f = Files::new();
    let s = f.put(
        "s.txt",
        "N=4\nT=1\nrule=RA\nS=frozen\npsi0=00 00 00 00\na0=00 00 10 00\n",
    );
    let out = stdout(&z2ca(&["invariants", &s, "--which", "f"]));
    assert_eq!(out, "DIAG N=4 T=0 kind=bits name=F\n0 1 1 0\n");
    let both = stdout(&z2ca(&["invariants", &s]));
    assert!(both.starts_with("DIAG N=4 T=1 kind=bits name=J\n"));
    assert!(both.ends_with(&out));
}

#[test]
fn solve_exit_codes() {
    let f = Files::new();
    let zero = f.put("zero.txt", "DIAG N=2 T=1 kind=gauge\n00 00\n00 00\n");
    let flat = f.put("flat.txt", "DIAG N=2 T=1 kind=gauge\n11 00\n00 00\n");
    let curved = f.put("curved.txt", "DIAG N=2 T=1 kind=gauge\n10 00\n00 00\n");
    let out = z2ca(&["solve", &zero, &flat]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("DIAG N=2 T=2 kind=bits name=phi\n"));
    let out = z2ca(&["solve", &zero, &curved]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("no phi:"));
    assert_eq!(code(&z2ca(&["solve", &zero, &flat, "--seed-bits", "0101"])), 2);
    assert_eq!(code(&z2ca(&["solve", &zero, &flat, "--seed-bits", "2"])), 2);
}

#[test]
fn check_exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["check", "local-covariance"], 0),
        (&["check", "remark1", "--n", "2", "--t", "1"], 0),
        (&["check", "r-gauge-invariance"], 1),
        (&["check", "r-gauge-invariance", "--phi", "constant"], 0),
        (&["check", "equivalence-classes", "--n", "2", "--t", "0"], 0),
        (&["check", "gauge-fixing", "--n", "3", "--t", "2"], 0),
        (&["check", "gauge-fixing", "--s2", "frozen", "--n", "3", "--t", "2"], 2),
        (&["check", "admissible-phi", "--n", "2", "--t", "1"], 0),
        (&["check", "admissible-phi", "--rule", "R", "--n", "3", "--t", "1"], 0),
        (&["check", "admissible-phi", "--rule", "R", "--s", "advect"], 2),
        (&["check", "remark1", "--n", "5", "--t", "3"], 2),
        (
            &[
                "check",
                "remark1",
                "--n",
                "4",
                "--t",
                "2",
                "--samples",
                "50",
                "--seed",
                "9",
            ],
            0,
        ),
        (&["check", "local-covariance", "--samples", "10"], 2),
        (&["check", "no-such-check"], 2),
        (&["frobnicate"], 2),
        (&[], 2),
    ];
    for (args, expected) in cases {
        assert_eq!(code(&z2ca(args)), *expected, "{args:?}");
    }
}

#[test]
fn failing_report_carries_a_scenario() {
    let out = stdout(&z2ca(&["check", "r-gauge-invariance"]));
    assert!(out.starts_with("check: r-gauge-invariance"));
    assert!(out.contains("verdict: FAILS\n"));
    let scenario: String = out
        .lines()
        .skip_while(|l| *l != "counterexample:")
        .skip(1)
        .map(|l| format!("{}\n", l.strip_prefix("  ").unwrap()))
        .collect();
    let f = Files::new();
    let s = f.put("cx.txt", &scenario);
    let t = z2ca(&["transform", &s]);
    assert_eq!(code(&t), 0);
    assert!(String::from_utf8_lossy(&t.stderr).starts_with("not valid"));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let f = Files::new();
    let s = f.put(
        "s.txt",
        "N=4\nT=2\nrule=RA\nS=advect\npsi0=01 00 11 00\na0=10 01 00 00\nphi=seed:42\n",
    );
    for args in [
        vec!["simulate", &s, "--render", "svg"],
        vec!["transform", &s, "--render", "diag"],
        vec![
            "check",
            "remark1",
            "--n",
            "3",
            "--t",
            "1",
            "--samples",
            "200",
            "--seed",
            "1",
        ],
        vec!["check", "gauge-fixing", "--n", "3", "--t", "2"],
    ] {
        let (a, b) = (z2ca(&args), z2ca(&args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn timing_goes_to_stderr() {
    let out = z2ca(&["check", "local-covariance", "--timing"]);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("elapsed: "));
    assert!(!stdout(&out).contains("elapsed"));
}

#[test]
fn parse_errors_name_line_and_token() {
    let f = Files::new();
    let s = f.put("bad.txt", "N=2\nT=1\nrule=R\npsi0=00 01\nphi=\n  0 1\n  0 2\n  0 0\n");
    let out = z2ca(&["simulate", &s]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 7"), "{err}");
    assert!(err.contains("`2`"), "{err}");
    assert_eq!(code(&z2ca(&["simulate", "/nonexistent/file"])), 2);
    assert_eq!(
        code(&z2ca(&["render", &f.put("d.txt", "DIAG N=2 T=0 kind=matter\n00\n")])),
        2
    );
}

#[test]
fn svg_j_overlay() {
    let f = Files::new();
    let d = f.put("d.txt", "DIAG N=2 T=0 kind=matter\n10 11\n");
    let svg = stdout(&z2ca(&["render", &d, "--format", "svg", "--j-overlay"]));
    assert_eq!(svg.matches("<rect").count(), 2);
    assert_eq!(svg.matches("fill=\"black\"").count(), 1);
}
