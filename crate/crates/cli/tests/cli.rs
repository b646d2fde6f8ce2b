use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_turan-bessel"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_half_order_closed_form() {
    let o = run(&["eval", "--fn", "J", "--nu", "0.5", "--x", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let v: f64 = row[4].parse().unwrap();
    let want = (2.0 / std::f64::consts::PI).sqrt() * 1f64.sin();
    assert!((v - want).abs() < 1e-12);
}

#[test]
fn verify_turan2_csv() {
    let o = run(&["verify", "--ineq", "turan2", "--nu", "0.25:5:50", "--x", "0:20:200"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("nu,x,margin,skipped_flag\n"));
    assert_eq!(text.lines().count(), 1 + 50 * 200);
    assert!(!text.contains('\r'));
}

#[test]
fn conjecture_json_anchors() {
    let o = run(&["conjecture", "--nu", "2", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let alphas: Vec<f64> = v["alphas"].as_array().unwrap().iter().map(|a| a.as_f64().unwrap()).collect();
    for (a, w) in alphas.iter().zip([6.690090363, 9.965082278, 13.1685359, 16.3465786]) {
        assert!((a - w).abs() < 1e-6);
    }
}

#[test]
fn violations_exit_two_and_still_write() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = run(&[
        "verify",
        "--ineq",
        "boundy4:widened",
        "--nu",
        "1",
        "--x",
        "0.9",
        "--lenient",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"certified\": false"));
    let o = run(&["report", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_and_domain_errors_exit_one() {
    assert_eq!(run(&["verify", "--ineq", "bogus", "--nu", "1", "--x", "1"]).status.code(), Some(1));
    assert_eq!(run(&["eval", "--fn", "J", "--nu", "1", "--x", "41"]).status.code(), Some(1));
    assert_eq!(run(&["eval", "--fn", "Q", "--nu", "1", "--x", "1"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--ineq", "turan2", "--nu", "-0.5", "--x", "1"]).status.code(), Some(1));
    assert_eq!(run(&["nonsense"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn byte_identical_across_runs_and_thread_counts() {
    let args = ["verify", "--ineq", "turan1", "--nu", "0:3:7", "--x", "0:10:41", "--format", "json"];
    let a = bin().args(args).env("TURAN_BESSEL_THREADS", "1").output().unwrap();
    let b = bin().args(args).env("TURAN_BESSEL_THREADS", "4").output().unwrap();
    let c = bin().args(args).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let bad = bin().args(args).env("TURAN_BESSEL_THREADS", "zero").output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn report_reemits_the_same_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let p = path.to_str().unwrap();
    let grid = ["--nu", "0.5:2:4", "--x", "0:8:17"];
    let o = run(&[&["verify", "--ineq", "turan1", "--format", "json", "--out", p][..], &grid[..]].concat());
    assert_eq!(o.status.code(), Some(0));
    let direct = run(&[&["verify", "--ineq", "turan1"][..], &grid[..]].concat());
    let again = run(&["report", "--input", p]);
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(direct.stdout, again.stdout);
    let plot = stdout(&run(&["report", "--input", p, "--plot-data"]));
    assert!(plot.starts_with("x,margin\n"));
    assert_eq!(plot.matches("# nu =").count(), 4);
}

#[test]
fn identity_and_suites() {
    let o = run(&["verify", "--identity", "turan4", "--nu", "0:3:4", "--x", "0.5:10:5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("nu,x,residual,skipped_flag\n"));
    let o = run(&["verify", "--suite", "natural"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn neumann_agreement_and_catalog() {
    let o = run(&["neumann", "--theta", "tn10", "--params", "nu=1", "--x", "0.2:1:5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 5);
    assert!(v.as_array().unwrap().iter().all(|r| r["agree"] == true));
    let o = run(&["neumann", "--list"]);
    assert!(stdout(&o).contains("\"tn10\""));
    assert_eq!(run(&["neumann", "--theta", "tn10", "--params", "nu=1", "--x", "2.5"]).status.code(), Some(1));
}

#[test]
fn zeros_and_xnu() {
    let o = run(&["zeros", "--nu", "0", "--n", "3"]);
    let t = stdout(&o);
    let x: f64 = t.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!((x - 2.404825557695773).abs() < 1e-12);
    let o = run(&["xnu", "--nu", "1.5:3:4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 5);
}
