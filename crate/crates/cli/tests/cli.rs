use std::path::Path;
use std::process::{Command, Output};

fn hahnsat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hahnsat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn eval_binomial_series() {
    let o = hahnsat(&["eval", "(1+t1)^(1/2)"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("1 + 1/2*t1 - 1/8*t1^2"));
}

#[test]
fn eval_exact_quotient() {
    let o = hahnsat(&["eval", "t1/t1"]);
    assert_eq!(stdout(&o).lines().next(), Some("1"));
}

#[test]
fn eval_division_by_zero_is_reported() {
    let o = hahnsat(&["eval", "1/0"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("zero"));
}

#[test]
fn eval_parse_error_has_position() {
    let o = hahnsat(&["eval", "1 + * t1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("byte 4"));
}

#[test]
fn canonical_cuts_classify() {
    let cases: [(&[&str], &str); 3] = [
        (&["--dim", "2", "classify", "--gens", "t1", "--x0", "t2"], "value-transcendental"),
        (
            &["classify", "--gens", "t1", "--x0", "sqrt2 + t1", "--sample-coeff", "q"],
            "residue-transcendental",
        ),
        (
            &[
                "classify",
                "--gens",
                "t1",
                "--x0",
                "t1^(3/2)+t1^(5/3)+t1^(7/4)+t1^(9/5)+t1^(11/6)",
            ],
            "immediate",
        ),
    ];
    for (args, case) in cases {
        let o = hahnsat(args);
        assert_eq!(code(&o), 0, "{args:?}");
        assert!(stdout(&o).contains(&format!("case: {case}")), "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn equality_is_an_expected_negative() {
    let o = hahnsat(&["classify", "--gens", "t1", "--x0", "t1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("equals x0"));
}

#[test]
fn missing_x0_is_a_usage_error() {
    assert_eq!(code(&hahnsat(&["classify", "--gens", "t1"])), 2);
}

#[test]
fn deepening_retry() {
    let args = ["--dim", "2", "realize", "--gens", "t1", "--x0", "t1^(1/2) + t1*t2"];
    let o = hahnsat(&args);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("depth: 2"));
    let mut no_retry = args.to_vec();
    no_retry.extend(["--retries", "0"]);
    assert!(stdout(&hahnsat(&no_retry)).contains("ambiguous"));
}

#[test]
fn unknown_suite_exits_two() {
    assert_eq!(code(&hahnsat(&["suite", "nosuch"])), 2);
}

#[test]
fn eta0_gamma_reports_no_witness_and_succeeds() {
    let o = hahnsat(&["--dim", "3", "suite", "eta0", "--order", "gamma", "--trials", "40"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("no-witness"));
}

fn report_bytes(dir: &Path, name: &str, args: &[&str]) -> Vec<u8> {
    let path = dir.join(name);
    let p = path.to_str().unwrap();
    let mut full = args.to_vec();
    full.extend(["--report", p]);
    let o = hahnsat(&full);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    std::fs::read(&path).unwrap()
}

#[test]
fn suite_reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["suite", "dimension-inequality", "--trials", "8", "--seed", "7", "--depth", "2"];
    let a = report_bytes(dir.path(), "a.jsonl", &args);
    let b = report_bytes(dir.path(), "b.jsonl", &args);
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    let recs = hahnsat_core::report::read_records(&text).unwrap();
    assert_eq!(recs[0]["result"]["status"], "pass");
    assert_eq!(recs[0]["config"]["seed"], 7);
}

#[test]
fn realize_reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--dim", "2", "realize", "--gens", "t1", "--x0", "t2"];
    let a = report_bytes(dir.path(), "a.jsonl", &args);
    assert_eq!(a, report_bytes(dir.path(), "b.jsonl", &args));
    let text = String::from_utf8(a).unwrap();
    assert!(!text.contains("time"));
    let recs = hahnsat_core::report::read_records(&text).unwrap();
    assert_eq!(recs[0]["result"]["witness"]["g"], "(0, 0, 1)");
}

#[test]
fn workspace_bindings_and_extension() {
    let dir = tempfile::tempdir().unwrap();
    let ws = dir.path().join("ws.txt");
    let w = ws.to_str().unwrap();
    std::fs::write(&ws, "n = 2\ncoeff = qsqrt2\nprecision = (4, 0)\n").unwrap();
    assert_eq!(code(&hahnsat(&["--workspace", w, "let", "g", "t1"])), 0);
    assert_eq!(code(&hahnsat(&["--workspace", w, "let", "y", "t2 + g^2"])), 0);
    let o = hahnsat(&["--workspace", w, "eval", "y - g^2"]);
    assert_eq!(stdout(&o).lines().next(), Some("t2"));

    let o = hahnsat(&["--workspace", w, "realize", "--gens", "g", "--x0", "t2"]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&ws).unwrap();
    assert!(text.starts_with("n = 3\n"), "{text}");
    // loading is idempotent
    let o = hahnsat(&["--workspace", w, "eval", "y + t3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read_to_string(&ws).unwrap(), text);

    assert_eq!(code(&hahnsat(&["--workspace", w, "extend", "2"])), 0);
    assert!(std::fs::read_to_string(&ws).unwrap().starts_with("n = 5\n"));
}

#[test]
fn seq_builds_pseudo_limit() {
    let o = hahnsat(&["seq", "0; t1; t1+t1^2; t1+t1^2+t1^3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("pseudo-limit: t1 + t1^2 + t1^3 + O(t1^4)"));
}

#[test]
fn let_without_workspace_is_usage_error() {
    assert_eq!(code(&hahnsat(&["let", "a", "t1"])), 2);
}

#[test]
fn dividing_by_an_undetermined_element_needs_precision() {
    let o = hahnsat(&["eval", "1/O(t1)"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn eval_reports_undetermined_sign_without_failing() {
    let o = hahnsat(&["eval", "O(1)"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("sign: undecidable"));
}
