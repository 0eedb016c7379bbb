use std::process::{Command, Output};

use zetakit_cli::report::{ComputeReport, VerificationReport};

fn zetakit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zetakit"))
        .args(args)
        .env_remove("ZETAKIT_DIGITS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn first_line(o: &Output) -> String {
    stdout(o).lines().next().unwrap_or_default().to_string()
}

fn json_compute(args: &[&str]) -> ComputeReport {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = zetakit(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(stdout(&o).trim()).unwrap()
}

#[test]
fn documented_examples() {
    let o = zetakit(&["compute", "eta", "0", "--digits", "30"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(first_line(&o), "0.5");

    let o = zetakit(&["compute", "hurwitz", "0", "0.3"]);
    assert_eq!(first_line(&o), "0.2");

    let r = json_compute(&["compute", "stieltjes", "1", "1", "--digits", "25"]);
    assert!(r.value_re.starts_with("-0.07281584548367672486058"), "{}", r.value_re);
    assert_eq!(r.value_im, "0");
    assert_eq!(r.digits, 25);
}

#[test]
fn complex_literals_and_negative_arguments() {
    let r = json_compute(&["compute", "zeta", "0.5+14i", "--digits", "15"]);
    assert!(r.value_re.starts_with("0.0222411426"), "{}", r.value_re);
    assert!(r.value_im.starts_with("-0.1032581232"), "{}", r.value_im);

    let r = json_compute(&["compute", "hurwitz", "-1.5", "0.25", "--digits", "15"]);
    assert!(!r.value_re.is_empty());
    let r = json_compute(&["compute", "eta", "-1-2i", "--digits", "15"]);
    assert_eq!(r.args, vec!["-1-2i"]);
    assert_ne!(r.value_im, "0");
}

#[test]
fn compute_json_schema_and_round_trip() {
    let o = zetakit(&["compute", "gamma-inc", "0.5", "2", "--digits", "20", "--format", "json"]);
    let line = stdout(&o);
    let line = line.trim_end();
    let keys = [
        "function", "args", "lambda", "digits", "value_re", "value_im", "err", "terms_used", "runtime_ms",
    ];
    let mut pos = 0;
    for k in keys {
        let at = line[pos..].find(&format!("\"{k}\"")).unwrap_or_else(|| panic!("missing key {k}"));
        pos += at;
    }
    let r: ComputeReport = serde_json::from_str(line).unwrap();
    assert_eq!(serde_json::to_string(&r).unwrap(), line);
    // Γ(1/2, 2) = √π erfc(√2)
    assert!(r.value_re.starts_with("0.0806471179603176"), "{}", r.value_re);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| zetakit(args).status.code();
    assert_eq!(code(&["compute", "zeta", "2"]), Some(0));
    // parse errors
    assert_eq!(code(&["compute", "zeta", "2+"]), Some(2));
    assert_eq!(code(&["compute", "zeta"]), Some(2));
    assert_eq!(code(&["compute", "zeta", "1", "2"]), Some(2));
    assert_eq!(code(&["compute", "nosuch", "1"]), Some(2));
    assert_eq!(code(&["compute", "stieltjes", "x", "1"]), Some(2));
    assert_eq!(code(&["--digits", "ten", "compute", "zeta", "2"]), Some(2));
    assert_eq!(code(&["verify", "--suite", "nosuch"]), Some(2));
    // domain and pole errors
    assert_eq!(code(&["compute", "hurwitz", "1", "0.5"]), Some(3));
    assert_eq!(code(&["compute", "hurwitz", "2", "-0.5"]), Some(3));
    assert_eq!(code(&["--lambda", "7", "compute", "hurwitz", "2", "0.5"]), Some(3));
    assert_eq!(code(&["compute", "stieltjes", "5", "1"]), Some(3));
    assert_eq!(code(&["compute", "lerch", "1.5", "2", "1"]), Some(3));
    assert_eq!(code(&["--digits", "0", "compute", "zeta", "2"]), Some(3));
    // resource limits
    assert_eq!(code(&["compute", "zeta", "0.5+1e6i"]), Some(4));
    assert_eq!(code(&["compute", "gamma-inc-deriv", "0.5", "1e5", "4"]), Some(4));
    assert_eq!(code(&["compute", "hurwitz", "2", "1e9"]), Some(4));
}

#[test]
fn domain_message_names_the_precondition() {
    let o = zetakit(&["--lambda", "7", "compute", "hurwitz", "2", "0.5"]);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("lambda"), "{err}");
}

#[test]
fn digits_precedence() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_zetakit"));
        cmd.env_remove("ZETAKIT_DIGITS");
        if let Some(v) = env {
            cmd.env("ZETAKIT_DIGITS", v);
        }
        cmd.args(["compute", "zeta", "3", "--format", "json"]);
        if let Some(v) = flag {
            cmd.args(["--digits", v]);
        }
        let o = cmd.output().unwrap();
        let r: ComputeReport = serde_json::from_slice(&o.stdout).unwrap();
        r.digits
    };
    assert_eq!(run(None, None), 30);
    assert_eq!(run(Some("12"), None), 12);
    assert_eq!(run(Some("12"), Some("40")), 40);
}

#[test]
fn output_is_rounded_to_requested_digits() {
    let r = json_compute(&["compute", "zeta", "2", "--digits", "10"]);
    // π²/6 = 1.64493406684822643...
    assert_eq!(r.value_re, "1.644934067");
    let r = json_compute(&["compute", "zeta", "2", "--digits", "3"]);
    assert_eq!(r.value_re, "1.64");
}

#[test]
fn verify_json_reports_round_trip() {
    let o = zetakit(&["verify", "--suite", "gamma", "--digits", "20", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    let mut n = 0;
    for line in text.lines() {
        let r: VerificationReport = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&r).unwrap(), line);
        assert_eq!(r.passed, r.abs_delta.is_some_and(|d| d <= r.tolerance));
        assert_eq!(r.context_echo.target_digits, 20);
        n += 1;
    }
    assert!(n > 20);
}

#[test]
fn verify_text_table() {
    let o = zetakit(&["verify", "--suite", "stieltjes", "--digits", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().next().unwrap().starts_with("identity"));
    assert!(text.contains("gamma1-laurent-a1"));
    assert!(text.trim_end().ends_with("passed"));
}

#[test]
fn verify_contour_reports_failures_with_exit_one() {
    let o = zetakit(&["verify", "--suite", "contour", "--format", "json"]);
    let reports: Vec<VerificationReport> =
        stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(reports.len(), 6);
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed).map(|r| r.identity_id.as_str()).collect();
    assert_eq!(failed, ["line-eta-c0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("observation power-p2"));
}

#[test]
fn bench_tables() {
    let o = zetakit(&[
        "bench", "--function", "hurwitz", "--s", "2.5", "--a", "1", "--digits", "50", "--lambda-grid", "0.5,1,2,4,6",
        "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 6);
    let inc: Vec<u64> = rows[..5].iter().map(|r| r["incomplete_gamma_terms"].as_u64().unwrap()).collect();
    let coef: Vec<u64> = rows[..5].iter().map(|r| r["coefficient_terms"].as_u64().unwrap()).collect();
    assert!(inc.windows(2).all(|w| w[1] <= w[0]), "{inc:?}");
    assert!(coef.windows(2).all(|w| w[1] >= w[0]), "{coef:?}");
    assert!(rows[5]["best_lambda"].is_f64());

    let o = zetakit(&["bench", "--function", "eta", "--s", "3", "--digits", "50", "--lambda-grid", "0.5,1,2,3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("fewest terms at lambda"));

    let o = zetakit(&["bench", "--function", "eta", "--s", "3", "--lambda-grid", "6.5"]);
    assert_eq!(o.status.code(), Some(3));
}
