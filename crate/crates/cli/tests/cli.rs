use std::path::Path;
use std::process::{Command, Output};

use cotsum_cli::load_report;
use cotsum_cli::report::Status;

fn cotsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cotsum"))
        .args(args)
        .env_remove("COTSUM_PRECISION_BITS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn eval_trig_family_prints_both_sides() {
    let o = cotsum(&["eval", "trig.cos2_over_cos4", "--k", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("oracle:    329.000"), "{s}");
    assert!(s.contains("= 329/1"), "{s}");
    assert!(s.contains("diff:") && s.trim_end().ends_with("pass"), "{s}");
}

#[test]
fn eval_dedekind_sum_is_exact() {
    let o = cotsum(&["eval", "dedekind.s", "--p", "1", "--q", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("= 1/18"));
}

#[test]
fn eval_unknown_tag_is_usage_error() {
    let o = cotsum(&["eval", "trig.unknown", "--k", "7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown identity tag"));
}

#[test]
fn eval_missing_parameter_is_usage_error() {
    assert_eq!(
        cotsum(&["eval", "reciprocity.t_law", "--p", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn eval_hypothesis_violation_is_usage_error() {
    assert_eq!(
        cotsum(&[
            "eval",
            "reciprocity.four_sum",
            "--p",
            "3",
            "--q",
            "5",
            "--r",
            "7",
            "--s",
            "9"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn eval_stated_four_sum_fails_with_exit_one() {
    let o = cotsum(&[
        "eval",
        "reciprocity.four_sum",
        "--p",
        "3",
        "--q",
        "5",
        "--r",
        "7",
        "--s",
        "11",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = cotsum(&[
        "eval",
        "reciprocity.four_sum.amended",
        "--p",
        "3",
        "--q",
        "5",
        "--r",
        "7",
        "--s",
        "11",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn eval_other_families() {
    for args in [
        vec!["eval", "rootsum.pole", "--k", "5", "--pole", "+i"],
        vec!["eval", "rootsum.mixed.lemr1", "--p", "3", "--q", "5"],
        vec!["eval", "twoperiod.csc2.special", "--p", "3", "--q", "7"],
        vec!["eval", "reciprocity.theorem.cpc", "--p", "2", "--q", "5"],
        vec!["eval", "residues.g_sin", "--k", "7"],
        vec!["eval", "charsum.sin_ratio", "--p", "5", "--a", "3"],
        vec!["eval", "charsum.multi_sin", "--p", "13", "--a", "3,5"],
        vec![
            "eval",
            "charsum.two_char",
            "--p",
            "5",
            "--q",
            "7",
            "--a",
            "1,1",
            "--b",
            "2,2",
        ],
        vec!["eval", "trig.triangular", "--m", "3"],
    ] {
        let o = cotsum(&args);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn precision_below_minimum_is_rejected() {
    assert_eq!(
        cotsum(&[
            "--precision-bits",
            "32",
            "eval",
            "dedekind.s",
            "--p",
            "1",
            "--q",
            "3"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn environment_sets_default_precision_and_flag_overrides() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("r.json");
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_cotsum"));
        cmd.env_remove("COTSUM_PRECISION_BITS");
        if let Some(e) = env {
            cmd.env("COTSUM_PRECISION_BITS", e);
        }
        if let Some(f) = flag {
            cmd.args(["--precision-bits", f]);
        }
        cmd.args([
            "verify",
            "--suite",
            "class-numbers",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(cmd.output().unwrap().status.success());
        load_report(&out).unwrap().precision_bits
    };
    assert_eq!(run(None, None), 256);
    assert_eq!(run(Some("128"), None), 128);
    assert_eq!(run(Some("128"), Some("192")), 192);
}

#[test]
fn tolerance_override_is_validated() {
    let ok = cotsum(&["--tolerance", "2^-100", "eval", "trig.inv_sin2", "--k", "9"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("tolerance: 7.88860905221011805412e-31"));
    let loose = cotsum(&["--tolerance", "0.5", "eval", "trig.inv_sin2", "--k", "9"]);
    assert_eq!(loose.status.code(), Some(2));
}

fn verify(dir: &Path, name: &str, args: &[&str]) -> (Option<i32>, std::path::PathBuf) {
    let out = dir.join(name);
    let mut full = vec!["verify"];
    full.extend_from_slice(args);
    full.extend(["--out", out.to_str().unwrap()]);
    (cotsum(&full).status.code(), out)
}

#[test]
fn verify_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, pa) = verify(
        dir.path(),
        "a.json",
        &["--suite", "trig", "--max-k", "25", "--jobs", "1"],
    );
    let (b, pb) = verify(
        dir.path(),
        "b.json",
        &["--suite", "trig", "--max-k", "25", "--jobs", "3"],
    );
    assert_eq!((a, b), (Some(0), Some(0)));
    let ra = load_report(&pa).unwrap();
    let rb = load_report(&pb).unwrap();
    assert_eq!(ra.body(), rb.body());
    assert_eq!(ra.summary.fail, 0);
    assert!(
        ra.summary.skipped_hypothesis > 0,
        "parity skips are recorded"
    );
}

#[test]
fn negative_controls_suite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let (code, path) = verify(
        dir.path(),
        "n.json",
        &["--suite", "negative-controls", "--max-k", "21"],
    );
    assert_eq!(code, Some(0));
    let doc = load_report(&path).unwrap();
    assert!(doc
        .records
        .iter()
        .all(|r| r.holds == Some(false) && r.status == Status::Pass));
}

#[test]
fn failing_suite_exits_one_and_report_shows_details() {
    let dir = tempfile::tempdir().unwrap();
    let (code, path) = verify(
        dir.path(),
        "r.json",
        &["--suite", "reciprocity", "--max", "7"],
    );
    let doc = load_report(&path).unwrap();
    assert!(doc.summary.fail > 0);
    assert_eq!(code, Some(1));
    let o = cotsum(&["report", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("reciprocity.csc6_law "));
    assert!(s.contains("failures:"));
    assert!(s.contains("reciprocity.csc6_law (p=3, q=5)"));
    for field in ["lhs:", "rhs:", "diff:", "tolerance:"] {
        assert!(s.contains(field), "{field} missing");
    }
}

#[test]
fn report_rejects_missing_and_malformed_files() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("none.json");
    assert_eq!(
        cotsum(&["report", missing.to_str().unwrap()]).status.code(),
        Some(3)
    );
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"schema_version\": 1").unwrap();
    let o = cotsum(&["report", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cannot parse"));
}

#[test]
fn unwritable_output_is_io_error() {
    let o = cotsum(&[
        "verify",
        "--suite",
        "class-numbers",
        "--out",
        "/nonexistent-dir/r.json",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn unknown_suite_is_usage_error() {
    assert_eq!(
        cotsum(&["verify", "--suite", "nope"]).status.code(),
        Some(2)
    );
}
