use std::io::Write;
use std::process::{Command, Output};

use euclid_lab::report::Report;
use serde_json::Value;

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_euclid-lab"));
    cmd.args(args).env_remove("EUCLID_LAB_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn ultra_violation_exits_one() {
    let out = run(&[
        "check",
        "--domain",
        "Z",
        "--fn",
        "abs",
        "--property",
        "ultra",
        "--max",
        "10",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["schema"], "euclid-lab-report/1");
    assert_eq!(v["result"]["verdict"], "violated");
    assert_eq!(v["result"]["witnesses"][0]["a"], "1");
    assert_eq!(v["result"]["witnesses"][0]["b"], "1");
}

#[test]
fn enumerate_lists_two_divisions() {
    let out = run(&[
        "enumerate",
        "--domain",
        "Z",
        "--fn",
        "abs",
        "--a",
        "1",
        "--b",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1 = 0·2 + 1"), "{text}");
    assert!(text.contains("1 = 1·2 + (-1)"), "{text}");
    assert!(text.contains("count: 2"));
}

#[test]
fn decompose_gives_coefficients() {
    let out = run(&[
        "decompose",
        "--domain",
        "poly",
        "--q",
        "2",
        "--fn",
        "deg",
        "--a",
        "x^3+x+1",
        "--base",
        "x",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let coeffs: Vec<&str> = v["result"]["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap())
        .collect();
    assert_eq!(coeffs, ["1", "1", "0", "1"]);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["check", "--domain", "Z", "--property", "bogus"][..],
        &["divide", "--domain", "Z", "--a", "1", "--b", "0"][..],
        &["divide", "--domain", "moon", "--a", "1", "--b", "2"][..],
        &[
            "check",
            "--domain",
            "field",
            "--q",
            "6",
            "--property",
            "ultra",
        ][..],
        &["enumerate", "--domain", "Z"][..],
        &["nonsense"][..],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn json_errors_are_structured() {
    let out = run(&[
        "divide", "--domain", "Z", "--a", "1", "--b", "0", "--format", "json",
    ]);
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "division_by_zero");
}

#[test]
fn skipped_pairs_exit_three() {
    // products of high-order series lose all precision
    let out = run(&[
        "check",
        "--domain",
        "series",
        "--q",
        "2",
        "--precision",
        "4",
        "--fn",
        "ord",
        "--property",
        "strongly",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["result"]["verdict"], "no_violation_found");
    assert!(v["result"]["pairs_skipped"].as_u64().unwrap() > 0);
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("sqrt(d)"));
}

#[test]
fn json_is_byte_identical_across_runs_and_threads() {
    let args = [
        "matrix", "--domain", "poly", "--q", "2", "--max", "3", "--format", "json",
    ];
    let first = run(&args);
    let again = run(&args);
    let one_thread = run_env(&args, &[("EUCLID_LAB_THREADS", "1")]);
    let four = run_env(&args, &[("EUCLID_LAB_THREADS", "4")]);
    assert_eq!(first.stdout, again.stdout);
    assert_eq!(first.stdout, one_thread.stdout);
    assert_eq!(first.stdout, four.stdout);
    assert!(first.stdout.ends_with(b"}\n"));
    assert_eq!(
        run_env(&args, &[("EUCLID_LAB_THREADS", "many")])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn reports_round_trip() {
    let out = run(&[
        "matrix", "--domain", "Z", "--fn", "abs", "--max", "10", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    let report: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(report.result["strongly"], "no_violation_found");
    assert_eq!(report.result["ultra"], "violated");
    assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", text);
}

#[test]
fn f4_text_report_shows_both_divisions() {
    let out = run(&[
        "check",
        "--domain",
        "field",
        "--q",
        "4",
        "--fn",
        "table",
        "--table",
        "0,1,1",
        "--property",
        "uniquely",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("1 = β·α + 0") && text.contains("1 = 0·α + 1"),
        "{text}"
    );
}

#[test]
fn refine_reports_certificate() {
    let out = run(&[
        "refine", "--domain", "Z", "--except", "3:9,-3:9", "--a", "3", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["value"], 6);
    assert_eq!(v["result"]["certainty"], "exact");
    assert_eq!(v["result"]["reason"], "monotone_bound");
}

#[test]
fn timing_is_opt_in() {
    let args = [
        "gcd", "--domain", "Z", "--a", "12", "--b", "18", "--format", "json",
    ];
    assert!(json(&run(&args)).get("timing").is_none());
    let mut with = args.to_vec();
    with.push("--timing");
    assert!(json(&run(&with))["timing"]["elapsed_ms"].is_number());
}

#[test]
fn search_campaign_files() {
    let dir = tempfile::tempdir().unwrap();
    let toml_path = dir.path().join("f5.toml");
    let mut f = std::fs::File::create(&toml_path).unwrap();
    writeln!(
        f,
        "domain = \"field\"\nq = 5\ngenerator = \"tables\"\nmax_value = 3"
    )
    .unwrap();
    let out = run(&[
        "search",
        "--config",
        toml_path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["functions_examined"], 256);
    assert_eq!(v["result"]["candidates"].as_array().unwrap().len(), 0);

    let json_path = dir.path().join("f4.json");
    std::fs::write(
        &json_path,
        r#"{"domain": "field", "q": 4, "max_value": 1, "budget": 5}"#,
    )
    .unwrap();
    let v = json(&run(&[
        "search",
        "--config",
        json_path.to_str().unwrap(),
        "--format",
        "json",
    ]));
    assert_eq!(v["result"]["functions_examined"], 5);

    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "domain = \"field\"\nflavour = 1\n").unwrap();
    assert_eq!(
        run(&["search", "--config", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    std::fs::write(
        &bad,
        "domain = \"field\"\nq = 4\nmax_value = 1\nbudget = 0\n",
    )
    .unwrap();
    assert_eq!(
        run(&["search", "--config", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn every_subcommand_runs() {
    for (args, code) in [
        (
            &[
                "divide",
                "--domain",
                "quad",
                "--d",
                "-3",
                "--a",
                "5",
                "--b",
                "1/2+1/2*sqrt(-3)",
            ][..],
            0,
        ),
        (
            &[
                "gcd",
                "--domain",
                "poly",
                "--q",
                "3",
                "--a",
                "x^2-1",
                "--b",
                "x^2+2*x+1",
            ][..],
            0,
        ),
        (&["matrix", "--domain", "field", "--q", "5"][..], 0),
        (
            &[
                "refine", "--domain", "field", "--q", "4", "--fn", "table", "--table", "0,1,1",
            ][..],
            0,
        ),
        (
            &[
                "check",
                "--domain",
                "Z",
                "--property",
                "unit_equality",
                "--max",
                "8",
            ][..],
            0,
        ),
        (
            &[
                "check",
                "--domain",
                "quad",
                "--d",
                "-1",
                "--property",
                "unit_field_closure",
                "--max",
                "4",
            ][..],
            1,
        ),
        (
            &[
                "search",
                "--domain",
                "Z",
                "--max-value",
                "3",
                "--bound",
                "2",
                "--max",
                "6",
            ][..],
            0,
        ),
    ] {
        let out = run(args);
        assert_eq!(
            out.status.code(),
            Some(code),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}
