use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use sec121::report::ReportDocument;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_sec121")
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn golden(name: &str) -> Vec<u8> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    fs::read(&path).unwrap_or_else(|_| panic!("failed to read golden file {}", path.display()))
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("failed to spawn sec121")
}

fn run_path(cmd: &str, path: &Path, extra: &[&str]) -> Output {
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn assert_golden(output: &Output, name: &str) {
    assert_eq!(
        stdout(output),
        String::from_utf8(golden(name)).unwrap(),
        "stdout did not match golden file {name}; stderr:\n{}",
        stderr(output)
    );
}

#[test]
fn evaluate_ground_truth() {
    let out = run_path("evaluate", &data("ground_truth.json"), &["--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_golden(&out, "evaluate_ground_truth.json");
}

#[test]
fn evaluate_full_qualification_is_consistent() {
    let out = run_path("evaluate", &data("full_qualification.json"), &[]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("Sum of limitations: $500,000"));
    assert!(text.contains("Joint cap:          $500,000"));
    assert!(text.contains("no divergence"));
}

#[test]
fn evaluate_mode_override() {
    // min_three_joint agrees with min_six on the ground-truth facts.
    let out = run_path("evaluate", &data("ground_truth.json"), &["--mode", "min_three_joint", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).ends_with("375000,250000,125000,true,375000/1,250000/1,125000/1\n"));
    let bad = run_path("evaluate", &data("ground_truth.json"), &["--mode", "max_six"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn evaluate_rejects_bad_documents() {
    let neg = run_path("evaluate", &data("negative_period.json"), &[]);
    assert_eq!(neg.status.code(), Some(2));
    assert!(stderr(&neg).contains("line 5"), "{}", stderr(&neg));
    assert!(neg.stdout.is_empty());

    let unknown = run_path("evaluate", &data("unknown_key.json"), &[]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(stderr(&unknown).contains("unknown field `relocated`"));
}

#[test]
fn sweep_table_and_csv_goldens() {
    let table = run(&["sweep", "1..36"]);
    assert_eq!(table.status.code(), Some(1));
    assert_golden(&table, "sweep_1_36.txt");
    let csv = run(&["sweep", "1..36", "--format", "csv"]);
    assert_golden(&csv, "sweep_1_36.csv");
}

#[test]
fn sweep_consistent_tail() {
    let out = run(&["sweep", "24..36", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for line in text.lines().skip(1) {
        assert!(line.ends_with(",500000,500000,500000,500000,false"), "{line}");
    }
    assert_eq!(text.lines().count(), 14);
}

#[test]
fn sweep_zero() {
    let out = run(&["sweep", "0..0", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "P,SumA,min_six,min_three_joint,held_b2A_months,diverges\n0,250000,0,0,0,true\n");
}

#[test]
fn sweep_empty_range() {
    let out = run(&["sweep", "9..3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("empty range 9..3"));
}

#[test]
fn search_prior_sweep_domain() {
    let out = run_path("search", &data("domain_prior_sweep.json"), &["--limit", "25"]);
    assert_eq!(out.status.code(), Some(1));
    assert_golden(&out, "search_prior_sweep.txt");
    let first = stdout(&out).lines().next().unwrap().to_owned();
    assert!(first.starts_with("H: 120/120/120 (no reason), W: 120/120/1 (reason)"), "{first}");
}

#[test]
fn search_limit_and_empty() {
    let one = run_path("search", &data("domain_prior_sweep.json"), &["--limit", "1", "--format", "csv"]);
    assert_eq!(stdout(&one).lines().count(), 2);
    let none = run_path("search", &data("domain_full_singleton.json"), &[]);
    assert_eq!(none.status.code(), Some(0));
    assert!(stdout(&none).starts_with("0 witness(es)"));
}

#[test]
fn search_domain_bound() {
    let big = run_path("search", &data("domain_large.json"), &[]);
    assert_eq!(big.status.code(), Some(2));
    assert!(stderr(&big).contains("--override-domain-bound"));
    let small_bound = run_path("search", &data("domain_prior_sweep.json"), &["--domain-bound", "100"]);
    assert_eq!(small_bound.status.code(), Some(2));
    let forced = run_path(
        "search",
        &data("domain_prior_sweep.json"),
        &["--domain-bound", "100", "--override-domain-bound", "--limit", "1"],
    );
    assert_eq!(forced.status.code(), Some(1));
}

#[test]
fn search_parallel_matches_sequential() {
    let seq = run_path("search", &data("domain_prior_sweep.json"), &["--format", "json"]);
    let par = run_path("search", &data("domain_prior_sweep.json"), &["--format", "json", "--parallel"]);
    assert_eq!(seq.stdout, par.stdout);
}

#[test]
fn grid_golden_and_unit_selection() {
    let out = run_path("grid", &data("grid.json"), &[]);
    assert_eq!(out.status.code(), Some(1));
    assert_golden(&out, "grid.txt");

    let years = run_path("grid", &data("grid.json"), &["--unit", "years", "--format", "csv"]);
    let text = stdout(&years);
    assert!(text.contains("years,maximum,false,375000,500000,"));
    assert!(text.contains("years,average,true,375000,375000,"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn grid_missing_unit() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("only_years.json");
    fs::write(
        &path,
        r#"{"schema_version":1,"facts":{"years":{"spouse_a":{"ownership":2,"use":2},"spouse_b":{"ownership":1,"use":1,"qualifying_reason":true}}}}"#,
    )
    .unwrap();
    let out = run_path("grid", &path, &["--unit", "days"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("no facts supplied for unit `days`"));
}

#[test]
fn validate_golden() {
    let out = run(&["validate", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_golden(&out, "validate.json");
}

#[test]
fn validate_fixture_directory() {
    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let dir = tempfile::tempdir().unwrap();
    for entry in fs::read_dir(&src).unwrap() {
        let entry = entry.unwrap();
        fs::copy(entry.path(), dir.path().join(entry.file_name())).unwrap();
    }
    let dir_arg = dir.path().to_str().unwrap();

    let ok = run(&["validate", "--fixtures", dir_arg]);
    assert_eq!(ok.status.code(), Some(0), "{}", stderr(&ok));

    let table = dir.path().join("run_joint_prior_table.txt");
    let text = fs::read_to_string(&table).unwrap();
    fs::write(&table, text.replace("17 | 427083 | 354167 | 354167", "17 | 427083 | 354167 | 354168")).unwrap();
    let corrupted = run(&["validate", "--fixtures", dir_arg]);
    assert_eq!(corrupted.status.code(), Some(1));
    assert!(
        stdout(&corrupted).contains("row P=17, column min_three_joint: expected 354168, actual 354167"),
        "{}",
        stdout(&corrupted)
    );

    fs::remove_file(&table).unwrap();
    let missing = run(&["validate", "--fixtures", dir_arg]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(stderr(&missing).contains("fixture file missing"));
}

#[test]
fn validate_single_run_skips_determinism() {
    let out = run(&["validate", "--runs", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("skipped"));
    assert!(stderr(&out).contains("determinism check skipped"));
}

fn json_reports() -> Vec<String> {
    let invocations: Vec<Vec<String>> = vec![
        vec!["evaluate".into(), data("ground_truth.json").display().to_string()],
        vec!["sweep".into(), "1..36".into()],
        vec!["search".into(), data("domain_prior_sweep.json").display().to_string()],
        vec!["grid".into(), data("grid.json").display().to_string()],
        vec!["validate".into()],
    ];
    invocations
        .into_iter()
        .map(|mut args| {
            args.extend(["--format".into(), "json".into()]);
            let out = Command::new(bin()).args(&args).output().unwrap();
            String::from_utf8(out.stdout).unwrap()
        })
        .collect()
}

#[test]
fn json_reports_round_trip_byte_identical() {
    for json in json_reports() {
        let doc = ReportDocument::from_json(&json).unwrap_or_else(|e| panic!("{e}\n{json}"));
        assert_eq!(doc.to_json().unwrap(), json);
    }
}

#[test]
fn csv_and_table_agree_with_json() {
    let sweep = ReportDocument::from_json(&stdout(&run(&["sweep", "1..36", "--format", "json"]))).unwrap();
    let csv = stdout(&run(&["sweep", "1..36", "--format", "csv"]));
    let table = stdout(&run(&["sweep", "1..36"]));
    let rows = &sweep.sweep.as_ref().unwrap().rows;
    let csv_rows: Vec<&str> = csv.lines().skip(1).collect();
    let table_rows: Vec<&str> = table.lines().skip(2).collect();
    for (i, row) in rows.iter().enumerate() {
        let dollars =
            [row.sum_a.dollars, row.min_six.dollars, row.min_three_joint.dollars, row.held_b2a_months.dollars];
        let csv_cells: Vec<i128> = csv_rows[i].split(',').skip(1).take(4).map(|c| c.parse().unwrap()).collect();
        assert_eq!(csv_cells, dollars);
        let table_cells: Vec<i128> = table_rows[i]
            .split('|')
            .skip(1)
            .map(|c| c.trim().trim_start_matches('$').replace(',', "").parse().unwrap())
            .collect();
        assert_eq!(table_cells, dollars);
    }
}
