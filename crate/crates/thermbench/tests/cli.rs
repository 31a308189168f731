//! Drives the installed binary through its external interfaces: weather
//! synthesis, single-case runs, the full suite, diagnostic pairs, and the
//! documented exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use thermbench::harness::parse_report;
use thermbench::weather::parse_weather;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_thermbench"))
}

fn bundled_catalog_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/catalog.json")
}

fn synth_args(out: &Path) -> Vec<String> {
    [
        "synth-weather",
        "--mean",
        "15",
        "--daily-amp",
        "3",
        "--seasonal-amp",
        "17",
        "--clearness",
        "0.35",
        "--seed",
        "0",
        "--out",
    ]
    .iter()
    .map(|s| s.to_string())
    .chain([out.to_string_lossy().into_owned()])
    .collect()
}

fn run(args: &[String]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn make_weather(dir: &Path) -> PathBuf {
    let path = dir.join("desk.csv");
    let out = run(&synth_args(&path));
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    path
}

#[test]
fn synth_weather_writes_parseable_deterministic_series() {
    let dir = tempfile::tempdir().unwrap();
    let path = make_weather(dir.path());
    let text = std::fs::read_to_string(&path).unwrap();
    let series = parse_weather(&text).expect("output parses");
    assert_eq!(series.records.len(), 8760);

    let again = dir.path().join("again.csv");
    let out = run(&synth_args(&again));
    assert!(out.status.success());
    assert_eq!(text, std::fs::read_to_string(&again).unwrap());
}

#[test]
fn run_single_case_reports_and_exits_by_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let weather = make_weather(dir.path());

    // Case 620 has no envelope: nothing to fail, exit 0.
    let out = bin()
        .args(["run", "--case", "620"])
        .arg("--catalog")
        .arg(bundled_catalog_path())
        .arg("--weather")
        .arg(&weather)
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report = parse_report(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(report.cases.len(), 1);
    assert_eq!(report.cases[0].id, "620");
    assert!(report.cases[0].heating_verdict.is_none());

    // Case 600 carries the published envelope, which the desk-scale building
    // misses: exit 1.
    let out = bin()
        .args(["run", "--case", "600"])
        .arg("--catalog")
        .arg(bundled_catalog_path())
        .arg("--weather")
        .arg(&weather)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let report = parse_report(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert!(report.cases[0].heating_verdict.is_some());
    assert!(!report.overall_pass);
}

#[test]
fn suite_is_byte_identical_across_job_counts() {
    let dir = tempfile::tempdir().unwrap();
    let weather = make_weather(dir.path());

    let mut outputs = Vec::new();
    for jobs in ["1", "2"] {
        let path = dir.path().join(format!("suite-{}.json", jobs));
        let out = bin()
            .args(["suite", "--jobs", jobs])
            .arg("--catalog")
            .arg(bundled_catalog_path())
            .arg("--weather")
            .arg(&weather)
            .arg("--out")
            .arg(&path)
            .output()
            .unwrap();
        // The bundled envelopes are known to miss at desk scale.
        assert_eq!(out.status.code(), Some(1));
        outputs.push(std::fs::read_to_string(&path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);

    let report = parse_report(&outputs[0]).unwrap();
    assert_eq!(report.cases.len(), 9);
    // Case order is the catalog order.
    let ids: Vec<&str> = report.cases.iter().map(|c| c.id.as_str()).collect();
    assert_eq!(
        ids,
        ["270", "280", "600", "610", "620", "630", "650", "900", "930"]
    );
}

#[test]
fn suite_csv_has_fixed_header_and_one_row_per_case() {
    let dir = tempfile::tempdir().unwrap();
    let weather = make_weather(dir.path());
    let out = bin()
        .args(["suite", "--format", "csv"])
        .arg("--catalog")
        .arg(bundled_catalog_path())
        .arg("--weather")
        .arg(&weather)
        .output()
        .unwrap();
    let csv = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "case,model,heating_mwh,cooling_mwh,heating_verdict,cooling_verdict,heating_margin_mwh,cooling_margin_mwh"
    );
    assert_eq!(lines.len(), 10);
}

#[test]
fn diag_computes_the_pair_delta() {
    let dir = tempfile::tempdir().unwrap();
    let weather = make_weather(dir.path());
    let out = bin()
        .args(["diag", "--pair", "280:270", "--quantity", "heating"])
        .arg("--catalog")
        .arg(bundled_catalog_path())
        .arg("--weather")
        .arg(&weather)
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report = parse_report(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(report.pairs.len(), 1);
    let pair = &report.pairs[0];
    let delta = pair.delta_mwh.expect("delta computed");
    assert!(delta > 0.0, "delta {}", delta);
    assert_eq!(pair.within_expected, Some(true));
}

#[test]
fn usage_and_input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let weather = make_weather(dir.path());

    // Unknown subcommand -> clap usage error.
    let out = bin().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Unknown case id.
    let out = bin()
        .args(["run", "--case", "999"])
        .arg("--catalog")
        .arg(bundled_catalog_path())
        .arg("--weather")
        .arg(&weather)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Malformed weather document.
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "#nonsense\n").unwrap();
    let out = bin()
        .args(["suite"])
        .arg("--catalog")
        .arg(bundled_catalog_path())
        .arg("--weather")
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Malformed pair syntax.
    let out = bin()
        .args(["diag", "--pair", "280-270", "--quantity", "heating"])
        .arg("--catalog")
        .arg(bundled_catalog_path())
        .arg("--weather")
        .arg(&weather)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
