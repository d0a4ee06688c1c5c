//! Commands end to end, through the library entry point and the binary.

use std::process::Command;

use wald_cli::report::{Results, SeqRow};
use wald_cli::{emit_report, parse_config, run_command, CliError, ConfigFile, Format, Report};
use wald_core::bounds::Status;
use wald_core::catalog;
use wald_core::engine::Certainty;
use wald_core::verify::Outcome;

fn run(args: &str) -> (Report, i32) {
    run_command(std::iter::once("wald").chain(args.split_whitespace())).unwrap()
}

fn wald(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_wald"))
        .args(args)
        .env_remove("WALD_CACHE")
        .output()
        .unwrap()
}

#[test]
fn quadrilateral_value_is_exact() {
    let (report, code) = run("waldschmidt --catalog H6_10 --max-m 4");
    assert_eq!(code, 0);
    let Results::Waldschmidt {
        bounds,
        rows,
        violations,
    } = report.results
    else {
        panic!("wrong kind")
    };
    assert_eq!(bounds.status, Status::ExactCertified);
    assert_eq!(bounds.value.unwrap().to_string(), "2");
    assert_eq!(
        rows.iter().map(|r| r.alpha).collect::<Vec<_>>(),
        vec![3, 4, 7, 8]
    );
    assert!(violations.is_empty());
    assert_eq!(report.certificates.len(), 4);
    assert!(report
        .certificates
        .iter()
        .all(|c| c.kernel_hash.is_some() && !c.primes.is_empty()));
}

#[test]
fn seven_point_differences() {
    let (report, code) = run("sequence --catalog H7_17 --max-m 7 --diffs");
    assert_eq!(code, 0);
    let Results::Sequence { diffs, .. } = &report.results else {
        panic!("wrong kind")
    };
    assert_eq!(diffs.as_deref(), Some(&[3, 2, 2, 3, 2, 2, 2][..]));
    let table = String::from_utf8(emit_report(&report, Format::Table)).unwrap();
    assert!(table.contains("differences: 3,2,2,3,2,2,2"));
}

#[test]
fn table_has_sequence_columns() {
    let (report, _) = run("sequence --catalog H6_9 --max-m 4");
    let table = String::from_utf8(emit_report(&report, Format::Table)).unwrap();
    let header = table.lines().find(|l| l.starts_with("m ")).unwrap();
    assert_eq!(
        header.split_whitespace().collect::<Vec<_>>(),
        vec!["m", "alpha", "diff", "certainty"]
    );
    assert!(table
        .lines()
        .any(|l| l.split_whitespace().collect::<Vec<_>>() == ["4", "9", "2", "certified"]));
}

#[test]
fn json_round_trips() {
    for args in [
        "sequence --catalog H6_9 --max-m 5 --diffs",
        "waldschmidt --catalog H6_10 --max-m 4",
        "classify --catalog NEAR_PENCIL(5)",
        "alpha --catalog LINE(4) --m 3",
        "catalog list",
        "catalog emit H8_119",
        "verify-paper --theorem A",
    ] {
        let (report, _) = run(args);
        let bytes = emit_report(&report, Format::Json);
        let back: Report = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(back, report, "{args}");
    }
}

#[test]
fn csv_has_one_row_per_m() {
    let (report, _) = run("sequence --catalog H6_2 --max-m 6");
    let text = String::from_utf8(emit_report(&report, Format::Csv)).unwrap();
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<SeqRow> = r.deserialize().collect::<Result<_, _>>().unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(
        rows.iter().map(|x| x.m).collect::<Vec<_>>(),
        (1..=6).collect::<Vec<_>>()
    );
    assert!(rows
        .iter()
        .all(|x| x.config == "H6_2" && x.certainty == Certainty::Certified));
}

#[test]
fn mode_flag_overrides_the_policy() {
    let (report, _) = run("sequence --catalog H6_9 --max-m 3 --mode heuristic");
    let Results::Sequence { rows, .. } = report.results else {
        panic!("wrong kind")
    };
    // α_1 = 3 has no positive-dimensional certificate in heuristic mode
    assert!(rows
        .iter()
        .any(|r| r.certainty == Certainty::ModularConsensus));
    assert_eq!(report.inputs.mode, "heuristic");
}

#[test]
fn emitted_configs_parse_back() {
    for name in catalog::list()
        .iter()
        .filter(|n| !n.ends_with("(s)"))
        .chain(&["CONIC(7)".to_string()])
    {
        let (report, _) = run(&format!("catalog emit {name}"));
        let table = String::from_utf8(emit_report(&report, Format::Table)).unwrap();
        assert_eq!(
            parse_config(&table).unwrap(),
            catalog::build(name).unwrap(),
            "{name}"
        );
        let Results::CatalogEmit { config } = report.results else {
            panic!("wrong kind")
        };
        let _: ConfigFile = serde_json::from_str(&table).unwrap();
        assert_eq!(config.name, *name);
    }
}

#[test]
fn config_files_and_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("line3.json");
    std::fs::write(
        &good,
        r#"{"name":"line3","points":[[0,0,1],[1,0,1],[2,0,1]]}"#,
    )
    .unwrap();
    let (report, code) = run(&format!("sequence --config {} --max-m 3", good.display()));
    assert_eq!(code, 0);
    let Results::Sequence { rows, .. } = report.results else {
        panic!("wrong kind")
    };
    assert_eq!(
        rows.iter().map(|r| r.alpha).collect::<Vec<_>>(),
        vec![1, 2, 3]
    );

    let dup = dir.path().join("dup.json");
    std::fs::write(&dup, r#"{"name":"d","points":[[1,2,3],[2,4,6]]}"#).unwrap();
    let err = run_command(["wald", "classify", "--config", dup.to_str().unwrap()]).unwrap_err();
    assert_eq!(
        err,
        CliError::DuplicatePoints {
            first: 1,
            second: 2
        }
    );

    let out = wald(&["classify", "--config", dup.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let dup_msg = String::from_utf8(out.stderr).unwrap();
    assert!(dup_msg.contains("1 and 2"), "{dup_msg}");

    let out = wald(&["classify", "--config", r#"{"name":"z","points":[[0,0,0]]}"#]);
    assert_eq!(out.status.code(), Some(2));
    let zero_msg = String::from_utf8(out.stderr).unwrap();

    let out = wald(&["classify", "--config", r#"{"name":"m","points":[[0,0]"#]);
    assert_eq!(out.status.code(), Some(2));
    let bad_msg = String::from_utf8(out.stderr).unwrap();
    assert!(bad_msg.contains("malformed"), "{bad_msg}");
    assert!(dup_msg != zero_msg && zero_msg != bad_msg && bad_msg != dup_msg);
}

#[test]
fn exit_codes() {
    assert_eq!(
        wald(&["classify", "--catalog", "H6_9"]).status.code(),
        Some(0)
    );
    // usage errors
    assert_eq!(wald(&["sequence"]).status.code(), Some(2));
    assert_eq!(
        wald(&["sequence", "--catalog", "H6_9", "--config", "x.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        wald(&["sequence", "--catalog", "NOPE"]).status.code(),
        Some(2)
    );
    assert_eq!(
        wald(&["sequence", "--catalog", "H6_9", "--mode", "fast"])
            .status
            .code(),
        Some(2)
    );
    // a single small prime cannot reconstruct the kernel of the steep line
    let out = Command::new(env!("CARGO_BIN_EXE_wald"))
        .args([
            "alpha",
            "--config",
            r#"{"name":"steep","points":[[0,0,1],[1000,1,0],[2000,2,1]]}"#,
            "--m",
            "1",
        ])
        .env("WALD_PRIMES", "101")
        .env_remove("WALD_CACHE")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("inconclusive"));
}

#[test]
fn nine_point_checks_pass() {
    let (report, code) = run("verify-paper --theorem A");
    assert_eq!(code, 0);
    let Results::Checks { rows } = report.results else {
        panic!("wrong kind")
    };
    assert_eq!(rows.len(), 12);
    assert!(rows
        .iter()
        .all(|r| r.theorem == "A" && r.outcome == Outcome::Pass));
}

#[test]
fn timing_stays_outside_results() {
    let (plain, _) = run("sequence --catalog H6_10 --max-m 3");
    let (timed, _) = run("sequence --catalog H6_10 --max-m 3 --timing");
    assert!(plain.timing.is_none());
    assert!(timed.timing.is_some());
    assert_eq!(plain.results, timed.results);
    assert_eq!(plain.certificates, timed.certificates);
}

#[test]
fn cache_file_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("dims.jsonl");
    let args = format!(
        "sequence --catalog H6_9 --max-m 5 --cache {}",
        cache.display()
    );
    let (first, _) = run(&args);
    let lines = std::fs::read_to_string(&cache).unwrap().lines().count();
    assert!(lines > 0);
    let (second, _) = run(&args);
    assert_eq!(first, second);
    assert_eq!(
        std::fs::read_to_string(&cache).unwrap().lines().count(),
        lines
    );
}

#[test]
fn jobs_do_not_change_results() {
    let (one, _) = run("sequence --catalog GENERAL6 --max-m 5 --jobs 1");
    let (four, _) = run("sequence --catalog GENERAL6 --max-m 5 --jobs 4");
    assert_eq!(one.results, four.results);
    assert_eq!(one.certificates, four.certificates);
}
