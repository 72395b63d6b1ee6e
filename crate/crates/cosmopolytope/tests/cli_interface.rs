//! End-to-end checks of the command-line interface: exit codes, output
//! schemas, and format round-trips, run against the real binary.

use std::process::{Command, Output};

use cosmopolytope::report::Table;

fn run_cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cosmopolytope"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn usage_errors_exit_2() {
    let out = run_cli(&["simulate", "--n", "16", "--p", "1.5", "--reps", "100"]);
    assert_eq!(out.status.code(), Some(2), "p=1.5 must be a usage error");

    let out = run_cli(&["simulate", "--n", "16", "--p", "0.5", "--functional", "nope"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run_cli(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run_cli(&["enumerate", "--n", "9", "--p", "1/2"]);
    assert_eq!(out.status.code(), Some(2), "enumeration cap exceeded");
}

#[test]
fn check_passes_and_emits_rows() {
    let out = run_cli(&["check", "--n-max", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let table = Table::from_csv(&text).unwrap();
    assert_eq!(table.rows().len(), 8);
    let status_col = table
        .columns()
        .iter()
        .position(|c| c == "status")
        .unwrap();
    for row in table.rows() {
        assert_eq!(
            row[status_col],
            cosmopolytope::report::Cell::Text("pass".into())
        );
    }
}

#[test]
fn bound_reports_the_inequality() {
    let out = run_cli(&[
        "bound",
        "--n",
        "4",
        "--p",
        "0.5",
        "--functional",
        "cosmo_edges",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let table = Table::from_json(
        &text,
        &[
            "n",
            "p",
            "functional",
            "b1",
            "b2",
            "b3",
            "b4",
            "b5",
            "bound",
            "exact_dk",
            "dk_le_bound",
            "mean",
            "sd",
        ],
    )
    .unwrap();
    assert_eq!(table.rows().len(), 1);
    assert_eq!(
        table.rows()[0][10],
        cosmopolytope::report::Cell::Bool(true)
    );
}

#[test]
fn enumerate_json_round_trips() {
    let columns = [
        "n",
        "p",
        "functional",
        "value",
        "probability",
        "cumulative",
        "mean",
        "variance",
    ];
    let out = run_cli(&["enumerate", "--n", "2", "--p", "1/2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"num\": 1"), "rational encoding: {text}");
    let table = Table::from_json(&text, &columns).unwrap();
    assert_eq!(table.rows().len(), 2);
    // Emitted JSON re-parses into the same table as the emitted CSV.
    let out = run_cli(&["enumerate", "--n", "2", "--p", "1/2", "--format", "csv"]);
    let csv_table = Table::from_csv(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(table.rows(), csv_table.rows());
}

#[test]
fn simulate_echoes_config_and_reproduces() {
    let args = [
        "simulate",
        "--n",
        "32",
        "--p",
        "0.2",
        "--reps",
        "400",
        "--seed",
        "7",
        "--functional",
        "tri_edges",
    ];
    let out1 = run_cli(&args);
    assert_eq!(out1.status.code(), Some(0));
    let text1 = String::from_utf8(out1.stdout).unwrap();
    let table = Table::from_csv(&text1).unwrap();
    assert_eq!(table.rows().len(), 1);
    for field in ["n", "p_spec", "seed", "reps", "functional", "standardization"] {
        assert!(
            table.columns().iter().any(|c| c == field),
            "config field {field} must be echoed"
        );
    }
    // Bit-identical report modulo the wall-clock column.
    let out2 = run_cli(&args);
    let text2 = String::from_utf8(out2.stdout).unwrap();
    let strip_wall = |t: &str| {
        t.lines()
            .map(|l| l.rsplit_once(',').map(|(head, _)| head.to_string()).unwrap_or_default())
            .collect::<Vec<_>>()
    };
    assert_eq!(strip_wall(&text1), strip_wall(&text2));
}

#[test]
fn sweep_schema_prefix_and_rate_rule() {
    let out = run_cli(&[
        "sweep",
        "--n",
        "8,16",
        "--p",
        "4*n^-1",
        "--reps",
        "200",
        "--seed",
        "3",
        "--functional",
        "arcs",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let table = Table::from_csv(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(
        &table.columns()[..5],
        &["n", "p", "ks", "clt_rate", "ratio"]
    );
    // p resolves to 0.5 at n=8 and 0.25 at n=16.
    assert_eq!(table.rows()[0][1], cosmopolytope::report::Cell::Float(0.5));
    assert_eq!(table.rows()[1][1], cosmopolytope::report::Cell::Float(0.25));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("cosmopolytope-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.csv");
    let out = run_cli(&[
        "enumerate",
        "--n",
        "3",
        "--p",
        "1/4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let table = Table::from_csv(&text).unwrap();
    assert!(!table.rows().is_empty());
    std::fs::remove_dir_all(&dir).ok();
}
