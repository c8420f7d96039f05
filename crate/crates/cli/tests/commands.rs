use std::io::Cursor;

use clap::Parser;
use ptolemy_cc_cli::{run, Outcome, RunConfig, EXIT_FAILURE, EXIT_GUARD, EXIT_OK, EXIT_PARSE};

const MIXED: &str = r#"{"N": 8, "diagonals": [[2,6],[2,7],[2,8],[4,6],[6,8],[1,6],[1,7]]}"#;

fn exec(args: &[&str], stdin: &str) -> Outcome {
    let config =
        RunConfig::try_parse_from(std::iter::once("ptolemy-cc").chain(args.iter().copied()))
            .expect("arguments parse");
    run(&config, &mut Cursor::new(stdin.as_bytes().to_vec()))
}

#[test]
fn rho_of_single_diagonal() {
    let out = exec(&["rho", "--json", MIXED, "--diagonal", "5,8"], "");
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "9\n");
}

#[test]
fn diagonal_endpoints_in_either_order() {
    let a = exec(&["rho", "--json", MIXED, "--diagonal", "8,5"], "");
    assert_eq!(a.stdout, "9\n");
}

#[test]
fn stdin_input() {
    let out = exec(&["rho", "--input", "-", "--diagonal", "4,8"], MIXED);
    assert_eq!(out.stdout, "6\n");
}

#[test]
fn validate_reports_witness() {
    let ok = exec(&["validate", "--json", MIXED], "");
    assert_eq!((ok.code, ok.stdout.as_str()), (EXIT_OK, "Ok\n"));

    let bad = exec(
        &["validate", "--json", r#"{"N":6,"diagonals":[[1,3],[2,4]]}"#],
        "",
    );
    assert_eq!(bad.code, EXIT_FAILURE);
    assert!(
        bad.stdout.contains("{1,3}") && bad.stdout.contains("{2,4}"),
        "{}",
        bad.stdout
    );
    assert!(bad.stdout.contains("missing {1,4}"), "{}", bad.stdout);
}

#[test]
fn rho_refuses_non_ptolemy_input() {
    let out = exec(
        &[
            "rho",
            "--json",
            r#"{"N":6,"diagonals":[[1,3],[2,4]]}"#,
            "--diagonal",
            "1,4",
        ],
        "",
    );
    assert_eq!(out.code, EXIT_FAILURE);
}

#[test]
fn syntax_error_has_position() {
    let out = exec(
        &["validate", "--input", "-"],
        "{\"N\": 6,\n \"diagonals\": [[1,3]\n",
    );
    assert_eq!(out.code, EXIT_PARSE);
    assert!(out.stderr.starts_with("stdin:3:"), "{}", out.stderr);
}

#[test]
fn bad_entries_are_parse_errors() {
    for json in [
        r#"{"N":6,"diagonals":[[1,2]]}"#,
        r#"{"N":6,"diagonals":[[1,9]]}"#,
        r#"{"N":2,"diagonals":[]}"#,
        r#"{"N":6,"diagonals":[],"extra":1}"#,
    ] {
        let out = exec(&["validate", "--json", json], "");
        assert_eq!(out.code, EXIT_PARSE, "{json}: {}", out.stderr);
    }
}

#[test]
fn missing_file() {
    let out = exec(&["validate", "--input", "/nonexistent/diagram.json"], "");
    assert_eq!(out.code, EXIT_PARSE);
}

#[test]
fn table_is_sorted_and_complete() {
    let out = exec(&["table", "--json", MIXED], "");
    let keys: Vec<(u32, u32)> = out
        .stdout
        .lines()
        .map(|l| {
            let (pair, _) = l.split_once(' ').unwrap();
            let (a, b) = pair.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    assert_eq!(keys.len(), 20);
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
    assert!(out.stdout.contains("5,8 9\n"));
}

#[test]
fn table_formats() {
    let csv = exec(&["table", "--json", MIXED, "--format", "csv"], "");
    assert!(csv.stdout.starts_with("a,b,rho\n1,3,4\n"));
    let json = exec(&["table", "--json", MIXED, "--format", "json"], "");
    let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(v["N"], 8);
    assert_eq!(v["rho"].as_array().unwrap().len(), 20);
}

#[test]
fn frieze_text_and_json() {
    let text = exec(&["frieze", "--json", MIXED], "");
    assert_eq!(text.code, EXIT_OK);
    assert!(text.stdout.contains("4 9 3 3 6 4 2 1"), "{}", text.stdout);

    let json = exec(
        &[
            "frieze",
            "--json",
            MIXED,
            "--format",
            "json",
            "--periods",
            "2",
        ],
        "",
    );
    let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(v["N"], 8);
    for row in v["rows"].as_array().unwrap() {
        assert_eq!(row.as_array().unwrap().len(), 16);
    }
}

#[test]
fn oracle_agrees() {
    let out = exec(&["oracle", "--json", MIXED], "");
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(out.stdout.lines().count(), 20);
    assert!(!out.stdout.contains("MISMATCH"));
    assert!(out.stdout.contains("5,8 9 9\n"));
}

#[test]
fn oracle_guard() {
    let out = exec(&["oracle", "--json", r#"{"N":14,"diagonals":[]}"#], "");
    assert_eq!(out.code, EXIT_OK);

    let mut pairs = Vec::new();
    for a in 1..=14u32 {
        for b in a + 2..=14 {
            if !(a == 1 && b == 14) {
                pairs.push(format!("[{a},{b}]"));
            }
        }
    }
    let clique = format!(r#"{{"N":14,"diagonals":[{}]}}"#, pairs.join(","));
    let out = exec(&["oracle", "--json", &clique], "");
    assert_eq!(out.code, EXIT_GUARD, "{}", out.stderr);
}

#[test]
fn examples_pass() {
    let out = exec(&["examples"], "");
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.ends_with("8 passed, 0 failed\n"));
}

#[test]
fn enumerate_counts_and_guard() {
    let out = exec(&["enumerate", "--n", "6"], "");
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout.lines().count(), 82);
    for line in out.stdout.lines() {
        let again = exec(&["validate", "--json", line], "");
        assert_eq!(again.code, EXIT_OK, "{line}");
    }

    let out = exec(&["enumerate", "--n", "10"], "");
    assert_eq!(out.code, EXIT_GUARD);
    assert!(out.stdout.is_empty());
}

#[test]
fn deterministic_output() {
    for args in [
        &["table", "--json", MIXED][..],
        &["frieze", "--json", MIXED, "--format", "csv"][..],
        &["enumerate", "--n", "7"][..],
    ] {
        assert_eq!(exec(args, ""), exec(args, ""));
    }
}
