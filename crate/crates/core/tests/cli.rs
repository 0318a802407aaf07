//! End-to-end runs of the `rgg1d` binary.

use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn rgg1d(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rgg1d"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = rgg1d(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn counting_commands() {
    assert_eq!(stdout(&["count", "--catalan", "5"]), "42\n");
    assert_eq!(stdout(&["count", "--catalan", "14"]), "2674440\n");
    assert_eq!(
        stdout(&["count", "--table", "narayana", "--n", "4"]),
        "n,k,count\n4,1,1\n4,2,6\n4,3,6\n4,4,1\n"
    );
    let pq = stdout(&["count", "--table", "pq", "--n", "4"]);
    assert!(pq.starts_with("m,n,k,p,q\n"));
    assert_eq!(stdout(&["enumerate", "--n", "3", "--count-only"]), "5\n");
    assert_eq!(
        stdout(&["enumerate", "--n", "4", "--count-only", "--connected-only"]),
        "5\n"
    );
    assert_eq!(
        stdout(&["enumerate", "--n", "3", "--emit", "cliques"]),
        "{[1:1],[2:2],[3:3]}\n{[1:1],[2:3]}\n{[1:2],[3:3]}\n{[1:2],[2:3]}\n{[1:3]}\n"
    );
}

#[test]
fn encode_decode_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let cover = dir.path().join("fig.cover");
    fs::write(&cover, "5\n1 4\n2 5\n4 6\n5 7\n8 10\n").unwrap();
    let text = stdout(&["encode", cover.to_str().unwrap()]);
    assert_eq!(text, "1101100100\n0001111001\n");

    let bits = dir.path().join("fig.bits");
    fs::write(&bits, &text).unwrap();
    assert_eq!(
        stdout(&["decode", bits.to_str().unwrap(), "--ordered"]),
        "1,2,3,3,2,2,0,1,2\n"
    );
    assert_eq!(
        stdout(&["decode", bits.to_str().unwrap()]),
        fs::read_to_string(&cover).unwrap()
    );

    let rgs = dir.path().join("fig.rgs");
    stdout(&[
        "encode",
        "--l",
        "1,2,3,3,2,2,0,1,2",
        "--binary",
        "--out",
        rgs.to_str().unwrap(),
    ]);
    let bytes = fs::read(&rgs).unwrap();
    assert_eq!(bytes.len(), 9 + 4);
    assert_eq!(&bytes[..4], b"RG1S");
    assert_eq!(
        stdout(&["decode", rgs.to_str().unwrap(), "--binary", "--ordered"]),
        "1,2,3,3,2,2,0,1,2\n"
    );
}

#[test]
fn generated_graphs_are_reproducible() {
    let args = ["gen", "--n", "30", "--r", "0.05", "--seed", "7"];
    let first = stdout(&args);
    assert_eq!(first, stdout(&args));
    assert_eq!(first.trim().split(',').count(), 29);
    let points = stdout(&[
        "gen", "--n", "5", "--r", "0.2", "--seed", "7", "--emit", "points",
    ]);
    assert_eq!(points.lines().count(), 6);
    let json: Value = serde_json::from_str(&stdout(&[
        "gen", "--n", "5", "--r", "0.2", "--format", "json",
    ]))
    .unwrap();
    assert_eq!(json["left_counts"].as_array().unwrap().len(), 4);
}

#[test]
fn numeric_commands() {
    let csv = stdout(&["pmf", "--kind", "L", "--n", "5", "--r", "0.2", "--i", "3"]);
    assert!(csv.starts_with("a,probability\n"));
    let mass: f64 = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse::<f64>().unwrap())
        .sum();
    assert!((mass - 1.0).abs() < 1e-10);

    let bounds = stdout(&["bounds", "--grid", "0:1:0.5"]);
    assert_eq!(bounds.lines().next(), Some("x,h_upper,h_lower"));
    assert_eq!(bounds.lines().nth(1), Some("0,0,0"));
    assert_eq!(bounds.lines().count(), 4);

    let json: Value = serde_json::from_str(&stdout(&[
        "entropy",
        "--n",
        "2",
        "--r",
        "0.5",
        "--samples",
        "20000",
        "--seed",
        "3",
    ]))
    .unwrap();
    assert_eq!(json["target"], "structure");
    assert_eq!(json["samples"], 20000);
    assert!(json.get("acceptance_rate").is_none());

    let conn = stdout(&[
        "connectivity",
        "--n",
        "100",
        "--regime",
        "log",
        "--coef",
        "2",
        "--samples",
        "200",
    ]);
    assert!(conn.starts_with("n,coef,r,probability,std_error\n100,2,"));

    let witness: Value =
        serde_json::from_str(&stdout(&["realizable", "--l", "1,1", "--r", "0.3"])).unwrap();
    assert_eq!(witness["feasible"], true);
    assert_eq!(witness["locations"].as_array().unwrap().len(), 3);
}

#[test]
fn exit_codes_and_streams() {
    let usage = rgg1d(&["count", "--catalan", "not-a-number"]);
    assert_eq!(usage.status.code(), Some(1));
    assert!(usage.stdout.is_empty());

    let domain = rgg1d(&["delta-free"]);
    assert_eq!(domain.status.code(), Some(1));

    let domain = rgg1d(&[
        "pmf", "--kind", "delta", "--n", "5", "--r", "0.7", "--a", "1",
    ]);
    assert_eq!(domain.status.code(), Some(2));
    assert!(domain.stdout.is_empty());
    assert!(String::from_utf8_lossy(&domain.stderr).starts_with("error: "));

    let bad_l = rgg1d(&["realizable", "--l", "0,2", "--r", "0.3"]);
    assert_eq!(bad_l.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bits = dir.path().join("bad.bits");
    fs::write(&bits, "10\n10\n").unwrap();
    let bad_code = rgg1d(&["decode", bits.to_str().unwrap()]);
    assert_eq!(bad_code.status.code(), Some(2));
    assert!(bad_code.stdout.is_empty());

    assert_eq!(rgg1d(&["--help"]).status.code(), Some(0));
}

#[test]
fn selftest_single_criterion() {
    let out = stdout(&["selftest", "--criterion", "2"]);
    assert!(out.starts_with("criterion  2 [PASS]"), "{out}");
}
