use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn ttg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ttg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("data")
        .join(name)
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn count_examples() {
    for (args, expected) in [
        (&["count", "6", "--method", "formula"][..], "76\n"),
        (&["count", "6", "--method", "enumerate"][..], "76\n"),
        (&["count", "1", "--method", "formula"][..], "0\n"),
    ] {
        let o = ttg(args);
        assert!(o.status.success());
        assert_eq!(stdout(&o), expected);
    }
}

#[test]
fn count_methods_are_byte_identical() {
    for n in 2..=12 {
        let n = n.to_string();
        let outs: Vec<Vec<u8>> = ["formula", "sum", "enumerate"]
            .iter()
            .map(|m| ttg(&["count", &n, "--method", m]).stdout)
            .collect();
        assert_eq!(outs[0], outs[1], "n={n}");
        assert_eq!(outs[0], outs[2], "n={n}");
    }
}

#[test]
fn large_counts_print_in_full() {
    let o = ttg(&["count", "300"]);
    let text = stdout(&o);
    assert!(text.trim().chars().all(|c| c.is_ascii_digit()));
    assert!(text.trim().len() > 60);
    assert_eq!(text, stdout(&ttg(&["count", "300", "--method", "sum"])));
}

#[test]
fn enumerate_line_count_matches_count() {
    for n in 2..=16 {
        let n = n.to_string();
        let lines = stdout(&ttg(&["enumerate", &n])).lines().count();
        let count: usize = stdout(&ttg(&["count", &n])).trim().parse().unwrap();
        assert_eq!(lines, count, "n={n}");
    }
}

#[test]
fn enumerate_golden_order() {
    let golden = include_str!("golden/enumerate_5.jsonl");
    assert_eq!(stdout(&ttg(&["enumerate", "5"])), golden);
    // deterministic across runs
    assert_eq!(stdout(&ttg(&["enumerate", "5"])), golden);
}

#[test]
fn enumerate_examples() {
    assert_eq!(
        stdout(&ttg(&["enumerate", "2"])),
        "{\"n1\":1,\"n2\":1,\"matrix\":[[1,0]]}\n"
    );
    assert_eq!(
        stdout(&ttg(&["enumerate", "5", "--split", "2"]))
            .lines()
            .count(),
        13
    );
    let o = ttg(&["enumerate", "3", "--limit", "2"]);
    assert!(o.status.success());
    let all = stdout(&ttg(&["enumerate", "3"]));
    let first_two: String = all.lines().take(2).map(|l| format!("{l}\n")).collect();
    assert_eq!(stdout(&o), first_two);
    let csv = stdout(&ttg(&["enumerate", "4", "--format", "csv"]));
    assert_eq!(csv.lines().count(), 16);
    assert_eq!(csv.lines().next(), Some("n1,n2,r,rows"));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("specs.jsonl");
    let o = ttg(&["enumerate", "4", "--output", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 15);
}

#[test]
fn inspect_worked_example() {
    let o = ttg(&["inspect", "--n1", "2", "--n2", "3", "--matrix", "2,0;0,3"]);
    assert!(o.status.success());
    let report = json(&o);
    assert_eq!(
        report["minimal_winning"],
        serde_json::json!([
            [1, 2],
            [1, 3, 4],
            [1, 3, 5],
            [1, 4, 5],
            [2, 3, 4],
            [2, 3, 5],
            [2, 4, 5],
            [3, 4, 5]
        ])
    );
    assert_eq!(
        report["min_winning_profiles"],
        serde_json::json!([[0, 3], [1, 2], [2, 0]])
    );
    assert_eq!(
        report["delta_minimal_rows"],
        serde_json::json!([[2, 0], [0, 3]])
    );
    assert_eq!(report["winning_profiles"].as_array().unwrap().len(), 7);
    assert_eq!(
        report["max_losing_profiles"],
        serde_json::json!([[0, 2], [1, 1]])
    );
    assert_eq!(report["null_voters"], serde_json::json!([]));
    assert_eq!(
        report["spec"],
        serde_json::json!({"n1": 2, "n2": 3, "matrix": [[2, 0], [0, 3]]})
    );
}

#[test]
fn inspect_rejects_invalid_specs() {
    let o = ttg(&["inspect", "--n1", "1", "--n2", "1", "--matrix", "0,0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("m_{1,1}>0"));
    let o = ttg(&["inspect", "--n1", "2", "--n2", "3", "--matrix", "0,3;2,0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("m_{i,1}>m_{j,1}"));
}

#[test]
fn classify_files() {
    let o = ttg(&["classify", data("worked_example.json").to_str().unwrap()]);
    assert!(o.status.success());
    let r = json(&o);
    assert_eq!(r["complete"], true);
    assert_eq!(r["types"], 2);
    assert_eq!(r["classes"], serde_json::json!([[1, 2], [3, 4, 5]]));
    assert_eq!(
        r["spec"],
        serde_json::json!({"n1": 2, "n2": 3, "matrix": [[2, 0], [0, 3]]})
    );

    let r = json(&ttg(&[
        "classify",
        data("two_of_three.json").to_str().unwrap(),
    ]));
    assert_eq!(r["complete"], true);
    assert_eq!(r["types"], 1);
    assert!(r.get("spec").is_none());

    let r = json(&ttg(&[
        "classify",
        data("incomplete.json").to_str().unwrap(),
    ]));
    assert_eq!(r["complete"], false);
    assert_eq!(
        r["witness"],
        serde_json::json!({"i": 1, "j": 3, "s": [2], "t": [4]})
    );
}

#[test]
fn classify_rejects_bad_input() {
    for name in ["malformed.json", "not_antichain.json", "missing.json"] {
        let o = ttg(&["classify", data(name).to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(1), "{name}");
    }
}

#[test]
fn verify_exit_codes() {
    let o = ttg(&["verify", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(
        text.lines()
            .filter(|l| l.trim_end().ends_with("OK"))
            .count(),
        3
    );
    assert_eq!(ttg(&["verify", "1"]).status.code(), Some(1));
}

#[test]
fn verify_five() {
    let o = ttg(&["verify", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let last = text.lines().last().unwrap();
    let cols: Vec<&str> = last.split_whitespace().collect();
    assert_eq!(cols, vec!["5", "7579", "208", "5", "36", "36", "OK"]);
}

#[test]
fn fib_subcommand() {
    assert_eq!(stdout(&ttg(&["fib", "12"])), "144\n");
    assert_eq!(stdout(&ttg(&["fib", "92"])), "7540113804746346429\n");
}
