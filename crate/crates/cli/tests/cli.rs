use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn sr1kit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sr1kit"))
        .args(args)
        .env_remove("SR1KIT_JOBS")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = sr1kit(args);
    (out.status.code().unwrap(), json_of(&out))
}

#[test]
fn sr1_of_the_exchange_example() {
    let (code, v) = run(&["sr1", "5,5;7,7"]);
    assert_eq!(code, 0);
    assert_eq!(v["det"], 0);
    assert_eq!(v["sr1"], true);
}

#[test]
fn clean_of_the_exchange_example() {
    let (code, v) = run(&["clean", "5,5;7,7"]);
    assert_eq!(code, 0);
    assert_eq!(v["clean"], false);
    assert_eq!(v["complete"], true);
}

#[test]
fn exchange_of_the_exchange_example() {
    let (code, v) = run(&["exchange", "5,5;7,7", "--bound", "3"]);
    assert_eq!(code, 0);
    let e: Vec<i64> = v["E"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|r| r.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()))
        .collect();
    assert_eq!(e[0] * e[3] - e[1] * e[2], 0);
    assert_eq!(e[0] + e[3], 1);
    assert!(v["M"].is_array());
}

#[test]
fn all_exchange_witnesses_include_the_known_one() {
    let (_, v) = run(&["exchange", "5,5;7,7", "--bound", "3", "--all"]);
    let quoted: Value = serde_json::json!({"M": [[0, 0], [3, -2]], "E": [[5, 5], [-4, -4]]});
    assert!(v["witnesses"].as_array().unwrap().contains(&quoted));
}

#[test]
fn exchange_not_found_exits_two() {
    let (code, v) = run(&["exchange", "3,0;0,0", "--bound", "3"]);
    assert_eq!(code, 2);
    assert_eq!(v["found"], false);
}

#[test]
fn whitespace_and_big_entries_parse() {
    let (code, v) = run(&["smith", "  6 , 10 ; 0 , 0 "]);
    assert_eq!(code, 0);
    assert_eq!(v["D"], serde_json::json!([2, 0]));

    let big = "123456789012345678901234567890";
    let (code, v) = run(&["smith", &format!("{big},0;0,{big}")]);
    assert_eq!(code, 0);
    assert_eq!(v["D"][0], Value::String(big.to_string()));
}

#[test]
fn negative_leading_entry_is_a_matrix_not_a_flag() {
    let (code, v) = run(&["sr1", "-1,0;0,-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["reason"], "unit");
}

#[test]
fn malformed_literal_names_the_problem() {
    let (code, v) = run(&["smith", "1,2;3"]);
    assert_eq!(code, 1);
    assert_eq!(v["kind"], "parse");
    assert!(v["error"].as_str().unwrap().contains("missing entry"));

    let (code, v) = run(&["sr1", "1,x;3,4"]);
    assert_eq!(code, 1);
    assert!(
        v["error"]
            .as_str()
            .unwrap()
            .contains("invalid integer \"x\""),
        "{v}"
    );
}

#[test]
fn usage_errors_are_json() {
    let (code, v) = run(&["nonsense"]);
    assert_eq!(code, 1);
    assert_eq!(v["kind"], "usage");
    let (code, v) = run(&["--ring", "zmod:7", "sr1", "1,0;0,1"]);
    assert_eq!(code, 1);
    assert_eq!(v["kind"], "modulus_too_large");
    let (code, v) = run(&["--ring", "quaternions", "sr1", "1,0;0,1"]);
    assert_eq!(code, 1);
    assert_eq!(v["kind"], "invalid_argument");
}

#[test]
fn modular_sr1() {
    let (code, v) = run(&["--ring", "zmod:2", "sr1", "1,1;0,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["lsr1"], v["rsr1"]);
}

#[test]
fn non_sr1_scalar_matrix_carries_its_witness() {
    let (code, v) = run(&["sr1", "3,0;0,3"]);
    assert_eq!(code, 0);
    assert_eq!(v["sr1"], false);
    assert_eq!(v["witness"]["modulus"], 13);
    assert_eq!(v["witness"]["x"], serde_json::json!([[-4, 0], [0, -4]]));
}

#[test]
fn unitizer_methods() {
    for method in ["pipeline", "table"] {
        let (code, v) = run(&[
            "unitizer", "6,10;0,0", "--x", "7,-3;5,2", "--method", method,
        ]);
        assert_eq!(code, 0, "{method}");
        assert!(v["unit_value"] == 1 || v["unit_value"] == -1);
    }
    let (code, v) = run(&[
        "unitizer", "1,1;0,1", "--x", "2,0;0,2", "--method", "search", "--bound", "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["found"], true);
    let (code, v) = run(&["unitizer", "1,0;0,0", "--x", "0,0;0,0", "--method", "table"]);
    assert_eq!(code, 1);
    assert_eq!(v["kind"], "invalid_argument");
}

#[test]
fn output_is_deterministic() {
    let a = sr1kit(&["exchange", "5,5;7,7", "--bound", "3", "--all"]);
    let b = sr1kit(&["exchange", "5,5;7,7", "--bound", "3", "--all"]);
    assert_eq!(a.stdout, b.stdout);
    let a = sr1kit(&[
        "scan",
        "--entry-bound",
        "2",
        "--clean-bound",
        "1",
        "--bound",
        "1",
    ]);
    let b = sr1kit(&[
        "scan",
        "--entry-bound",
        "2",
        "--clean-bound",
        "1",
        "--bound",
        "1",
    ]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn interrupted_scan_resumes_to_the_same_totals() {
    let dir = tempfile::tempdir().unwrap();
    let full = dir.path().join("full.json");
    let resumed = dir.path().join("resumed.json");
    let args = [
        "scan",
        "--entry-bound",
        "3",
        "--clean-bound",
        "2",
        "--bound",
        "1",
        "--json",
    ];

    let mut with_path = args.to_vec();
    let full_s = full.to_str().unwrap();
    with_path.push(full_s);
    let (code, reference) = run(&with_path);
    assert_eq!(code, 0);
    assert_eq!(
        reference,
        serde_json::from_str::<Value>(&fs::read_to_string(&full).unwrap()).unwrap()
    );

    // Keep three finished blocks and a torn fourth, as if killed mid-write.
    let lines: Vec<String> = fs::read_to_string(format!("{full_s}.chunks.jsonl"))
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    assert_eq!(lines.len(), 7);
    let resumed_s = resumed.to_str().unwrap();
    let torn = format!(
        "{}\n{}",
        lines[..3].join("\n"),
        &lines[3][..lines[3].len() / 2]
    );
    fs::write(format!("{resumed_s}.chunks.jsonl"), torn).unwrap();

    let mut with_path = args.to_vec();
    with_path.push(resumed_s);
    let (code, again) = run(&with_path);
    assert_eq!(code, 0);
    assert_eq!(again, reference);
    let rewritten = fs::read_to_string(format!("{resumed_s}.chunks.jsonl")).unwrap();
    assert_eq!(rewritten.lines().count(), 7);
}

#[test]
fn verify_small_rings() {
    let (code, v) = run(&["verify", "--ring", "zmod:2", "--exhaustive"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    let (code, v) = run(&[
        "verify",
        "--ring",
        "int",
        "--exhaustive",
        "--entry-bound",
        "2",
        "--samples",
        "500",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
}

#[test]
fn jobs_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_sr1kit"))
        .args([
            "scan",
            "--entry-bound",
            "1",
            "--clean-bound",
            "1",
            "--bound",
            "1",
        ])
        .env("SR1KIT_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["total_matrices"], 81);
}

#[test]
fn pretty_mode_is_a_table() {
    let out = sr1kit(&["--pretty", "clean", "5,5;7,7"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("clean     false"), "{text}");
    assert!(serde_json::from_str::<Value>(&text).is_err());
}
