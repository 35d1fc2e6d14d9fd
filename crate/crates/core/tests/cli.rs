//! End-to-end checks of the `bacsat` binary: exit codes, report JSON,
//! and agreement between `recognize` and `solve`.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bacsat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bacsat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("bacsat-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

fn stdout_json(out: &Output) -> serde_json::Value {
    let text = String::from_utf8_lossy(&out.stdout);
    serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("stdout not JSON ({e}): {text}"))
}

const FS4: &str = "p cnf 4 2\n1 2 0\n2 3 4 0\n";
const FC3: &str = "p cnf 3 3\n1 -2 0\n2 -3 0\n3 -1 0\n";
const FA2: &str = "p cnf 2 4\n1 2 0\n1 -2 0\n-1 2 0\n-1 -2 0\n";

#[test]
fn solve_sat_exit_code_and_model() {
    let input = write_temp("fs4.cnf", FS4);
    let out = bacsat(&["solve", "--method", "bac", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(10));
    let report = stdout_json(&out);
    assert_eq!(report["status"], "sat");
    assert!(report["result"]["model"].is_object());
    assert!(report["timings_ms"]["parse"].is_number());
}

#[test]
fn solve_unsat_exit_code_and_refutation() {
    let input = write_temp("fa2.cnf", FA2);
    let out = bacsat(&["solve", "--method", "bac", "--certify", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(20));
    let report = stdout_json(&out);
    assert_eq!(report["status"], "unsat");
    assert!(report["result"]["refutation"].is_array());
}

#[test]
fn solve_class_violation_exit_code() {
    let input = write_temp("fc3.cnf", FC3);
    let out = bacsat(&["solve", "--method", "bac", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("acyclic"));
    // failures still report valid JSON
    assert_eq!(stdout_json(&out)["status"], "error");
}

#[test]
fn parse_error_exit_code() {
    let input = write_temp("bad.cnf", "p cnf 1 1\n2 0\n");
    let out = bacsat(&["solve", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_error_exit_code() {
    let out = bacsat(&["solve"]);
    assert_eq!(out.status.code(), Some(1));
    let out = bacsat(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn resource_guard_exit_code() {
    // 30 variables exceeds the truth-table oracle's guard
    let mut text = String::from("p cnf 30 1\n");
    for i in 1..=30 {
        text.push_str(&format!("{i} "));
    }
    text.push_str("0\n");
    let input = write_temp("wide.cnf", &text);
    let out = bacsat(&["solve", "--method", "oracle", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn generate_fc5_dimacs_to_stdout() {
    let out = bacsat(&["generate", "--family", "fc", "--n", "5", "--format", "dimacs"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("p cnf 5 5\n"));
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn generate_to_file_reports_path() {
    let target = std::env::temp_dir().join(format!("bacsat-gen-{}.cnf", std::process::id()));
    let out = bacsat(&[
        "generate", "--family", "fa", "--n", "3",
        "--output", target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["result"]["clauses"], 8);
    assert!(target.exists());
    std::fs::remove_file(target).unwrap();
}

#[test]
fn generate_random_requires_seed() {
    let out = bacsat(&["generate", "--family", "random", "--vars", "5", "--clauses", "5", "--width", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn recognize_agrees_with_solve_on_corpus() {
    for (name, text) in [("fs4", FS4), ("fc3", FC3), ("fa2", FA2)] {
        let input = write_temp(&format!("{name}-agree.cnf"), text);
        let path = input.to_str().unwrap();
        let rec = bacsat(&["recognize", "--class", "bac", path]);
        assert_eq!(rec.status.code(), Some(0));
        let member = stdout_json(&rec)["result"]["member"] == true;
        let solve = bacsat(&["solve", "--method", "bac", path]);
        let code = solve.status.code().unwrap();
        if member {
            assert!(code == 10 || code == 20, "{name}: expected a verdict, got {code}");
        } else {
            assert_eq!(code, 3, "{name}");
        }
    }
}

#[test]
fn recognize_alpha_class() {
    // a triangle plus the covering edge: α-acyclic but not β-acyclic
    let input = write_temp("tri.cnf", "p cnf 3 4\n1 2 0\n2 3 0\n1 3 0\n1 2 3 0\n");
    let path = input.to_str().unwrap();
    let out = bacsat(&["recognize", "--class", "alpha", path]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["result"]["member"], true);
    let out = bacsat(&["recognize", "--class", "bac", path]);
    assert_eq!(stdout_json(&out)["result"]["member"], false);

    // the bare triangle fails even the α test
    let input = write_temp("fc3-alpha.cnf", FC3);
    let out = bacsat(&["recognize", "--class", "alpha", input.to_str().unwrap()]);
    assert_eq!(stdout_json(&out)["result"]["member"], false);
}

#[test]
fn solve_with_explicit_ordering_and_precedence() {
    let fixture = bacsat(&["generate", "--family", "fixture", "--format", "named-json"]);
    let input = write_temp("fixture.json", &String::from_utf8_lossy(&fixture.stdout));
    let order = write_temp("order.txt", "y b b' b* c z\n");
    let out = bacsat(&[
        "solve", "--method", &format!("order:{}", order.to_str().unwrap()),
        input.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(10));

    let bad_order = write_temp("bad-order.txt", "z y b b' b* c\n");
    let out = bacsat(&[
        "solve", "--method", &format!("order:{}", bad_order.to_str().unwrap()),
        input.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));

    let out = bacsat(&[
        "recognize", "--class", "dps-prec",
        "--precedence", order.to_str().unwrap(),
        input.to_str().unwrap(),
    ]);
    assert_eq!(stdout_json(&out)["result"]["member"], true);
}

#[test]
fn backdoor_subcommand_finds_gap_witness() {
    // the three-clause family with p=2: strong size 1, deletion size 2
    let text = r#"{"variables":["x1","x2","y1","y2","z1","z2"],
        "clauses":[
          [{"var":0,"neg":false},{"var":1,"neg":false},{"var":2,"neg":false},{"var":3,"neg":false}],
          [{"var":2,"neg":true},{"var":3,"neg":true},{"var":4,"neg":false},{"var":5,"neg":false}],
          [{"var":0,"neg":false},{"var":1,"neg":false},{"var":4,"neg":false},{"var":5,"neg":false}]
        ]}"#;
    let input = write_temp("gap.json", text);
    let path = input.to_str().unwrap();
    let strong = bacsat(&["backdoor", "--kind", "strong", "--max-k", "3", path]);
    assert_eq!(strong.status.code(), Some(0));
    assert_eq!(stdout_json(&strong)["result"]["size"], 1);
    let deletion = bacsat(&["backdoor", "--kind", "deletion", "--max-k", "3", "--jobs", "2", path]);
    assert_eq!(stdout_json(&deletion)["result"]["size"], 2);

    // solving through the strong backdoor gives the same verdict
    let witness = stdout_json(&strong)["result"]["variables"][0]
        .as_str()
        .unwrap()
        .to_owned();
    let solve = bacsat(&["solve", "--method", &format!("backdoor:{witness}"), path]);
    assert_eq!(solve.status.code(), Some(10));
}

#[test]
fn gadget_generation_from_instance_files() {
    let family = write_temp("family.json", r#"{"sets":[[1,2],[2,3]]}"#);
    let out = bacsat(&[
        "generate", "--family", "backdoor-gadget",
        "--input", family.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    // 2 sets -> 6 clauses
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("p cnf 7 6\n"));

    let graph = write_temp("graph.json", r#"{"k":2,"n":1,"edges":[[1,1,2,1]]}"#);
    let out = bacsat(&[
        "generate", "--family", "clique-gadget",
        "--input", graph.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn drop_tautologies_flag() {
    let input = write_temp("taut.cnf", "p cnf 2 2\n1 -1 0\n2 0\n");
    let strict = bacsat(&["solve", input.to_str().unwrap()]);
    assert_eq!(strict.status.code(), Some(2));
    let lax = bacsat(&["solve", "--drop-tautologies", input.to_str().unwrap()]);
    assert_eq!(lax.status.code(), Some(10));
}
