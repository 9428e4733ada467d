//! End-to-end runs of the satdiv binary: generate, solve, check, reduce, and
//! byte-level determinism of reports.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn satdiv() -> Command {
    Command::new(env!("CARGO_BIN_EXE_satdiv"))
}

fn run(args: &[&str]) -> Output {
    satdiv().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("reports are utf-8")
}

fn write_instance(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let output = run(&[&["gen"], args, &["--out", path.to_str().unwrap()]].concat());
    assert!(output.status.success(), "gen failed: {output:?}");
    path
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("satdiv-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    dir
}

#[test]
fn solve_reports_are_byte_identical_across_runs() {
    let dir = temp_dir("determinism");
    let inst = write_instance(&dir, "instance1.json", &["fixture", "--name", "instance1"]);
    let args = ["solve", "max-sat", inst.to_str().unwrap(), "--tau", "2"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    assert!(
        text.contains("satisfied count: 3"),
        "unexpected report:\n{text}"
    );
    assert!(text.contains("rho: 3/4"), "unexpected report:\n{text}");
}

#[test]
fn all_sat_fixture_says_no_at_half() {
    let dir = temp_dir("allsat");
    let inst = write_instance(&dir, "instance1.json", &["fixture", "--name", "instance1"]);
    let output = run(&["solve", "all-sat", inst.to_str().unwrap(), "--tau", "2"]);
    assert!(output.status.success());
    assert!(stdout(&output).contains("status: NO"));
}

#[test]
fn dictator_on_generated_tight_family() {
    let dir = temp_dir("dictator");
    let inst = write_instance(&dir, "dictator5.json", &["tight-dictator", "--m", "5"]);
    let output = run(&["solve", "dictator", inst.to_str().unwrap(), "--tau", "half"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(
        text.contains("dictator: agent 1"),
        "unexpected report:\n{text}"
    );
    assert!(
        text.contains("satisfied count: 3"),
        "unexpected report:\n{text}"
    );
}

#[test]
fn min_budget_on_abo_family() {
    let dir = temp_dir("minbudget");
    let inst = write_instance(
        &dir,
        "abo.json",
        &["abo-min-budget", "--m", "3", "--eps", "1/3"],
    );
    let output = run(&["solve", "min-budget", inst.to_str().unwrap(), "--tau", "2"]);
    assert!(output.status.success());
    assert!(stdout(&output).contains("minimum budget: 4/3"));
}

#[test]
fn check_round_trips_a_solution_file() {
    let dir = temp_dir("check");
    let inst = write_instance(&dir, "mat1.json", &["fixture", "--name", "mat1"]);
    let solution = dir.join("line.json");
    std::fs::write(
        &solution,
        "{\"coords\": [\"0.2\", \"0.19\", \"0.04\", \"0.16\", \"0.29\"], \"total\": \"22/25\"}\n",
    )
    .expect("write solution");
    let ok = run(&[
        "check",
        inst.to_str().unwrap(),
        solution.to_str().unwrap(),
        "--tau",
        "3",
    ]);
    assert!(
        ok.status.success(),
        "expected all satisfied: {}",
        stdout(&ok)
    );
    assert!(stdout(&ok).contains("satisfied: 3 of 3"));

    // At full coverage the same line leaves agents unsatisfied: nonzero exit.
    let fail = run(&[
        "check",
        inst.to_str().unwrap(),
        solution.to_str().unwrap(),
        "--tau",
        "all",
    ]);
    assert!(!fail.status.success());
}

#[test]
fn check_reports_partial_satisfaction_with_nonzero_exit() {
    let dir = temp_dir("partial");
    let inst = write_instance(&dir, "instance1.json", &["fixture", "--name", "instance1"]);
    let solution = dir.join("narrative.json");
    std::fs::write(
        &solution,
        "{\"coords\": [\"0.3\", \"0.6\", \"0.1\"], \"total\": \"1\"}\n",
    )
    .expect("write solution");
    let output = run(&[
        "check",
        inst.to_str().unwrap(),
        solution.to_str().unwrap(),
        "--tau",
        "2",
    ]);
    assert!(!output.status.success());
    let text = stdout(&output);
    assert!(
        text.contains("satisfied: 3 of 4"),
        "unexpected report:\n{text}"
    );
    assert!(
        text.contains("agent 3: NOT satisfied (locally satisfied for projects [2])"),
        "unexpected report:\n{text}"
    );
}

#[test]
fn check_flags_budget_overrun_but_reports_satisfaction() {
    let dir = temp_dir("overrun");
    let inst = write_instance(&dir, "instance1.json", &["fixture", "--name", "instance1"]);
    let solution = dir.join("ones.json");
    std::fs::write(
        &solution,
        "{\"coords\": [\"1\", \"1\", \"1\"], \"total\": \"3\"}\n",
    )
    .expect("write solution");
    let output = run(&["check", inst.to_str().unwrap(), solution.to_str().unwrap()]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("warning: total exceeds the unit budget"));
    assert!(text.contains("satisfied: 4 of 4"));
}

#[test]
fn reduce_emits_instance_and_mapping() {
    let dir = temp_dir("reduce");
    let graph = dir.join("k3.graph");
    std::fs::write(&graph, "3 3\n1 2\n1 3\n2 3\n").expect("write graph");
    let inst = dir.join("k3-tau1.json");
    let output = run(&[
        "reduce",
        "vc-minbudget-tau1",
        graph.to_str().unwrap(),
        "--k",
        "2",
        "--out",
        inst.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "reduce failed: {output:?}");
    let mapping_path = dir.join("k3-tau1.mapping.json");
    let mapping = std::fs::read_to_string(&mapping_path).expect("mapping sidecar");
    assert!(mapping.contains("\"target_budget\": \"2/9\""), "{mapping}");

    let solved = run(&["solve", "min-budget", inst.to_str().unwrap()]);
    assert!(solved.status.success());
    assert!(stdout(&solved).contains("minimum budget: 2/9"));
}

#[test]
fn solve_output_re_verifies_through_check() {
    let dir = temp_dir("reverify");
    let inst = write_instance(&dir, "cyclic5.json", &["cyclic", "--m", "5"]);
    let output = run(&[
        "solve",
        "min-budget",
        inst.to_str().unwrap(),
        "--tau",
        "half",
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    let coords: Vec<&str> = text
        .lines()
        .find(|l| l.starts_with("solution: "))
        .and_then(|l| l.split(['[', ']']).nth(1))
        .expect("solution line")
        .split(", ")
        .collect();
    let total = text
        .lines()
        .find(|l| l.starts_with("total: "))
        .and_then(|l| l.strip_prefix("total: "))
        .and_then(|l| l.split(' ').next())
        .expect("total line");
    let solution = dir.join("solution.json");
    let coord_json: Vec<String> = coords.iter().map(|c| format!("\"{c}\"")).collect();
    std::fs::write(
        &solution,
        format!(
            "{{\"coords\": [{}], \"total\": \"{total}\"}}\n",
            coord_json.join(", ")
        ),
    )
    .expect("write solution");
    let check = run(&[
        "check",
        inst.to_str().unwrap(),
        solution.to_str().unwrap(),
        "--tau",
        "half",
    ]);
    assert!(
        check.status.success(),
        "re-verification failed:\n{}",
        stdout(&check)
    );
}

#[test]
fn gen_embeds_family_metadata() {
    let dir = temp_dir("meta");
    let inst = write_instance(&dir, "ub.json", &["half-upper-bound", "--k", "2"]);
    let text = std::fs::read_to_string(&inst).expect("instance file");
    assert!(text.contains("\"name\": \"half-upper-bound\""));
    assert!(text.contains("\"deltas\": \"1/20,1/10\""));
    assert!(text.contains("\"kind\": \"max_satisfied\""));
}

#[test]
fn node_limit_env_var_and_flag_trigger_too_large() {
    let dir = temp_dir("nodelimit");
    let inst = write_instance(&dir, "instance1.json", &["fixture", "--name", "instance1"]);
    let by_flag = run(&[
        "solve",
        "max-sat",
        inst.to_str().unwrap(),
        "--tau",
        "2",
        "--node-limit",
        "10",
    ]);
    assert!(by_flag.status.success());
    assert!(stdout(&by_flag).contains("status: TOO-LARGE"));

    let by_env = satdiv()
        .args(["solve", "max-sat", inst.to_str().unwrap(), "--tau", "2"])
        .env("SATDIV_NODE_LIMIT", "10")
        .output()
        .expect("binary runs");
    assert!(stdout(&by_env).contains("status: TOO-LARGE"));
}

#[test]
fn unknown_inputs_exit_with_usage_errors() {
    let output = run(&["solve", "bogus-mode", "/nonexistent.json"]);
    assert_eq!(output.status.code(), Some(2));
    let output = run(&["gen", "fixture", "--name", "bogus"]);
    assert_eq!(output.status.code(), Some(2));
}
