//! Black-box tests of the binary: spawn it on fixture files and golden-match
//! stdout, stderr and exit codes. Seeded commands must be byte-reproducible.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_seqbin"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("no signal"),
        String::from_utf8(out.stdout).expect("stdout is utf-8"),
        String::from_utf8(out.stderr).expect("stderr is utf-8"),
    )
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn propagate_filters_the_worked_example() {
    let (code, stdout, stderr) = run(&["propagate", &fixture("pair.json")]);
    assert_eq!(code, 0, "stderr: {stderr}");
    assert_eq!(stdout, "{\"status\":\"ok\",\"n\":[2],\"x\":[[1],[2]],\"removed\":2,\"passes\":2}\n");
}

#[test]
fn propagate_text_format() {
    let (code, stdout, _) = run(&["propagate", &fixture("pair.json"), "--format", "text"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "status ok\nn {2}\nx0 {1}\nx1 {2}\nremoved 2\npasses 2\n");
}

#[test]
fn propagate_modes_agree() {
    let (_, auto, _) = run(&["propagate", &fixture("pair.json"), "--mode", "auto"]);
    let (_, generic, _) = run(&["propagate", &fixture("pair.json"), "--mode", "generic"]);
    assert_eq!(auto, generic);
}

#[test]
fn infeasible_instances_exit_one() {
    let (code, stdout, _) = run(&["propagate", &fixture("pair_infeasible.json")]);
    assert_eq!(code, 1);
    assert!(stdout.contains("\"status\":\"fail\""), "stdout: {stdout}");
}

#[test]
fn oracle_agrees_with_propagate_on_the_worked_example() {
    let (code, stdout, _) = run(&["oracle", &fixture("pair.json")]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "{\"status\":\"ok\",\"n\":[2],\"x\":[[1],[2]]}\n");
}

#[test]
fn oracle_respects_the_cap() {
    let (code, _, stderr) = run(&["oracle", &fixture("pair.json"), "--cap", "3"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("cap"), "stderr: {stderr}");
}

#[test]
fn catalog_outcomes_stay_in_user_counts() {
    let (code, stdout, _) = run(&["propagate", &fixture("change.json")]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "{\"status\":\"ok\",\"n\":[1],\"x\":[[1,2],[1,2]],\"removed\":0,\"passes\":1}\n");
    let (code, stdout, _) = run(&["propagate", &fixture("smooth.json")]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "{\"status\":\"ok\",\"n\":[0],\"x\":[[0],[1]],\"removed\":1,\"passes\":2}\n");
    let (code, stdout, _) = run(&["propagate", &fixture("incnv.json")]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "{\"status\":\"ok\",\"n\":[2],\"x\":[[1],[2]],\"removed\":2,\"passes\":2}\n");
}

#[test]
fn classify_reports_the_core_form() {
    let (code, stdout, _) = run(&["classify", &fixture("incnv.json")]);
    assert_eq!(code, 0);
    assert_eq!(
        stdout,
        "{\"constraint\":\"increasing_nvalue\",\"C\":{\"kind\":\"eq\"},\"B\":{\"kind\":\"leq\"},\"count_offset\":0,\"monotonic_b\":true,\"b_order\":[1,2],\"specialized\":true,\"continuity\":\"continuous\"}\n"
    );
    let (code, stdout, _) = run(&["classify", &fixture("nonmonotonic_b.json"), "--format", "text"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("monotonic_b false"), "stdout: {stdout}");
    assert!(stdout.contains("specialized false"), "stdout: {stdout}");
}

#[test]
fn invalid_inputs_exit_two() {
    let (code, _, stderr) = run(&["propagate", &fixture("malformed.json")]);
    assert_eq!(code, 2);
    assert!(stderr.starts_with("error:"), "stderr: {stderr}");
    let (code, _, stderr) = run(&["propagate", &fixture("bad_kind.json")]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown relation kind"), "stderr: {stderr}");
    let (code, _, _) = run(&["propagate", &fixture("missing_file.json")]);
    assert_eq!(code, 2);
}

#[test]
fn non_monotonic_neighbor_relations_exit_two() {
    let (code, _, stderr) = run(&["propagate", &fixture("nonmonotonic_b.json")]);
    assert_eq!(code, 2);
    assert!(stderr.contains("not monotonic"), "stderr: {stderr}");
}

#[test]
fn check_is_seed_reproducible_and_sound() {
    let args = ["check", "seqbin:table:geq", "--runs", "60", "--len", "4", "--values", "3", "--seed", "11"];
    let (code, first, _) = run(&args);
    assert_eq!(code, 0);
    let (_, second, _) = run(&args);
    assert_eq!(first, second, "same seed must reproduce byte-identical output");
    let report: serde_json::Value = serde_json::from_str(first.trim()).unwrap();
    assert_eq!(report["unsound"], 0);
    assert_eq!(report["runs"], 60);
    let total = report["exact"].as_u64().unwrap()
        + report["incomplete"].as_u64().unwrap()
        + report["skipped"].as_u64().unwrap();
    assert_eq!(total, 60);
}

#[test]
fn bench_is_seed_reproducible_up_to_wall_time() {
    let args = ["bench", "change:leq", "--runs", "2", "--len", "300", "--values", "10", "--seed", "5"];
    let (code, first, _) = run(&args);
    assert_eq!(code, 0);
    let (_, second, _) = run(&args);
    let mut a: serde_json::Value = serde_json::from_str(first.trim()).unwrap();
    let mut b: serde_json::Value = serde_json::from_str(second.trim()).unwrap();
    assert!(a["touched"].as_u64().unwrap() > 0);
    a.as_object_mut().unwrap().remove("wall_ms");
    b.as_object_mut().unwrap().remove("wall_ms");
    assert_eq!(a, b);
}
