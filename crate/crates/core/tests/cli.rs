use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    run_with_stdin(args, "")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_leavitt"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn analyze_rose5() {
    let out = run(&["analyze", "--graph", &data("rose5.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["unit_order"], 4);
    assert_eq!(doc["invariant_factors"], serde_json::json!([4]));
    assert_eq!(doc["free_rank"], 0);
    assert_eq!(doc["pis"]["purely_infinite_simple"], true);
}

#[test]
fn analyze_reads_stdin() {
    let out = run_with_stdin(
        &["analyze", "--graph", "-"],
        r#"{"vertices":["v"],"edges":[["v","v",3]]}"#,
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["unit_order"], 2);
}

#[test]
fn matrix_type_rose5() {
    let out = run(&[
        "matrix-type",
        "--graph",
        &data("rose5.json"),
        "--c",
        "2",
        "--d",
        "6",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["verdict"], true);
    assert_eq!(doc["n"], 4);
    let out = run(&[
        "matrix-type",
        "--graph",
        &data("rose5.json"),
        "--c",
        "2",
        "--d",
        "4",
    ]);
    assert_eq!(json(&out)["verdict"], false);
}

#[test]
fn not_pis_exits_3() {
    for args in [
        vec![
            "matrix-type",
            "--graph",
            &data("rose1.json"),
            "--c",
            "1",
            "--d",
            "2",
        ],
        vec!["classes", "--graph", &data("rose1.json"), "--max", "4"],
    ] {
        let out = run(&args.iter().map(|s| s.as_ref()).collect::<Vec<&str>>());
        assert_eq!(out.status.code(), Some(3));
        assert_eq!(json(&out)["error"], "not_purely_infinite_simple");
    }
    let (r1, r5) = (data("rose1.json"), data("rose5.json"));
    let out = run(&["compare", "--graph-a", &r1, "--graph-b", &r5]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn classes_partition() {
    let out = run(&["classes", "--graph", &data("rose5.json"), "--max", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        json(&out)["classes"],
        serde_json::json!([[1, 3, 5, 7], [2, 6], [4, 8]])
    );
}

#[test]
fn output_is_deterministic() {
    let g = data("three_vertex.json");
    for args in [
        vec!["analyze", "--graph", g.as_str()],
        vec!["classes", "--graph", g.as_str(), "--max", "12"],
        vec!["compare", "--graph-a", g.as_str(), "--graph-b", g.as_str()],
        vec!["mgraph", "--graph", g.as_str(), "--m", "3", "--out", "-"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn bad_input_is_a_json_error() {
    let out = run_with_stdin(&["analyze", "--graph", "-"], "{not json");
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"], "input_error");
    assert!(!out.stderr.is_empty());

    let out = run_with_stdin(
        &["analyze", "--graph", "-"],
        r#"{"vertices":["v"],"edges":[["v","w"]]}"#,
    );
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["analyze"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"], "usage");
}

#[test]
fn mgraph_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rose5_m3.json");
    let path = path.to_str().unwrap();
    let out = run(&[
        "mgraph",
        "--graph",
        &data("rose5.json"),
        "--m",
        "3",
        "--out",
        path,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["vertex_count"], 3);

    let out = run(&["analyze", "--graph", path]);
    let doc = json(&out);
    assert_eq!(doc["invariant_factors"], serde_json::json!([4]));
    // the unit is tripled, and 3 is a unit mod 4
    assert_eq!(doc["unit_order"], 4);

    let out = run(&[
        "compare",
        "--graph-a",
        &data("rose5.json"),
        "--graph-b",
        path,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["isomorphic"], true);
}

#[test]
fn compare_mismatches() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rose5_m2.json");
    let path = path.to_str().unwrap();
    run(&[
        "mgraph",
        "--graph",
        &data("rose5.json"),
        "--m",
        "2",
        "--out",
        path,
    ]);

    let out = run(&[
        "compare",
        "--graph-a",
        &data("rose5.json"),
        "--graph-b",
        path,
    ]);
    let doc = json(&out);
    assert_eq!(doc["isomorphic"], false);
    assert_eq!(doc["reason"], "unit_orbit_mismatch");

    let out = run(&[
        "compare",
        "--graph-a",
        &data("rose5.json"),
        "--graph-b",
        &data("three_vertex.json"),
    ]);
    assert_eq!(json(&out)["reason"], "group_mismatch");

    let out = run(&[
        "compare",
        "--graph-a",
        &data("rose5.json"),
        "--graph-b",
        path,
        "--bound",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json(&out)["error"], "bound_exceeded");
}

#[test]
fn snf_of_a_file() {
    let out = run(&["snf", "--file", &data("matrix.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["diagonal"], serde_json::json!([2, 6, 12]));

    let out = run_with_stdin(&["snf"], "[[0, 0], [0, 0]]");
    assert_eq!(json(&out)["diagonal"], serde_json::json!([0, 0]));

    let out = run_with_stdin(&["snf"], "[[1, 2], [3]]");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn snf_keeps_big_entries_exact() {
    let big = "123456789012345678901234567890";
    let out = run_with_stdin(&["snf"], &format!("[[{big}]]"));
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains(&format!("\"diagonal\":[{big}]")));
}

#[test]
fn oracle_lemma1() {
    let out = run(&[
        "oracle",
        "lemma1",
        "--factors",
        "2,4",
        "--x",
        "1,1",
        "--c",
        "2",
        "--d",
        "6",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["criterion"], true);
    assert_eq!(doc["agree"], true);

    let out = run(&[
        "oracle",
        "lemma1",
        "--factors",
        "2,2,2,2,2,2",
        "--x",
        "1,0,0,0,0,0",
        "--c",
        "1",
        "--d",
        "3",
        "--bound",
        "32",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn oracle_eigen() {
    let out = run(&[
        "oracle", "eigen", "--t", "1", "--bound", "2", "--x", "1", "--m", "2", "--n", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["witness"], serde_json::json!([[1]]));

    let out = run(&[
        "oracle", "eigen", "--t", "2", "--bound", "2", "--x", "1,0", "--m", "2", "--n", "3",
    ]);
    assert_eq!(json(&out)["witness"], Value::Null);
}

#[test]
fn help_and_version() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("matrix-type"));
    let out = run(&["--version"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn infinite_unit_order() {
    let g = data("infinite_unit.json");
    let doc = json(&run(&["analyze", "--graph", &g]));
    assert_eq!(doc["unit_order"], "infinite");
    assert_eq!(doc["free_rank"], 1);
    let doc = json(&run(&[
        "matrix-type",
        "--graph",
        &g,
        "--c",
        "2",
        "--d",
        "3",
    ]));
    assert_eq!(doc["regime"], "infinite");
    assert_eq!(doc["verdict"], false);
    assert_eq!(doc["n"], Value::Null);
}
