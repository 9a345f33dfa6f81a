use std::path::PathBuf;
use std::process::{Command, Output};

use xasp_core::{GraphDocument, Label};

fn program(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../programs").join(name).display().to_string()
}

fn xasp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xasp")).args(args).env_remove("XASP_COLOR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn solve_p1() {
    let o = xasp(&["solve", "--input", &program("p1.lp")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "{b,e,f}\n{a,c,e,k}\n2 answer set(s)\n");
    let o = xasp(&["solve", "--input", &program("p1.lp"), "--limit", "1"]);
    assert_eq!(stdout(&o), "{b,e,f}\n1 answer set(s)\n");
}

#[test]
fn solve_aspif_matches_native() {
    let sets = |o: &Output| {
        let mut v: Vec<String> = stdout(o).lines().map(str::to_string).collect();
        v.sort();
        v
    };
    let native = xasp(&["solve", "--input", &program("p1.lp")]);
    let aspif = xasp(&["solve", "--input", &program("p1.aspif")]);
    let forced = xasp(&["solve", "--input", &program("p1.aspif"), "--format", "aspif"]);
    assert_eq!(sets(&native), sets(&aspif));
    assert_eq!(stdout(&aspif), stdout(&forced));
}

#[test]
fn inconsistent_program_has_no_answer_sets() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "odd.lp", "p :- not p.\n");
    let o = xasp(&["solve", "--input", &path]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0 answer set(s)\n");
    let o = xasp(&["cautious", "--input", &path]);
    assert_eq!(stdout(&o), "inconsistent: the program has no answer set\n");
    let o = xasp(&["explain", "--input", &path, "--atom", "p"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cautious_and_wf() {
    let o = xasp(&["cautious", "--input", &program("p1.lp")]);
    assert_eq!(stdout(&o), "C+ = {e}\nC- = {}\n");
    let o = xasp(&["wf", "--input", &program("p1.lp")]);
    assert_eq!(stdout(&o), "true = {e}\nfalse = {}\nunknown = {a,b,c,f,k}\n");
    let o = xasp(&["wf", "--input", &program("p1.lp"), "--output", "structured"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["unknown"].as_array().unwrap().len(), 5);
}

#[test]
fn supports_table() {
    let o = xasp(&["supports", "--input", &program("p1.lp"), "--answer-set-lits", "b,e,f"]);
    assert!(o.status.success());
    let lines: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(lines.len(), 6);
    assert!(lines.contains(&"e : [{T}]".to_string()));
    assert!(lines.contains(&"f : [{~k, e, ~c}]".to_string()));
    let all = xasp(&["supports", "--input", &program("p1.lp"), "--all"]);
    assert_eq!(stdout(&all).matches("% answer set").count(), 2);
}

#[test]
fn assumptions_report() {
    let o = xasp(&["assumptions", "--input", &program("p1.lp")]);
    assert_eq!(
        stdout(&o),
        "TA = {a,c,k}\nT = {}\nDA:\n  a -> {k}\n  c -> {a,k}\n  k -> {a}\nU[0] = {a}\nU[1] = {k}\n"
    );
    let o = xasp(&["assumptions", "--input", &program("p1.lp"), "--output", "structured", "--diagnose"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["assumption_sets"], serde_json::json!([["a"], ["k"]]));
    assert_eq!(v[0]["diagnostics"].as_array().unwrap().len(), 2);
}

#[test]
fn explain_writes_one_file_per_graph() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("graphs");
    let o = xasp(&["explain", "--input", &program("p1.lp"), "--atom", "f", "--out-dir", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let mut files: Vec<String> = std::fs::read_dir(&out).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    files.sort();
    assert_eq!(files, vec!["explain_f_0_0.dot", "explain_f_1_0.dot"]);
    let dot = std::fs::read_to_string(out.join("explain_f_1_0.dot")).unwrap();
    assert!(dot.starts_with("digraph explanation {\n"));
    assert!(!dot.contains("label=\"b\""));
}

#[test]
fn structured_documents_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path();
    let o = xasp(&[
        "explain", "--input", &program("p1.lp"), "--atom", "f", "--assumption-set", "0", "--output", "structured", "--out-dir",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(out.join("explain_f_0_0.json")).unwrap();
    let doc = GraphDocument::from_json(&text).unwrap();
    assert_eq!(doc.to_json(), text);
    assert_eq!(doc.assumption_set, vec!["a"]);
    assert!(doc.has_edge("~a", "assume", Label::Assume));
    let ids: Vec<usize> = doc.nodes.iter().map(|n| n.id).collect();
    assert_eq!(ids, (0..doc.nodes.len()).collect::<Vec<_>>());
}

#[test]
fn output_is_byte_stable() {
    for fmt in ["dot", "structured", "text"] {
        let args = ["explain", "--input", &program("bob.lp"), "--atom", "opera(friday)", "--output", fmt];
        let a = xasp(&args);
        let b = xasp(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn usage_and_input_errors() {
    let o = xasp(&["explain", "--input", &program("p1.lp"), "--atom", "ff"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("did you mean `f`"));

    let o = xasp(&["supports", "--input", &program("p1.lp"), "--answer-set", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("out of range"));

    let o = xasp(&["supports", "--input", &program("p1.lp"), "--answer-set-lits", "b,e"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not an answer set"));

    let o = xasp(&["explain", "--input", &program("p1.lp"), "--atom", "f", "--assumption-set", "5"]);
    assert_eq!(o.status.code(), Some(2));

    let o = xasp(&["explain", "--input", &program("p1.lp"), "--atom", "f", "--all"]);
    assert_eq!(o.status.code(), Some(2));

    let o = xasp(&["solve", "--input", "/nonexistent/x.lp"]);
    assert_eq!(o.status.code(), Some(2));

    let o = xasp(&["solve"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parse_errors_carry_positions() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "bad.lp", "a.\nopera(D) :- day(D).\n");
    let o = xasp(&["solve", "--input", &path]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("2:7"), "{}", stderr(&o));
    let path = write_temp(&dir, "bad.aspif", "asp 1 0 0\n9 1\n0\n");
    let o = xasp(&["solve", "--input", &path]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn aspif_warnings_go_to_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "w.aspif", "asp 1 0 0\n1 0 1 1 0 1 -2\n4 1 a 1 1\n0\n");
    let o = xasp(&["solve", "--input", &path]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("warning"));
    assert_eq!(stdout(&o), "{a}\n1 answer set(s)\n");
}

#[test]
fn resource_cap_exit_code() {
    let o = xasp(&["solve", "--input", &program("p1.lp"), "--branching-cap", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("branching cap"));
}

#[test]
fn color_is_opt_in() {
    let args = ["explain", "--input", &program("p1.lp"), "--atom", "f", "--output", "text"];
    let plain = xasp(&args);
    assert!(!stdout(&plain).contains('\x1b'));
    let o = Command::new(env!("CARGO_BIN_EXE_xasp")).args(args).env("XASP_COLOR", "1").output().unwrap();
    assert!(stdout(&o).contains("\x1b[32m+\x1b[0m"));
}

#[test]
fn stdin_input() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_xasp"))
        .args(["solve", "--input", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"a :- not b.\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(stdout(&o), "{a}\n1 answer set(s)\n");
}

#[test]
fn bob_explanations() {
    let o = xasp(&["explain", "--input", &program("bob.lp"), "--atom", "home(monday)", "--output", "text"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("home(monday) -> T (+)\n"));
}
