use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monodromy")).args(args).output().unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn graph_json_counts() {
    let o = run(&["lonne", "graph", "--d", "5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["data"]["vertex_count"], 16);
    assert_eq!(v["data"]["edge_count"], 33);
    assert_eq!(v["data"]["triangle_count"], 18);
    assert!(v.get("duration_ms").is_none());
}

#[test]
fn graph_dot() {
    let o = run(&["lonne", "graph", "--d", "4", "--format", "dot"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("digraph lonne_4 {"));
    assert_eq!(text.matches("->").count(), 16);
}

#[test]
fn obstruction_d7() {
    let o = run(&["spin", "obstruction", "--d", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["data"]["b_framing"], 2);
    assert_eq!(v["data"]["report"]["stabilizes_full"], false);
    assert_eq!(v["data"]["report"]["spin"]["stabilizes_spin"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "chain", "--k", "4"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "star", "--g", "2", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["beauville", "--d", "6"]).status.code(), Some(2));
    assert_eq!(run(&["johnson", "--fixture", "/nonexistent/fixture.json"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "star", "--g", "2"]).status.code(), Some(0));
}

#[test]
fn broken_fixture_is_invalid_input() {
    let dir = std::env::temp_dir().join(format!("monodromy-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    let text = monodromy_core::d5::SHIPPED_FIXTURE.replacen("\"w\":0}", "\"w\":1}", 1);
    std::fs::write(&path, text).unwrap();
    let o = run(&["johnson", "--fixture", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("vanishing framing"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn realize_writes_a_document() {
    let dir = std::env::temp_dir().join(format!("monodromy-realize-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r5.json");
    let o = run(&["lonne", "realize", "--d", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["genus"], 6);
    assert_eq!(doc["curves"].as_object().unwrap().len(), 16);
    std::fs::remove_dir_all(&dir).unwrap();
}
