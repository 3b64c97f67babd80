use std::path::PathBuf;
use std::process::{Command, Output};

use sl3web::web::canonical_form;
use sl3web::web::fixtures::{self, NAMES};
use sl3web::web::io::{parse_web, read_corpus};

fn sl3web(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sl3web")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sl3web-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn exported(name: &str, dir: &std::path::Path) -> String {
    let path = dir.join(format!("{name}.web"));
    let o = sl3web(&["export", &format!("@{name}"), "--out", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    path.to_str().unwrap().to_string()
}

#[test]
fn classify_digon_arc_file() {
    let dir = scratch("classify");
    let o = sl3web(&["classify", &exported("digon-arc", &dir)]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("summary: decomposable, level 1, bracket q^4+3q^2+4+3q^-2+q^-4\n"), "{out}");
    assert!(out.contains("verdict: decomposable\n"));
    assert!(out.contains("level: 1\n"));
}

#[test]
fn tripod_has_no_exact_red_graph() {
    let dir = scratch("tripod");
    let o = sl3web(&["redgraphs", "--exact", &exported("tripod", &dir)]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out, "count: 0\n");
    let o = sl3web(&["redgraphs", "--exact", "@tripod", "--format", "structured"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["graph"], serde_json::json!([]));
}

#[test]
fn circle_bracket() {
    let o = sl3web(&["bracket", "@circle"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("bracket: q^2+1+q^-2\n"));
    let o = sl3web(&["bracket", "@theta", "--seed", "3"]);
    assert!(stdout(&o).starts_with("bracket: q^3+2q+2q^-1+q^-3\n"));
}

#[test]
fn exit_codes() {
    let dir = scratch("exit");
    let bad = dir.join("bad.web");
    std::fs::write(&bad, "{\"vertices\": [").unwrap();
    assert_eq!(sl3web(&["validate", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(sl3web(&["bracket", "missing-file.web"]).status.code(), Some(2));
    assert_eq!(sl3web(&["bracket", "@no-such-web"]).status.code(), Some(2));
    // Open webs have no bracket.
    assert_eq!(sl3web(&["bracket", "@tripod"]).status.code(), Some(3));
    // No exact red graph to reduce along.
    assert_eq!(sl3web(&["reduce", "@arc"]).status.code(), Some(3));
    assert_eq!(sl3web(&["reduce", "@hexagon-ring", "--pairing", "9"]).status.code(), Some(3));
    assert_eq!(sl3web(&["generate", "--signs", "+-+"]).status.code(), Some(3));
    assert_eq!(sl3web(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn invalid_web_is_reported() {
    let dir = scratch("invalid");
    let mut v: serde_json::Value = serde_json::from_str(&stdout(&sl3web(&["export", "@arc"]))).unwrap();
    v["boundary"][0]["sign"] = "-".into();
    let path = dir.join("broken.web");
    std::fs::write(&path, v.to_string()).unwrap();
    let o = sl3web(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let out = stdout(&o);
    assert!(out.starts_with("valid: false\n"), "{out}");
    assert!(out.contains("violation: "));
}

#[test]
fn export_round_trips_every_fixture() {
    for name in NAMES {
        let o = sl3web(&["export", &format!("@{name}")]);
        assert!(o.status.success(), "{name}");
        let back = parse_web(&stdout(&o)).unwrap();
        let want = fixtures::by_name(name).unwrap();
        assert_eq!(canonical_form(&back), canonical_form(&want), "{name}");
    }
}

#[test]
fn reduce_the_hexagon_ring() {
    let dir = scratch("reduce");
    let out = dir.join("reduced.web");
    let dot = dir.join("reduced.dot");
    let o = sl3web(&["reduce", "@hexagon-ring", "--out", out.to_str().unwrap(), "--dot", dot.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("level: 0\n") && text.contains("exact: true\n") && text.contains("shift: 0\n"), "{text}");
    assert!(text.contains("vertices_after: 0\n"));
    let reduced = parse_web(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(reduced.num_vertices(), 0);
    assert_eq!(reduced.boundary_len(), 12);
    assert!(std::fs::read_to_string(dot).unwrap().starts_with("digraph web"));
}

#[test]
fn decompose_reports_factors() {
    let o = sl3web(&["decompose", "@digon-arc", "--format", "structured"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["shifts"], serde_json::json!([-1, 1]));
    assert_eq!(v["remainder"], false);
}

#[test]
fn generate_writes_corpus_and_manifest() {
    let dir = scratch("generate");
    let o = sl3web(&["generate", "--max-boundary", "6", "--max-vertices", "8", "--out", dir.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap();
    let files = manifest["files"].as_array().unwrap();
    assert!(!files.is_empty());
    for f in files {
        let webs = read_corpus(&std::fs::read_to_string(dir.join(f["file"].as_str().unwrap())).unwrap()).unwrap();
        assert_eq!(webs.len() as u64, f["count"].as_u64().unwrap());
        assert_eq!(f["count"], f["paths"], "{f}");
    }
    let o = sl3web(&["generate", "--signs", "+-+-"]);
    assert_eq!(read_corpus(&stdout(&o)).unwrap().len(), 2);
    let a = stdout(&sl3web(&["generate", "--closed", "5", "--seed", "9"]));
    assert_eq!(a, stdout(&sl3web(&["generate", "--closed", "5", "--seed", "9"])));
    assert!(read_corpus(&a).unwrap().iter().all(|w| w.is_closed()));
}

#[test]
fn verify_prints_a_table() {
    let o = sl3web(&["verify", "--max-boundary", "4", "--stress-secs", "2"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    for n in 1..=9 {
        assert!(out.contains(&format!("[PASS] criterion {n}:")), "{out}");
    }
    assert!(out.ends_with("passed: 9/9\n"));
}
