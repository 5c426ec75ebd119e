use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn kgraph(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_kgraph"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn kgraph");
    let mut pipe = child.stdin.take().expect("stdin");
    pipe.write_all(stdin.unwrap_or("").as_bytes()).expect("write stdin");
    drop(pipe);
    child.wait_with_output().expect("wait")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn fixture(name: &str) -> String {
    let args: Vec<&str> = std::iter::once("fixtures").chain(name.split_whitespace()).collect();
    let out = kgraph(&args, None);
    assert!(out.status.success(), "fixtures {name}");
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn fixtures_cycle_three() {
    let doc: Value = serde_json::from_str(&fixture("cycle 3")).unwrap();
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 3);
    assert_eq!(doc["edges"].as_array().unwrap().len(), 3);
}

#[test]
fn every_fixture_round_trips_through_validate() {
    let list = json(&kgraph(&["fixtures"], None));
    for entry in list.as_array().unwrap() {
        let mut desc = entry["name"].as_str().unwrap().to_string();
        for a in entry["args"].as_array().unwrap() {
            desc.push(' ');
            desc.push_str(a.as_str().unwrap());
        }
        let out = kgraph(&["validate"], Some(&fixture(&desc)));
        assert_eq!(out.status.code(), Some(0), "{desc}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["verdict"], "ok");
    }
}

#[test]
fn aperiodicity_of_a_cycle_fails() {
    let out = kgraph(&["aperiodicity"], Some(&fixture("cycle 3")));
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["verdict"], "fail");
    for v in r["results"]["vertices"].as_array().unwrap() {
        assert_eq!(v["condition_a"], "fails");
    }
}

#[test]
fn aperiodicity_of_an_edge_holds() {
    let out = kgraph(&["aperiodicity", "--fixture", "edge"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "ok");
}

#[test]
fn missing_square_names_the_pair() {
    let mut doc: Value = serde_json::from_str(&fixture("n2")).unwrap();
    doc["squares"] = Value::Array(vec![]);
    let out = kgraph(&["validate"], Some(&doc.to_string()));
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    let diag = r["diagnostics"][0].as_str().unwrap();
    assert!(diag.contains("composable pair"), "{diag}");
    assert!(diag.contains('f') && diag.contains('g'), "{diag}");
}

#[test]
fn malformed_document_is_a_parse_error() {
    let out = kgraph(&["validate"], Some(r#"{"k": 1, "vertices": ["a"], "edges": [{"id": "x", "colour": 1}]}"#));
    assert_eq!(out.status.code(), Some(2));
    let diag = json(&out)["diagnostics"][0].as_str().unwrap().to_string();
    assert!(diag.contains("colour") && diag.contains("line 1"), "{diag}");
}

#[test]
fn unknown_subcommand_is_usage_error() {
    assert_eq!(kgraph(&["frobnicate"], None).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let runs: [&[&str]; 4] = [
        &["boundary", "--fixture", "sq2"],
        &["groupoid", "--fixture", "n2"],
        &["aperiodicity", "--fixture", "kgds swap", "--jobs", "4"],
        &["enumerate", "--fixture", "omega 2 2,3"],
    ];
    for args in runs {
        let a = kgraph(args, None);
        let b = kgraph(args, None);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
    let serial = kgraph(&["boundary", "--fixture", "kgds swap", "--jobs", "1"], None);
    let parallel = kgraph(&["boundary", "--fixture", "kgds swap", "--jobs", "4"], None);
    let strip = |o: &Output| {
        let mut v = json(o);
        v["inputs"] = Value::Null;
        v
    };
    assert_eq!(strip(&serial), strip(&parallel));
}

#[test]
fn boundary_reports_path_and_verdict() {
    let out = kgraph(&["boundary", "--fixture", "cycle 3", "--vertex", "v0", "--tie-break", "input-order"], None);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["results"]["verdict"]["status"], "boundary");
    assert!(r["results"]["path"]["block"].is_object());

    let out = kgraph(&["boundary", "--fixture", "cycle 3", "--prefix", "e0"], None);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["results"]["verdict"]["status"], "not_boundary");
}

#[test]
fn align_queries() {
    let min = json(&kgraph(&["align", "--fixture", "sq2", "--query", r#"{"op":"min","lambda":["a1"],"mu":["b1"]}"#], None));
    assert_eq!(min["results"]["status"], "finite");
    assert_eq!(min["results"]["count"], 1);

    let ex = json(&kgraph(&["align", "--fixture", "sq2", "--query", r#"{"op":"exhaustive","e":[["a1"],["a2"]],"vertex":"v"}"#], None));
    assert_eq!(ex["results"]["exhaustive"], true);
    let ex = json(&kgraph(&["align", "--fixture", "sq2", "--query", r#"{"op":"exhaustive","e":[["a1"]],"vertex":"v"}"#], None));
    assert_eq!(ex["results"]["exhaustive"], false);

    let lazy = kgraph(&["align", "--fixture", "lambda1", "--budget", "20", "--query", r#"{"op":"aligned","cap":"1,1"}"#], None);
    assert_eq!(lazy.status.code(), Some(0));
    assert_eq!(json(&lazy)["verdict"], "inconclusive");

    let bad = kgraph(&["align", "--fixture", "sq2", "--query", r#"{"op":"nope"}"#], None);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn skew_of_a_loop_is_a_cycle() {
    let dir = std::env::temp_dir().join(format!("kgraph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let labels = dir.join("z3.json");
    std::fs::write(&labels, r#"{"group": {"elements": ["0","1","2"], "table": [["0","1","2"],["1","2","0"],["2","0","1"]]}, "labels": {"e0": "1"}}"#).unwrap();
    let out = kgraph(&["skew", "--fixture", "cycle 1", "--labels", labels.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    assert_eq!(r["results"]["report"]["passed"], true);
    let g = &r["results"]["graph"];
    assert_eq!(g["vertices"], serde_json::json!(["v0@0", "v0@1", "v0@2"]));
    let round = kgraph(&["validate"], Some(&g.to_string()));
    assert_eq!(round.status.code(), Some(0));
    std::fs::remove_dir_all(&dir).ok();
}
