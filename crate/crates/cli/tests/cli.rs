use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;
use topoprod::document::ComplexDocument;

fn topoprod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_topoprod")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn construct(dir: &TempDir, file: &str, args: &[&str]) -> PathBuf {
    let path = dir.path().join(file);
    let mut all = vec!["construct"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["-o", path.to_str().unwrap()]);
    let o = topoprod(&all);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_writes_documents() {
    let dir = TempDir::new().unwrap();
    let m0 = construct(&dir, "m0.json", &["m0-surface", "--m", "3"]);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&m0).unwrap()).unwrap();
    let squares = doc["cells"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c.as_array().unwrap().iter().all(|id| id.as_str().unwrap().contains(":m")))
        .count();
    assert_eq!(squares, 8);
    let theta = construct(&dir, "theta.json", &["theta", "--n", "4"]);
    assert!(std::fs::read_to_string(theta).unwrap().contains("\"kind\": \"graph\""));
    let q = construct(&dir, "q.json", &["triple-torus-q", "--param", "n=2"]);
    assert!(std::fs::read_to_string(q).unwrap().contains("\"kind\": \"torus-skeleton\""));
}

#[test]
fn construct_round_trips() {
    let dir = TempDir::new().unwrap();
    for (name, args) in [("a.json", vec!["cauty-odd", "--k", "3"]), ("b.json", vec!["bing-house"]), ("c.json", vec!["wheel"])] {
        let p = construct(&dir, name, &args);
        let text = std::fs::read_to_string(&p).unwrap();
        let doc = ComplexDocument::from_json(&text).unwrap();
        let back = doc.to_complex().unwrap().to_document();
        assert_eq!(ComplexDocument { expected: doc.expected.clone(), ..back }.to_json(), text.trim_end());
    }
}

#[test]
fn construct_rejects_bad_names_and_params() {
    let o = topoprod(&["construct", "nope"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("registered constructions"));
    assert_eq!(code(&topoprod(&["construct", "theta", "--n", "0"])), 2);
    assert_eq!(code(&topoprod(&["construct", "theta", "--param", "q=1"])), 2);
}

#[test]
fn verify_surface_and_dunce_hat() {
    let dir = TempDir::new().unwrap();
    let m0 = construct(&dir, "m0.json", &["m0-surface", "--m", "2"]);
    let o = topoprod(&["verify", s(&m0), "--surface"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["pass"], true);

    let dh = construct(&dir, "dh.json", &["dunce-hat"]);
    let o = topoprod(&["verify", s(&dh), "--pseudo"]);
    assert_eq!(code(&o), 1);
    let r = json(&o);
    assert!(!r["results"]["pseudo"]["witnesses"].as_array().unwrap().is_empty());

    let o = topoprod(&["verify", s(&dh), "--checks", "free-edges"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["results"]["free-edges"]["edges"], Value::Array(vec![]));
}

#[test]
fn homology_of_odd_rank_surface() {
    let dir = TempDir::new().unwrap();
    let p = construct(&dir, "odd.json", &["cauty-odd", "--k", "2"]);
    let o = topoprod(&["homology", s(&p)]);
    assert_eq!(code(&o), 0);
    let h = &json(&o)["results"]["homology"];
    assert_eq!(h["betti"], serde_json::json!([1, 5, 0]));
    assert_eq!(h["torsion"][1], serde_json::json!([2]));
    assert_eq!(h["euler"], -4);
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let p = construct(&dir, "t.json", &["torus-product"]);
    let a = topoprod(&["homology", s(&p)]);
    let b = topoprod(&["homology", s(&p)]);
    assert_eq!(a.stdout, b.stdout);
    let out = dir.path().join("r.json");
    topoprod(&["homology", s(&p), "-o", s(&out)]);
    assert_eq!(std::fs::read(out).unwrap(), a.stdout);
}

#[test]
fn decompose_torus_product() {
    let dir = TempDir::new().unwrap();
    let p = construct(&dir, "t.json", &["torus-product"]);
    let o = topoprod(&["decompose", s(&p)]);
    assert_eq!(code(&o), 0);
    let d = &json(&o)["results"]["decomposition"];
    assert_eq!(d["exact"], true);
    assert_eq!(d["circle_indices"], serde_json::json!([0, 1]));
    let g = construct(&dir, "g.json", &["theta"]);
    assert_eq!(code(&topoprod(&["decompose", s(&g)])), 2);
}

#[test]
fn collapse_and_embed_cone() {
    let dir = TempDir::new().unwrap();
    let p = construct(&dir, "cone.json", &["cone-over-theta", "--n", "3"]);
    let o = topoprod(&["collapse", s(&p), "--tree-embed"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["results"]["core_class"], "point");
    assert_eq!(r["results"]["embedding_check"]["verdict"], true);
    assert!(r["results"]["embedding"]["assignment"].as_object().unwrap().len() > 10);
}

#[test]
fn collapse_statuses() {
    let dir = TempDir::new().unwrap();
    let dh = construct(&dir, "dh.json", &["dunce-hat"]);
    let o = topoprod(&["collapse", s(&dh)]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["results"]["collapsibility"]["status"], "refuted");

    // a circle with a whisker: greedy stalls on the circle, the search needs more than one node
    let whisker = dir.path().join("w.json");
    std::fs::write(
        &whisker,
        r#"{"kind":"graph","vertices":["a","b","c"],"edges":[
            {"id":"x","tail":"a","head":"b"},{"id":"y","tail":"b","head":"a"},{"id":"z","tail":"a","head":"c"}]}"#,
    )
    .unwrap();
    let o = topoprod(&["collapse", s(&whisker), "--budget", "1"]);
    assert_eq!(code(&o), 3);
    assert_eq!(json(&o)["results"]["collapsibility"]["status"], "not-collapsible-within-budget");
    assert_eq!(code(&topoprod(&["collapse", s(&whisker)])), 1);
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"kind\": \"graph\",\n  \"vertices\": [1]\n}").unwrap();
    let o = topoprod(&["homology", s(&bad)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(code(&topoprod(&["homology", "/nonexistent/file.json"])), 2);
}

#[test]
fn accept_filters() {
    let o = topoprod(&["accept", "--filter", "torus"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let ids: Vec<u64> = json(&o)["results"].as_array().unwrap().iter().map(|r| r["id"].as_u64().unwrap()).collect();
    assert_eq!(ids, vec![5, 6]);
    assert_eq!(code(&topoprod(&["accept", "--filter", "no-such-tag"])), 2);
}

#[test]
fn summary_mode() {
    let dir = TempDir::new().unwrap();
    let p = construct(&dir, "m0.json", &["m0-surface"]);
    let o = topoprod(&["verify", s(&p), "--surface", "--json", "false"]);
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "verify: pass");
}
