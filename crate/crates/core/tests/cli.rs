//! The `qplane` binary: exit codes, reports and file inputs.

use std::path::Path;
use std::process::{Command, Output};

fn qplane(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qplane")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn rmatrix_json(dir: &Path, id: &str) -> serde_json::Value {
    let path = dir.join(format!("{id}.json"));
    let o = qplane(&["catalog", id, "--json", path.to_str().unwrap(), "--quiet"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    v["payload"].clone()
}

#[test]
fn verify_ybe_catalog() {
    for id in ["R.glq2", "R.glq2-exotic", "R.glq11", "R.glq11-exotic", "R.glq12"] {
        let o = qplane(&["verify-ybe", "--catalog", id]);
        assert_eq!(o.status.code(), Some(0), "{id}: {}", stdout(&o));
    }
}

#[test]
fn verify_ybe_broken_file() {
    let dir = tempfile::tempdir().unwrap();
    let mut r = rmatrix_json(dir.path(), "R.glq2");
    let e = r["entries"][0][0].as_str().unwrap().to_string();
    r["entries"][0][0] = serde_json::Value::String(format!("({e}) + 1"));
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, r.to_string()).unwrap();
    let report = dir.path().join("report.json");
    let o = qplane(&["verify-ybe", "--file", broken.to_str().unwrap(), "--json", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    let rep: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    let residuals = rep[0]["checks"][0]["residuals"].as_array().unwrap();
    assert!(!residuals.is_empty());
}

#[test]
fn rmatrix_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let r = rmatrix_json(dir.path(), "R.glq11");
    let f = dir.path().join("r.json");
    std::fs::write(&f, r.to_string()).unwrap();
    let o = qplane(&["verify-ybe", "--file", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = qplane(&["derive", "--file", f.to_str().unwrap(), "--target", "group", "--quiet"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn usage_errors() {
    assert_eq!(qplane(&[]).status.code(), Some(2));
    assert_eq!(qplane(&["pbw"]).status.code(), Some(2));
    assert_eq!(qplane(&["pbw", "--catalog", "pres.eq6", "--file", "x.json"]).status.code(), Some(2));
    let o = qplane(&["pbw", "--catalog", "pres.eq61"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("did you mean"));
    assert_eq!(qplane(&["pipeline", "eq99"]).status.code(), Some(2));
    assert_eq!(qplane(&["verify-ybe", "--file", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn derive_space_anomaly_under_plain_flip() {
    let o =
        qplane(&["derive", "--catalog", "R.glq11-exotic", "--convention", "ungraded", "--against", "pres.cq11-exotic"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("mu*mu = 0"));
    let o = qplane(&["derive", "--catalog", "R.glq11-exotic", "--against", "pres.cq11-exotic"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn module_commands() {
    let cases: &[&[&str]] = &[
        &["transform", "--catalog", "map.eq7"],
        &["transform", "--catalog", "map.eq22"],
        &["contract", "--catalog", "contract.eq8"],
        &["limit", "--catalog", "pres.eq15", "--param", "v", "--against", "pres.eq16"],
        &["coact", "--catalog", "coact.eq13"],
        &["pbw", "--catalog", "pres.cq2", "--degree", "5"],
        &["confluence", "--catalog", "pres.eq25"],
        &["compare", "--catalog", "pres.eq24", "--with", "pres.eq24"],
        &["quotient", "--catalog", "pres.eq24", "--set", "x=1", "--against", "pres.eq25"],
        &["derive", "--catalog", "R.glq11", "--target", "scan", "--against", "pres.eq13"],
    ];
    for args in cases {
        let o = qplane(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}{}", stdout(&o), String::from_utf8_lossy(&o.stderr));
    }
    let o = qplane(&["pbw", "--catalog", "pres.cq2", "--degree", "5"]);
    assert!(stdout(&o).contains("dimensions [1, 2, 3, 4, 5, 6]"));
}

#[test]
fn presentation_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    let o = qplane(&["catalog", "pres.eq21", "--json", path.to_str().unwrap(), "--quiet"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let f = dir.path().join("eq21.json");
    std::fs::write(&f, v["payload"].to_string()).unwrap();
    let o = qplane(&["compare", "--file", f.to_str().unwrap(), "--with", "pres.eq21"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let mut dropped = v["payload"].clone();
    dropped["relations"].as_array_mut().unwrap().pop();
    let g = dir.path().join("dropped.json");
    std::fs::write(&g, dropped.to_string()).unwrap();
    let o = qplane(&["compare", "--catalog", "pres.eq21", "--with", g.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn catalog_listing() {
    let o = qplane(&["catalog"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    for id in ["R.glq2", "pres.eq27", "map.eq22", "coact.eq26", "contract.eq23", "pipeline.eq9"] {
        assert!(s.contains(id), "{id} missing");
    }
}

#[test]
fn pipeline_all_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let oa = qplane(&["pipeline", "all", "--json", a.to_str().unwrap(), "--quiet"]);
    let ob = qplane(&["pipeline", "all", "--json", b.to_str().unwrap(), "--quiet"]);
    assert_eq!(oa.status.code(), Some(3));
    assert_eq!(ob.status.code(), Some(3));
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}
