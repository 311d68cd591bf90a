//! Golden files for catalog presentations and pipeline reports.
//!
//! Missing files are written on first run; set `QPLANE_BLESS=1` to rewrite
//! all of them.

use std::path::PathBuf;

use qplane::catalog_cli::io::{to_json, PresentationFile};
use qplane::catalog_cli::pipelines::run_pipeline;
use qplane::catalog_cli::{catalog::PIPELINES, Catalog, Payload};
use qplane::presentations::ideals_equal_upto_degree;

fn golden_dir(sub: &str) -> PathBuf {
    let d = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(sub);
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn bless() -> bool {
    std::env::var("QPLANE_BLESS").is_ok_and(|v| v == "1")
}

/// Compare `body` with the stored file, writing it when absent or blessing.
fn check_golden(path: PathBuf, body: &str) -> Option<String> {
    if bless() || !path.exists() {
        std::fs::write(&path, body).unwrap();
        return None;
    }
    let stored = std::fs::read_to_string(&path).unwrap();
    (stored != body).then(|| format!("{} differs from the golden file", path.display()))
}

#[test]
fn presentation_goldens() {
    let c = Catalog::builtin().unwrap();
    let dir = golden_dir("presentations");
    let mut bad = vec![];
    for e in c.entries() {
        let Payload::Presentation(p) = &e.payload else { continue };
        let file = PresentationFile::from_presentation(p);
        if let Some(msg) = check_golden(dir.join(format!("{}.json", e.id)), &to_json(&file)) {
            bad.push(msg);
        }
        let back = PresentationFile::parse(&std::fs::read_to_string(dir.join(format!("{}.json", e.id))).unwrap())
            .unwrap()
            .to_presentation()
            .unwrap();
        assert_eq!(back.relations(), p.relations(), "{} does not round-trip", e.id);
        let same = ideals_equal_upto_degree(&back, p, 2).unwrap();
        assert!(same.passed(), "{}: {same}", e.id);
    }
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn pipeline_goldens() {
    let c = Catalog::builtin().unwrap();
    let dir = golden_dir("pipelines");
    let mut bad = vec![];
    for p in PIPELINES {
        let reps = run_pipeline(&c, p).unwrap();
        if let Some(msg) = check_golden(dir.join(format!("{p}.json")), &to_json(&reps)) {
            bad.push(msg);
        }
    }
    assert!(bad.is_empty(), "{bad:#?}");
}
