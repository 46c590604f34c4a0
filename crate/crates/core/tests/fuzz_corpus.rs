//! Replays the checked-in fuzz seeds through the fuzz targets' assertions.

use std::path::PathBuf;

use tiltlab::io::{export_abstract, import_labels, import_poset, Format};
use tiltlab::quiver::{dynkin_type, parse_quiver};
use tiltlab::reconstruct::extract_tilting;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fuzz/corpus")
        .join(target);
    let mut out: Vec<(String, String)> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| {
            let path = e.unwrap().path();
            (path.display().to_string(), std::fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds in {}", dir.display());
    out
}

#[test]
fn parse_quiver_seeds() {
    let mut accepted = 0;
    for (name, text) in seeds("parse_quiver") {
        if let Ok(q) = parse_quiver(&text) {
            let again = parse_quiver(&q.serialize()).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(again.serialize(), q.serialize(), "{name}");
            let _ = dynkin_type(&q);
            accepted += 1;
        }
    }
    assert!(accepted > 0);
}

#[test]
fn import_poset_seeds() {
    let mut accepted = 0;
    for (name, text) in seeds("import_poset") {
        let _ = import_labels(&text);
        let Ok(p) = import_poset(&text) else {
            continue;
        };
        if p.is_empty() {
            continue;
        }
        let json = export_abstract(&p, Format::Json).unwrap();
        let back = import_poset(&json).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(export_abstract(&back, Format::Json).unwrap(), json, "{name}");
        let _ = extract_tilting(&p);
        accepted += 1;
    }
    assert!(accepted > 0);
}
