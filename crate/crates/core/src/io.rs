//! Poset JSON and DOT.
//!
//! ```text
//! {"elements":[{"id":0,"label":{"summands":[[1,0]],"support":["1"]}},…],"covers":[[3,4],…]}
//! ```
//!
//! Covers are `[greater, smaller]`. Labels are optional and ignored on import.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::indec::IndecTable;
use crate::poset::AbstractPoset;
use crate::reconstruct::ReconstructionResult;
use crate::stilt::StiltPoset;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Label {
    pub summands: Vec<Vec<usize>>,
    pub support: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementJson {
    id: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<Label>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetJson {
    elements: Vec<ElementJson>,
    covers: Vec<[u64; 2]>,
}

/// Labels of a stilt poset, indexed by element id.
pub fn labels(p: &StiltPoset, table: &IndecTable) -> Vec<Label> {
    let q = table.quiver();
    p.elements()
        .iter()
        .map(|m| Label {
            summands: m.summands().iter().map(|&x| table.get(x).dims().0.clone()).collect(),
            support: m.support().iter().map(|&v| q.name(v).to_owned()).collect(),
        })
        .collect()
}

/// The stilt poset with labels stripped; element `i` keeps id `i`.
pub fn strip_labels(p: &StiltPoset) -> AbstractPoset {
    AbstractPoset::from_dense(p.len(), p.covers()).expect("stilt covers form a transitive reduction")
}

pub fn export_poset(p: &StiltPoset, table: &IndecTable, format: Format, labeled: bool) -> Result<String> {
    if p.is_empty() {
        return Err(Error::InvalidPoset("poset must contain the zero element".into()));
    }
    let abstract_poset = strip_labels(p);
    let labels = labeled.then(|| labels(p, table));
    Ok(match format {
        Format::Json => write_json(&abstract_poset, labels.as_deref()),
        Format::Dot => write_dot(&abstract_poset, labels.as_deref()),
    })
}

pub fn export_abstract(p: &AbstractPoset, format: Format) -> Result<String> {
    if p.is_empty() {
        return Err(Error::InvalidPoset("poset must contain the zero element".into()));
    }
    Ok(match format {
        Format::Json => write_json(p, None),
        Format::Dot => write_dot(p, None),
    })
}

fn write_json(p: &AbstractPoset, labels: Option<&[Label]>) -> String {
    let doc = PosetJson {
        elements: (0..p.len())
            .map(|i| ElementJson {
                id: p.id(i),
                label: labels.map(|l| l[i].clone()),
            })
            .collect(),
        covers: p.cover_ids().into_iter().map(|(u, v)| [u, v]).collect(),
    };
    let mut s = serde_json::to_string(&doc).expect("poset serializes");
    s.push('\n');
    s
}

fn write_dot(p: &AbstractPoset, labels: Option<&[Label]>) -> String {
    let mut s = String::from("digraph {\n");
    for i in 0..p.len() {
        match labels {
            Some(l) => {
                let text: Vec<String> = l[i]
                    .summands
                    .iter()
                    .map(|d| d.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(""))
                    .collect();
                let text = if text.is_empty() {
                    "0".to_owned()
                } else {
                    text.join("+")
                };
                let _ = writeln!(s, "  {} [label=\"{}\"];", p.id(i), text);
            }
            None => {
                let _ = writeln!(s, "  {};", p.id(i));
            }
        }
    }
    for (u, v) in p.cover_ids() {
        let _ = writeln!(s, "  {u} -> {v};");
    }
    s.push_str("}\n");
    s
}

fn parse_json(text: &str) -> Result<PosetJson> {
    serde_json::from_str(text).map_err(|e| Error::PosetFormat(e.to_string()))
}

/// Parses poset JSON into an unlabeled poset, validating the cover list.
pub fn import_poset(text: &str) -> Result<AbstractPoset> {
    let doc = parse_json(text)?;
    AbstractPoset::new(
        doc.elements.iter().map(|e| e.id).collect(),
        doc.covers.iter().map(|c| (c[0], c[1])).collect(),
    )
}

/// Labels present in poset JSON, if every element carries one.
pub fn import_labels(text: &str) -> Result<Option<BTreeMap<u64, Label>>> {
    let doc = parse_json(text)?;
    if doc.elements.iter().any(|e| e.label.is_none()) {
        return Ok(None);
    }
    Ok(Some(
        doc.elements.into_iter().map(|e| (e.id, e.label.unwrap())).collect(),
    ))
}

#[derive(Serialize)]
struct ResultJson<'a> {
    tower: &'a [u64],
    e1_trace: &'a [Vec<u64>],
    tilting: &'a [u64],
}

pub fn reconstruction_json(r: &ReconstructionResult) -> String {
    let mut s = serde_json::to_string(&ResultJson {
        tower: &r.tower,
        e1_trace: &r.e1_trace,
        tilting: &r.tilting,
    })
    .expect("result serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indec::enumerate_indecomposables;
    use crate::quiver::parse_quiver;

    fn pentagon() -> (StiltPoset, IndecTable) {
        let q = parse_quiver("vertices: 1 2\n1 -> 2").unwrap();
        let t = enumerate_indecomposables(&q).unwrap();
        (StiltPoset::from_table(&t).unwrap(), t)
    }

    #[test]
    fn unlabeled_json_has_no_labels() {
        let (p, t) = pentagon();
        let json = export_poset(&p, &t, Format::Json, false).unwrap();
        assert!(!json.contains("label"));
        let back = import_poset(&json).unwrap();
        assert_eq!(back.len(), 5);
        assert_eq!(back.covers().len(), 5);
        assert_eq!(export_abstract(&back, Format::Json).unwrap(), json);
    }

    #[test]
    fn labeled_json() {
        let (p, t) = pentagon();
        let json = export_poset(&p, &t, Format::Json, true).unwrap();
        assert!(json.starts_with(r#"{"elements":[{"id":0,"label":{"summands":[],"support":[]}}"#));
        let labels = import_labels(&json).unwrap().unwrap();
        assert_eq!(labels.len(), 5);
        assert_eq!(labels[&4].support, vec!["1".to_string(), "2".to_string()]);
        assert!(import_labels(&export_poset(&p, &t, Format::Json, false).unwrap())
            .unwrap()
            .is_none());
    }

    #[test]
    fn dot_output() {
        let (p, t) = pentagon();
        let dot = export_poset(&p, &t, Format::Dot, false).unwrap();
        assert!(dot.starts_with("digraph {\n"));
        assert_eq!(dot.matches("->").count(), 5);
    }

    #[test]
    fn import_errors() {
        let cycle = r#"{"elements":[{"id":0},{"id":1}],"covers":[[0,1],[1,0]]}"#;
        assert!(matches!(import_poset(cycle), Err(Error::PosetFormat(m)) if m.contains("cycle")));
        let redundant = r#"{"elements":[{"id":0},{"id":1},{"id":2}],"covers":[[2,1],[1,0],[2,0]]}"#;
        assert!(matches!(import_poset(redundant), Err(Error::PosetFormat(m)) if m.contains("redundant")));
        let dup = r#"{"elements":[{"id":0},{"id":0}],"covers":[]}"#;
        assert!(matches!(import_poset(dup), Err(Error::PosetFormat(m)) if m.contains("duplicate")));
        let unknown = r#"{"elements":[{"id":0}],"covers":[[0,3]]}"#;
        assert!(matches!(import_poset(unknown), Err(Error::PosetFormat(m)) if m.contains("unknown")));
        assert!(matches!(import_poset("{"), Err(Error::PosetFormat(_))));
        assert!(matches!(
            import_poset(r#"{"elements":[],"covers":[]}"#),
            Err(Error::PosetFormat(_))
        ));
    }

    #[test]
    fn opaque_ids_survive() {
        let text = "{\"elements\":[{\"id\":10},{\"id\":7}],\"covers\":[[7,10]]}\n";
        let p = import_poset(text).unwrap();
        assert_eq!(p.minimum().unwrap(), 0);
        assert_eq!(export_abstract(&p, Format::Json).unwrap(), text);
    }
}
