//! End-to-end checks: label, strip, reconstruct, compare.

use crate::error::{Error, Result};
use crate::indec::{enumerate_indecomposables, IndecTable};
use crate::io::strip_labels;
use crate::poset::AbstractPoset;
use crate::quiver::{source_filtration, Quiver};
use crate::reconstruct::{e1_candidates, extract_tilting_dense, has_deadend_family, has_xyz, simple_injectives};
use crate::stilt::{classify_predecessors, e3_from_subquiver, StiltPoset};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub elements: usize,
    pub labeled_tilting: Vec<usize>,
    pub reconstructed_tilting: Vec<usize>,
    pub labeled_tower: Vec<usize>,
    pub reconstructed_tower: Vec<usize>,
}

impl VerifyReport {
    pub fn matches(&self) -> bool {
        self.labeled_tilting == self.reconstructed_tilting && self.labeled_tower == self.reconstructed_tower
    }
}

/// Indecomposables and labeled poset of a connected Dynkin quiver.
pub fn build(q: &Quiver) -> Result<(IndecTable, StiltPoset)> {
    if !q.is_connected() {
        return Err(Error::Disconnected);
    }
    let table = enumerate_indecomposables(q)?;
    let poset = StiltPoset::from_table(&table)?;
    Ok((table, poset))
}

pub fn verify_poset(poset: &StiltPoset) -> Result<VerifyReport> {
    let bare = strip_labels(poset);
    let (tower, _, tilting) = extract_tilting_dense(&bare)?;
    Ok(VerifyReport {
        elements: poset.len(),
        labeled_tilting: poset.tilting().iter().copied().collect(),
        reconstructed_tilting: tilting,
        labeled_tower: poset.injective_tower().to_vec(),
        reconstructed_tower: tower,
    })
}

pub fn verify_quiver(q: &Quiver) -> Result<VerifyReport> {
    let (_, poset) = build(q)?;
    verify_poset(&poset)
}

/// Compares each order-only test with the labeled classification at every
/// tower level. With `deep`, `e3` is also rebuilt from subquiver translates.
/// Returns the first mismatch as an error.
pub fn check_levels(poset: &StiltPoset, table: &IndecTable, deep: bool) -> Result<()> {
    let bare: AbstractPoset = strip_labels(poset);
    let tower = poset.injective_tower();
    let filtration = source_filtration(table.quiver());
    let fail = |i: usize, what: String| Err(Error::Inconsistent(format!("level {i}: {what}")));

    if tower.len() > 1 {
        let mut atoms = simple_injectives(&bare)?;
        atoms.sort_unstable();
        let labeled = classify_predecessors(poset, table, 0)?;
        if atoms != labeled.e1.iter().copied().collect::<Vec<_>>() {
            return fail(0, format!("simple injectives {atoms:?} vs labeled {:?}", labeled.e1));
        }
    }
    for (i, &base) in tower.iter().enumerate().skip(1) {
        let c = classify_predecessors(poset, table, i)?;
        let found = e1_candidates(&bare, base)?;
        if found != c.e1.iter().copied().collect::<Vec<_>>() {
            return fail(i, format!("e1 candidates {found:?} vs labeled {:?}", c.e1));
        }
        for &t in &c.e1 {
            if has_xyz(&bare, base, t)? || has_deadend_family(&bare, base, t)? {
                return fail(i, format!("e1 element {t} flagged"));
            }
        }
        for &t in &c.e2 {
            if !has_xyz(&bare, base, t)? {
                return fail(i, format!("e2 element {t} has no XYZ configuration"));
            }
        }
        for &t in &c.e3 {
            if !has_deadend_family(&bare, base, t)? {
                return fail(i, format!("e3 element {t} has no dead-end family"));
            }
        }
        if deep {
            let rebuilt = e3_from_subquiver(poset, table, &filtration, i)?;
            if rebuilt != c.e3 {
                return fail(i, format!("subquiver e3 {rebuilt:?} vs {:?}", c.e3));
            }
        }
    }
    Ok(())
}
