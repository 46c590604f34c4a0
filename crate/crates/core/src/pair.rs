//! Support tilting pairs `(M, P)` and the maps
//! `Tau(M, P) = (τM ⊕ νP, M_pr)` and `Tau⁻(M, P) = (τ⁻M ⊕ P, ν⁻M_in)`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::indec::IndecTable;
use crate::quiver::VertexId;
use crate::stilt::{is_support_tilting, ModuleSet};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SupportTiltingPair {
    pub module: ModuleSet,
    /// Vertices `a` with `P(a)` in the projective part.
    pub complement: BTreeSet<VertexId>,
}

impl SupportTiltingPair {
    /// The unique pair with the given module: `P` is the sum of `P(a)` over
    /// vertices outside the support.
    pub fn from_module(table: &IndecTable, module: ModuleSet) -> Self {
        let complement = table
            .quiver()
            .vertices()
            .filter(|v| !module.support().contains(v))
            .collect();
        SupportTiltingPair { module, complement }
    }

    pub fn is_valid(&self, table: &IndecTable) -> bool {
        is_support_tilting(table, &self.module)
            && self
                .complement
                .iter()
                .copied()
                .eq(table.quiver().vertices().filter(|v| !self.module.support().contains(v)))
    }

    fn check(&self, table: &IndecTable) -> Result<()> {
        if self.is_valid(table) {
            Ok(())
        } else {
            Err(Error::NotSupportTilting(self.module.summands().to_vec()))
        }
    }
}

pub fn tau_pair(p: &SupportTiltingPair, table: &IndecTable) -> Result<SupportTiltingPair> {
    p.check(table)?;
    let mut summands = BTreeSet::new();
    let mut complement = BTreeSet::new();
    for &x in p.module.summands() {
        let ind = table.get(x);
        match (ind.projective_at, ind.tau) {
            (Some(a), _) => {
                complement.insert(a);
            }
            (None, Some(t)) => {
                summands.insert(t);
            }
            (None, None) => return Err(Error::Inconsistent(format!("indecomposable {x} has no τ"))),
        }
    }
    for &a in &p.complement {
        summands.insert(table.injective(a));
    }
    finish(table, summands, complement)
}

pub fn tau_minus_pair(p: &SupportTiltingPair, table: &IndecTable) -> Result<SupportTiltingPair> {
    p.check(table)?;
    let mut summands = BTreeSet::new();
    let mut complement = BTreeSet::new();
    for &x in p.module.summands() {
        let ind = table.get(x);
        match (ind.injective_at, ind.tau_minus) {
            (Some(a), _) => {
                complement.insert(a);
            }
            (None, Some(t)) => {
                summands.insert(t);
            }
            (None, None) => return Err(Error::Inconsistent(format!("indecomposable {x} has no τ⁻"))),
        }
    }
    for &a in &p.complement {
        summands.insert(table.projective(a));
    }
    finish(table, summands, complement)
}

fn finish(table: &IndecTable, summands: BTreeSet<usize>, complement: BTreeSet<VertexId>) -> Result<SupportTiltingPair> {
    let out = SupportTiltingPair {
        module: ModuleSet::new(table, summands),
        complement,
    };
    if !out.is_valid(table) {
        return Err(Error::Inconsistent(format!(
            "Tau image {:?} is not a support tilting pair",
            out.module.summands()
        )));
    }
    Ok(out)
}
