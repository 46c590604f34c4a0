//! Unlabeled finite posets given by their cover relation.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A problem found by [`validate_input`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    Empty,
    DuplicateId(u64),
    UnknownId(u64),
    DuplicateCover(u64, u64),
    Cycle,
    RedundantCover(u64, u64),
    NoUniqueMinimum(Vec<u64>),
}

impl Diagnostic {
    /// Whether the data is unusable as a poset, as opposed to merely lacking a unique minimum.
    pub fn is_structural(&self) -> bool {
        !matches!(self, Diagnostic::NoUniqueMinimum(_))
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::Empty => write!(f, "poset is empty"),
            Diagnostic::DuplicateId(id) => write!(f, "duplicate element id {id}"),
            Diagnostic::UnknownId(id) => write!(f, "cover references unknown id {id}"),
            Diagnostic::DuplicateCover(u, v) => write!(f, "cover [{u},{v}] listed twice"),
            Diagnostic::Cycle => write!(f, "cover relation contains a cycle"),
            Diagnostic::RedundantCover(u, v) => write!(f, "redundant cover [{u},{v}] is implied by others"),
            Diagnostic::NoUniqueMinimum(mins) => write!(f, "no unique minimum (minimal elements {mins:?})"),
        }
    }
}

/// Checks raw poset data: distinct ids, known endpoints, acyclicity, that no
/// cover is implied by the others, and a unique minimum. Every violated
/// condition yields its own diagnostic.
pub fn validate_input(ids: &[u64], covers: &[(u64, u64)]) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    if ids.is_empty() {
        diags.push(Diagnostic::Empty);
    }
    let mut index = HashMap::new();
    for (i, &id) in ids.iter().enumerate() {
        if index.insert(id, i).is_some() {
            diags.push(Diagnostic::DuplicateId(id));
        }
    }
    let n = ids.len();
    let mut edges = Vec::new();
    let mut seen = BTreeSet::new();
    for &(u, v) in covers {
        let mut ok = true;
        for x in [u, v] {
            if !index.contains_key(&x) {
                diags.push(Diagnostic::UnknownId(x));
                ok = false;
            }
        }
        if !ok {
            continue;
        }
        if !seen.insert((u, v)) {
            diags.push(Diagnostic::DuplicateCover(u, v));
            continue;
        }
        edges.push((index[&u], index[&v]));
    }
    let mut down = vec![Vec::new(); n];
    for &(u, v) in &edges {
        down[u].push(v);
    }
    let Some(order) = topological_order(n, &down) else {
        diags.push(Diagnostic::Cycle);
        return diags;
    };
    let below = strict_below(n, &down, &order);
    for &(u, v) in &edges {
        if down[u].iter().any(|&w| w != v && below[w].contains(v)) {
            diags.push(Diagnostic::RedundantCover(ids[u], ids[v]));
        }
    }
    let minimal: Vec<u64> = (0..n).filter(|&v| down[v].is_empty()).map(|v| ids[v]).collect();
    if n > 0 && minimal.len() != 1 {
        diags.push(Diagnostic::NoUniqueMinimum(minimal));
    }
    diags
}

/// Topological order with greater elements first; `None` on a cycle.
fn topological_order(n: usize, down: &[Vec<usize>]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for list in down {
        for &v in list {
            indeg[v] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..n).rev().filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(u) = stack.pop() {
        order.push(u);
        for &v in &down[u] {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                stack.push(v);
            }
        }
    }
    (order.len() == n).then_some(order)
}

fn strict_below(n: usize, down: &[Vec<usize>], order: &[usize]) -> Vec<FixedBitSet> {
    let mut below = vec![FixedBitSet::with_capacity(n); n];
    for &u in order.iter().rev() {
        let mut acc = FixedBitSet::with_capacity(n);
        for &v in &down[u] {
            acc.insert(v);
            acc.union_with(&below[v]);
        }
        below[u] = acc;
    }
    below
}

/// Finite poset on opaque ids. Internally elements are dense indices in
/// input order; `ids()` maps them back.
#[derive(Debug, Clone)]
pub struct AbstractPoset {
    ids: Vec<u64>,
    covers: Vec<(usize, usize)>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    /// `above[v] = {u : u > v}`
    above: Vec<FixedBitSet>,
    /// `below[u] = {w : w < u}`
    below: Vec<FixedBitSet>,
}

impl AbstractPoset {
    /// Rejects duplicate or unknown ids, repeated covers, cycles and redundant covers.
    pub fn new(ids: Vec<u64>, covers: Vec<(u64, u64)>) -> Result<Self> {
        if let Some(d) = validate_input(&ids, &covers)
            .into_iter()
            .find(Diagnostic::is_structural)
        {
            return Err(Error::PosetFormat(d.to_string()));
        }
        let index: HashMap<u64, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let n = ids.len();
        let mut dense: Vec<(usize, usize)> = covers.iter().map(|(u, v)| (index[u], index[v])).collect();
        dense.sort_unstable();
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for &(u, v) in &dense {
            down[u].push(v);
            up[v].push(u);
        }
        let order = topological_order(n, &down).expect("validated acyclic");
        let below = strict_below(n, &down, &order);
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for (u, row) in below.iter().enumerate() {
            for w in row.ones() {
                above[w].insert(u);
            }
        }
        Ok(AbstractPoset {
            ids,
            covers: dense,
            up,
            down,
            above,
            below,
        })
    }

    /// Dense-index constructor: element `i` gets id `i`.
    pub fn from_dense(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        Self::new(
            (0..n as u64).collect(),
            covers.iter().map(|&(u, v)| (u as u64, v as u64)).collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[u64] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> u64 {
        self.ids[v]
    }

    pub fn index_of(&self, id: u64) -> Option<usize> {
        self.ids.iter().position(|&x| x == id)
    }

    /// Covers `(u, v)` with `u ⋗ v`, in dense indices, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Cover pairs in original ids.
    pub fn cover_ids(&self) -> Vec<(u64, u64)> {
        self.covers.iter().map(|&(u, v)| (self.ids[u], self.ids[v])).collect()
    }

    /// `e(v)`: elements covering `v`.
    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.up[v]
    }

    /// `s(v)`: elements covered by `v`.
    pub fn successors(&self, v: usize) -> &[usize] {
        &self.down[v]
    }

    /// `u > v`.
    pub fn greater(&self, u: usize, v: usize) -> bool {
        self.above[v].contains(u)
    }

    /// `u ≥ v`.
    pub fn geq(&self, u: usize, v: usize) -> bool {
        u == v || self.greater(u, v)
    }

    /// `{x : x ≥ v}`.
    pub fn upset(&self, v: usize) -> FixedBitSet {
        let mut s = self.above[v].clone();
        s.insert(v);
        s
    }

    pub fn strictly_below(&self, v: usize) -> &FixedBitSet {
        &self.below[v]
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.down[v].is_empty()).collect()
    }

    pub fn minimum(&self) -> Result<usize> {
        match self.minimal_elements().as_slice() {
            [m] => Ok(*m),
            mins => Err(Error::InvalidPoset(
                Diagnostic::NoUniqueMinimum(mins.iter().map(|&v| self.ids[v]).collect()).to_string(),
            )),
        }
    }

    /// Diagnostics for this poset (only the minimum can still be at fault).
    pub fn validate(&self) -> Vec<Diagnostic> {
        validate_input(&self.ids, &self.cover_ids())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pentagon_is_valid() {
        let ids = vec![0, 1, 2, 3, 4];
        let covers = vec![(3, 4), (4, 2), (2, 0), (3, 1), (1, 0)];
        assert!(validate_input(&ids, &covers).is_empty());
        let p = AbstractPoset::new(ids, covers).unwrap();
        assert_eq!(p.minimum().unwrap(), 0);
        assert!(p.greater(3, 0));
        assert!(!p.greater(4, 1));
        assert_eq!(p.upset(2).ones().collect::<Vec<_>>(), vec![2, 3, 4]);
    }

    #[test]
    fn diagnostics() {
        assert_eq!(
            validate_input(&[0, 1, 2], &[(2, 0), (2, 1)]),
            vec![Diagnostic::NoUniqueMinimum(vec![0, 1])]
        );
        assert_eq!(
            validate_input(&[0, 1, 2], &[(2, 1), (1, 0), (2, 0)]),
            vec![Diagnostic::RedundantCover(2, 0)]
        );
        assert!(validate_input(&[0, 1], &[(0, 1), (1, 0)]).contains(&Diagnostic::Cycle));
        assert!(validate_input(&[0, 0], &[]).contains(&Diagnostic::DuplicateId(0)));
        assert!(validate_input(&[0], &[(0, 9)]).contains(&Diagnostic::UnknownId(9)));
        assert!(validate_input(&[0, 1], &[(1, 0), (1, 0)]).contains(&Diagnostic::DuplicateCover(1, 0)));
        assert_eq!(validate_input(&[], &[]), vec![Diagnostic::Empty]);
        assert!(validate_input(&[0], &[(0, 0)]).contains(&Diagnostic::Cycle));
    }

    #[test]
    fn constructor_rejects_structure_but_not_minimum() {
        assert!(AbstractPoset::new(vec![0, 1], vec![(0, 1), (1, 0)]).is_err());
        assert!(AbstractPoset::new(vec![], vec![]).is_err());
        let two_min = AbstractPoset::new(vec![0, 1, 2], vec![(2, 0), (2, 1)]).unwrap();
        assert!(two_min.minimum().is_err());
        assert_eq!(two_min.validate().len(), 1);
    }
}
