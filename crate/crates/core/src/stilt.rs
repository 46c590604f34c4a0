//! Support tilting modules of a Dynkin quiver and their poset.
//!
//! For `M, M'` support tilting, `M ≥ M'` iff `Ext¹(M, M') = 0` and
//! `supp M' ⊆ supp M`. Covers are stored greater-first.

use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::indec::{IndecId, IndecTable};
use crate::pair::{tau_pair, SupportTiltingPair};
use crate::quiver::{source_filtration, DimVector, Filtration, VertexId};
use crate::rep::tau;
use crate::rep::Representation;

/// A basic module, given by the table ids of its indecomposable summands.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModuleSet {
    summands: Vec<IndecId>,
    support: BTreeSet<VertexId>,
}

impl ModuleSet {
    pub fn new(table: &IndecTable, summands: impl IntoIterator<Item = IndecId>) -> Self {
        let summands: BTreeSet<IndecId> = summands.into_iter().collect();
        let support = summands.iter().flat_map(|&x| table.get(x).dims().support()).collect();
        ModuleSet {
            summands: summands.into_iter().collect(),
            support,
        }
    }

    pub fn empty() -> Self {
        ModuleSet {
            summands: Vec::new(),
            support: BTreeSet::new(),
        }
    }

    pub fn summands(&self) -> &[IndecId] {
        &self.summands
    }

    pub fn support(&self) -> &BTreeSet<VertexId> {
        &self.support
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn contains(&self, x: IndecId) -> bool {
        self.summands.binary_search(&x).is_ok()
    }

    fn canonical_key(&self) -> (usize, &[IndecId]) {
        (self.support.len(), &self.summands)
    }
}

/// `M` is tilting over the full subquiver on its support: no self-extensions
/// and as many summands as support vertices.
pub fn is_support_tilting(table: &IndecTable, s: &ModuleSet) -> bool {
    s.len() == s.support().len()
        && s.summands()
            .iter()
            .all(|&x| s.summands().iter().all(|&y| table.ext(x, y) == 0))
}

/// All support tilting modules in canonical order (support size, then summand ids).
///
/// Depth-first extension of Ext-orthogonal cliques in increasing id order;
/// every rigid clique is visited once and kept when it is as large as its support.
pub fn enumerate_stilt(table: &IndecTable) -> Vec<ModuleSet> {
    let n = table.len();
    let compatible: Vec<FixedBitSet> = (0..n)
        .map(|x| {
            let mut row = FixedBitSet::with_capacity(n);
            for y in 0..n {
                if table.ext(x, y) == 0 && table.ext(y, x) == 0 {
                    row.insert(y);
                }
            }
            row
        })
        .collect();
    let supports: Vec<BTreeSet<VertexId>> = (0..n).map(|x| table.get(x).dims().support()).collect();

    let mut out = vec![ModuleSet::empty()];
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    let mut stack: Vec<IndecId> = Vec::new();
    extend_cliques(&compatible, &supports, &mut stack, &BTreeSet::new(), all, 0, &mut out);
    out.sort_by(|a, b| a.canonical_key().cmp(&b.canonical_key()));
    out
}

fn extend_cliques(
    compatible: &[FixedBitSet],
    supports: &[BTreeSet<VertexId>],
    stack: &mut Vec<IndecId>,
    support: &BTreeSet<VertexId>,
    candidates: FixedBitSet,
    from: usize,
    out: &mut Vec<ModuleSet>,
) {
    for x in candidates.ones().filter(|&x| x >= from) {
        if !compatible[x].contains(x) {
            continue;
        }
        stack.push(x);
        let support_x: BTreeSet<VertexId> = support.union(&supports[x]).copied().collect();
        if stack.len() == support_x.len() {
            out.push(ModuleSet {
                summands: stack.clone(),
                support: support_x.clone(),
            });
        }
        let mut next = candidates.clone();
        next.intersect_with(&compatible[x]);
        extend_cliques(compatible, supports, stack, &support_x, next, x + 1, out);
        stack.pop();
    }
}

/// `m1 ≤ m2`.
pub fn stilt_leq(table: &IndecTable, m1: &ModuleSet, m2: &ModuleSet) -> Result<bool> {
    for m in [m1, m2] {
        if !is_support_tilting(table, m) {
            return Err(Error::NotSupportTilting(m.summands().to_vec()));
        }
    }
    Ok(leq_unchecked(table, m1, m2))
}

fn leq_unchecked(table: &IndecTable, m1: &ModuleSet, m2: &ModuleSet) -> bool {
    m1.support().is_subset(m2.support())
        && m2
            .summands()
            .iter()
            .all(|&x| m1.summands().iter().all(|&y| table.ext(x, y) == 0))
}

/// Labeled poset of support tilting modules.
#[derive(Debug, Clone)]
pub struct StiltPoset {
    elements: Vec<ModuleSet>,
    covers: Vec<(usize, usize)>,
    tilting: BTreeSet<usize>,
    injective_tower: Vec<usize>,
    rank: usize,
    index: HashMap<Vec<IndecId>, usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    greater: Vec<FixedBitSet>,
}

impl StiltPoset {
    /// Enumerates, orders and reduces; also locates the injective tower.
    pub fn from_table(table: &IndecTable) -> Result<Self> {
        let elements = enumerate_stilt(table);
        log::debug!("{} support tilting modules", elements.len());
        let mut p = build_hasse(elements, table.quiver().vertex_count(), |a, b| {
            leq_unchecked(table, a, b)
        })?;
        p.injective_tower = injective_tower_labeled(table, &p)?;
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ModuleSet] {
        &self.elements
    }

    pub fn element(&self, id: usize) -> &ModuleSet {
        &self.elements[id]
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn tilting(&self) -> &BTreeSet<usize> {
        &self.tilting
    }

    pub fn injective_tower(&self) -> &[usize] {
        &self.injective_tower
    }

    /// Number of vertices of the quiver.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn find(&self, m: &ModuleSet) -> Option<usize> {
        self.index.get(m.summands()).copied()
    }

    pub fn find_summands(&self, summands: &BTreeSet<IndecId>) -> Option<usize> {
        let key: Vec<IndecId> = summands.iter().copied().collect();
        self.index.get(&key).copied()
    }

    /// Direct predecessors (elements covering `v`).
    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.up[v]
    }

    /// Direct successors (elements covered by `v`).
    pub fn successors(&self, v: usize) -> &[usize] {
        &self.down[v]
    }

    /// `u > v`.
    pub fn greater(&self, u: usize, v: usize) -> bool {
        self.greater[v].contains(u)
    }

    pub fn minimum(&self) -> usize {
        self.index[&Vec::new()]
    }

    pub fn maximum(&self) -> usize {
        (0..self.len())
            .find(|&u| self.greater[u].count_ones(..) == 0 && self.elements[u].support().len() == self.rank)
            .expect("poset has a top element")
    }
}

/// Transitive reduction of the order `leq` on `elements`; checks that the
/// undirected cover graph is `rank`-regular.
pub fn build_hasse(
    elements: Vec<ModuleSet>,
    rank: usize,
    leq: impl Fn(&ModuleSet, &ModuleSet) -> bool + Sync,
) -> Result<StiltPoset> {
    let n = elements.len();
    if n == 0 {
        return Err(Error::InvalidPoset("poset must contain the zero element".into()));
    }
    // greater[v] = {u : u > v}, less[u] = {w : w < u}
    let greater: Vec<FixedBitSet> = (0..n)
        .into_par_iter()
        .map(|v| {
            let mut row = FixedBitSet::with_capacity(n);
            for u in 0..n {
                if u != v && leq(&elements[v], &elements[u]) {
                    row.insert(u);
                }
            }
            row
        })
        .collect();
    let mut less = vec![FixedBitSet::with_capacity(n); n];
    for (v, row) in greater.iter().enumerate() {
        for u in row.ones() {
            less[u].insert(v);
        }
    }
    let mut covers = Vec::new();
    for (v, above) in greater.iter().enumerate() {
        for u in above.ones() {
            if less[u].is_disjoint(above) {
                covers.push((u, v));
            }
        }
    }
    covers.sort_unstable();
    let mut up = vec![Vec::new(); n];
    let mut down = vec![Vec::new(); n];
    for &(u, v) in &covers {
        up[v].push(u);
        down[u].push(v);
    }
    for v in 0..n {
        let degree = up[v].len() + down[v].len();
        if degree != rank {
            return Err(Error::Inconsistent(format!(
                "cover graph is not {rank}-regular: element {v} has degree {degree}"
            )));
        }
    }
    let index = elements
        .iter()
        .enumerate()
        .map(|(i, m)| (m.summands().to_vec(), i))
        .collect();
    let tilting = elements
        .iter()
        .enumerate()
        .filter(|(_, m)| m.support().len() == rank)
        .map(|(i, _)| i)
        .collect();
    Ok(StiltPoset {
        elements,
        covers,
        tilting,
        injective_tower: Vec::new(),
        rank,
        index,
        up,
        down,
        greater,
    })
}

/// Element ids of `I_i = ⊕_{a ∈ Q(i)_0} I(a)` for `i = 0..=m`.
pub fn injective_tower_labeled(table: &IndecTable, p: &StiltPoset) -> Result<Vec<usize>> {
    let filtration = source_filtration(table.quiver());
    filtration
        .levels
        .iter()
        .enumerate()
        .map(|(i, level)| {
            let summands = level.iter().map(|&a| table.injective(a)).collect();
            p.find_summands(&summands)
                .ok_or_else(|| Error::Inconsistent(format!("I_{i} is not a support tilting module")))
        })
        .collect()
}

/// Direct predecessors of `I_i` split into `e1` (`I_i ⊕ I(a)`, `a` a new
/// source), `e2` (support `Q(i) ∪ {b}` with `b ∉ Q(i+1)`) and `e3` (the rest),
/// plus the direct successors `I_i / I(d)` for sinks `d` of `Q(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Classification {
    pub e1: BTreeSet<usize>,
    pub e2: BTreeSet<usize>,
    pub e3: BTreeSet<usize>,
    pub successors: BTreeSet<usize>,
}

pub fn classify_predecessors(p: &StiltPoset, table: &IndecTable, i: usize) -> Result<Classification> {
    let q = table.quiver();
    let filtration = source_filtration(q);
    if p.injective_tower().len() != filtration.levels.len() || i > filtration.depth() {
        return Err(Error::Inconsistent(format!("level {i} is not on the injective tower")));
    }
    let base = p.injective_tower()[i];
    let here = filtration.level(i);
    let next = filtration.level(i + 1);
    let base_set = &p.element(base).summands;

    let mut c = Classification::default();
    for &t in p.predecessors(base) {
        let m = p.element(t);
        let is_e1 = next.difference(here).any(|&a| {
            let injective = table.injective(a);
            m.len() == base_set.len() + 1 && m.contains(injective) && base_set.iter().all(|&x| m.contains(x))
        });
        let is_e2 = m.support().len() == here.len() + 1
            && here.is_subset(m.support())
            && m.support().difference(here).all(|b| !next.contains(b));
        if is_e1 {
            c.e1.insert(t);
        } else if is_e2 {
            c.e2.insert(t);
        } else {
            c.e3.insert(t);
        }
    }

    let expected_e1 = next.len() - here.len();
    let expected_e2 = q.vertex_count() - next.len();
    let subquiver_sinks = sinks_of(table, here);
    let expected_e3 = here.len() - subquiver_sinks.len();
    if (c.e1.len(), c.e2.len(), c.e3.len()) != (expected_e1, expected_e2, expected_e3) {
        return Err(Error::Inconsistent(format!(
            "predecessors of I_{i} split as {}/{}/{}, expected {expected_e1}/{expected_e2}/{expected_e3}",
            c.e1.len(),
            c.e2.len(),
            c.e3.len()
        )));
    }

    for d in subquiver_sinks {
        let summands: BTreeSet<IndecId> = base_set.iter().copied().filter(|&x| x != table.injective(d)).collect();
        let id = p
            .find_summands(&summands)
            .ok_or_else(|| Error::Inconsistent(format!("I_{i}/I({d}) is not an element")))?;
        c.successors.insert(id);
    }
    let actual: BTreeSet<usize> = p.successors(base).iter().copied().collect();
    if actual != c.successors {
        return Err(Error::Inconsistent(format!(
            "successors of I_{i} are {actual:?}, expected {:?}",
            c.successors
        )));
    }
    Ok(c)
}

fn sinks_of(table: &IndecTable, level: &BTreeSet<VertexId>) -> Vec<VertexId> {
    let q = table.quiver();
    level
        .iter()
        .copied()
        .filter(|&v| q.arrows().iter().all(|a| a.source != v || !level.contains(&a.target)))
        .collect()
}

/// Rebuilds `e3(i) = {I_i/I(c) ⊕ τ_{Q(i)}S(c) : c not a sink of Q(i)}` from
/// representations over the subquiver `Q(i)`.
pub fn e3_from_subquiver(
    p: &StiltPoset,
    table: &IndecTable,
    filtration: &Filtration,
    i: usize,
) -> Result<BTreeSet<usize>> {
    let q = table.quiver();
    let here = filtration.level(i);
    let mut out = BTreeSet::new();
    if here.is_empty() {
        return Ok(out);
    }
    let sub = q.full_subquiver(here)?;
    let local: Vec<VertexId> = here.iter().copied().collect();
    let base = p.element(p.injective_tower()[i]);
    let sinks = sinks_of(table, here);
    for (k, &c) in local.iter().enumerate() {
        if sinks.contains(&c) {
            continue;
        }
        let translate = tau(&sub, &Representation::simple(&sub, k))?;
        let mut dims = DimVector::zero(q.vertex_count());
        for (j, &v) in local.iter().enumerate() {
            dims.0[v] = translate.dims().0[j];
        }
        let t = table
            .find(&dims)
            .ok_or_else(|| Error::Inconsistent(format!("τS({c}) over Q({i}) is not indecomposable over Q")))?;
        let mut summands: BTreeSet<IndecId> = base.summands().iter().copied().collect();
        summands.remove(&table.injective(c));
        summands.insert(t);
        let id = p
            .find_summands(&summands)
            .ok_or_else(|| Error::Inconsistent(format!("e3 candidate for c = {c} is not an element")))?;
        out.insert(id);
    }
    Ok(out)
}

/// `σ` with `Tau(element v) = element σ(v)`.
pub fn tau_permutation(p: &StiltPoset, table: &IndecTable) -> Result<Vec<usize>> {
    p.elements()
        .iter()
        .map(|m| {
            let image = tau_pair(&SupportTiltingPair::from_module(table, m.clone()), table)?;
            p.find(&image.module).ok_or_else(|| {
                Error::Inconsistent(format!("Tau image {:?} is not an element", image.module.summands()))
            })
        })
        .collect()
}

/// Whether `Tau` permutes the elements and preserves the undirected cover graph.
pub fn check_tau_automorphism(p: &StiltPoset, table: &IndecTable) -> Result<bool> {
    let perm = tau_permutation(p, table)?;
    let distinct: BTreeSet<usize> = perm.iter().copied().collect();
    if distinct.len() != perm.len() {
        return Ok(false);
    }
    let edges: BTreeSet<(usize, usize)> = p.covers().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    Ok(p.covers().iter().all(|&(u, v)| {
        let (a, b) = (perm[u], perm[v]);
        edges.contains(&(a.min(b), a.max(b)))
    }))
}
