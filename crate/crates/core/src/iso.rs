//! Order isomorphisms between finite posets.

use std::collections::VecDeque;

use crate::error::Result;
use crate::poset::AbstractPoset;
use crate::reconstruct::extract_tilting_dense;

/// `(height, depth, in-degree, out-degree)`; preserved by every isomorphism.
type Signature = (usize, usize, usize, usize);

fn signatures(p: &AbstractPoset) -> Vec<Signature> {
    let n = p.len();
    // covers are sorted by greater element, not topologically; iterate to a fixpoint
    let mut height = vec![0usize; n];
    let mut depth = vec![0usize; n];
    let mut changed = true;
    while changed {
        changed = false;
        for &(u, v) in p.covers() {
            if height[u] < height[v] + 1 {
                height[u] = height[v] + 1;
                changed = true;
            }
            if depth[v] < depth[u] + 1 {
                depth[v] = depth[u] + 1;
                changed = true;
            }
        }
    }
    (0..n)
        .map(|v| (height[v], depth[v], p.predecessors(v).len(), p.successors(v).len()))
        .collect()
}

/// BFS order over the undirected cover graph, so each vertex after the first
/// in its component has an earlier neighbour.
fn search_order(p: &AbstractPoset) -> Vec<usize> {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in p.predecessors(v).iter().chain(p.successors(v)) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

struct Search<'a> {
    p1: &'a AbstractPoset,
    p2: &'a AbstractPoset,
    sig1: Vec<Signature>,
    sig2: Vec<Signature>,
    order: Vec<usize>,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
    limit: usize,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn consistent(&self, v: usize, w: usize) -> bool {
        let (p1, p2) = (self.p1, self.p2);
        p1.predecessors(v).iter().all(|&u| match self.map[u] {
            Some(mu) => p2.predecessors(w).contains(&mu),
            None => true,
        }) && p1.successors(v).iter().all(|&u| match self.map[u] {
            Some(mu) => p2.successors(w).contains(&mu),
            None => true,
        }) && self.mapped_neighbours_agree(v, w)
    }

    /// Mapped neighbours of `w` must be images of neighbours of `v`.
    fn mapped_neighbours_agree(&self, v: usize, w: usize) -> bool {
        let count1 = |list: &[usize]| list.iter().filter(|&&u| self.map[u].is_some()).count();
        let count2 = |list: &[usize]| list.iter().filter(|&&u| self.used[u]).count();
        count1(self.p1.predecessors(v)) == count2(self.p2.predecessors(w))
            && count1(self.p1.successors(v)) == count2(self.p2.successors(w))
    }

    fn run(&mut self, depth: usize) {
        if self.found.len() >= self.limit {
            return;
        }
        if depth == self.order.len() {
            self.found
                .push(self.map.iter().map(|m| m.expect("complete map")).collect());
            return;
        }
        let v = self.order[depth];
        for w in 0..self.p2.len() {
            if self.used[w] || self.sig1[v] != self.sig2[w] || !self.consistent(v, w) {
                continue;
            }
            self.map[v] = Some(w);
            self.used[w] = true;
            self.run(depth + 1);
            self.map[v] = None;
            self.used[w] = false;
            if self.found.len() >= self.limit {
                return;
            }
        }
    }
}

/// Up to `limit` isomorphisms `p1 → p2` as dense-index maps; exhaustive when
/// fewer than `limit` exist.
pub fn poset_isomorphisms(p1: &AbstractPoset, p2: &AbstractPoset, limit: usize) -> Vec<Vec<usize>> {
    if limit == 0 || p1.len() != p2.len() || p1.covers().len() != p2.covers().len() {
        return Vec::new();
    }
    let sig1 = signatures(p1);
    let sig2 = signatures(p2);
    let mut s1 = sig1.clone();
    let mut s2 = sig2.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return Vec::new();
    }
    let mut search = Search {
        p1,
        p2,
        sig1,
        sig2,
        order: search_order(p1),
        map: vec![None; p1.len()],
        used: vec![false; p2.len()],
        limit,
        found: Vec::new(),
    };
    search.run(0);
    search.found
}

/// Whether `map` sends the reconstructed tilting set of `p1` onto that of `p2`.
pub fn transfers_tilting(p1: &AbstractPoset, p2: &AbstractPoset, map: &[usize]) -> Result<bool> {
    let (_, _, t1) = extract_tilting_dense(p1)?;
    let (_, _, t2) = extract_tilting_dense(p2)?;
    let mut image: Vec<usize> = t1.iter().map(|&x| map[x]).collect();
    image.sort_unstable();
    Ok(image == t2)
}
