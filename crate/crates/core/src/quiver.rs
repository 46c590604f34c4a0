//! Finite acyclic quivers: the text format, Dynkin classification, the
//! source-peeling filtration and the Euler form.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Dense vertex index, in declaration order.
pub type VertexId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub source: VertexId,
    pub target: VertexId,
}

/// A finite acyclic quiver. Arrow ids are positions in [`Quiver::arrows`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    names: Vec<String>,
    arrows: Vec<Arrow>,
    connected: bool,
}

/// A path `start ⇝ end` given by its sequence of arrow ids. The empty
/// sequence is the trivial path at `start`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub start: VertexId,
    pub end: VertexId,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Self {
        Path {
            start: v,
            end: v,
            arrows: Vec::new(),
        }
    }

    /// `self · other` (self first). `None` when the paths do not compose.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.end != other.start {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            start: self.start,
            end: other.end,
            arrows,
        })
    }

    fn sort_key(&self) -> (usize, &[usize]) {
        (self.arrows.len(), &self.arrows)
    }
}

impl Quiver {
    /// Builds and validates a quiver from names and arrows given as index pairs.
    pub fn new(names: Vec<String>, arrows: Vec<(VertexId, VertexId)>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::parse(0, "empty vertex list"));
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::parse(0, format!("duplicate vertex name `{name}`")));
            }
        }
        let arrows: Vec<Arrow> = arrows
            .into_iter()
            .map(|(source, target)| Arrow { source, target })
            .collect();
        for a in &arrows {
            if a.source >= names.len() || a.target >= names.len() {
                return Err(Error::UnknownVertex(format!("{}/{}", a.source, a.target)));
            }
            if a.source == a.target {
                return Err(Error::parse(0, format!("loop at vertex `{}`", names[a.source])));
            }
        }
        let q = Quiver {
            connected: false,
            names,
            arrows,
        };
        if q.topological_order().is_none() {
            return Err(Error::parse(0, "directed cycle"));
        }
        let connected = q.compute_connected();
        Ok(Quiver { connected, ..q })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.names.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn is_source(&self, v: VertexId) -> bool {
        self.arrows.iter().all(|a| a.target != v)
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.arrows.iter().all(|a| a.source != v)
    }

    pub fn out_arrows(&self, v: VertexId) -> impl Iterator<Item = (usize, &Arrow)> {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.source == v)
    }

    fn topological_order(&self) -> Option<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut queue: VecDeque<VertexId> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    queue.push_back(a.target);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    fn compute_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for a in &self.arrows {
                let w = if a.source == v {
                    a.target
                } else if a.target == v {
                    a.source
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// All paths starting at `v`, sorted by length and then arrow sequence.
    pub fn paths_from(&self, v: VertexId) -> Vec<Path> {
        let mut out = vec![Path::trivial(v)];
        let mut i = 0;
        while i < out.len() {
            let p = out[i].clone();
            for (id, a) in self.out_arrows(p.end) {
                let mut arrows = p.arrows.clone();
                arrows.push(id);
                out.push(Path {
                    start: v,
                    end: a.target,
                    arrows,
                });
            }
            i += 1;
        }
        out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        out
    }

    /// All paths ending at `v`, sorted like [`Quiver::paths_from`].
    pub fn paths_to(&self, v: VertexId) -> Vec<Path> {
        let mut out = vec![Path::trivial(v)];
        let mut i = 0;
        while i < out.len() {
            let p = out[i].clone();
            for (id, a) in self.arrows.iter().enumerate() {
                if a.target == p.start {
                    let mut arrows = vec![id];
                    arrows.extend_from_slice(&p.arrows);
                    out.push(Path {
                        start: a.source,
                        end: v,
                        arrows,
                    });
                }
            }
            i += 1;
        }
        out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        out
    }

    /// Paths `from ⇝ to`, sorted.
    pub fn paths_between(&self, from: VertexId, to: VertexId) -> Vec<Path> {
        self.paths_from(from).into_iter().filter(|p| p.end == to).collect()
    }

    /// The same quiver with every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            names: self.names.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    source: a.target,
                    target: a.source,
                })
                .collect(),
            connected: self.connected,
        }
    }

    /// Full subquiver on `subset`. Vertices keep their relative order, so new
    /// id `k` is the `k`-th smallest element of `subset`.
    pub fn full_subquiver(&self, subset: &BTreeSet<VertexId>) -> Result<Quiver> {
        if let Some(&bad) = subset.iter().find(|&&v| v >= self.vertex_count()) {
            return Err(Error::UnknownVertex(bad.to_string()));
        }
        let index: Vec<Option<usize>> = self.vertices().map(|v| subset.iter().position(|&s| s == v)).collect();
        let names = subset.iter().map(|&v| self.names[v].clone()).collect();
        let arrows = self
            .arrows
            .iter()
            .filter_map(|a| Some((index[a.source]?, index[a.target]?)))
            .collect();
        Quiver::new(names, arrows)
    }

    /// Serializes to the text format. Arrows appear in id order.
    pub fn serialize(&self) -> String {
        let mut out = String::from("vertices:");
        for name in &self.names {
            out.push(' ');
            out.push_str(name);
        }
        out.push('\n');
        for a in &self.arrows {
            out.push_str(&self.names[a.source]);
            out.push_str(" -> ");
            out.push_str(&self.names[a.target]);
            out.push('\n');
        }
        out
    }
}

fn valid_token(tok: &str) -> bool {
    !tok.is_empty() && !tok.contains("->") && !tok.starts_with('#') && !tok.contains(':')
}

/// Parses the quiver text format:
///
/// ```text
/// # comment
/// vertices: 1 2 3
/// 1 -> 2
/// 3 -> 2
/// ```
///
/// Repeated arrow lines give parallel arrows.
pub fn parse_quiver(text: &str) -> Result<Quiver> {
    let mut names: Option<Vec<String>> = None;
    let mut arrows = Vec::new();
    let mut arrow_lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some(vertex_names) = names.as_ref() else {
            let rest = line
                .strip_prefix("vertices:")
                .ok_or_else(|| Error::parse(lineno, "expected `vertices: <names>`"))?;
            let toks: Vec<String> = rest.split_whitespace().map(str::to_owned).collect();
            if toks.is_empty() {
                return Err(Error::parse(lineno, "empty vertex list"));
            }
            let mut seen = BTreeSet::new();
            for t in &toks {
                if !valid_token(t) {
                    return Err(Error::parse(lineno, format!("invalid vertex name `{t}`")));
                }
                if !seen.insert(t.as_str()) {
                    return Err(Error::parse(lineno, format!("duplicate vertex name `{t}`")));
                }
            }
            names = Some(toks);
            continue;
        };
        let (src, dst) = line
            .split_once("->")
            .map(|(a, b)| (a.trim(), b.trim()))
            .filter(|(a, b)| valid_token(a) && valid_token(b))
            .filter(|(a, b)| !a.contains(char::is_whitespace) && !b.contains(char::is_whitespace))
            .ok_or_else(|| Error::parse(lineno, format!("malformed arrow line `{line}`")))?;
        let lookup = |tok: &str| {
            vertex_names
                .iter()
                .position(|n| n == tok)
                .ok_or_else(|| Error::parse(lineno, format!("arrow references unknown vertex `{tok}`")))
        };
        let (s, t) = (lookup(src)?, lookup(dst)?);
        if s == t {
            return Err(Error::parse(lineno, format!("loop at vertex `{src}`")));
        }
        arrows.push((s, t));
        arrow_lines.push(lineno);
    }
    let Some(names) = names else {
        return Err(Error::parse(text.lines().count().max(1), "missing `vertices:` line"));
    };
    match Quiver::new(names, arrows.clone()) {
        Ok(q) => Ok(q),
        Err(Error::Parse { message, .. }) if message == "directed cycle" => {
            let line = cycle_witness_line(&arrows, &arrow_lines);
            Err(Error::parse(line, "directed cycle"))
        }
        Err(e) => Err(e),
    }
}

/// Line of the first arrow whose endpoints both survive source peeling.
fn cycle_witness_line(arrows: &[(VertexId, VertexId)], lines: &[usize]) -> usize {
    let n = arrows.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
    let mut alive = vec![true; n];
    loop {
        let peel: Vec<usize> = (0..n)
            .filter(|&v| alive[v] && !arrows.iter().any(|&(s, t)| t == v && alive[s]))
            .collect();
        if peel.is_empty() {
            break;
        }
        for v in peel {
            alive[v] = false;
        }
    }
    arrows
        .iter()
        .zip(lines)
        .find(|((s, t), _)| alive[*s] && alive[*t])
        .map(|(_, &l)| l)
        .unwrap_or(0)
}

/// Dimension vector over a quiver with `len()` vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn unit(n: usize, v: VertexId) -> Self {
        let mut d = vec![0; n];
        d[v] = 1;
        DimVector(d)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn support(&self) -> BTreeSet<VertexId> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(v, _)| v)
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Canonical order used for indecomposables: total dimension, then lexicographic.
    pub fn canonical_key(&self) -> (usize, &[usize]) {
        (self.total(), &self.0)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `⟨d, e⟩ = Σ_a d_a e_a − Σ_{α: a→b} d_a e_b`.
pub fn euler_form(q: &Quiver, d: &DimVector, e: &DimVector) -> Result<i64> {
    if d.len() != q.vertex_count() || e.len() != q.vertex_count() {
        return Err(Error::QuiverMismatch);
    }
    let diag: i64 = d.0.iter().zip(&e.0).map(|(&x, &y)| (x * y) as i64).sum();
    let off: i64 = q.arrows().iter().map(|a| (d.0[a.source] * e.0[a.target]) as i64).sum();
    Ok(diag - off)
}

/// Chain `Q(0)_0 ⊂ Q(1)_0 ⊂ … ⊂ Q(m)_0` obtained by repeatedly adding the
/// sources of what is left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    pub levels: Vec<BTreeSet<VertexId>>,
}

impl Filtration {
    /// `m`, the number of peeling steps.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, i: usize) -> &BTreeSet<VertexId> {
        &self.levels[i.min(self.depth())]
    }
}

pub fn source_filtration(q: &Quiver) -> Filtration {
    let mut levels = vec![BTreeSet::new()];
    loop {
        let prev = levels.last().unwrap();
        if prev.len() == q.vertex_count() {
            break;
        }
        let mut next = prev.clone();
        for v in q.vertices().filter(|v| !prev.contains(v)) {
            let is_source = q.arrows().iter().all(|a| a.target != v || prev.contains(&a.source));
            if is_source {
                next.insert(v);
            }
        }
        levels.push(next);
    }
    Filtration { levels }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl DynkinType {
    pub fn positive_root_count(self) -> usize {
        match self {
            DynkinType::A(n) => n * (n + 1) / 2,
            DynkinType::D(n) => n * (n - 1),
            DynkinType::E(6) => 36,
            DynkinType::E(7) => 63,
            DynkinType::E(_) => 120,
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

/// Classification of the underlying graph, one type per connected component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DynkinVerdict {
    Dynkin(Vec<DynkinType>),
    NonDynkin(String),
}

impl DynkinVerdict {
    pub fn is_dynkin(&self) -> bool {
        matches!(self, DynkinVerdict::Dynkin(_))
    }
}

impl fmt::Display for DynkinVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinVerdict::Dynkin(types) => {
                let parts: Vec<String> = types.iter().map(|t| t.to_string()).collect();
                write!(f, "{}", parts.join(" x "))
            }
            DynkinVerdict::NonDynkin(why) => write!(f, "non-Dynkin: {why}"),
        }
    }
}

pub fn dynkin_type(q: &Quiver) -> DynkinVerdict {
    let n = q.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for a in q.arrows() {
        if adj[a.source].contains(&a.target) {
            return DynkinVerdict::NonDynkin(format!(
                "multiple edges between `{}` and `{}`",
                q.name(a.source),
                q.name(a.target)
            ));
        }
        adj[a.source].push(a.target);
        adj[a.target].push(a.source);
    }
    let mut comp = vec![usize::MAX; n];
    let mut types = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut members = vec![start];
        comp[start] = start;
        let mut i = 0;
        while i < members.len() {
            let v = members[i];
            for &w in &adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = start;
                    members.push(w);
                }
            }
            i += 1;
        }
        match classify_tree(&adj, &members) {
            Some(t) => types.push(t),
            None => {
                return DynkinVerdict::NonDynkin(format!(
                    "component containing `{}` is not a Dynkin diagram",
                    q.name(start)
                ))
            }
        }
    }
    DynkinVerdict::Dynkin(types)
}

fn classify_tree(adj: &[Vec<VertexId>], members: &[VertexId]) -> Option<DynkinType> {
    let k = members.len();
    let edges: usize = members.iter().map(|&v| adj[v].len()).sum::<usize>() / 2;
    if edges + 1 != k {
        return None;
    }
    let branch: Vec<VertexId> = members.iter().copied().filter(|&v| adj[v].len() > 2).collect();
    match branch.as_slice() {
        [] => Some(DynkinType::A(k)),
        [center] if adj[*center].len() == 3 => {
            let mut arms: Vec<usize> = adj[*center]
                .iter()
                .map(|&first| {
                    let (mut prev, mut cur, mut len) = (*center, first, 1);
                    while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Some(DynkinType::D(k)),
                [1, 2, 2] => Some(DynkinType::E(6)),
                [1, 2, 3] => Some(DynkinType::E(7)),
                [1, 2, 4] => Some(DynkinType::E(8)),
                _ => None,
            }
        }
        _ => None,
    }
}
