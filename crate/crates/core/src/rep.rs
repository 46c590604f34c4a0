//! Quiver representations over the rationals: projectives, injectives,
//! Hom/Ext dimensions and the Auslander–Reiten translates.
//!
//! Convention: an arrow `α: a → b` acts `V_a → V_b`, so `P(a)` is spanned by
//! the paths starting at `a` and `I(a)` by the duals of paths ending at `a`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{Rational, RationalMatrix};
use crate::quiver::{euler_form, DimVector, Path, Quiver, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    dims: DimVector,
    /// One `dims[target] × dims[source]` matrix per arrow, indexed by arrow id.
    maps: Vec<RationalMatrix>,
}

#[derive(Serialize)]
struct RepJson<'a> {
    dims: &'a [usize],
    maps: &'a [RationalMatrix],
}

impl Representation {
    /// Checks matrix shapes against the quiver.
    pub fn new(q: &Quiver, dims: DimVector, maps: Vec<RationalMatrix>) -> Result<Self> {
        if dims.len() != q.vertex_count() || maps.len() != q.arrows().len() {
            return Err(Error::QuiverMismatch);
        }
        for (m, a) in maps.iter().zip(q.arrows()) {
            if m.rows() != dims.0[a.target] || m.cols() != dims.0[a.source] {
                return Err(Error::Inconsistent(format!(
                    "arrow matrix is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dims.0[a.target],
                    dims.0[a.source]
                )));
            }
        }
        Ok(Representation { dims, maps })
    }

    pub fn zero(q: &Quiver) -> Self {
        Representation {
            dims: DimVector::zero(q.vertex_count()),
            maps: vec![RationalMatrix::zeros(0, 0); q.arrows().len()],
        }
    }

    pub fn simple(q: &Quiver, v: VertexId) -> Self {
        let dims = DimVector::unit(q.vertex_count(), v);
        let maps = q
            .arrows()
            .iter()
            .map(|a| RationalMatrix::zeros(dims.0[a.target], dims.0[a.source]))
            .collect();
        Representation { dims, maps }
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn map(&self, arrow: usize) -> &RationalMatrix {
        &self.maps[arrow]
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_zero()
    }

    /// Composite map along a path.
    pub fn path_map(&self, p: &Path) -> RationalMatrix {
        let mut m = RationalMatrix::identity(self.dims.0[p.start]);
        for &a in &p.arrows {
            m = &self.maps[a] * &m;
        }
        m
    }

    /// Vector-space dual, a representation of the opposite quiver.
    pub fn dual(&self) -> Representation {
        Representation {
            dims: self.dims.clone(),
            maps: self.maps.iter().map(RationalMatrix::transpose).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&RepJson {
            dims: &self.dims.0,
            maps: &self.maps,
        })
        .expect("representation serializes")
    }

    fn check_quiver(&self, q: &Quiver) -> Result<()> {
        if self.dims.len() != q.vertex_count() || self.maps.len() != q.arrows().len() {
            return Err(Error::QuiverMismatch);
        }
        Ok(())
    }

    /// Socle at `v`: vectors of `V_v` killed by every arrow leaving `v`, as columns.
    fn socle_basis(&self, q: &Quiver, v: VertexId) -> RationalMatrix {
        let d = self.dims.0[v];
        let outs: Vec<&RationalMatrix> = q.out_arrows(v).map(|(id, _)| &self.maps[id]).collect();
        let total: usize = outs.iter().map(|m| m.rows()).sum();
        let mut stacked = RationalMatrix::zeros(total, d);
        let mut r = 0;
        for m in outs {
            stacked.place(r, 0, m);
            r += m.rows();
        }
        RationalMatrix::from_columns(d, &stacked.kernel_basis())
    }
}

/// `P(a)`: basis at `b` is the sorted list of paths `a ⇝ b`.
pub fn indec_projective(q: &Quiver, a: VertexId) -> Result<Representation> {
    if a >= q.vertex_count() {
        return Err(Error::UnknownVertex(a.to_string()));
    }
    let bases = projective_bases(q, a);
    let dims = DimVector(bases.iter().map(Vec::len).collect());
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(id, arr)| {
            let mut m = RationalMatrix::zeros(bases[arr.target].len(), bases[arr.source].len());
            for (c, w) in bases[arr.source].iter().enumerate() {
                let mut ext = w.arrows.clone();
                ext.push(id);
                let r = bases[arr.target]
                    .iter()
                    .position(|p| p.arrows == ext)
                    .expect("extended path is in the basis");
                m.set(r, c, Rational::one());
            }
            m
        })
        .collect();
    Representation::new(q, dims, maps)
}

/// `I(a)`: basis at `b` is dual to the sorted list of paths `b ⇝ a`; an arrow
/// `α` sends `p*` to `q*` when `p = α·q` and to zero otherwise.
pub fn indec_injective(q: &Quiver, a: VertexId) -> Result<Representation> {
    if a >= q.vertex_count() {
        return Err(Error::UnknownVertex(a.to_string()));
    }
    let bases = injective_bases(q, a);
    let dims = DimVector(bases.iter().map(Vec::len).collect());
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(id, arr)| {
            let mut m = RationalMatrix::zeros(bases[arr.target].len(), bases[arr.source].len());
            for (c, p) in bases[arr.source].iter().enumerate() {
                if p.arrows.first() == Some(&id) {
                    let r = bases[arr.target]
                        .iter()
                        .position(|x| x.arrows == p.arrows[1..])
                        .expect("truncated path is in the basis");
                    m.set(r, c, Rational::one());
                }
            }
            m
        })
        .collect();
    Representation::new(q, dims, maps)
}

fn projective_bases(q: &Quiver, a: VertexId) -> Vec<Vec<Path>> {
    let mut bases = vec![Vec::new(); q.vertex_count()];
    for p in q.paths_from(a) {
        bases[p.end].push(p);
    }
    bases
}

fn injective_bases(q: &Quiver, a: VertexId) -> Vec<Vec<Path>> {
    let mut bases = vec![Vec::new(); q.vertex_count()];
    for p in q.paths_to(a) {
        bases[p.start].push(p);
    }
    bases
}

/// Offsets of the per-vertex unknown blocks `f_v` (row-major `dN_v × dM_v`).
fn hom_system(q: &Quiver, m: &Representation, n: &Representation) -> RationalMatrix {
    let dm = &m.dims.0;
    let dn = &n.dims.0;
    let mut offset = Vec::with_capacity(dm.len());
    let mut unknowns = 0;
    for v in 0..dm.len() {
        offset.push(unknowns);
        unknowns += dm[v] * dn[v];
    }
    let equations: usize = q.arrows().iter().map(|a| dn[a.target] * dm[a.source]).sum();
    let mut sys = RationalMatrix::zeros(equations, unknowns);
    let mut row = 0;
    for (id, a) in q.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let ma = &m.maps[id]; // dm[t] × dm[s]
        let na = &n.maps[id]; // dn[t] × dn[s]
                              // (f_t · M_α − N_α · f_s)[i][j] = 0 for i < dn[t], j < dm[s]
        for i in 0..dn[t] {
            for j in 0..dm[s] {
                for k in 0..dm[t] {
                    let c = ma.get(k, j);
                    if !c.is_zero() {
                        let col = offset[t] + i * dm[t] + k;
                        let v = sys.get(row, col) + c;
                        sys.set(row, col, v);
                    }
                }
                for k in 0..dn[s] {
                    let c = na.get(i, k);
                    if !c.is_zero() {
                        let col = offset[s] + k * dm[s] + j;
                        let v = sys.get(row, col) - c;
                        sys.set(row, col, v);
                    }
                }
                row += 1;
            }
        }
    }
    sys
}

pub fn hom_dim(q: &Quiver, m: &Representation, n: &Representation) -> Result<usize> {
    m.check_quiver(q)?;
    n.check_quiver(q)?;
    Ok(hom_system(q, m, n).nullity())
}

/// `dim Ext¹(M, N) = dim Hom(M, N) − ⟨dim M, dim N⟩` (hereditary).
pub fn ext_dim(q: &Quiver, m: &Representation, n: &Representation) -> Result<usize> {
    let hom = hom_dim(q, m, n)? as i64;
    let ext = hom - euler_form(q, &m.dims, &n.dims)?;
    usize::try_from(ext).map_err(|_| Error::NegativeExt(ext))
}

fn ensure_indecomposable(q: &Quiver, m: &Representation) -> Result<()> {
    let end = hom_dim(q, m, m)?;
    if end != 1 {
        return Err(Error::Decomposable(end));
    }
    Ok(())
}

/// A direct sum of indecomposable injectives `⊕ I(a)^{n_a}`, laid out at each
/// vertex `b` as consecutive copies, each spanned by the duals of paths `b ⇝ a`.
struct InjectiveSum {
    /// Target vertex of each copy, in layout order.
    copies: Vec<VertexId>,
    module: Representation,
    /// `offsets[b][k]`: first basis index of copy `k` at vertex `b`.
    offsets: Vec<Vec<usize>>,
    bases: BTreeMap<VertexId, Vec<Vec<Path>>>,
}

impl InjectiveSum {
    fn new(q: &Quiver, copies: Vec<VertexId>) -> Self {
        let mut bases = BTreeMap::new();
        for &a in &copies {
            bases.entry(a).or_insert_with(|| injective_bases(q, a));
        }
        let n = q.vertex_count();
        let mut offsets = vec![Vec::with_capacity(copies.len()); n];
        let mut dims = vec![0; n];
        for b in 0..n {
            for &a in &copies {
                offsets[b].push(dims[b]);
                dims[b] += bases[&a][b].len();
            }
        }
        let singles: BTreeMap<VertexId, Representation> = copies
            .iter()
            .map(|&a| (a, indec_injective(q, a).expect("vertex is valid")))
            .collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(id, arr)| {
                let mut m = RationalMatrix::zeros(dims[arr.target], dims[arr.source]);
                for (k, a) in copies.iter().enumerate() {
                    m.place(offsets[arr.target][k], offsets[arr.source][k], singles[a].map(id));
                }
                m
            })
            .collect();
        InjectiveSum {
            module: Representation::new(q, DimVector(dims), maps).expect("shapes agree"),
            copies,
            offsets,
            bases,
        }
    }

    fn basis(&self, copy: usize, at: VertexId) -> &[Path] {
        &self.bases[&self.copies[copy]][at]
    }
}

/// Injective envelope `ι: M → ⊕ I(a)^{(dim soc M)_a}` built from socle data.
fn injective_envelope(q: &Quiver, m: &Representation) -> Result<(InjectiveSum, Vec<RationalMatrix>)> {
    // For each vertex a, functionals φ on M_a restricting to a basis of (soc M)_a^*.
    let mut functionals: Vec<(VertexId, Vec<Rational>)> = Vec::new();
    for a in q.vertices() {
        let soc = m.socle_basis(q, a);
        if soc.cols() == 0 {
            continue;
        }
        let left = soc
            .left_inverse()
            .ok_or_else(|| Error::Inconsistent("socle basis is not independent".into()))?;
        for r in 0..left.rows() {
            functionals.push((a, left.row(r).to_vec()));
        }
    }
    let sum = InjectiveSum::new(q, functionals.iter().map(|(a, _)| *a).collect());
    // f_b(x) = Σ_{p: b⇝a} φ(M_p x) p*
    let mut iota = Vec::with_capacity(q.vertex_count());
    for b in q.vertices() {
        let mut f = RationalMatrix::zeros(sum.module.dims.0[b], m.dims.0[b]);
        for (k, (_, phi)) in functionals.iter().enumerate() {
            for (j, p) in sum.basis(k, b).iter().enumerate() {
                let mp = m.path_map(p);
                let row = RationalMatrix::from_fn(1, phi.len(), |_, c| phi[c].clone());
                let val = &row * &mp;
                for c in 0..m.dims.0[b] {
                    f.set(sum.offsets[b][k] + j, c, val.get(0, c).clone());
                }
            }
        }
        iota.push(f);
    }
    // Minimality: ι restricted to socles must be injective.
    for a in q.vertices() {
        let soc = m.socle_basis(q, a);
        if (&iota[a] * &soc).rank() != soc.cols() {
            return Err(Error::Inconsistent("injective envelope is not minimal".into()));
        }
    }
    Ok((sum, iota))
}

/// Cokernel of a family of per-vertex maps `f_v: X_v → Y_v` as a representation,
/// together with the per-vertex projections.
fn cokernel_rep(q: &Quiver, y: &Representation, f: &[RationalMatrix]) -> (Representation, Vec<RationalMatrix>) {
    let cokers: Vec<_> = f.iter().map(RationalMatrix::cokernel).collect();
    let dims = DimVector(cokers.iter().map(|c| c.dimension()).collect());
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(id, a)| {
            let t = &cokers[a.target].projection;
            &(t * &y.maps[id]) * &cokers[a.source].section()
        })
        .collect();
    let rep = Representation::new(q, dims, maps).expect("cokernel shapes agree");
    (rep, cokers.into_iter().map(|c| c.projection).collect())
}

/// `τ⁻M` from the minimal injective copresentation `0 → M → I⁰ → I¹`, moved
/// to projectives through `Hom(I(a), I(b)) ≅ Hom(P(a), P(b))` (both spanned
/// by the paths `b ⇝ a`), followed by a cokernel. Zero for injective `M`.
pub fn tau_minus(q: &Quiver, m: &Representation) -> Result<Representation> {
    m.check_quiver(q)?;
    if m.is_zero() {
        return Ok(Representation::zero(q));
    }
    ensure_indecomposable(q, m)?;
    let (i0, iota0) = injective_envelope(q, m)?;
    let (c, proj) = cokernel_rep(q, &i0.module, &iota0);
    if c.is_zero() {
        return Ok(Representation::zero(q));
    }
    let (i1, iota1) = injective_envelope(q, &c)?;
    // g = ι¹ ∘ π : I⁰ → I¹, per vertex.
    let g: Vec<RationalMatrix> = q.vertices().map(|v| &iota1[v] * &proj[v]).collect();

    // Path coordinates: coefficient of p (b ⇝ a) for source copy j = I(a), target copy k = I(b).
    let p0: Vec<VertexId> = i0.copies.clone();
    let p1: Vec<VertexId> = i1.copies.clone();
    let mut coeff: BTreeMap<(usize, usize), Vec<(Path, Rational)>> = BTreeMap::new();
    for (k, &b) in p1.iter().enumerate() {
        let row = i1.offsets[b][k]; // e_b* is the first basis vector of I(b) at b
        debug_assert!(i1.basis(k, b)[0].arrows.is_empty());
        for (j, _) in p0.iter().enumerate() {
            for (idx, p) in i0.basis(j, b).iter().enumerate() {
                let c = g[b].get(row, i0.offsets[b][j] + idx);
                if !c.is_zero() {
                    coeff.entry((j, k)).or_default().push((p.clone(), c.clone()));
                }
            }
        }
    }

    // g' : ⊕P(a) → ⊕P(b); on copy j a path w (a ⇝ x) goes to Σ c_p · (p·w) in copy k.
    let proj_sum = ProjectiveSum::new(q, p1.clone());
    let src_bases: Vec<Vec<Vec<Path>>> = p0.iter().map(|&a| projective_bases(q, a)).collect();
    let mut src_offsets = vec![Vec::with_capacity(p0.len()); q.vertex_count()];
    let mut src_dims = vec![0; q.vertex_count()];
    for x in q.vertices() {
        for bases in &src_bases {
            src_offsets[x].push(src_dims[x]);
            src_dims[x] += bases[x].len();
        }
    }
    let mut gp: Vec<RationalMatrix> = q
        .vertices()
        .map(|x| RationalMatrix::zeros(proj_sum.module.dims.0[x], src_dims[x]))
        .collect();
    for ((j, k), terms) in &coeff {
        for x in q.vertices() {
            for (widx, w) in src_bases[*j][x].iter().enumerate() {
                for (p, c) in terms {
                    let pw = p.concat(w).expect("p ends where w starts");
                    let r = proj_sum.index(*k, &pw);
                    let col = src_offsets[x][*j] + widx;
                    let v = gp[x].get(r, col) + c;
                    gp[x].set(r, col, v);
                }
            }
        }
    }
    let (result, _) = cokernel_rep(q, &proj_sum.module, &gp);
    if !result.is_zero() {
        ensure_indecomposable(q, &result).map_err(|e| Error::Inconsistent(format!("τ⁻ produced a bad module: {e}")))?;
    }
    Ok(result)
}

/// `τM = D τ⁻_{Q^op}(DM)`. Zero for projective `M`.
pub fn tau(q: &Quiver, m: &Representation) -> Result<Representation> {
    m.check_quiver(q)?;
    let op = q.opposite();
    Ok(tau_minus(&op, &m.dual())?.dual())
}

struct ProjectiveSum {
    copies: Vec<VertexId>,
    module: Representation,
    offsets: Vec<Vec<usize>>,
    bases: Vec<Vec<Vec<Path>>>,
}

impl ProjectiveSum {
    fn new(q: &Quiver, copies: Vec<VertexId>) -> Self {
        let bases: Vec<Vec<Vec<Path>>> = copies.iter().map(|&a| projective_bases(q, a)).collect();
        let singles: Vec<Representation> = copies
            .iter()
            .map(|&a| indec_projective(q, a).expect("vertex is valid"))
            .collect();
        let n = q.vertex_count();
        let mut offsets = vec![Vec::with_capacity(copies.len()); n];
        let mut dims = vec![0; n];
        for x in 0..n {
            for b in &bases {
                offsets[x].push(dims[x]);
                dims[x] += b[x].len();
            }
        }
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(id, arr)| {
                let mut m = RationalMatrix::zeros(dims[arr.target], dims[arr.source]);
                for (k, s) in singles.iter().enumerate() {
                    m.place(offsets[arr.target][k], offsets[arr.source][k], s.map(id));
                }
                m
            })
            .collect();
        ProjectiveSum {
            module: Representation::new(q, DimVector(dims), maps).expect("shapes agree"),
            copies,
            offsets,
            bases,
        }
    }

    fn index(&self, copy: usize, p: &Path) -> usize {
        debug_assert_eq!(p.start, self.copies[copy]);
        let local = self.bases[copy][p.end]
            .iter()
            .position(|w| w.arrows == p.arrows)
            .expect("path is in the projective basis");
        self.offsets[p.end][copy] + local
    }
}
