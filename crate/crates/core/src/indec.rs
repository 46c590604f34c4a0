//! The table of indecomposables of a Dynkin quiver, built by knitting the
//! preprojective component with τ⁻, plus the root-system and Coxeter oracles.

use std::collections::{BTreeSet, HashMap};

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{rat, Rational, RationalMatrix};
use crate::quiver::{dynkin_type, euler_form, DimVector, DynkinVerdict, Quiver, VertexId};
use crate::rep::{hom_dim, indec_injective, indec_projective, tau_minus, Representation};

pub type IndecId = usize;

#[derive(Debug, Clone)]
pub struct Indecomposable {
    pub rep: Representation,
    pub projective_at: Option<VertexId>,
    pub injective_at: Option<VertexId>,
    pub simple_at: Option<VertexId>,
    /// Table id of `τM`, `None` when `M` is projective.
    pub tau: Option<IndecId>,
    /// Table id of `τ⁻M`, `None` when `M` is injective.
    pub tau_minus: Option<IndecId>,
}

impl Indecomposable {
    pub fn dims(&self) -> &DimVector {
        self.rep.dims()
    }
}

/// All indecomposables of a Dynkin quiver in canonical order (total dimension,
/// then lexicographic dimension vector) with their Hom and Ext¹ dimensions.
#[derive(Debug, Clone)]
pub struct IndecTable {
    quiver: Quiver,
    indecs: Vec<Indecomposable>,
    hom: Vec<Vec<usize>>,
    ext: Vec<Vec<usize>>,
    by_dims: HashMap<DimVector, IndecId>,
    projective: Vec<IndecId>,
    injective: Vec<IndecId>,
}

impl IndecTable {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn len(&self) -> usize {
        self.indecs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indecs.is_empty()
    }

    pub fn get(&self, id: IndecId) -> &Indecomposable {
        &self.indecs[id]
    }

    pub fn iter(&self) -> impl Iterator<Item = (IndecId, &Indecomposable)> {
        self.indecs.iter().enumerate()
    }

    pub fn hom(&self, x: IndecId, y: IndecId) -> usize {
        self.hom[x][y]
    }

    pub fn ext(&self, x: IndecId, y: IndecId) -> usize {
        self.ext[x][y]
    }

    /// Over a Dynkin quiver an indecomposable is determined by its dimension vector.
    pub fn find(&self, dims: &DimVector) -> Option<IndecId> {
        self.by_dims.get(dims).copied()
    }

    pub fn projective(&self, v: VertexId) -> IndecId {
        self.projective[v]
    }

    pub fn injective(&self, v: VertexId) -> IndecId {
        self.injective[v]
    }

    pub fn simple(&self, v: VertexId) -> Option<IndecId> {
        self.find(&DimVector::unit(self.quiver.vertex_count(), v))
    }
}

fn require_dynkin(q: &Quiver) -> Result<()> {
    match dynkin_type(q) {
        DynkinVerdict::Dynkin(_) => Ok(()),
        DynkinVerdict::NonDynkin(why) => Err(Error::NonDynkin(why)),
    }
}

/// Closes `{P(a)}` under τ⁻ until only injectives remain, then fills the
/// Hom/Ext tables.
pub fn enumerate_indecomposables(q: &Quiver) -> Result<IndecTable> {
    require_dynkin(q)?;
    let n = q.vertex_count();
    // (representation, projective vertex if first in its orbit, index of τ⁻ in `found`)
    let mut found: Vec<(Representation, Option<VertexId>, Option<usize>)> = Vec::new();
    for a in q.vertices() {
        let mut m = indec_projective(q, a)?;
        let mut proj = Some(a);
        loop {
            let next = tau_minus(q, &m)?;
            let idx = found.len();
            let has_next = !next.is_zero();
            found.push((m, proj, has_next.then_some(idx + 1)));
            if !has_next {
                break;
            }
            if found.len() > 4 * n * n * n + 16 {
                return Err(Error::Inconsistent("τ⁻-orbit does not terminate".into()));
            }
            m = next;
            proj = None;
        }
    }
    log::debug!("knitting produced {} indecomposables", found.len());

    let mut order: Vec<usize> = (0..found.len()).collect();
    order.sort_by(|&x, &y| {
        found[x]
            .0
            .dims()
            .canonical_key()
            .cmp(&found[y].0.dims().canonical_key())
    });
    let mut new_id = vec![0; found.len()];
    for (id, &old) in order.iter().enumerate() {
        new_id[old] = id;
    }
    let mut by_dims = HashMap::new();
    for (id, &old) in order.iter().enumerate() {
        if by_dims.insert(found[old].0.dims().clone(), id).is_some() {
            return Err(Error::Inconsistent(format!(
                "dimension vector {} occurs twice",
                found[old].0.dims()
            )));
        }
    }

    let injective_dims: Vec<DimVector> = q
        .vertices()
        .map(|a| indec_injective(q, a).map(|r| r.dims().clone()))
        .collect::<Result<_>>()?;
    let mut indecs: Vec<Indecomposable> = order
        .iter()
        .map(|&old| {
            let (rep, proj, next) = &found[old];
            let dims = rep.dims();
            Indecomposable {
                rep: rep.clone(),
                projective_at: *proj,
                injective_at: injective_dims.iter().position(|d| d == dims),
                simple_at: (dims.total() == 1).then(|| dims.0.iter().position(|&c| c == 1).unwrap()),
                tau: None,
                tau_minus: next.map(|i| new_id[i]),
            }
        })
        .collect();
    for id in 0..indecs.len() {
        if let Some(next) = indecs[id].tau_minus {
            indecs[next].tau = Some(id);
        }
    }
    for (id, ind) in indecs.iter().enumerate() {
        if ind.injective_at.is_some() != ind.tau_minus.is_none() {
            return Err(Error::Inconsistent(format!(
                "indecomposable {} has τ⁻ {:?} but injective flag {:?}",
                ind.dims(),
                ind.tau_minus,
                ind.injective_at
            )));
        }
        if ind.projective_at.is_some() != ind.tau.is_none() {
            return Err(Error::Inconsistent(format!("indecomposable {id} has inconsistent τ")));
        }
    }
    let mut projective = vec![usize::MAX; n];
    let mut injective = vec![usize::MAX; n];
    for (id, ind) in indecs.iter().enumerate() {
        if let Some(a) = ind.projective_at {
            projective[a] = id;
        }
        if let Some(a) = ind.injective_at {
            injective[a] = id;
        }
    }
    if injective.contains(&usize::MAX) {
        return Err(Error::Inconsistent("some injective was not reached by knitting".into()));
    }

    let count = indecs.len();
    let hom: Vec<Vec<usize>> = (0..count)
        .into_par_iter()
        .map(|x| {
            (0..count)
                .map(|y| hom_dim(q, &indecs[x].rep, &indecs[y].rep))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut ext = vec![vec![0; count]; count];
    for x in 0..count {
        for y in 0..count {
            let e = hom[x][y] as i64 - euler_form(q, indecs[x].dims(), indecs[y].dims())?;
            ext[x][y] = usize::try_from(e).map_err(|_| Error::NegativeExt(e))?;
        }
        if hom[x][x] != 1 || ext[x][x] != 0 {
            return Err(Error::Inconsistent(format!(
                "indecomposable {} is not exceptional (End {}, Ext {})",
                indecs[x].dims(),
                hom[x][x],
                ext[x][x]
            )));
        }
    }

    Ok(IndecTable {
        quiver: q.clone(),
        indecs,
        hom,
        ext,
        by_dims,
        projective,
        injective,
    })
}

/// Positive roots of the underlying diagram by closing the simple roots under
/// simple reflections. Independent of any representation.
pub fn positive_roots(q: &Quiver) -> Result<Vec<DimVector>> {
    require_dynkin(q)?;
    let n = q.vertex_count();
    let mut form = vec![vec![0i64; n]; n];
    for (v, row) in form.iter_mut().enumerate() {
        row[v] = 2;
    }
    for a in q.arrows() {
        form[a.source][a.target] -= 1;
        form[a.target][a.source] -= 1;
    }
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue: Vec<Vec<i64>> = (0..n)
        .map(|v| {
            let mut e = vec![0; n];
            e[v] = 1;
            e
        })
        .collect();
    while let Some(root) = queue.pop() {
        if !seen.insert(root.clone()) {
            continue;
        }
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| root[j] * form[j][i]).sum();
            let mut refl = root.clone();
            refl[i] -= pairing;
            if refl.iter().all(|&c| c >= 0) && refl.iter().any(|&c| c > 0) && !seen.contains(&refl) {
                queue.push(refl);
            }
        }
    }
    let mut roots: Vec<DimVector> = seen
        .into_iter()
        .map(|r| DimVector(r.into_iter().map(|c| c as usize).collect()))
        .collect();
    roots.sort_by(|a, b| a.canonical_key().cmp(&b.canonical_key()));
    Ok(roots)
}

/// Cartan matrix `C` with column `a` equal to `dim P(a)` (path counts).
pub fn cartan_matrix(q: &Quiver) -> RationalMatrix {
    let n = q.vertex_count();
    let mut c = RationalMatrix::zeros(n, n);
    for a in q.vertices() {
        for p in q.paths_from(a) {
            let v = c.get(p.end, a) + rat(1);
            c.set(p.end, a, v);
        }
    }
    c
}

/// Coxeter transformation `Φ = −Cᵀ C⁻¹`, with `dim τM = Φ(dim M)` for
/// non-projective indecomposables.
pub fn coxeter_matrix(q: &Quiver) -> RationalMatrix {
    let c = cartan_matrix(q);
    let inv = c
        .inverse()
        .expect("Cartan matrix of an acyclic quiver is unitriangular");
    negate(&(&c.transpose() * &inv))
}

/// `Φ⁻¹ = −C C⁻ᵀ`.
pub fn coxeter_inverse(q: &Quiver) -> RationalMatrix {
    let c = cartan_matrix(q);
    let inv_t = c.transpose().inverse().expect("Cartan matrix is invertible");
    negate(&(&c * &inv_t))
}

fn negate(m: &RationalMatrix) -> RationalMatrix {
    RationalMatrix::from_fn(m.rows(), m.cols(), |r, c| -m.get(r, c).clone())
}

/// Applies an integer matrix to a dimension vector; `None` if any entry is negative.
pub fn apply_to_dims(m: &RationalMatrix, d: &DimVector) -> Option<DimVector> {
    let v: Vec<Rational> = d.0.iter().map(|&c| rat(c as i64)).collect();
    let out = m.mul_vec(&v);
    out.into_iter()
        .map(|x| {
            if x < Rational::zero() || !x.is_integer() {
                None
            } else {
                x.to_integer().try_into().ok()
            }
        })
        .collect::<Option<Vec<usize>>>()
        .map(DimVector)
}
