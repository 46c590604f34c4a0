//! Recovering the tilting elements from the bare order of a stilt poset.
//!
//! All functions take and return dense indices of an [`AbstractPoset`];
//! [`ReconstructionResult`] carries the original ids.

use std::collections::{HashSet, VecDeque};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poset::AbstractPoset;

/// Output of [`extract_tilting`], in original element ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconstructionResult {
    /// `I_0 < I_1 < … < I_m`.
    pub tower: Vec<u64>,
    /// `e1_trace[i]` is the set used to step from `I_i`; the last entry is empty.
    pub e1_trace: Vec<Vec<u64>>,
    /// Sorted; the up-set of `I_m`.
    pub tilting: Vec<u64>,
}

/// Atoms `S` with no `X ∈ e(S′)`, `Y ∈ e(S)` (over atoms `S′`) satisfying `X < Y`.
pub fn simple_injectives(p: &AbstractPoset) -> Result<Vec<usize>> {
    let zero = p.minimum()?;
    let atoms = p.predecessors(zero);
    let xs: Vec<usize> = atoms.iter().flat_map(|&s| p.predecessors(s).iter().copied()).collect();
    let out: Vec<usize> = atoms
        .iter()
        .copied()
        .filter(|&s| !p.predecessors(s).iter().any(|&y| xs.iter().any(|&x| p.greater(y, x))))
        .collect();
    if out.is_empty() {
        return Err(Error::Reconstruction("minimum has no simple-injective cover".into()));
    }
    Ok(out)
}

fn check_predecessor(p: &AbstractPoset, i: usize, t: usize) -> Result<()> {
    if p.predecessors(i).contains(&t) {
        Ok(())
    } else {
        Err(Error::NotPredecessor {
            base: p.id(i),
            target: p.id(t),
        })
    }
}

/// Whether some `X ∈ e(T)`, `Y ∈ e(I)`, `Z ∈ e(Y)` have `X > Z`.
pub fn has_xyz(p: &AbstractPoset, i: usize, t: usize) -> Result<bool> {
    check_predecessor(p, i, t)?;
    Ok(p.predecessors(t).iter().any(|&x| {
        p.predecessors(i)
            .iter()
            .any(|&y| p.predecessors(y).iter().any(|&z| p.greater(x, z)))
    }))
}

/// Whether a chain `X_1 ∈ s(I)`, `X_{k+1} ∈ s(X_k)` with witnesses
/// `T_k ∈ e(X_k)∖{X_{k−1}}`, `Y_k ∈ e(T_k)`, `Y_k ≥ T_{k−1}` (`X_0 = I`, `T_0 = T`)
/// reaches a state with no admissible `T_r`.
///
/// Search runs over states `(X_r, X_{r−1}, T_{r−1})`, each visited once.
pub fn has_deadend_family(p: &AbstractPoset, i: usize, t: usize) -> Result<bool> {
    check_predecessor(p, i, t)?;
    let mut seen = HashSet::new();
    let mut queue: VecDeque<(usize, usize, usize)> = p.successors(i).iter().map(|&x| (x, i, t)).collect();
    while let Some(state @ (x, prev, t_prev)) = queue.pop_front() {
        if !seen.insert(state) {
            continue;
        }
        let mut extended = false;
        for &t_r in p.predecessors(x) {
            if t_r == prev || !p.predecessors(t_r).iter().any(|&y| p.geq(y, t_prev)) {
                continue;
            }
            extended = true;
            for &next in p.successors(x) {
                queue.push_back((next, x, t_r));
            }
        }
        if !extended {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `T ∈ e(I)` passing neither test, sorted.
pub fn e1_candidates(p: &AbstractPoset, i: usize) -> Result<Vec<usize>> {
    let flags: Vec<bool> = p
        .predecessors(i)
        .par_iter()
        .map(|&t| Ok(!has_xyz(p, i, t)? && !has_deadend_family(p, i, t)?))
        .collect::<Result<_>>()?;
    let mut out: Vec<usize> = p
        .predecessors(i)
        .iter()
        .zip(flags)
        .filter(|(_, f)| *f)
        .map(|(&t, _)| t)
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Unique minimum of `⋂_{X ∈ e1} {y : y ≥ X}`.
pub fn next_injective(p: &AbstractPoset, e1: &[usize]) -> Result<usize> {
    let Some((&first, rest)) = e1.split_first() else {
        return Err(Error::Reconstruction("empty e1 set".into()));
    };
    let mut common: FixedBitSet = p.upset(first);
    for &x in rest {
        common.intersect_with(&p.upset(x));
    }
    let minimal: Vec<usize> = common
        .ones()
        .filter(|&y| !p.strictly_below(y).ones().any(|w| common.contains(w)))
        .collect();
    match minimal.as_slice() {
        [m] => Ok(*m),
        [] => Err(Error::Reconstruction(format!(
            "no common upper bound of {:?}",
            e1.iter().map(|&v| p.id(v)).collect::<Vec<_>>()
        ))),
        _ => Err(Error::Reconstruction(format!(
            "common upper bounds of {:?} have no minimum",
            e1.iter().map(|&v| p.id(v)).collect::<Vec<_>>()
        ))),
    }
}

/// `(tower, e1_trace, tilting)` in dense indices.
pub type DenseReconstruction = (Vec<usize>, Vec<Vec<usize>>, Vec<usize>);

/// Dense-index form of [`extract_tilting`].
pub fn extract_tilting_dense(p: &AbstractPoset) -> Result<DenseReconstruction> {
    let zero = p.minimum()?;
    let mut tower = vec![zero];
    let mut e1 = simple_injectives(p)?;
    let mut trace = Vec::new();
    while !e1.is_empty() {
        if tower.len() > p.len() {
            return Err(Error::Reconstruction("tower does not terminate".into()));
        }
        let next = next_injective(p, &e1)?;
        log::debug!("tower level {}: e1 = {:?}, next = {}", tower.len() - 1, e1, next);
        trace.push(std::mem::take(&mut e1));
        tower.push(next);
        e1 = e1_candidates(p, next)?;
    }
    trace.push(Vec::new());
    let top = *tower.last().expect("tower is non-empty");
    let tilting = p.upset(top).ones().collect();
    Ok((tower, trace, tilting))
}

pub fn extract_tilting(p: &AbstractPoset) -> Result<ReconstructionResult> {
    let (tower, trace, tilting) = extract_tilting_dense(p)?;
    let ids = |v: &[usize]| v.iter().map(|&x| p.id(x)).collect::<Vec<_>>();
    let mut tilting = ids(&tilting);
    tilting.sort_unstable();
    Ok(ReconstructionResult {
        tower: ids(&tower),
        e1_trace: trace.iter().map(|l| ids(l)).collect(),
        tilting,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // 0 ⋖ S2, S1; S2 ⋖ Λ; S1 ⋖ T′ ⋖ Λ.
    const ZERO: usize = 0;
    const S2: usize = 1;
    const S1: usize = 2;
    const LAMBDA: usize = 3;
    const T: usize = 4;

    fn pentagon() -> AbstractPoset {
        AbstractPoset::from_dense(5, &[(S2, ZERO), (S1, ZERO), (LAMBDA, S2), (T, S1), (LAMBDA, T)]).unwrap()
    }

    #[test]
    fn pentagon_steps() {
        let p = pentagon();
        assert_eq!(simple_injectives(&p).unwrap(), vec![S1]);
        assert!(!has_xyz(&p, S1, T).unwrap());
        assert!(!has_xyz(&p, T, LAMBDA).unwrap());
        assert!(!has_deadend_family(&p, S1, T).unwrap());
        assert!(has_deadend_family(&p, T, LAMBDA).unwrap());
        assert_eq!(e1_candidates(&p, S1).unwrap(), vec![T]);
        assert_eq!(e1_candidates(&p, T).unwrap(), Vec::<usize>::new());
        assert_eq!(next_injective(&p, &[S1]).unwrap(), S1);
        assert_eq!(next_injective(&p, &[T]).unwrap(), T);
        assert_eq!(next_injective(&p, &[S1, S2]).unwrap(), LAMBDA);
    }

    #[test]
    fn pentagon_result() {
        let r = extract_tilting(&pentagon()).unwrap();
        assert_eq!(r.tower, vec![0, S1 as u64, T as u64]);
        assert_eq!(r.tilting, vec![LAMBDA as u64, T as u64]);
        assert_eq!(r.e1_trace, vec![vec![S1 as u64], vec![T as u64], vec![]]);
    }

    #[test]
    fn precondition_errors() {
        let p = pentagon();
        assert!(matches!(
            has_xyz(&p, S1, LAMBDA),
            Err(Error::NotPredecessor { base: 2, target: 3 })
        ));
        let chain = AbstractPoset::from_dense(2, &[(1, 0)]).unwrap();
        assert!(chain.predecessors(1).is_empty());
        assert!(has_deadend_family(&chain, 1, 0).is_err());
    }

    #[test]
    fn two_chain() {
        let chain = AbstractPoset::from_dense(2, &[(1, 0)]).unwrap();
        assert_eq!(simple_injectives(&chain).unwrap(), vec![1]);
        let r = extract_tilting(&chain).unwrap();
        assert_eq!(r.tower, vec![0, 1]);
        assert_eq!(r.tilting, vec![1]);
    }

    #[test]
    fn square() {
        let sq = AbstractPoset::from_dense(4, &[(1, 0), (2, 0), (3, 1), (3, 2)]).unwrap();
        assert_eq!(simple_injectives(&sq).unwrap(), vec![1, 2]);
    }

    #[test]
    fn non_stilt_inputs_fail() {
        let single = AbstractPoset::from_dense(1, &[]).unwrap();
        assert!(matches!(extract_tilting(&single), Err(Error::Reconstruction(_))));
        let two_tops = AbstractPoset::from_dense(4, &[(1, 0), (2, 1), (3, 1)]).unwrap();
        assert!(matches!(next_injective(&two_tops, &[1]), Ok(1)));
        let vee = AbstractPoset::from_dense(3, &[(1, 0), (2, 0)]).unwrap();
        assert!(matches!(next_injective(&vee, &[1, 2]), Err(Error::Reconstruction(_))));
    }

    #[test]
    fn opaque_ids() {
        let p = AbstractPoset::new(vec![50, 40], vec![(40, 50)]).unwrap();
        let r = extract_tilting(&p).unwrap();
        assert_eq!(r.tower, vec![50, 40]);
        assert_eq!(r.tilting, vec![40]);
    }
}
