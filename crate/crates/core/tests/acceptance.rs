//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the test
//! fails if any criterion fails. Criterion 9 (E6) runs only with the
//! `slow-tests` feature or `TILTLAB_SLOW_TESTS=1`.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use tiltlab::indec::{apply_to_dims, coxeter_inverse, enumerate_indecomposables, positive_roots, IndecTable};
use tiltlab::io::strip_labels;
use tiltlab::iso::poset_isomorphisms;
use tiltlab::pipeline::{build, check_levels, verify_poset};
use tiltlab::quiver::{euler_form, parse_quiver, DimVector, Quiver};
use tiltlab::reconstruct::extract_tilting_dense;
use tiltlab::rep::{hom_dim, tau};
use tiltlab::stilt::{check_tau_automorphism, tau_permutation, StiltPoset};

use common::{a_n, catalan, d4, e6, fixtures, A5_SAMPLE};

const BUDGET_A2: Duration = Duration::from_secs(1);
const BUDGET_CATALAN: Duration = Duration::from_secs(10);
const BUDGET_D4: Duration = Duration::from_secs(60);
const BUDGET_E6: Duration = Duration::from_secs(600);

type Outcome = Result<(), String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration) -> Outcome {
    let spent = start.elapsed();
    ensure(spent <= budget, || format!("took {spent:?}, budget {budget:?}"))
}

fn built(q: &Quiver) -> Result<(IndecTable, StiltPoset), String> {
    build(q).map_err(|e| e.to_string())
}

fn degrees(p: &StiltPoset) -> Vec<usize> {
    let mut deg = vec![0; p.len()];
    for &(u, v) in p.covers() {
        deg[u] += 1;
        deg[v] += 1;
    }
    deg
}

/// Element whose summands have exactly these dimension vectors.
fn element(table: &IndecTable, p: &StiltPoset, dims: &[&[usize]]) -> usize {
    let ids: BTreeSet<usize> = dims
        .iter()
        .map(|d| table.find(&DimVector(d.to_vec())).unwrap())
        .collect();
    p.find_summands(&ids).unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (table, p) = built(&parse_quiver("vertices: 1 2\n1 -> 2").unwrap())?;
    ensure(p.len() == 5, || format!("{} elements", p.len()))?;
    // connected, 2-regular, 5 vertices: a 5-cycle
    ensure(p.covers().len() == 5 && degrees(&p).iter().all(|&d| d == 2), || {
        "cover graph is not a 5-cycle".into()
    })?;
    let zero = element(&table, &p, &[]);
    let s1 = element(&table, &p, &[&[1, 0]]);
    let lambda = element(&table, &p, &[&[1, 1], &[0, 1]]);
    let t = element(&table, &p, &[&[1, 1], &[1, 0]]);
    let expected: BTreeSet<usize> = [lambda, t].into();
    ensure(*p.tilting() == expected, || {
        format!("labeled tilting {:?}", p.tilting())
    })?;
    let (tower, _, tilting) = extract_tilting_dense(&strip_labels(&p)).map_err(|e| e.to_string())?;
    ensure(tilting.into_iter().collect::<BTreeSet<_>>() == expected, || {
        "reconstructed tilting differs".into()
    })?;
    ensure(tower == vec![zero, s1, t], || format!("tower {tower:?}"))?;
    within(start, BUDGET_A2)
}

/// Support tilting modules by scanning every subset of indecomposables.
fn brute_force_count(table: &IndecTable) -> usize {
    let n = table.len();
    (0u32..1 << n)
        .filter(|&mask| {
            let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let rigid = members.iter().all(|&x| members.iter().all(|&y| table.ext(x, y) == 0));
            let support: BTreeSet<usize> = members.iter().flat_map(|&x| table.get(x).dims().support()).collect();
            rigid && members.len() == support.len()
        })
        .count()
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    for n in 1..=5usize {
        let masks: Vec<u32> = if n <= 4 {
            (0..1 << (n - 1)).collect()
        } else {
            A5_SAMPLE.to_vec()
        };
        let expected = catalan(n as u64 + 1) as usize;
        for mask in masks {
            let (table, p) = built(&a_n(n, mask))?;
            ensure(p.len() == expected, || {
                format!("A{n}/{mask:b}: {} elements, expected {expected}", p.len())
            })?;
            if n <= 3 {
                let brute = brute_force_count(&table);
                ensure(brute == p.len(), || format!("A{n}/{mask:b}: subset scan gives {brute}"))?;
            }
        }
    }
    within(start, BUDGET_CATALAN)
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    for mask in 0..8 {
        let q = d4(mask);
        let (table, p) = built(&q)?;
        let roots = positive_roots(&q).map_err(|e| e.to_string())?.len();
        ensure(table.len() == 12 && roots == 12, || {
            format!("D4/{mask:b}: {} indecomposables, {roots} roots", table.len())
        })?;
        ensure(p.len() == 50, || format!("D4/{mask:b}: {} elements", p.len()))?;
        let report = verify_poset(&p).map_err(|e| e.to_string())?;
        ensure(report.matches(), || format!("D4/{mask:b}: {report:?}"))?;
    }
    within(start, BUDGET_D4)
}

fn criterion_4() -> Outcome {
    for (name, q) in fixtures() {
        let (_, p) = built(&q)?;
        let rank = q.vertex_count();
        ensure(degrees(&p).iter().all(|&d| d == rank), || {
            format!("{name}: cover graph not {rank}-regular")
        })?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    for (name, q) in fixtures() {
        let (table, p) = built(&q)?;
        ensure(check_tau_automorphism(&p, &table).map_err(|e| e.to_string())?, || {
            format!("{name}: not an automorphism")
        })?;
    }
    let (table, p) = built(&parse_quiver("vertices: 1 2\n1 -> 2").unwrap())?;
    let perm = tau_permutation(&p, &table).map_err(|e| e.to_string())?;
    let zero = element(&table, &p, &[]);
    let s1 = element(&table, &p, &[&[1, 0]]);
    let s2 = element(&table, &p, &[&[0, 1]]);
    let lambda = element(&table, &p, &[&[1, 1], &[0, 1]]);
    let t = element(&table, &p, &[&[1, 1], &[1, 0]]);
    // Λ → 0 → T′ → S(2) → S(1) → Λ
    let cycle = [lambda, zero, t, s2, s1, lambda];
    ensure(cycle.windows(2).all(|w| perm[w[0]] == w[1]), || {
        format!("A2 permutation {perm:?}")
    })
}

fn criterion_6() -> Outcome {
    for (name, q) in fixtures() {
        let table = enumerate_indecomposables(&q).map_err(|e| e.to_string())?;
        let phi_inv = coxeter_inverse(&q);
        for (x, m) in table.iter() {
            ensure(table.hom(x, x) == 1, || {
                format!("{name}: End of {} is not 1-dimensional", m.dims())
            })?;
            let translate = if m.projective_at.is_none() {
                Some(tau(&q, &m.rep).map_err(|e| e.to_string())?)
            } else {
                None
            };
            if m.injective_at.is_none() {
                let image = m.tau_minus.map(|y| table.get(y).dims().clone());
                let expected = apply_to_dims(&phi_inv, m.dims());
                ensure(image.is_some() && image == expected, || {
                    format!("{name}: dim τ⁻{} is {image:?}, Coxeter gives {expected:?}", m.dims())
                })?;
            }
            for (y, n) in table.iter() {
                let euler = euler_form(&q, m.dims(), n.dims()).map_err(|e| e.to_string())?;
                let lhs = table.hom(x, y) as i64 - table.ext(x, y) as i64;
                ensure(lhs == euler, || {
                    format!("{name}: hom − ext = {lhs}, Euler form {euler}")
                })?;
                if let Some(t) = &translate {
                    let h = hom_dim(&q, &n.rep, t).map_err(|e| e.to_string())?;
                    ensure(table.ext(x, y) == h, || {
                        format!("{name}: ext({}, {}) ≠ hom(N, τM)", m.dims(), n.dims())
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    for (name, q) in fixtures() {
        let (table, p) = built(&q)?;
        check_levels(&p, &table, true).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(())
}

fn transfer(q1: &Quiver, q2: &Quiver) -> Outcome {
    let (_, p1) = built(q1)?;
    let (_, p2) = built(q2)?;
    let maps = poset_isomorphisms(&strip_labels(&p1), &strip_labels(&p2), usize::MAX);
    ensure(!maps.is_empty(), || "no isomorphism found".into())?;
    for map in maps {
        let image: BTreeSet<usize> = p1.tilting().iter().map(|&x| map[x]).collect();
        ensure(image == *p2.tilting(), || {
            format!("mapping {map:?} does not preserve tilting")
        })?;
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let pairs = [
        ("vertices: 1 2\n1 -> 2", "vertices: 1 2\n2 -> 1"),
        ("vertices: 1 2 3\n1 -> 2\n2 -> 3", "vertices: 3 1 2\n3 -> 2\n2 -> 1"),
        ("vertices: 1 2 3\n1 -> 2\n2 -> 3", "vertices: c a b\nb -> a\nc -> b"),
        (
            "vertices: 1 2 3 4\n1 -> 2\n3 -> 2\n4 -> 2",
            "vertices: x c y z\nz -> c\nx -> c\ny -> c",
        ),
    ];
    for (a, b) in pairs {
        transfer(&parse_quiver(a).unwrap(), &parse_quiver(b).unwrap()).map_err(|e| format!("{a:?} vs {b:?}: {e}"))?;
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let q = e6();
    let (table, p) = built(&q)?;
    ensure(table.len() == 36, || format!("{} indecomposables", table.len()))?;
    ensure(p.len() == 833, || format!("{} elements", p.len()))?;
    let report = verify_poset(&p).map_err(|e| e.to_string())?;
    ensure(report.matches(), || format!("{report:?}"))?;
    check_levels(&p, &table, false).map_err(|e| e.to_string())?;
    within(start, BUDGET_E6)
}

/// Writes past the test harness's output capture so the lines always appear.
fn report(line: String) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
}

fn slow_enabled() -> bool {
    cfg!(feature = "slow-tests") || std::env::var("TILTLAB_SLOW_TESTS").is_ok_and(|v| v == "1")
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        (1, "A2 end-to-end", criterion_1),
        (2, "Catalan counts for A1..A5", criterion_2),
        (3, "D4 orientations", criterion_3),
        (4, "cover graph regularity", criterion_4),
        (5, "Tau automorphism", criterion_5),
        (6, "representation identities", criterion_6),
        (7, "per-level classification", criterion_7),
        (8, "isomorphism transfer", criterion_8),
    ];
    let mut failed = Vec::new();
    for (n, title, run) in criteria {
        match run() {
            Ok(()) => report(format!("PASS criterion {n}: {title}")),
            Err(e) => {
                report(format!("FAIL criterion {n}: {title}: {e}"));
                failed.push(n);
            }
        }
    }
    if slow_enabled() {
        match criterion_9() {
            Ok(()) => report("PASS criterion 9: E6".into()),
            Err(e) => {
                report(format!("FAIL criterion 9: E6: {e}"));
                failed.push(9);
            }
        }
    } else {
        report("SKIP criterion 9: E6 (enable with --features slow-tests or TILTLAB_SLOW_TESTS=1)".to_string());
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
