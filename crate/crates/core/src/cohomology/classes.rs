//! Cohomology class tests: equality of classes, equality up to coefficient
//! automorphisms, and pseudo-congruence.

use super::coboundary::{phi_dense, ScalarCoboundaries};
use super::{twist, ExtensionData};
use crate::abelian::{solve_abelian_system, AbelianAut, AbelianEquation, AbelianStructure};
use crate::cayley::{CayleyGroup, GroupMap};
use crate::error::{precondition, Error, Result};
use crate::linalg::{Echelon, SmithSolver};

/// `u : Q -> A` with `diff(p, q) = u(p) + theta_p u(q) - u(pq)` for all
/// `p, q`, found by solving the linear system over `A`.
pub fn coboundary_witness(
    a: &AbelianStructure,
    q: &CayleyGroup,
    action: &[AbelianAut],
    diff: impl Fn(usize, usize) -> Vec<u64>,
) -> Option<Vec<Vec<u64>>> {
    let k = a.rank();
    let n = q.order();
    if k == 0 {
        return Some(vec![Vec::new(); n]);
    }
    let ident: Vec<Vec<i64>> = (0..k).map(|r| (0..k).map(|s| i64::from(r == s)).collect()).collect();
    let neg: Vec<Vec<i64>> = ident.iter().map(|r| r.iter().map(|&x| -x).collect()).collect();
    let mut eqs = Vec::with_capacity(n * n);
    for p in 0..n {
        let theta: Vec<Vec<i64>> = action[p].matrix.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
        for x in 0..n {
            eqs.push(AbelianEquation {
                terms: vec![(p, ident.clone()), (x, theta.clone()), (q.mul(p, x), neg.clone())],
                target: diff(p, x),
            });
        }
    }
    solve_abelian_system(a, &eqs, n)
}

fn check_compatible(ed1: &ExtensionData, ed2: &ExtensionData) -> Result<()> {
    if ed1.q_order() != ed2.q_order() || ed1.coefficient.orders() != ed2.coefficient.orders() {
        return Err(precondition("extension data over different groups"));
    }
    Ok(())
}

/// Whether `f1 - f2` is a coboundary. The actions must agree.
pub fn cohomologous(ed1: &ExtensionData, ed2: &ExtensionData) -> Result<bool> {
    check_compatible(ed1, ed2)?;
    if ed1.action != ed2.action {
        return Err(Error::ActionMismatch);
    }
    let a = &ed1.coefficient;
    if let (Some(p), true) = (a.elementary_prime(), ed1.is_trivial_action()) {
        let b = ScalarCoboundaries::new(&ed1.quotient, p);
        let (m1, m2) = (ed1.to_full().cocycle, ed2.to_full().cocycle);
        return Ok(m1.rows.iter().zip(&m2.rows).all(|(r1, r2)| {
            let diff: Vec<u64> = r1.iter().zip(r2).map(|(x, y)| (x + p - y) % p).collect();
            b.contains(&diff)
        }));
    }
    let w = coboundary_witness(a, &ed1.quotient, &ed1.action, |p, q| a.add(&ed1.value(p, q), &a.neg(&ed2.value(p, q))));
    Ok(w.is_some())
}

/// Whether `[f1] = [alpha f2]` for some `alpha` in `Aut(A)`, for central
/// extensions. Elementary abelian coefficients compare the row spans
/// `<R_1, B^2>` and `<R_2, B^2>`; general coefficients compare, for each
/// basis order `p^mu`, the spans of the lifted or reduced rows together
/// with `B^2(Q, Z_{p^mu})`.
pub fn same_class_up_to_aut_a(ed1: &ExtensionData, ed2: &ExtensionData) -> Result<bool> {
    check_compatible(ed1, ed2)?;
    if !ed1.is_trivial_action() || !ed2.is_trivial_action() {
        return Err(precondition("same_class_up_to_aut_a needs trivial action"));
    }
    let a = &ed1.coefficient;
    let q = &ed1.quotient;
    let (m1, m2) = (ed1.to_full().cocycle, ed2.to_full().cocycle);
    if a.rank() == 0 {
        return Ok(true);
    }
    if let Some(p) = a.elementary_prime() {
        let b = ScalarCoboundaries::new(q, p);
        let span = |rows: &[Vec<u64>]| {
            let mut e: Echelon = b.echelon().clone();
            for r in rows {
                let v: Vec<u32> = r.iter().map(|&x| (x % p) as u32).collect();
                e.insert(&v);
            }
            e
        };
        return Ok(span(&m1.rows).same_span(&span(&m2.rows)));
    }
    let mut done: Vec<(u64, u32)> = Vec::new();
    for i in 0..a.rank() {
        let (p, mu) = (a.primes()[i], a.exponents()[i]);
        if done.contains(&(p, mu)) {
            continue;
        }
        done.push((p, mu));
        let lift = |rows: &[Vec<u64>]| -> Vec<Vec<i64>> {
            (0..a.rank())
                .filter(|&j| a.primes()[j] == p)
                .map(|j| {
                    let muj = a.exponents()[j];
                    let pm = p.pow(mu);
                    rows[j]
                        .iter()
                        .map(|&x| if muj >= mu { (x % pm) as i64 } else { (x * p.pow(mu - muj) % pm) as i64 })
                        .collect()
                })
                .collect()
        };
        let (l1, l2) = (lift(&m1.rows), lift(&m2.rows));
        let pm = p.pow(mu);
        let bgens: Vec<Vec<i64>> = q
            .elements()
            .filter(|&x| x != q.identity())
            .map(|x| phi_dense(q, x, pm).into_iter().map(|v| v as i64).collect())
            .collect();
        let contained = |targets: &[Vec<i64>], gens: &[Vec<i64>]| {
            let all: Vec<&Vec<i64>> = gens.iter().chain(&bgens).collect();
            let width = m1.width();
            // columns are generators, rows are cochain coordinates
            let mat: Vec<Vec<i64>> = (0..width).map(|c| all.iter().map(|g| g[c]).collect()).collect();
            let solver = SmithSolver::new(&mat, all.len(), p, mu);
            targets.iter().all(|t| solver.solve(t).is_some())
        };
        if !contained(&l1, &l2) || !contained(&l2, &l1) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Searches `aut_a x aut_q` for `(alpha, beta)` with
/// `theta_1 = theta_2^(alpha, beta)` and `[f_1] = [f_2^(alpha, beta)]`.
pub fn pseudo_congruent(
    ed1: &ExtensionData,
    ed2: &ExtensionData,
    aut_a: &[AbelianAut],
    aut_q: &[GroupMap],
) -> Result<Option<(AbelianAut, GroupMap)>> {
    check_compatible(ed1, ed2)?;
    for beta in aut_q {
        for alpha in aut_a {
            let tw = twist(ed2, alpha, beta);
            if tw.action == ed1.action && cohomologous(ed1, &tw)? {
                return Ok(Some((alpha.clone(), beta.clone())));
            }
        }
    }
    Ok(None)
}
