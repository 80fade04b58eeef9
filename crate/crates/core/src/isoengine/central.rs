//! Groups whose solvable radical is the center.

use super::{abelian_verdict, assemble_witness, checked, inverse_table, is_central_radical, matching_transform, to_aut, transport_rows, yes, IsoVerdict, Side};
use crate::abelian::{enumerate_abelian_automorphisms, AbelianAut};
use crate::cayley::{automorphisms_mod_inner, brute_force_iso, enumerate_automorphisms, CayleyGroup, GroupMap};
use crate::cohomology::{coboundary_witness, same_class_up_to_aut_a, ColumnLayout, CochainMatrix, ExtensionData, ScalarCoboundaries};
use crate::config::EngineConfig;
use crate::error::{precondition, Error, Result};
use std::sync::Arc;

const NAME: &str = "central-radical";

/// `Iso(Q_1, Q_2)` up to inner automorphisms: one isomorphism composed with
/// a transversal of `Inn(Q_1)` in `Aut(Q_1)` (or all of `Aut(Q_1)`).
pub(crate) fn quotient_isos(q1: &CayleyGroup, q2: &CayleyGroup, config: &EngineConfig) -> Result<Option<Vec<Vec<usize>>>> {
    let Some(psi0) = brute_force_iso(q1, q2, &config.caps)? else { return Ok(None) };
    let auts = if config.reduce_inner {
        automorphisms_mod_inner(q1, &config.caps)?
    } else {
        enumerate_automorphisms(q1, &config.caps)?
    };
    Ok(Some(auts.iter().map(|t| t.then(&psi0).image).collect()))
}

/// Decides `G ~ H` for `rad(G) = Z(G)` and `rad(H) = Z(H)`: the centers
/// must match, the quotients must be isomorphic, and some `beta` must carry
/// the class of `f_1` to that of `f_2` up to `Aut(Z)`.
pub fn iso_central_radical(g: &Arc<CayleyGroup>, h: &Arc<CayleyGroup>, config: &EngineConfig) -> Result<IsoVerdict> {
    for x in [g, h] {
        if !is_central_radical(x) {
            return Err(Error::StrategyInapplicable { strategy: NAME, reason: "solvable radical differs from the center".into() });
        }
    }
    if g.order() != h.order() {
        return Ok(IsoVerdict::no(NAME, "orders differ"));
    }
    if g.is_abelian() || h.is_abelian() {
        return abelian_verdict(NAME, g, h);
    }
    let s1 = Side::new(g, &g.center())?;
    let s2 = Side::new(h, &h.center())?;
    if s1.a().invariants() != s2.a().invariants() {
        return Ok(IsoVerdict::no(NAME, format!("centers {:?} vs {:?}", s1.a().invariants(), s2.a().invariants())));
    }
    let Some(psis) = quotient_isos(&s1.qp.quotient, &s2.qp.quotient, config)? else {
        return Ok(IsoVerdict::no(NAME, "quotients by the center are not isomorphic"));
    };
    let v = match s1.a().elementary_prime() {
        Some(p) => decide_elementary(&s1, &s2, &psis, p)?,
        None => decide_general(&s1, &s2, &psis, config)?,
    };
    checked(g, h, v)
}

fn decide_elementary(s1: &Side, s2: &Side, psis: &[Vec<usize>], p: u64) -> Result<IsoVerdict> {
    let q2 = &s2.qp.quotient;
    let b = ScalarCoboundaries::new(q2, p);
    let res2: Vec<Vec<u32>> = s2.ed.cocycle.rows.iter().map(|r| b.residue(r)).collect();
    for (i, psi) in psis.iter().enumerate() {
        let f1 = transport_rows(&s1.ed.cocycle.rows, &inverse_table(psi));
        let res1: Vec<Vec<u32>> = f1.iter().map(|r| b.residue(r)).collect();
        let Some(x) = matching_transform(p, &res1, &res2) else { continue };
        let alpha = to_aut(&x);
        let a = s2.a();
        let k = a.rank();
        let n = q2.order();
        let mut w = vec![vec![0u64; k]; n];
        for r in 0..k {
            let diff: Vec<u64> = (0..n * n)
                .map(|c| {
                    let af: u64 = (0..k).map(|j| alpha.matrix[r][j] * f1[j][c]).sum::<u64>();
                    (af + p - s2.ed.cocycle.rows[r][c] % p) % p
                })
                .collect();
            let u = b.preimage(&diff).ok_or_else(|| precondition("matched residues left a non-coboundary"))?;
            for x in 0..n {
                w[x][r] = u[x];
            }
        }
        let witness = assemble_witness(&s1.qp, &s1.kernel, &s2.qp, &s2.kernel, psi, &alpha, &w);
        return Ok(yes(NAME, witness, vec![format!("beta #{i}: span test passed"), format!("alpha {:?}", alpha.matrix)]));
    }
    Ok(IsoVerdict::no(NAME, format!("span test failed for all {} beta", psis.len())))
}

fn decide_general(s1: &Side, s2: &Side, psis: &[Vec<usize>], config: &EngineConfig) -> Result<IsoVerdict> {
    let a = s2.a();
    let q2 = s2.qp.quotient.clone();
    let n = q2.order();
    let k = a.rank();
    let trivial = vec![AbelianAut::identity(k); n];
    let auts = enumerate_abelian_automorphisms(a, &config.caps)?;
    for (i, psi) in psis.iter().enumerate() {
        let rows = transport_rows(&s1.ed.cocycle.rows, &inverse_table(psi));
        let ed1 = ExtensionData {
            coefficient: a.clone(),
            quotient: q2.clone(),
            action: trivial.clone(),
            cocycle: CochainMatrix { moduli: a.orders().to_vec(), layout: ColumnLayout::Full { q_order: n }, rows },
            product: None,
        };
        if !same_class_up_to_aut_a(&ed1, &s2.ed)? {
            continue;
        }
        for alpha in &auts {
            let w = coboundary_witness(a, &q2, &trivial, |x, y| a.add(&alpha.apply(a, &ed1.value(x, y)), &a.neg(&s2.ed.value(x, y))));
            if let Some(w) = w {
                let witness = assemble_witness(&s1.qp, &s1.kernel, &s2.qp, &s2.kernel, psi, alpha, &w);
                return Ok(yes(NAME, witness, vec![format!("beta #{i}: class test passed"), format!("alpha {:?}", alpha.matrix)]));
            }
        }
        return Err(precondition("class test passed but no coefficient automorphism matched"));
    }
    Ok(IsoVerdict::no(NAME, format!("class test failed for all {} beta", psis.len())))
}

/// The per-`beta` class test of [`iso_central_radical`]: whether
/// `[f_1 o beta^-1] = [alpha f_2]` for some `alpha`, with `beta` given as an
/// image table `Q_1 -> Q_2`.
pub fn central_class_test(ed1: &ExtensionData, ed2: &ExtensionData, beta: &GroupMap) -> Result<bool> {
    let rows = transport_rows(&ed1.to_full().cocycle.rows, &inverse_table(&beta.image));
    let moved = ExtensionData {
        cocycle: CochainMatrix { rows, ..ed2.to_full().cocycle },
        ..ed2.clone()
    };
    same_class_up_to_aut_a(&moved, ed2)
}
