//! Two extensions of `Z_{p^2} x Z_p x Z_p` by `Z_{p^2} x Z_p` with the same
//! total group `Z_{p^3} x Z_{p^2} x Z_p x Z_p` that are not related by any
//! automorphism of the total group.

use crate::abelian::{enumerate_abelian_automorphisms, primary_decomposition, AbelianAut, AbelianStructure};
use crate::cayley::{families, quotient_with_section, CayleyGroup, Subgroup};
use crate::config::Caps;
use crate::error::Result;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct NonPcFixture {
    pub p: u64,
    pub group: Arc<CayleyGroup>,
    /// Image of `(a, b, c) -> (pa, 0, b, c)`.
    pub image1: Subgroup,
    /// Image of `(a, b, c) -> (pa, pb, a mod p, c)`.
    pub image2: Subgroup,
}

/// Index of `(x_1, x_2, x_3, x_4)` in `Z_{p^3} x Z_{p^2} x Z_p x Z_p`.
fn element(p: usize, x: [usize; 4]) -> usize {
    let d = [p * p * p, p * p, p, p];
    x.iter().zip(d).fold(0, |acc, (&v, m)| acc * m + v % m)
}

pub fn non_pc_fixture(p: u64) -> NonPcFixture {
    let q = p as usize;
    let group = Arc::new(families::abelian(&[q * q * q, q * q, q, q]));
    let image1 = Subgroup::generated(&group, &[element(q, [q, 0, 0, 0]), element(q, [0, 0, 1, 0]), element(q, [0, 0, 0, 1])]);
    let image2 = Subgroup::generated(&group, &[element(q, [q, 0, 1, 0]), element(q, [0, q, 0, 0]), element(q, [0, 0, 0, 1])]);
    NonPcFixture { p, group, image1, image2 }
}

/// An automorphism of the total group mapping `s1` onto `s2`.
pub fn carrying_automorphism(group: &Arc<CayleyGroup>, s1: &Subgroup, s2: &Subgroup, caps: &Caps) -> Result<Option<AbelianAut>> {
    let a: AbelianStructure = primary_decomposition(group.clone())?;
    if s1.len() != s2.len() {
        return Ok(None);
    }
    for aut in enumerate_abelian_automorphisms(&a, caps)? {
        if s1.generators().iter().all(|&x| s2.contains(aut.apply_element(&a, x))) {
            return Ok(Some(aut));
        }
    }
    Ok(None)
}

fn invariants(g: &CayleyGroup) -> Result<Vec<(u64, u32)>> {
    Ok(primary_decomposition(Arc::new(g.clone()))?.invariants())
}

/// True when both images are copies of `N` with quotient `Z_{p^2} x Z_p`
/// and no automorphism of the total group carries one onto the other.
pub fn non_pc_regression(fx: &NonPcFixture, caps: &Caps) -> Result<bool> {
    let q = fx.p as usize;
    let n = invariants(&families::abelian(&[q * q, q, q]))?;
    let quotient = invariants(&families::abelian(&[q * q, q]))?;
    for s in [&fx.image1, &fx.image2] {
        if invariants(&s.as_group(&fx.group).0)? != n {
            return Ok(false);
        }
        if invariants(&quotient_with_section(fx.group.clone(), s)?.quotient)? != quotient {
            return Ok(false);
        }
    }
    Ok(carrying_automorphism(&fx.group, &fx.image1, &fx.image2, caps)?.is_none())
}

/// Number of elements of `s` of the form `x^p` with `x` of order `p^3`.
pub fn p_times_top_order_count(g: &CayleyGroup, s: &Subgroup, p: u64) -> usize {
    let top = (p * p * p) as u32;
    let mut hit = vec![false; g.order()];
    for x in g.elements().filter(|&x| g.element_orders()[x] == top) {
        hit[g.pow(x, p as i64)] = true;
    }
    s.members().iter().filter(|&&y| hit[y]).count()
}
