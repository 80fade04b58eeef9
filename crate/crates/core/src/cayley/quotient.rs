//! Quotients with explicit sections, and maps between Cayley groups.

use super::{CayleyGroup, Subgroup};
use crate::error::{Error, Result};
use std::sync::Arc;

/// `G`, a normal subgroup `N`, the quotient `G/N` as its own table, the
/// projection and a normalized section (`section[1] = 1`).
#[derive(Debug, Clone)]
pub struct QuotientPresentation {
    pub group: Arc<CayleyGroup>,
    pub normal: Subgroup,
    pub quotient: Arc<CayleyGroup>,
    pub projection: Vec<u32>,
    pub section: Vec<u32>,
}

/// Forms `G/N`. Quotient elements are cosets ordered by least member, except
/// that the coset `N` comes first; its section value is the identity and
/// every other coset uses its least member.
pub fn quotient_with_section(g: Arc<CayleyGroup>, n: &Subgroup) -> Result<QuotientPresentation> {
    if !n.is_normal_in(&g) {
        return Err(Error::NotNormal);
    }
    let order = g.order();
    let mut coset = vec![u32::MAX; order];
    let mut reps = vec![g.identity()];
    for &x in n.members() {
        coset[x] = 0;
    }
    for x in g.elements() {
        if coset[x] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        for &m in n.members() {
            coset[g.mul(m, x)] = id;
        }
    }
    let k = reps.len();
    let mut table = vec![0u32; k * k];
    for i in 0..k {
        for j in 0..k {
            table[i * k + j] = coset[g.mul(reps[i], reps[j])];
        }
    }
    let quotient = Arc::new(CayleyGroup::from_trusted(k, table));
    Ok(QuotientPresentation {
        group: g,
        normal: n.clone(),
        quotient,
        projection: coset,
        section: reps.into_iter().map(|x| x as u32).collect(),
    })
}

impl QuotientPresentation {
    /// Assembles a presentation from explicit data, checking that the
    /// projection is a surjective homomorphism with kernel `normal` and that
    /// the section is a normalized right inverse.
    pub fn from_parts(
        group: Arc<CayleyGroup>,
        normal: Subgroup,
        quotient: Arc<CayleyGroup>,
        projection: Vec<u32>,
        section: Vec<u32>,
    ) -> Result<Self> {
        let proj: Vec<usize> = projection.iter().map(|&x| x as usize).collect();
        let map = GroupMap { image: proj, kind: MapKind::Homomorphism };
        if !map.is_homomorphism(&group, &quotient) {
            return Err(crate::error::precondition("projection is not a homomorphism"));
        }
        let kernel_ok = group.elements().all(|x| (projection[x] as usize == quotient.identity()) == normal.contains(x));
        let section_ok = section.len() == quotient.order()
            && section[quotient.identity()] as usize == group.identity()
            && quotient.elements().all(|q| projection[section[q] as usize] as usize == q);
        if !kernel_ok || !section_ok {
            return Err(crate::error::precondition("projection kernel or section mismatch"));
        }
        Ok(Self { group, normal, quotient, projection, section })
    }

    pub fn project(&self, g: usize) -> usize {
        self.projection[g] as usize
    }

    pub fn lift(&self, q: usize) -> usize {
        self.section[q] as usize
    }

    /// Writes `g = n * s(pi(g))`, returning `(n, pi(g))`.
    pub fn decompose(&self, g: usize) -> (usize, usize) {
        let q = self.project(g);
        (self.group.mul(g, self.group.inv(self.lift(q))), q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    Homomorphism,
    Isomorphism,
    Automorphism,
}

/// A map between groups given by its image table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupMap {
    pub image: Vec<usize>,
    pub kind: MapKind,
}

impl GroupMap {
    pub fn identity(g: &CayleyGroup) -> Self {
        Self { image: g.elements().collect(), kind: MapKind::Automorphism }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    /// Checks `f(ab) = f(a) f(b)` on the full tables.
    pub fn is_homomorphism(&self, src: &CayleyGroup, tgt: &CayleyGroup) -> bool {
        self.image.len() == src.order()
            && self.image.iter().all(|&x| x < tgt.order())
            && src.elements().all(|a| {
                let fa = self.image[a];
                src.elements().all(|b| self.image[src.mul(a, b)] == tgt.mul(fa, self.image[b]))
            })
    }

    pub fn is_bijective(&self, tgt: &CayleyGroup) -> bool {
        if self.image.len() != tgt.order() {
            return false;
        }
        let mut seen = vec![false; tgt.order()];
        self.image.iter().all(|&x| x < tgt.order() && !std::mem::replace(&mut seen[x], true))
    }

    pub fn is_isomorphism(&self, src: &CayleyGroup, tgt: &CayleyGroup) -> bool {
        self.is_bijective(tgt) && self.is_homomorphism(src, tgt)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &GroupMap) -> GroupMap {
        GroupMap { image: self.image.iter().map(|&x| other.image[x]).collect(), kind: self.kind }
    }

    pub fn inverse(&self) -> GroupMap {
        let mut inv = vec![0; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y] = x;
        }
        GroupMap { image: inv, kind: self.kind }
    }
}

#[cfg(test)]
mod tests {
    use super::super::families;
    use super::*;

    #[test]
    fn quotient_of_s4_by_v4() {
        let s4 = Arc::new(families::symmetric(4));
        let v4 = s4.abelian_socle(2);
        let qp = quotient_with_section(s4.clone(), &v4).unwrap();
        assert_eq!(qp.quotient.order(), 6);
        assert!(!qp.quotient.is_abelian());
        assert_eq!(qp.quotient.identity(), 0);
        assert_eq!(qp.lift(0), s4.identity());
        for g in s4.elements() {
            let (n, q) = qp.decompose(g);
            assert!(v4.contains(n));
            assert_eq!(s4.mul(n, qp.lift(q)), g);
        }
        let proj = GroupMap { image: qp.projection.iter().map(|&x| x as usize).collect(), kind: MapKind::Homomorphism };
        assert!(proj.is_homomorphism(&s4, &qp.quotient));
    }

    #[test]
    fn non_normal_rejected() {
        let s3 = Arc::new(families::symmetric(3));
        let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        let h = Subgroup::generated(&s3, &[t]);
        assert_eq!(quotient_with_section(s3, &h).unwrap_err(), Error::NotNormal);
    }
}
