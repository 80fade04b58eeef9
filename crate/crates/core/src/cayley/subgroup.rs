//! Subgroups: generation, normal closures, centre, derived series, solvable
//! radical, minimal normal subgroups, simple factors and the socle
//! filtration.

use super::CayleyGroup;
use crate::error::{Error, Result};

/// A subgroup of a Cayley group, stored as a sorted member list, a
/// membership mask over the parent and a generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: Vec<bool>,
    gens: Vec<usize>,
}

impl Subgroup {
    pub fn trivial(g: &CayleyGroup) -> Self {
        let mut mask = vec![false; g.order()];
        mask[g.identity()] = true;
        Self { members: vec![g.identity()], mask, gens: Vec::new() }
    }

    pub fn whole(g: &CayleyGroup) -> Self {
        Self { members: g.elements().collect(), mask: vec![true; g.order()], gens: g.generators().to_vec() }
    }

    /// The subgroup generated by `gens`.
    pub fn generated(g: &CayleyGroup, gens: &[usize]) -> Self {
        Self::trivial(g).extended(g, gens)
    }

    /// Builds a subgroup from an explicit member list, checking closure.
    pub fn from_members(g: &CayleyGroup, members: &[usize]) -> Result<Self> {
        let h = Self::generated(g, members);
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if h.members != sorted {
            return Err(crate::error::precondition("member list is not a subgroup"));
        }
        Ok(h)
    }

    /// `<self, extra>`, by Dimino's coset enumeration.
    pub fn extended(&self, g: &CayleyGroup, extra: &[usize]) -> Self {
        let mut out = self.clone();
        let mut elems: Vec<usize> = out.members.clone();
        for &x in extra {
            if out.mask[x] {
                continue;
            }
            out.gens.push(x);
            let old = elems.clone();
            let add_coset = |r: usize, elems: &mut Vec<usize>, mask: &mut Vec<bool>| {
                for &h in &old {
                    let y = g.mul(h, r);
                    mask[y] = true;
                    elems.push(y);
                }
            };
            let mut reps = vec![x];
            add_coset(x, &mut elems, &mut out.mask);
            let mut i = 0;
            while i < reps.len() {
                let r = reps[i];
                i += 1;
                for k in 0..out.gens.len() {
                    let y = g.mul(r, out.gens[k]);
                    if !out.mask[y] {
                        reps.push(y);
                        add_coset(y, &mut elems, &mut out.mask);
                    }
                }
            }
        }
        elems.sort_unstable();
        out.members = elems;
        out
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }
    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }
    pub fn members(&self) -> &[usize] {
        &self.members
    }
    pub fn mask(&self) -> &[bool] {
        &self.mask
    }
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }
    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn is_normal_in(&self, g: &CayleyGroup) -> bool {
        g.generators().iter().all(|&x| self.gens.iter().all(|&h| self.mask[g.conj(h, x)]))
    }

    pub fn is_abelian(&self, g: &CayleyGroup) -> bool {
        self.gens.iter().all(|&a| self.gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    pub fn is_central(&self, g: &CayleyGroup) -> bool {
        self.gens.iter().all(|&a| g.generators().iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    /// The subgroup as a group in its own right, elements relabelled in
    /// increasing order, with the embedding into the parent.
    pub fn as_group(&self, g: &CayleyGroup) -> (CayleyGroup, Vec<usize>) {
        let m = self.members.len();
        let mut index = vec![u32::MAX; g.order()];
        for (i, &x) in self.members.iter().enumerate() {
            index[x] = i as u32;
        }
        let mut table = vec![0u32; m * m];
        for (i, &a) in self.members.iter().enumerate() {
            for (j, &b) in self.members.iter().enumerate() {
                table[i * m + j] = index[g.mul(a, b)];
            }
        }
        (CayleyGroup::from_trusted(m, table), self.members.clone())
    }

    /// `self * other` for subgroups normalizing each other.
    pub fn join(&self, g: &CayleyGroup, other: &Subgroup) -> Subgroup {
        self.extended(g, &other.gens)
    }
}

/// Normal closure of `seeds` in the subgroup generated by `ambient`.
pub fn normal_closure_in(g: &CayleyGroup, ambient: &[usize], seeds: &[usize]) -> Subgroup {
    let mut h = Subgroup::generated(g, seeds);
    loop {
        let mut new = None;
        'scan: for &x in ambient {
            for &y in h.generators() {
                let c = g.conj(y, x);
                if !h.contains(c) {
                    new = Some(c);
                    break 'scan;
                }
            }
        }
        match new {
            Some(c) => h = h.extended(g, &[c]),
            None => return h,
        }
    }
}

impl CayleyGroup {
    pub fn normal_closure(&self, seeds: &[usize]) -> Subgroup {
        normal_closure_in(self, self.generators(), seeds)
    }

    pub fn center(&self) -> Subgroup {
        let gens = self.generators();
        let central: Vec<usize> =
            self.elements().filter(|&z| gens.iter().all(|&x| self.mul(z, x) == self.mul(x, z))).collect();
        Subgroup::generated(self, &central)
    }

    /// Derived subgroup of `h`.
    pub fn derived_subgroup_of(&self, h: &Subgroup) -> Subgroup {
        let gens = h.generators();
        let comms: Vec<usize> =
            gens.iter().flat_map(|&a| gens.iter().map(move |&b| (a, b))).map(|(a, b)| self.commutator(a, b)).collect();
        normal_closure_in(self, gens, &comms)
    }

    pub fn commutator_subgroup(&self) -> Subgroup {
        self.derived_subgroup_of(&Subgroup::whole(self))
    }

    pub fn is_solvable_subgroup(&self, h: &Subgroup) -> bool {
        let mut cur = h.clone();
        while !cur.is_trivial() {
            let next = self.derived_subgroup_of(&cur);
            if next.len() == cur.len() {
                return false;
            }
            cur = next;
        }
        true
    }

    pub fn is_solvable(&self) -> bool {
        self.is_solvable_subgroup(&Subgroup::whole(self))
    }

    /// Largest solvable normal subgroup: the product of the normal closures
    /// of conjugacy-class representatives whose closure is solvable.
    pub fn solvable_radical(&self) -> Subgroup {
        let mut rad = Subgroup::trivial(self);
        for class in self.conjugacy_classes() {
            let x = class[0];
            if rad.contains(x) {
                continue;
            }
            let ncl = self.normal_closure(&[x]);
            if self.is_solvable_subgroup(&ncl) {
                rad = rad.join(self, &ncl);
            }
        }
        rad
    }

    /// Every normal subgroup, as joins of normal closures of classes.
    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        let mut found: Vec<Subgroup> = vec![Subgroup::trivial(self)];
        let closures: Vec<Subgroup> = self.conjugacy_classes().iter().map(|c| self.normal_closure(&[c[0]])).collect();
        let mut i = 0;
        while i < found.len() {
            for c in &closures {
                if c.is_subset(&found[i]) {
                    continue;
                }
                let j = found[i].join(self, c);
                if !found.iter().any(|f| f.members == j.members) {
                    found.push(j);
                }
            }
            i += 1;
        }
        found.sort_by(|a, b| a.len().cmp(&b.len()).then(a.members.cmp(&b.members)));
        found
    }

    /// Minimal normal subgroups (inclusion-minimal among normal closures of
    /// single nontrivial elements).
    pub fn minimal_normal_subgroups(&self) -> Vec<Subgroup> {
        let mut closures: Vec<Subgroup> = Vec::new();
        for class in self.conjugacy_classes() {
            if class[0] == self.identity() {
                continue;
            }
            let c = self.normal_closure(&[class[0]]);
            if !closures.iter().any(|d| d.members == c.members) {
                closures.push(c);
            }
        }
        let minimal: Vec<Subgroup> = closures
            .iter()
            .filter(|c| !closures.iter().any(|d| d.len() < c.len() && d.is_subset(c)))
            .cloned()
            .collect();
        minimal
    }

    /// Whether the group is nonabelian and simple.
    pub fn is_nonabelian_simple(&self) -> bool {
        self.order() > 1
            && !self.is_abelian()
            && self.conjugacy_classes().iter().all(|c| c[0] == self.identity() || self.normal_closure(&[c[0]]).len() == self.order())
    }

    /// Decomposes a group into its nonabelian simple direct factors, or fails
    /// with `NotSemisimpleProduct`.
    pub fn simple_factor_decomposition(&self) -> Result<Vec<Subgroup>> {
        if self.order() == 1 {
            return Ok(Vec::new());
        }
        let mins = self.minimal_normal_subgroups();
        let mut factors = Vec::new();
        for m in mins {
            let (mg, _) = m.as_group(self);
            if !mg.is_nonabelian_simple() {
                return Err(Error::NotSemisimpleProduct);
            }
            factors.push(m);
        }
        let prod: u128 = factors.iter().map(|f| f.len() as u128).product();
        let mut all = Subgroup::trivial(self);
        for f in &factors {
            all = all.join(self, f);
        }
        if prod != self.order() as u128 || all.len() != self.order() {
            return Err(Error::NotSemisimpleProduct);
        }
        factors.sort_by(|a, b| a.members.cmp(&b.members));
        Ok(factors)
    }

    /// Product of the abelian minimal normal `p`-subgroups. It is
    /// characteristic and elementary abelian.
    pub fn abelian_socle(&self, p: usize) -> Subgroup {
        let mut s = Subgroup::trivial(self);
        for m in self.minimal_normal_subgroups() {
            if m.is_abelian(self) && self.element_order(m.generators()[0]) == p {
                s = s.join(self, &m);
            }
        }
        s
    }

    /// Primes `p` for which an abelian minimal normal `p`-subgroup exists.
    pub fn abelian_socle_primes(&self) -> Vec<usize> {
        let mut ps: Vec<usize> = self
            .minimal_normal_subgroups()
            .iter()
            .filter(|m| m.is_abelian(self))
            .map(|m| self.element_order(m.generators()[0]))
            .collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }
}

/// The socle filtration `1 <= rad <= soc* <= pker* <= G`.
#[derive(Debug, Clone)]
pub struct Filtration {
    pub radical: Subgroup,
    pub socle_star: Subgroup,
    pub pker_star: Subgroup,
}

impl CayleyGroup {
    pub fn babai_beals_filtration(&self) -> Filtration {
        let radical = self.solvable_radical();
        let qp = super::quotient_with_section(std::sync::Arc::new(self.clone()), &radical).expect("radical is normal");
        let q = &qp.quotient;
        let mut soc = Subgroup::trivial(q);
        for m in q.minimal_normal_subgroups() {
            soc = soc.join(q, &m);
        }
        let (soc_group, soc_embed) = soc.as_group(q);
        let factors: Vec<Vec<usize>> = soc_group
            .simple_factor_decomposition()
            .expect("socle of a group with trivial radical is semisimple")
            .iter()
            .map(|f| f.members().iter().map(|&x| soc_embed[x]).collect())
            .collect();
        let factor_masks: Vec<Vec<bool>> = factors
            .iter()
            .map(|f| {
                let mut m = vec![false; q.order()];
                for &x in f {
                    m[x] = true;
                }
                m
            })
            .collect();
        let pker: Vec<usize> = q
            .elements()
            .filter(|&x| factors.iter().zip(&factor_masks).all(|(f, m)| f.iter().all(|&t| m[q.conj(t, x)])))
            .collect();
        let preimage = |members: &[usize]| {
            let mut mask = vec![false; q.order()];
            for &x in members {
                mask[x] = true;
            }
            let elems: Vec<usize> = self.elements().filter(|&g| mask[qp.projection[g] as usize]).collect();
            Subgroup::generated(self, &elems)
        };
        Filtration { socle_star: preimage(soc.members()), pker_star: preimage(&pker), radical }
    }
}

#[cfg(test)]
mod tests {
    use super::super::families;
    use super::*;

    #[test]
    fn dimino_matches_naive_closure() {
        let s4 = families::symmetric(4);
        for a in s4.elements() {
            for b in [0usize, 5, 11, 17] {
                let h = Subgroup::generated(&s4, &[a, b]);
                // naive: close under multiplication
                let mut set = vec![s4.identity(), a, b];
                loop {
                    let mut grew = false;
                    for i in 0..set.len() {
                        for j in 0..set.len() {
                            let c = s4.mul(set[i], set[j]);
                            if !set.contains(&c) {
                                set.push(c);
                                grew = true;
                            }
                        }
                    }
                    if !grew {
                        break;
                    }
                }
                set.sort();
                set.dedup();
                assert_eq!(h.members(), &set[..]);
            }
        }
    }

    #[test]
    fn radicals_and_centres() {
        let s4 = families::symmetric(4);
        assert_eq!(s4.solvable_radical().len(), 24);
        assert_eq!(s4.center().len(), 1);
        assert_eq!(s4.commutator_subgroup().len(), 12);
        let a5 = families::alternating(5);
        assert!(a5.solvable_radical().is_trivial());
        assert!(a5.is_nonabelian_simple());
        let sl = families::sl2(5);
        assert_eq!(sl.center().len(), 2);
        assert_eq!(sl.solvable_radical().len(), 2);
        let s5 = families::symmetric(5);
        assert_eq!(s5.simple_factor_decomposition(), Err(Error::NotSemisimpleProduct));
        assert_eq!(a5.simple_factor_decomposition().unwrap().len(), 1);
    }

    #[test]
    fn normal_subgroups_of_s4() {
        let s4 = families::symmetric(4);
        let sizes: Vec<usize> = s4.normal_subgroups().iter().map(|n| n.len()).collect();
        assert_eq!(sizes, vec![1, 4, 12, 24]);
        assert_eq!(s4.abelian_socle(2).len(), 4);
    }

    #[test]
    fn filtration_of_a5_squared() {
        let a5 = families::alternating(5);
        let g = super::super::direct_product(&a5, &a5);
        let f = g.babai_beals_filtration();
        assert!(f.radical.is_trivial());
        assert_eq!(f.socle_star.len(), 3600);
        assert_eq!(f.pker_star.len(), 3600);
        assert_eq!(g.simple_factor_decomposition().unwrap().len(), 2);
    }
}
