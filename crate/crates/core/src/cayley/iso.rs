//! Brute-force isomorphism search and automorphism enumeration by
//! backtracking over images of a generating set.

use super::{CayleyGroup, GroupMap, MapKind};
use crate::config::Caps;
use crate::error::{check_cap, Result};
use std::collections::{HashMap, HashSet};

/// Isomorphism invariants compared before any search.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvariantSignature {
    pub order: usize,
    pub abelian: bool,
    pub center: usize,
    pub derived: usize,
    /// Sorted multiset of `(element order, class size)`.
    pub element_profile: Vec<(u32, u32)>,
}

pub fn invariant_signature(g: &CayleyGroup) -> InvariantSignature {
    let sig = element_signatures(g);
    let mut profile = sig.clone();
    profile.sort_unstable();
    InvariantSignature {
        order: g.order(),
        abelian: g.is_abelian(),
        center: g.center().len(),
        derived: g.commutator_subgroup().len(),
        element_profile: profile,
    }
}

fn element_signatures(g: &CayleyGroup) -> Vec<(u32, u32)> {
    let mut sig = vec![(0, 0); g.order()];
    for class in g.conjugacy_classes() {
        for &x in class {
            sig[x] = (g.element_orders()[x], class.len() as u32);
        }
    }
    sig
}

/// Backtracking search for isomorphisms `G -> H`.
pub struct IsoSearch<'a> {
    g: &'a CayleyGroup,
    h: &'a CayleyGroup,
    gens: Vec<usize>,
    /// Elements first reached when generator `j` is added, each with its
    /// parent and the generator index: `elem = parent * gens[gen]`.
    stages: Vec<Vec<(usize, usize, usize)>>,
    candidates: Vec<Vec<usize>>,
}

impl<'a> IsoSearch<'a> {
    /// Prepares a search, or returns `None` when cheap invariants differ.
    pub fn new(g: &'a CayleyGroup, h: &'a CayleyGroup) -> Option<Self> {
        if g.order() != h.order() {
            return None;
        }
        let sg = element_signatures(g);
        let sh = element_signatures(h);
        let mut pg = sg.clone();
        pg.sort_unstable();
        let mut ph = sh.clone();
        ph.sort_unstable();
        if pg != ph {
            return None;
        }
        let mut by_sig: HashMap<(u32, u32), Vec<usize>> = HashMap::new();
        for x in h.elements() {
            by_sig.entry(sh[x]).or_default().push(x);
        }
        let count = |x: usize| by_sig.get(&sg[x]).map_or(0, |v| v.len());
        // greedy generating set with few candidate images
        let mut order: Vec<usize> = g.elements().filter(|&x| x != g.identity()).collect();
        order.sort_by_key(|&x| (count(x), std::cmp::Reverse(g.element_order(x)), x));
        let mut sub = super::Subgroup::trivial(g);
        let mut gens = Vec::new();
        for x in order {
            if sub.len() == g.order() {
                break;
            }
            if !sub.contains(x) {
                gens.push(x);
                sub = sub.extended(g, &[x]);
            }
        }
        // stages: BFS by right multiplication with generators 0..=j
        let mut reached = vec![false; g.order()];
        reached[g.identity()] = true;
        let mut all = vec![g.identity()];
        let mut stages = Vec::new();
        for j in 0..gens.len() {
            let mut stage = Vec::new();
            let mut queue: Vec<usize> = all.clone();
            let mut i = 0;
            while i < queue.len() {
                let x = queue[i];
                i += 1;
                for (k, &s) in gens.iter().enumerate().take(j + 1) {
                    let y = g.mul(x, s);
                    if !reached[y] {
                        reached[y] = true;
                        stage.push((y, x, k));
                        queue.push(y);
                    }
                }
            }
            all.extend(stage.iter().map(|t| t.0));
            stages.push(stage);
        }
        let candidates = gens.iter().map(|&x| by_sig.get(&sg[x]).cloned().unwrap_or_default()).collect();
        Some(Self { g, h, gens, stages, candidates })
    }

    /// Runs the search, calling `found` with each isomorphism's image table.
    /// Stops when `found` returns `false`.
    pub fn run(&self, mut found: impl FnMut(&[usize]) -> bool) {
        let n = self.g.order();
        let mut img = vec![usize::MAX; n];
        img[self.g.identity()] = self.h.identity();
        let mut used = vec![false; n];
        used[self.h.identity()] = true;
        let mut himg = vec![0usize; self.gens.len()];
        if self.gens.is_empty() {
            found(&img);
            return;
        }
        self.descend(0, &mut img, &mut used, &mut himg, &mut found);
    }

    fn descend(
        &self,
        j: usize,
        img: &mut Vec<usize>,
        used: &mut Vec<bool>,
        himg: &mut Vec<usize>,
        found: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        for &cand in &self.candidates[j] {
            himg[j] = cand;
            let stage = &self.stages[j];
            let mut assigned = 0;
            let mut ok = true;
            for &(y, parent, k) in stage {
                let v = self.h.mul(img[parent], himg[k]);
                if used[v] {
                    ok = false;
                    break;
                }
                used[v] = true;
                img[y] = v;
                assigned += 1;
            }
            if ok {
                ok = self.consistent(j, img, himg);
            }
            if ok {
                let keep_going = if j + 1 == self.gens.len() {
                    found(img)
                } else {
                    self.descend(j + 1, img, used, himg, found)
                };
                if !keep_going {
                    return false;
                }
            }
            for &(y, _, _) in &stage[..assigned] {
                used[img[y]] = false;
                img[y] = usize::MAX;
            }
        }
        true
    }

    /// Checks `img(x g_i) = img(x) h_i` for the pairs new at stage `j`.
    fn consistent(&self, j: usize, img: &[usize], himg: &[usize]) -> bool {
        let g = self.g;
        let h = self.h;
        let check = |x: usize, i: usize| {
            let y = g.mul(x, self.gens[i]);
            img[y] != usize::MAX && img[y] == h.mul(img[x], himg[i])
        };
        for &(y, _, _) in &self.stages[j] {
            for i in 0..=j {
                if !check(y, i) {
                    return false;
                }
            }
        }
        // older elements against the new generator
        if !check(g.identity(), j) {
            return false;
        }
        for stage in &self.stages[..j] {
            for &(x, _, _) in stage {
                if !check(x, j) {
                    return false;
                }
            }
        }
        true
    }
}

/// Exhaustive isomorphism search. `Ok(None)` means not isomorphic.
pub fn brute_force_iso(g: &CayleyGroup, h: &CayleyGroup, caps: &Caps) -> Result<Option<GroupMap>> {
    if g.order() != h.order() {
        return Ok(None);
    }
    check_cap("brute-force group order", g.order() as u128, caps.group_order as u128)?;
    let Some(search) = IsoSearch::new(g, h) else { return Ok(None) };
    let mut out = None;
    search.run(|img| {
        out = Some(GroupMap { image: img.to_vec(), kind: MapKind::Isomorphism });
        false
    });
    Ok(out)
}

/// All automorphisms of `g`.
pub fn enumerate_automorphisms(g: &CayleyGroup, caps: &Caps) -> Result<Vec<GroupMap>> {
    check_cap("automorphism group order", g.order() as u128, caps.group_order as u128)?;
    let search = IsoSearch::new(g, g).expect("group is isomorphic to itself");
    let mut out = Vec::new();
    let mut overflow = false;
    search.run(|img| {
        if out.len() >= caps.aut_count {
            overflow = true;
            return false;
        }
        out.push(GroupMap { image: img.to_vec(), kind: MapKind::Automorphism });
        true
    });
    if overflow {
        return Err(crate::Error::CapExceeded {
            what: "automorphism count",
            size: caps.aut_count as u128 + 1,
            cap: caps.aut_count as u128,
        });
    }
    Ok(out)
}

/// The distinct inner automorphisms `x -> g x g^-1`.
pub fn inner_automorphisms(g: &CayleyGroup) -> Vec<GroupMap> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for c in g.elements() {
        let image: Vec<usize> = g.elements().map(|x| g.conj(x, c)).collect();
        if seen.insert(image.clone()) {
            out.push(GroupMap { image, kind: MapKind::Automorphism });
        }
    }
    out
}

/// A transversal of `Inn(G)` in `Aut(G)`, starting with the identity.
pub fn automorphisms_mod_inner(g: &CayleyGroup, caps: &Caps) -> Result<Vec<GroupMap>> {
    let auts = enumerate_automorphisms(g, caps)?;
    let inner = inner_automorphisms(g);
    let mut covered: HashSet<Vec<usize>> = HashSet::new();
    let mut reps = Vec::new();
    for a in auts {
        if covered.contains(&a.image) {
            continue;
        }
        for i in &inner {
            covered.insert(i.then(&a).image);
        }
        reps.push(a);
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::super::families;
    use super::*;

    #[test]
    fn automorphism_counts() {
        let caps = Caps::default();
        let cases = [
            (families::cyclic(8), 4),
            (families::symmetric(3), 6),
            (families::elementary_abelian(2, 3), 168),
            (families::quaternion(), 24),
            (families::dihedral(4), 8),
            (families::alternating(5), 120),
            (families::symmetric(4), 24),
        ];
        for (g, n) in cases {
            let auts = enumerate_automorphisms(&g, &caps).unwrap();
            assert_eq!(auts.len(), n);
            assert!(auts.iter().all(|a| a.is_isomorphism(&g, &g)));
        }
        let a5 = families::alternating(5);
        assert_eq!(inner_automorphisms(&a5).len(), 60);
        assert_eq!(automorphisms_mod_inner(&a5, &caps).unwrap().len(), 2);
    }

    #[test]
    fn isomorphic_constructions_found() {
        let caps = Caps::default();
        let s3 = families::symmetric(3);
        let d3 = families::dihedral(3);
        let m = brute_force_iso(&s3, &d3, &caps).unwrap().unwrap();
        assert!(m.is_isomorphism(&s3, &d3));
        assert!(brute_force_iso(&families::cyclic(6), &s3, &caps).unwrap().is_none());
        assert!(brute_force_iso(&families::quaternion(), &families::dihedral(4), &caps).unwrap().is_none());
    }

    #[test]
    fn cap_is_enforced() {
        let caps = Caps { group_order: 10, ..Caps::default() };
        let g = families::cyclic(12);
        assert!(matches!(brute_force_iso(&g, &g, &caps), Err(crate::Error::CapExceeded { .. })));
    }
}
