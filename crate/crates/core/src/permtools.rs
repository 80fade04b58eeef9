//! Permutation cosets at desk scale: block permutation groups, linear code
//! equivalence under block permutations, and coset intersection. All
//! searches are exact backtracking or enumeration with caps.

use crate::config::Caps;
use crate::error::{check_cap, Error, Result};
use crate::linalg::Echelon;
use std::collections::{HashSet, VecDeque};

/// A permutation of `0..m` as its image list.
pub type Perm = Vec<usize>;

pub fn identity_perm(m: usize) -> Perm {
    (0..m).collect()
}

/// `a ∘ b`: apply `b`, then `a`.
pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&x| a[x]).collect()
}

pub fn invert(a: &[usize]) -> Perm {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x] = i;
    }
    out
}

/// Elements of the group generated by `gens`, identity first.
pub fn group_elements(degree: usize, gens: &[Perm], cap: usize) -> Result<Vec<Perm>> {
    let id = identity_perm(degree);
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(g, &x);
            if seen.insert(y.clone()) {
                check_cap("permutation group order", out.len() as u128 + 1, cap as u128)?;
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

/// A right coset `P σ` of the group `P = <generators>`, or the empty set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermCoset {
    pub degree: usize,
    pub generators: Vec<Perm>,
    pub representative: Option<Perm>,
}

impl PermCoset {
    pub fn empty(degree: usize) -> Self {
        Self { degree, generators: Vec::new(), representative: None }
    }

    pub fn group(degree: usize, generators: Vec<Perm>) -> Self {
        Self { degree, generators, representative: Some(identity_perm(degree)) }
    }

    pub fn is_empty(&self) -> bool {
        self.representative.is_none()
    }

    /// Elements `g ∘ σ`, sorted.
    pub fn elements(&self, cap: usize) -> Result<Vec<Perm>> {
        let Some(rep) = &self.representative else { return Ok(Vec::new()) };
        let mut out: Vec<Perm> = group_elements(self.degree, &self.generators, cap)?.iter().map(|g| compose(g, rep)).collect();
        out.sort();
        Ok(out)
    }

    pub fn len(&self, cap: usize) -> Result<usize> {
        self.elements(cap).map(|e| e.len())
    }

    pub fn contains(&self, pi: &[usize], cap: usize) -> Result<bool> {
        let Some(rep) = &self.representative else { return Ok(false) };
        let g = compose(pi, &invert(rep));
        Ok(group_elements(self.degree, &self.generators, cap)?.contains(&g))
    }

    /// The least element, a canonical representative.
    pub fn min_element(&self, cap: usize) -> Result<Option<Perm>> {
        Ok(self.elements(cap)?.into_iter().next())
    }

    /// The coset with the given element list (which must be a coset).
    fn from_elements(degree: usize, mut elems: Vec<Perm>) -> Self {
        elems.sort();
        let Some(rep) = elems.first().cloned() else { return Self::empty(degree) };
        let rinv = invert(&rep);
        let members: Vec<Perm> = elems.iter().map(|e| compose(e, &rinv)).collect();
        let mut gens: Vec<Perm> = Vec::new();
        let mut span: HashSet<Perm> = HashSet::from([identity_perm(degree)]);
        for m in members {
            if !span.contains(&m) {
                gens.push(m);
                span = group_elements(degree, &gens, usize::MAX).unwrap_or_default().into_iter().collect();
            }
        }
        Self { degree, generators: gens, representative: Some(rep) }
    }
}

/// Columns grouped into blocks; blocks with the same class may be exchanged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockStructure {
    pub blocks: Vec<Vec<usize>>,
    pub classes: Vec<usize>,
}

impl BlockStructure {
    /// Consecutive blocks of the given sizes and classes.
    pub fn consecutive(sizes: &[usize], classes: &[usize]) -> Result<Self> {
        let mut blocks = Vec::new();
        let mut start = 0;
        for &s in sizes {
            blocks.push((start..start + s).collect());
            start += s;
        }
        let bs = Self { blocks, classes: classes.to_vec() };
        bs.check()?;
        Ok(bs)
    }

    pub fn degree(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    fn check(&self) -> Result<()> {
        let m = self.degree();
        let mut seen = vec![false; m];
        if self.classes.len() != self.blocks.len() {
            return Err(Error::PreconditionFailed("one class per block".into()));
        }
        for b in &self.blocks {
            for &c in b {
                if c >= m || std::mem::replace(&mut seen[c], true) {
                    return Err(Error::PreconditionFailed("blocks must partition the columns".into()));
                }
            }
        }
        for (i, b) in self.blocks.iter().enumerate() {
            for (j, d) in self.blocks.iter().enumerate() {
                if self.classes[i] == self.classes[j] && b.len() != d.len() {
                    return Err(Error::PreconditionFailed("blocks of one class must have equal size".into()));
                }
            }
        }
        Ok(())
    }

    /// The column permutation moving block `i` rigidly onto block `to[i]`.
    pub fn block_perm(&self, to: &[usize]) -> Perm {
        let mut out = vec![0; self.degree()];
        for (i, b) in self.blocks.iter().enumerate() {
            for (t, &c) in b.iter().enumerate() {
                out[c] = self.blocks[to[i]][t];
            }
        }
        out
    }
}

/// `prod_i S_{l_i}` permuting same-class blocks rigidly.
pub fn block_group(bs: &BlockStructure) -> PermCoset {
    let nb = bs.blocks.len();
    let mut gens = Vec::new();
    for i in 0..nb {
        // transposition with the next block of the same class
        if let Some(j) = (i + 1..nb).find(|&j| bs.classes[j] == bs.classes[i]) {
            let mut to: Vec<usize> = (0..nb).collect();
            to.swap(i, j);
            gens.push(bs.block_perm(&to));
        }
    }
    PermCoset::group(bs.degree(), gens)
}

/// Applies `sigma` to the columns: column `c` of `m` becomes column
/// `sigma(c)` of the result.
pub fn permute_columns(rows: &[Vec<u32>], sigma: &[usize]) -> Vec<Vec<u32>> {
    rows.iter()
        .map(|r| {
            let mut out = vec![0; r.len()];
            for (c, &x) in r.iter().enumerate() {
                out[sigma[c]] = x;
            }
            out
        })
        .collect()
}

fn restricted(rows: &[Vec<u32>], cols: &[usize]) -> Vec<Vec<u32>> {
    rows.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect()
}

fn same_rowspan(p: u64, a: &[Vec<u32>], b: &[Vec<u32>]) -> bool {
    let w = a.first().or(b.first()).map_or(0, Vec::len);
    let ea = Echelon::from_rows(p, w, a.iter().map(|r| r.as_slice()), false);
    let eb = Echelon::from_rows(p, w, b.iter().map(|r| r.as_slice()), false);
    ea.same_span(&eb)
}

/// All block permutations `σ` with `rowspan(M1^σ) = rowspan(M2)` over
/// `GF(p)`. Blocks of `M2` are filled in order of fewest candidate source
/// blocks, pruning when the spans restricted to the filled columns differ.
pub fn code_equivalence_coset(p: u64, m1: &[Vec<u32>], m2: &[Vec<u32>], allowed: &BlockStructure, caps: &Caps) -> Result<PermCoset> {
    allowed.check()?;
    let m = allowed.degree();
    if m1.len() != m2.len() || m1.iter().chain(m2).any(|r| r.len() != m) {
        return Err(Error::PreconditionFailed("code matrices must have equal shape".into()));
    }
    for rows in [m1, m2] {
        if crate::linalg::gfp::rank(p, &rows.to_vec()) != rows.len() {
            return Err(Error::RankDeficient);
        }
    }
    let nb = allowed.blocks.len();
    let mut order: Vec<usize> = (0..nb).collect();
    let class_size = |c: usize| allowed.classes.iter().filter(|&&d| d == c).count();
    order.sort_by_key(|&j| (class_size(allowed.classes[j]), j));
    let mut state = Search { p, m1, m2, bs: allowed, order, to: vec![usize::MAX; nb], used: vec![false; nb], nodes: 0, cap: caps.code_nodes, found: Vec::new() };
    state.run(0)?;
    Ok(PermCoset::from_elements(m, state.found))
}

struct Search<'a> {
    p: u64,
    m1: &'a [Vec<u32>],
    m2: &'a [Vec<u32>],
    bs: &'a BlockStructure,
    order: Vec<usize>,
    /// source block -> target block
    to: Vec<usize>,
    used: Vec<bool>,
    nodes: u128,
    cap: u128,
    found: Vec<Perm>,
}

impl Search<'_> {
    fn consistent(&self, depth: usize) -> bool {
        // columns of the filled target blocks, and their sources
        let mut tcols = Vec::new();
        let mut scols = Vec::new();
        for &t in &self.order[..depth] {
            let s = (0..self.to.len()).find(|&s| self.to[s] == t).expect("filled target has a source");
            tcols.extend_from_slice(&self.bs.blocks[t]);
            scols.extend_from_slice(&self.bs.blocks[s]);
        }
        same_rowspan(self.p, &restricted(self.m1, &scols), &restricted(self.m2, &tcols))
    }

    fn run(&mut self, depth: usize) -> Result<()> {
        self.nodes += 1;
        check_cap("code equivalence search nodes", self.nodes, self.cap)?;
        if depth == self.order.len() {
            self.found.push(self.bs.block_perm(&self.to));
            return Ok(());
        }
        let t = self.order[depth];
        for s in 0..self.to.len() {
            if self.used[s] || self.bs.classes[s] != self.bs.classes[t] {
                continue;
            }
            self.used[s] = true;
            self.to[s] = t;
            if self.consistent(depth + 1) {
                self.run(depth + 1)?;
            }
            self.to[s] = usize::MAX;
            self.used[s] = false;
        }
        Ok(())
    }
}

/// `C1 ∩ C2`, by enumerating the smaller coset and testing membership in
/// the other.
pub fn coset_intersection(c1: &PermCoset, c2: &PermCoset, caps: &Caps) -> Result<PermCoset> {
    if c1.degree != c2.degree {
        return Err(Error::PreconditionFailed("cosets of different degree".into()));
    }
    if c1.is_empty() || c2.is_empty() {
        return Ok(PermCoset::empty(c1.degree));
    }
    let cap = caps.coset_elements;
    let e1 = c1.elements(cap)?;
    let e2: HashSet<Perm> = c2.elements(cap)?.into_iter().collect();
    let common: Vec<Perm> = e1.into_iter().filter(|x| e2.contains(x)).collect();
    Ok(PermCoset::from_elements(c1.degree, common))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn block_groups() {
        let one = BlockStructure::consecutive(&[3], &[0]).unwrap();
        assert_eq!(block_group(&one).len(1000).unwrap(), 1);
        let two = BlockStructure::consecutive(&[2, 2], &[0, 0]).unwrap();
        let g = block_group(&two).elements(1000).unwrap();
        assert_eq!(g.len(), 2);
        assert!(g.contains(&vec![2, 3, 0, 1]));
        let three = BlockStructure::consecutive(&[2, 2, 2], &[0, 0, 0]).unwrap();
        assert_eq!(block_group(&three).len(1000).unwrap(), 6);
        let mixed = BlockStructure::consecutive(&[2, 2, 3, 2], &[0, 0, 1, 0]).unwrap();
        assert_eq!(block_group(&mixed).len(1000).unwrap(), 6);
        assert!(BlockStructure::consecutive(&[2, 3], &[0, 0]).is_err());
    }

    fn singletons(m: usize) -> BlockStructure {
        BlockStructure::consecutive(&vec![1; m], &vec![0; m]).unwrap()
    }

    #[test]
    fn identical_and_permuted_codes() {
        let m1 = vec![vec![1, 0, 1, 1, 0], vec![0, 1, 1, 0, 1]];
        let bs = singletons(5);
        let c = code_equivalence_coset(2, &m1, &m1, &bs, &caps()).unwrap();
        assert!(c.contains(&identity_perm(5), 1000).unwrap());
        let s0 = vec![3, 0, 4, 1, 2];
        let m2 = permute_columns(&m1, &s0);
        let c = code_equivalence_coset(2, &m1, &m2, &bs, &caps()).unwrap();
        assert!(c.contains(&s0, 1000).unwrap());
        for s in c.elements(1000).unwrap() {
            assert!(same_rowspan(2, &permute_columns(&m1, &s), &m2));
        }
    }

    #[test]
    fn rank_deficiency_is_reported() {
        let m = vec![vec![1, 1, 0], vec![1, 1, 0]];
        assert!(matches!(code_equivalence_coset(2, &m, &m, &singletons(3), &caps()), Err(Error::RankDeficient)));
    }

    fn weight_enumerator(p: u64, rows: &[Vec<u32>]) -> Vec<usize> {
        let k = rows.len();
        let m = rows[0].len();
        let mut counts = vec![0; m + 1];
        for code in 0..(p as usize).pow(k as u32) {
            let mut c = code;
            let mut w = vec![0u64; m];
            for r in rows {
                let a = (c % p as usize) as u64;
                c /= p as usize;
                for (x, &y) in w.iter_mut().zip(r) {
                    *x = (*x + a * y as u64) % p;
                }
            }
            counts[w.iter().filter(|&&x| x != 0).count()] += 1;
        }
        counts
    }

    #[test]
    fn different_weight_enumerators_give_empty_coset() {
        // exhaustive over pairs of 2 x 4 binary codes of full rank
        let mut codes = Vec::new();
        for a in 1..16u32 {
            for b in 1..16u32 {
                let r1: Vec<u32> = (0..4).map(|i| (a >> i) & 1).collect();
                let r2: Vec<u32> = (0..4).map(|i| (b >> i) & 1).collect();
                let m = vec![r1, r2];
                if crate::linalg::gfp::rank(2, &m) == 2 {
                    codes.push(m);
                }
            }
        }
        let bs = singletons(4);
        let mut empties = 0;
        for x in codes.iter().step_by(7) {
            for y in codes.iter().step_by(5) {
                let c = code_equivalence_coset(2, x, y, &bs, &caps()).unwrap();
                if weight_enumerator(2, x) != weight_enumerator(2, y) {
                    assert!(c.is_empty());
                    empties += 1;
                }
                // brute force over all of S4
                let all = group_elements(4, &[vec![1, 2, 3, 0], vec![1, 0, 2, 3]], 100).unwrap();
                let brute: Vec<Perm> = all.into_iter().filter(|s| same_rowspan(2, &permute_columns(x, s), y)).collect();
                let mut brute = brute;
                brute.sort();
                assert_eq!(c.elements(1000).unwrap(), brute);
            }
        }
        assert!(empties > 0);
    }

    #[test]
    fn block_constrained_equivalence() {
        // three blocks of two columns; only block moves are allowed
        let bs = BlockStructure::consecutive(&[2, 2, 2], &[0, 0, 0]).unwrap();
        let m1 = vec![vec![1, 0, 0, 1, 1, 1], vec![0, 1, 1, 1, 0, 1]];
        let to = [2, 0, 1];
        let s0 = bs.block_perm(&to);
        let m2 = permute_columns(&m1, &s0);
        let c = code_equivalence_coset(2, &m1, &m2, &bs, &caps()).unwrap();
        assert!(c.contains(&s0, 100).unwrap());
        let allowed = block_group(&bs).elements(100).unwrap();
        for s in c.elements(100).unwrap() {
            assert!(allowed.contains(&s));
        }
        // swapping two columns inside a block is not allowed
        let inner = permute_columns(&m1, &[1, 0, 2, 3, 4, 5]);
        let c2 = code_equivalence_coset(2, &m1, &inner, &bs, &caps()).unwrap();
        let brute: Vec<Perm> = allowed.into_iter().filter(|s| same_rowspan(2, &permute_columns(&m1, s), &inner)).collect();
        assert_eq!(c2.elements(100).unwrap().len(), brute.len());
    }

    #[test]
    fn symmetry_of_code_equivalence() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let bs = BlockStructure::consecutive(&[1, 1, 1, 1, 1], &[0, 0, 1, 1, 1]).unwrap();
        for _ in 0..30 {
            let m1: Vec<Vec<u32>> = (0..2).map(|_| (0..5).map(|_| rng.gen_range(0..3)).collect()).collect();
            let m2: Vec<Vec<u32>> = (0..2).map(|_| (0..5).map(|_| rng.gen_range(0..3)).collect()).collect();
            if crate::linalg::gfp::rank(3, &m1) < 2 || crate::linalg::gfp::rank(3, &m2) < 2 {
                continue;
            }
            let a = code_equivalence_coset(3, &m1, &m2, &bs, &caps()).unwrap().elements(1000).unwrap();
            let b = code_equivalence_coset(3, &m2, &m1, &bs, &caps()).unwrap().elements(1000).unwrap();
            let mut inv: Vec<Perm> = a.iter().map(|s| invert(s)).collect();
            inv.sort();
            assert_eq!(inv, b);
        }
    }

    fn random_coset(rng: &mut ChaCha8Rng, m: usize) -> PermCoset {
        let ngens = rng.gen_range(0..3);
        let gens = (0..ngens)
            .map(|_| {
                let mut p: Perm = identity_perm(m);
                // a random transposition or 3-cycle
                let mut pts: Vec<usize> = (0..m).collect();
                pts.shuffle(rng);
                if rng.gen_bool(0.5) {
                    p.swap(pts[0], pts[1]);
                } else {
                    let (a, b, c) = (pts[0], pts[1], pts[2]);
                    p[a] = b;
                    p[b] = c;
                    p[c] = a;
                }
                p
            })
            .collect();
        let mut rep = identity_perm(m);
        rep.shuffle(rng);
        PermCoset { degree: m, generators: gens, representative: Some(rep) }
    }

    proptest! {
        #[test]
        fn intersection_matches_enumeration(seed in 0u64..10_000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c1 = random_coset(&mut rng, 6);
            let mut c2 = random_coset(&mut rng, 6);
            if seed % 2 == 0 {
                // c2 then contains the least element of c1
                let e = c1.elements(1000).unwrap()[0].clone();
                c2.representative = Some(e);
            }
            let i = coset_intersection(&c1, &c2, &caps()).unwrap();
            let e1 = c1.elements(1000).unwrap();
            let e2 = c2.elements(1000).unwrap();
            let brute: Vec<Perm> = e1.into_iter().filter(|x| e2.contains(x)).collect();
            prop_assert_eq!(i.elements(1000).unwrap(), brute);
        }
    }

    #[test]
    fn intersection_basics() {
        let g = PermCoset::group(4, vec![vec![1, 0, 2, 3]]);
        assert_eq!(coset_intersection(&g, &g, &caps()).unwrap().elements(10).unwrap(), g.elements(10).unwrap());
        let other = PermCoset { degree: 4, generators: g.generators.clone(), representative: Some(vec![0, 1, 3, 2]) };
        assert!(coset_intersection(&g, &other, &caps()).unwrap().is_empty());
        assert!(coset_intersection(&g, &PermCoset::empty(4), &caps()).unwrap().is_empty());
    }
}
