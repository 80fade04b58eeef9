//! Finite abelian groups: primary decomposition, automorphism matrices and
//! linear systems with unknowns in the group.

use crate::cayley::{CayleyGroup, Subgroup};
use crate::config::Caps;
use crate::error::{check_cap, Error, Result};
use crate::linalg::{gfp, solve_congruences, Congruence};
use std::sync::Arc;

/// An abelian group with a basis of cyclic prime-power factors, sorted by
/// prime and then by exponent ascending, and a coordinate table.
#[derive(Debug, Clone)]
pub struct AbelianStructure {
    group: Arc<CayleyGroup>,
    basis: Vec<usize>,
    primes: Vec<u64>,
    exps: Vec<u32>,
    orders: Vec<u64>,
    coords: Vec<u32>,
    by_code: Vec<u32>,
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// Decomposes an abelian group into cyclic factors of prime-power order.
pub fn primary_decomposition(g: Arc<CayleyGroup>) -> Result<AbelianStructure> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let primes: Vec<u64> = crate::linalg::factorize(g.order() as u64).into_iter().map(|(p, _)| p).collect();
    let mut basis: Vec<(u64, u32, usize)> = Vec::new();
    for &p in &primes {
        let sylow: Vec<usize> = g.elements().filter(|&x| is_power_of(g.element_order(x) as u64, p)).collect();
        let mut s = Subgroup::trivial(&g);
        while s.len() < sylow.len() {
            // element whose image in P/S has the largest order
            let rel_order = |y: usize| {
                let mut m = 1u64;
                let mut z = y;
                while !s.contains(z) {
                    z = g.pow(z, p as i64);
                    m *= p;
                }
                m
            };
            let (m, y) = sylow.iter().filter(|&&y| !s.contains(y)).map(|&y| (rel_order(y), y)).max_by_key(|&(m, y)| (m, std::cmp::Reverse(y))).unwrap();
            let target = g.pow(y, m as i64);
            let t = s
                .members()
                .iter()
                .copied()
                .find(|&t| g.pow(t, m as i64) == target)
                .expect("maximal relative order admits a lift");
            let y2 = g.mul(y, g.inv(t));
            debug_assert_eq!(g.element_order(y2) as u64, m);
            basis.push((p, crate::linalg::valuation(m, p, 64), y2));
            s = s.extended(&g, &[y2]);
        }
    }
    basis.sort_by_key(|&(p, e, _)| (p, e));
    let primes: Vec<u64> = basis.iter().map(|b| b.0).collect();
    let exps: Vec<u32> = basis.iter().map(|b| b.1).collect();
    let orders: Vec<u64> = primes.iter().zip(&exps).map(|(&p, &e)| p.pow(e)).collect();
    let basis: Vec<usize> = basis.iter().map(|b| b.2).collect();
    let k = basis.len();
    let n = g.order();
    let mut coords = vec![0u32; n * k];
    let mut by_code = vec![u32::MAX; n];
    let mut c = vec![0u64; k];
    for code in 0..n {
        let mut x = g.identity();
        for (i, &b) in basis.iter().enumerate() {
            x = g.mul(x, g.pow(b, c[i] as i64));
        }
        by_code[code] = x as u32;
        for i in 0..k {
            coords[x * k + i] = c[i] as u32;
        }
        for i in (0..k).rev() {
            c[i] += 1;
            if c[i] < orders[i] {
                break;
            }
            c[i] = 0;
        }
    }
    debug_assert!(by_code.iter().all(|&x| x != u32::MAX));
    Ok(AbelianStructure { group: g, basis, primes, exps, orders, coords, by_code })
}

impl AbelianStructure {
    pub fn group(&self) -> &Arc<CayleyGroup> {
        &self.group
    }
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[usize] {
        &self.basis
    }
    /// Orders `p^mu` of the basis elements.
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }
    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// `Some(p)` when the group is a nontrivial elementary abelian `p`-group.
    pub fn elementary_prime(&self) -> Option<u64> {
        let p = *self.primes.first()?;
        (self.primes.iter().all(|&q| q == p) && self.exps.iter().all(|&e| e == 1)).then_some(p)
    }

    pub fn coords(&self, x: usize) -> &[u32] {
        let k = self.rank();
        &self.coords[x * k..(x + 1) * k]
    }

    /// Element with the given coordinates (reduced modulo the orders).
    pub fn element(&self, c: &[u64]) -> usize {
        self.by_code[self.code(c)] as usize
    }

    /// Mixed-radix code, first coordinate most significant.
    pub fn code(&self, c: &[u64]) -> usize {
        c.iter().zip(&self.orders).fold(0usize, |acc, (&x, &d)| acc * d as usize + (x % d) as usize)
    }

    /// Element with the given mixed-radix code.
    pub fn element_of_code(&self, code: usize) -> usize {
        self.by_code[code] as usize
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.orders).map(|((&x, &y), &d)| (x + y) % d).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().zip(&self.orders).map(|(&x, &d)| (d - x % d) % d).collect()
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.rank()]
    }

    pub fn coords_u64(&self, x: usize) -> Vec<u64> {
        self.coords(x).iter().map(|&c| c as u64).collect()
    }

    /// Invariants as `(p, mu)` pairs.
    pub fn invariants(&self) -> Vec<(u64, u32)> {
        self.primes.iter().copied().zip(self.exps.iter().copied()).collect()
    }
}

/// An automorphism of `A` as an integer matrix acting on coordinate columns:
/// `y_i = sum_j a_ij x_j mod d_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianAut {
    pub matrix: Vec<Vec<u64>>,
}

impl AbelianAut {
    pub fn identity(k: usize) -> Self {
        Self { matrix: (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect() }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.matrix.len())
    }

    pub fn apply(&self, a: &AbelianStructure, x: &[u64]) -> Vec<u64> {
        self.matrix
            .iter()
            .zip(a.orders())
            .map(|(row, &d)| row.iter().zip(x).fold(0u64, |acc, (&m, &v)| (acc + m % d * (v % d)) % d))
            .collect()
    }

    pub fn apply_element(&self, a: &AbelianStructure, x: usize) -> usize {
        a.element(&self.apply(a, &a.coords_u64(x)))
    }

    /// `self` after `other`: `x -> self(other(x))`.
    pub fn compose(&self, a: &AbelianStructure, other: &AbelianAut) -> AbelianAut {
        let k = a.rank();
        let cols: Vec<Vec<u64>> = (0..k)
            .map(|j| {
                let e: Vec<u64> = (0..k).map(|i| u64::from(i == j)).collect();
                self.apply(a, &other.apply(a, &e))
            })
            .collect();
        AbelianAut { matrix: (0..k).map(|i| (0..k).map(|j| cols[j][i]).collect()).collect() }
    }

    /// Matrix of the endomorphism given by its action on elements.
    pub fn from_element_map(a: &AbelianStructure, map: impl Fn(usize) -> usize) -> AbelianAut {
        let k = a.rank();
        let cols: Vec<Vec<u64>> = a.basis().iter().map(|&b| a.coords_u64(map(b))).collect();
        AbelianAut { matrix: (0..k).map(|i| (0..k).map(|j| cols[j][i]).collect()).collect() }
    }

    pub fn inverse(&self, a: &AbelianStructure) -> AbelianAut {
        let mut inv = vec![0usize; a.order()];
        for x in a.group().elements() {
            inv[self.apply_element(a, x)] = x;
        }
        AbelianAut::from_element_map(a, |x| inv[x])
    }

    /// Whether the matrix defines an automorphism of `a`.
    pub fn is_automorphism(&self, a: &AbelianStructure) -> bool {
        let k = a.rank();
        if self.matrix.len() != k || self.matrix.iter().any(|r| r.len() != k) {
            return false;
        }
        for i in 0..k {
            for j in 0..k {
                let x = self.matrix[i][j] % a.orders()[i];
                if a.primes()[i] != a.primes()[j] {
                    if x != 0 {
                        return false;
                    }
                } else {
                    let need = a.exponents()[i].saturating_sub(a.exponents()[j]);
                    if x % a.primes()[i].pow(need) != 0 {
                        return false;
                    }
                }
            }
        }
        let mut seen = vec![false; a.order()];
        a.group().elements().all(|x| !std::mem::replace(&mut seen[self.apply_element(a, x)], true))
    }
}

/// Every automorphism of `a`, enumerated block by block over primes.
///
/// Entry `(i, j)` of a `p`-block is a multiple of `p^max(0, mu_i - mu_j)`
/// modulo `p^mu_i`; the matrix must be invertible modulo `p`.
pub fn enumerate_abelian_automorphisms(a: &AbelianStructure, caps: &Caps) -> Result<Vec<AbelianAut>> {
    let k = a.rank();
    let mut blocks: Vec<(u64, Vec<usize>)> = Vec::new();
    for i in 0..k {
        match blocks.last_mut() {
            Some((p, idx)) if *p == a.primes()[i] => idx.push(i),
            _ => blocks.push((a.primes()[i], vec![i])),
        }
    }
    let mut total: u128 = 1;
    for (p, idx) in &blocks {
        let e: u32 = idx.iter().flat_map(|&i| idx.iter().map(move |&j| (i, j))).map(|(i, j)| a.exponents()[i].min(a.exponents()[j])).sum();
        total = total.saturating_mul((*p as u128).saturating_pow(e));
    }
    check_cap("Aut(A) candidate matrices", total, caps.abelian_aut_candidates)?;
    let mut per_block: Vec<Vec<Vec<Vec<u64>>>> = Vec::new();
    for (p, idx) in &blocks {
        let p = *p;
        let m = idx.len();
        let cells: Vec<(u64, u64)> = (0..m * m)
            .map(|c| {
                let (i, j) = (idx[c / m], idx[c % m]);
                let (ei, ej) = (a.exponents()[i], a.exponents()[j]);
                (p.pow(ei.saturating_sub(ej)), p.pow(ei.min(ej)))
            })
            .collect();
        let mut counter = vec![0u64; m * m];
        let mut found = Vec::new();
        loop {
            let mat: Vec<Vec<u64>> = (0..m).map(|i| (0..m).map(|j| cells[i * m + j].0 * counter[i * m + j]).collect()).collect();
            let modp: gfp::Mat = mat.iter().map(|r| r.iter().map(|&x| (x % p) as u32).collect()).collect();
            if gfp::rank(p, &modp) == m {
                found.push(mat);
            }
            let mut c = 0;
            loop {
                if c == m * m {
                    break;
                }
                counter[c] += 1;
                if counter[c] < cells[c].1 {
                    break;
                }
                counter[c] = 0;
                c += 1;
            }
            if c == m * m {
                break;
            }
        }
        per_block.push(found);
    }
    let mut out = vec![AbelianAut { matrix: vec![vec![0; k]; k] }];
    for ((_, idx), mats) in blocks.iter().zip(&per_block) {
        let mut next = Vec::with_capacity(out.len() * mats.len());
        for base in &out {
            for mat in mats {
                let mut m2 = base.clone();
                for (bi, &i) in idx.iter().enumerate() {
                    for (bj, &j) in idx.iter().enumerate() {
                        m2.matrix[i][j] = mat[bi][bj];
                    }
                }
                next.push(m2);
            }
        }
        out = next;
    }
    Ok(out)
}

/// A linear equation `sum_j M_j x_j = target` with unknowns `x_j` in `A`
/// and endomorphism coefficients `M_j` (integer `k x k` matrices).
#[derive(Debug, Clone)]
pub struct AbelianEquation {
    pub terms: Vec<(usize, Vec<Vec<i64>>)>,
    pub target: Vec<u64>,
}

impl AbelianEquation {
    /// `sum_j c_j x_j = target` with integer coefficients.
    pub fn scalar(k: usize, coeffs: &[(usize, i64)], target: Vec<u64>) -> Self {
        let terms = coeffs
            .iter()
            .map(|&(j, c)| (j, (0..k).map(|r| (0..k).map(|s| if r == s { c } else { 0 }).collect()).collect()))
            .collect();
        Self { terms, target }
    }
}

/// Solves a system with `unknowns` elements of `A` as unknowns. Returns the
/// coordinates of one solution.
pub fn solve_abelian_system(a: &AbelianStructure, eqs: &[AbelianEquation], unknowns: usize) -> Option<Vec<Vec<u64>>> {
    let k = a.rank();
    let nvars = unknowns * k;
    let mut congruences = Vec::with_capacity(eqs.len() * k);
    for eq in eqs {
        for r in 0..k {
            let mut coeffs = vec![0i64; nvars];
            for (j, m) in &eq.terms {
                for i in 0..k {
                    coeffs[j * k + i] += m[r][i];
                }
            }
            congruences.push(Congruence { coeffs, rhs: eq.target[r] as i64, modulus: a.orders()[r] });
        }
    }
    if k == 0 {
        return Some(vec![Vec::new(); unknowns]);
    }
    let sol = solve_congruences(&congruences, nvars)?;
    Some((0..unknowns).map(|j| (0..k).map(|i| sol[j * k + i] % a.orders()[i]).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::families;

    fn brute_aut_count(g: &CayleyGroup) -> usize {
        crate::cayley::enumerate_automorphisms(g, &Caps::default()).unwrap().len()
    }

    #[test]
    fn decomposition_orders() {
        let cases: Vec<(Vec<usize>, Vec<u64>)> = vec![
            (vec![4, 2], vec![2, 4]),
            (vec![6], vec![2, 3]),
            (vec![2, 2, 2], vec![2, 2, 2]),
            (vec![12, 2], vec![2, 4, 3]),
            (vec![1], vec![]),
            (vec![9, 3, 8], vec![8, 3, 9]),
        ];
        for (inv, orders) in cases {
            let a = primary_decomposition(Arc::new(families::abelian(&inv))).unwrap();
            assert_eq!(a.orders(), &orders[..], "{inv:?}");
            for x in a.group().elements() {
                assert_eq!(a.element(&a.coords_u64(x)), x);
            }
            // coordinates are additive
            let g = a.group();
            for x in g.elements() {
                for y in g.elements() {
                    assert_eq!(a.coords_u64(g.mul(x, y)), a.add(&a.coords_u64(x), &a.coords_u64(y)));
                }
            }
        }
        assert_eq!(primary_decomposition(Arc::new(families::symmetric(3))).unwrap_err(), Error::NotAbelian);
    }

    #[test]
    fn automorphism_counts_match_brute_force() {
        for inv in [vec![4, 2], vec![2, 2], vec![8], vec![6], vec![2, 2, 2], vec![4, 4], vec![3, 3], vec![12, 2]] {
            let g = families::abelian(&inv);
            let a = primary_decomposition(Arc::new(g.clone())).unwrap();
            let auts = enumerate_abelian_automorphisms(&a, &Caps::default()).unwrap();
            assert_eq!(auts.len(), brute_aut_count(&g), "{inv:?}");
            assert!(auts.iter().all(|m| m.is_automorphism(&a)));
        }
        let a = primary_decomposition(Arc::new(families::abelian(&[4, 2]))).unwrap();
        assert_eq!(enumerate_abelian_automorphisms(&a, &Caps::default()).unwrap().len(), 8);
    }

    #[test]
    fn inverse_and_compose() {
        let a = primary_decomposition(Arc::new(families::abelian(&[4, 2, 3]))).unwrap();
        for m in enumerate_abelian_automorphisms(&a, &Caps::default()).unwrap() {
            assert!(m.compose(&a, &m.inverse(&a)).is_identity());
        }
    }

    #[test]
    fn scalar_systems() {
        let z2 = primary_decomposition(Arc::new(families::cyclic(2))).unwrap();
        let s = solve_abelian_system(&z2, &[AbelianEquation::scalar(1, &[(0, 1)], vec![1])], 1).unwrap();
        assert_eq!(s[0], vec![1]);
        let z4 = primary_decomposition(Arc::new(families::cyclic(4))).unwrap();
        let s = solve_abelian_system(&z4, &[AbelianEquation::scalar(1, &[(0, 2)], vec![2])], 1).unwrap();
        assert_eq!(2 * s[0][0] % 4, 2);
        assert!(solve_abelian_system(&z4, &[AbelianEquation::scalar(1, &[(0, 2)], vec![1])], 1).is_none());
    }
}

/// Image of the element `x` under `aut`.
pub fn apply_aut(a: &AbelianStructure, aut: &AbelianAut, x: usize) -> usize {
    aut.apply_element(a, x)
}
