//! Constructions: direct products, closures of generating sets and the
//! standard families.

use super::CayleyGroup;
use crate::error::{check_cap, Result};
use std::collections::HashMap;
use std::hash::Hash;

/// `G x H`; the pair `(g, h)` has index `g * |H| + h`.
pub fn direct_product(g: &CayleyGroup, h: &CayleyGroup) -> CayleyGroup {
    let (m, k) = (g.order(), h.order());
    let n = m * k;
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        let (a1, a2) = (a / k, a % k);
        let row = &mut table[a * n..(a + 1) * n];
        for (b, slot) in row.iter_mut().enumerate() {
            *slot = (g.mul(a1, b / k) * k + h.mul(a2, b % k)) as u32;
        }
    }
    CayleyGroup::from_trusted(n, table)
}

/// Closes `gens` under `mul` and returns the Cayley table together with the
/// element list (identity first, then breadth-first order).
pub fn group_from_generators<T: Clone + Eq + Hash>(
    identity: T,
    gens: &[T],
    mul: impl Fn(&T, &T) -> T,
    cap: usize,
) -> Result<(CayleyGroup, Vec<T>)> {
    let mut elems = vec![identity.clone()];
    let mut index: HashMap<T, u32> = HashMap::from([(identity, 0)]);
    let mut parent: Vec<(u32, u32)> = vec![(0, 0)];
    let mut right: Vec<Vec<u32>> = Vec::new();
    let mut i = 0;
    while i < elems.len() {
        let mut row = Vec::with_capacity(gens.len());
        for (s, gen) in gens.iter().enumerate() {
            let y = mul(&elems[i], gen);
            let next = index.len() as u32;
            let id = *index.entry(y.clone()).or_insert(next);
            if id == next {
                check_cap("generated group order", elems.len() as u128 + 1, cap as u128)?;
                elems.push(y);
                parent.push((i as u32, s as u32));
            }
            row.push(id);
        }
        right.push(row);
        i += 1;
    }
    let n = elems.len();
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        table[x * n] = x as u32;
        for y in 1..n {
            let (py, s) = parent[y];
            let xpy = table[x * n + py as usize];
            table[x * n + y] = right[xpy as usize][s as usize];
        }
    }
    Ok((CayleyGroup::from_trusted(n, table), elems))
}

/// Permutation group generated by image lists on `0..degree`. The product
/// `a b` applies `b` first.
pub fn perm_group(degree: usize, gens: &[Vec<usize>], cap: usize) -> Result<CayleyGroup> {
    let id: Vec<u16> = (0..degree as u16).collect();
    let gens: Vec<Vec<u16>> = gens.iter().map(|g| g.iter().map(|&x| x as u16).collect()).collect();
    let (g, _) = group_from_generators(id, &gens, |a, b| b.iter().map(|&i| a[i as usize]).collect(), cap)?;
    Ok(g)
}

/// Group of `d x d` matrices over `GF(p)` generated by row-major entry lists.
pub fn matrix_group(p: u64, d: usize, gens: &[Vec<u64>], cap: usize) -> Result<CayleyGroup> {
    let id: Vec<u16> = (0..d * d).map(|i| u16::from(i % (d + 1) == 0)).collect();
    let gens: Vec<Vec<u16>> = gens.iter().map(|g| g.iter().map(|&x| (x % p) as u16).collect()).collect();
    let mul = |a: &Vec<u16>, b: &Vec<u16>| {
        let mut c = vec![0u16; d * d];
        for i in 0..d {
            for j in 0..d {
                let s: u64 = (0..d).map(|k| a[i * d + k] as u64 * b[k * d + j] as u64).sum();
                c[i * d + j] = (s % p) as u16;
            }
        }
        c
    };
    let (g, _) = group_from_generators(id, &gens, mul, cap)?;
    Ok(g)
}

/// Standard small groups.
pub mod families {
    use super::*;

    const CAP: usize = 1 << 20;

    pub fn cyclic(n: usize) -> CayleyGroup {
        let table = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
        CayleyGroup::from_trusted(n, table)
    }

    /// `Z_{d_1} x ... x Z_{d_k}`, lexicographic in the coordinates.
    pub fn abelian(invariants: &[usize]) -> CayleyGroup {
        invariants.iter().fold(cyclic(1), |acc, &d| direct_product(&acc, &cyclic(d)))
    }

    pub fn elementary_abelian(p: usize, k: usize) -> CayleyGroup {
        abelian(&vec![p; k])
    }

    /// Dihedral group of order `2n`.
    pub fn dihedral(n: usize) -> CayleyGroup {
        // elements r^i s^e as i + n e
        let m = 2 * n;
        let mut table = vec![0u32; m * m];
        for a in 0..m {
            for b in 0..m {
                let (i, e) = (a % n, a / n);
                let (j, f) = (b % n, b / n);
                let k = if e == 0 { (i + j) % n } else { (i + n - j) % n };
                table[a * m + b] = (k + n * ((e + f) % 2)) as u32;
            }
        }
        CayleyGroup::from_trusted(m, table)
    }

    pub fn symmetric(d: usize) -> CayleyGroup {
        let mut gens = Vec::new();
        if d >= 2 {
            gens.push((0..d).map(|i| (i + 1) % d).collect());
            let mut t: Vec<usize> = (0..d).collect();
            t.swap(0, 1);
            gens.push(t);
        }
        perm_group(d.max(1), &gens, CAP).unwrap()
    }

    pub fn alternating(d: usize) -> CayleyGroup {
        // 3-cycles (0 1 i)
        let gens: Vec<Vec<usize>> = (2..d)
            .map(|i| {
                let mut p: Vec<usize> = (0..d).collect();
                p[0] = 1;
                p[1] = i;
                p[i] = 0;
                p
            })
            .collect();
        perm_group(d.max(1), &gens, CAP).unwrap()
    }

    pub fn quaternion() -> CayleyGroup {
        dicyclic(2)
    }

    /// Dicyclic group of order `4n`: `<a, x | a^{2n}, x^2 = a^n, x a x^-1 = a^-1>`.
    pub fn dicyclic(n: usize) -> CayleyGroup {
        // a^i x^e as i + 2n e
        let m = 2 * n;
        let order = 2 * m;
        let mut table = vec![0u32; order * order];
        for u in 0..order {
            for v in 0..order {
                let (i, e) = (u % m, u / m);
                let (j, f) = (v % m, v / m);
                let (k, g) = match (e, f) {
                    (0, _) => ((i + j) % m, f),
                    (1, 0) => ((i + m - j) % m, 1),
                    _ => ((i + m - j + n) % m, 0),
                };
                table[u * order + v] = (k + m * g) as u32;
            }
        }
        CayleyGroup::from_trusted(order, table)
    }

    /// `SL(2, p)`.
    pub fn sl2(p: u64) -> CayleyGroup {
        matrix_group(p, 2, &[vec![1, 1, 0, 1], vec![0, p - 1, 1, 0]], CAP).unwrap()
    }

    /// `Z_n ⋊ Z_m` where the generator of `Z_m` acts by multiplication by
    /// `r` (requires `r^m = 1 mod n`). Element `(a, b)` has index `a m + b`.
    pub fn cyclic_semidirect(n: usize, m: usize, r: usize) -> CayleyGroup {
        assert_eq!(crate::linalg::pow_mod(r as u64, m as u64, n as u64), 1 % n as u64);
        let order = n * m;
        let mut table = vec![0u32; order * order];
        for u in 0..order {
            let (a, b) = (u / m, u % m);
            let rb = crate::linalg::pow_mod(r as u64, b as u64, n as u64) as usize;
            for v in 0..order {
                let (c, d) = (v / m, v % m);
                table[u * order + v] = (((a + rb * c) % n) * m + (b + d) % m) as u32;
            }
        }
        CayleyGroup::from_trusted(order, table)
    }
}
