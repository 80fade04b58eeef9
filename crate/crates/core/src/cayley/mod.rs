//! Finite groups as validated Cayley tables, with subgroup, quotient and
//! isomorphism machinery.

mod construct;
mod io;
mod iso;
mod quotient;
mod subgroup;

pub use construct::{direct_product, group_from_generators, perm_group, matrix_group, families};
pub use io::{parse_table, write_table};
pub use iso::{
    automorphisms_mod_inner, brute_force_iso, enumerate_automorphisms, inner_automorphisms, invariant_signature,
    IsoSearch,
};
pub use quotient::{quotient_with_section, GroupMap, MapKind, QuotientPresentation};
pub use subgroup::{normal_closure_in, Filtration, Subgroup};

use crate::error::{Error, NotAGroupReason, Result};
use std::sync::OnceLock;

/// A finite group given by its multiplication table. Elements are
/// `0..order`; the identity need not be `0`.
#[derive(Debug)]
pub struct CayleyGroup {
    n: usize,
    table: Vec<u32>,
    identity: usize,
    inverses: Vec<u32>,
    orders: Vec<u32>,
    generators: OnceLock<Vec<usize>>,
    classes: OnceLock<Vec<Vec<usize>>>,
}

impl Clone for CayleyGroup {
    fn clone(&self) -> Self {
        Self {
            n: self.n,
            table: self.table.clone(),
            identity: self.identity,
            inverses: self.inverses.clone(),
            orders: self.orders.clone(),
            generators: OnceLock::new(),
            classes: OnceLock::new(),
        }
    }
}

impl PartialEq for CayleyGroup {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}
impl Eq for CayleyGroup {}

/// Validates a row-major table of `n * n` entries.
///
/// Checks, in order: entries in range and Latin square, two-sided identity,
/// two-sided inverses, associativity. Associativity uses Light's test over a
/// set that generates the table under multiplication, so it costs
/// `O(n^2)` per generator.
pub fn validate_table(n: usize, table: Vec<u32>) -> Result<CayleyGroup> {
    use NotAGroupReason::*;
    if n == 0 || table.len() != n * n {
        return Err(Error::NotAGroup(NonLatinSquare));
    }
    let mut seen = vec![u32::MAX; n];
    for r in 0..n {
        for c in 0..n {
            let x = table[r * n + c] as usize;
            if x >= n || seen[x] == r as u32 {
                return Err(Error::NotAGroup(NonLatinSquare));
            }
            seen[x] = r as u32;
        }
    }
    let mut seen = vec![u32::MAX; n];
    for c in 0..n {
        for r in 0..n {
            let x = table[r * n + c] as usize;
            if seen[x] == c as u32 {
                return Err(Error::NotAGroup(NonLatinSquare));
            }
            seen[x] = c as u32;
        }
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|x| table[e * n + x] as usize == x && table[x * n + e] as usize == x))
        .ok_or(Error::NotAGroup(NoIdentity))?;
    let mut inverses = vec![0u32; n];
    for x in 0..n {
        let y = (0..n).find(|&y| table[x * n + y] as usize == identity).unwrap();
        if table[y * n + x] as usize != identity {
            return Err(Error::NotAGroup(MissingInverse));
        }
        inverses[x] = y as u32;
    }
    // generators of the magma: grow until right multiplication from the
    // identity reaches everything
    let mut reached = vec![false; n];
    reached[identity] = true;
    let mut order_seen = vec![identity];
    let mut gens: Vec<usize> = Vec::new();
    for cand in 0..n {
        if reached[cand] {
            continue;
        }
        gens.push(cand);
        let mut i = 0;
        // every reached element must be explored with the new generator
        let mut frontier: Vec<usize> = order_seen.clone();
        while i < frontier.len() {
            let x = frontier[i];
            i += 1;
            for &s in &gens {
                let y = table[x * n + s] as usize;
                if !reached[y] {
                    reached[y] = true;
                    order_seen.push(y);
                    frontier.push(y);
                }
            }
        }
    }
    for &a in &gens {
        for x in 0..n {
            let xa = table[x * n + a] as usize;
            let row_xa = &table[xa * n..(xa + 1) * n];
            let row_x = &table[x * n..(x + 1) * n];
            let row_a = &table[a * n..(a + 1) * n];
            for y in 0..n {
                if row_xa[y] != row_x[row_a[y] as usize] {
                    return Err(Error::NotAGroup(NonAssociative));
                }
            }
        }
    }
    Ok(CayleyGroup::assemble(n, table, identity, inverses))
}

/// Validates a table given as rows.
pub fn validate_rows(rows: &[Vec<usize>]) -> Result<CayleyGroup> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::NotAGroup(NotAGroupReason::NonLatinSquare));
    }
    let table = rows.iter().flatten().map(|&x| u32::try_from(x).unwrap_or(u32::MAX)).collect();
    validate_table(n, table)
}

impl CayleyGroup {
    fn assemble(n: usize, table: Vec<u32>, identity: usize, inverses: Vec<u32>) -> Self {
        let mut orders = vec![0u32; n];
        for x in 0..n {
            let mut k = 1;
            let mut y = x;
            while y != identity {
                y = table[y * n + x] as usize;
                k += 1;
            }
            orders[x] = k;
        }
        Self { n, table, identity, inverses, orders, generators: OnceLock::new(), classes: OnceLock::new() }
    }

    /// Builds a group from an internally constructed table. The table is
    /// still validated.
    pub(crate) fn from_trusted(n: usize, table: Vec<u32>) -> Self {
        validate_table(n, table).expect("internally constructed table is a group")
    }

    pub fn order(&self) -> usize {
        self.n
    }
    pub fn identity(&self) -> usize {
        self.identity
    }
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }
    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }
    pub fn table(&self) -> &[u32] {
        &self.table
    }
    pub fn row(&self, a: usize) -> &[u32] {
        &self.table[a * self.n..(a + 1) * self.n]
    }
    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a] as usize
    }
    pub fn element_orders(&self) -> &[u32] {
        &self.orders
    }
    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.orders[a] as i64;
        let k = k.rem_euclid(o);
        let mut r = self.identity;
        for _ in 0..k {
            r = self.mul(r, a);
        }
        r
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `x^-1 y^-1 x y`.
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Exponent: lcm of element orders.
    pub fn exponent(&self) -> usize {
        self.orders.iter().fold(1u64, |acc, &o| crate::linalg::lcm(acc, o as u64)) as usize
    }

    /// A small generating set, chosen greedily from elements of large order.
    pub fn generators(&self) -> &[usize] {
        self.generators.get_or_init(|| {
            let mut cands: Vec<usize> = (0..self.n).collect();
            cands.sort_by_key(|&x| (std::cmp::Reverse(self.orders[x]), x));
            let mut sub = Subgroup::trivial(self);
            for x in cands {
                if sub.len() == self.n {
                    break;
                }
                if !sub.contains(x) {
                    sub = sub.extended(self, &[x]);
                }
            }
            sub.generators().to_vec()
        })
    }

    /// Conjugacy classes, each sorted, ordered by least element.
    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        self.classes.get_or_init(|| {
            let gens = self.generators().to_vec();
            let mut class_of = vec![usize::MAX; self.n];
            let mut classes: Vec<Vec<usize>> = Vec::new();
            for x in 0..self.n {
                if class_of[x] != usize::MAX {
                    continue;
                }
                let id = classes.len();
                class_of[x] = id;
                let mut orbit = vec![x];
                let mut i = 0;
                while i < orbit.len() {
                    let y = orbit[i];
                    i += 1;
                    for &g in &gens {
                        let z = self.conj(y, g);
                        if class_of[z] == usize::MAX {
                            class_of[z] = id;
                            orbit.push(z);
                        }
                    }
                }
                orbit.sort_unstable();
                classes.push(orbit);
            }
            classes
        })
    }

    /// The group with every element `x` renamed `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> CayleyGroup {
        let n = self.n;
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.mul(a, b)] as u32;
            }
        }
        let mut inverses = vec![0u32; n];
        for a in 0..n {
            inverses[perm[a]] = perm[self.inv(a)] as u32;
        }
        CayleyGroup::assemble(n, table, perm[self.identity], inverses)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic_rows(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
    }

    /// Exhaustive axiom check used as an oracle.
    fn brute_is_group(rows: &[Vec<usize>]) -> bool {
        let n = rows.len();
        let latin = (0..n).all(|r| {
            let mut s: Vec<usize> = rows[r].clone();
            s.sort();
            let mut c: Vec<usize> = (0..n).map(|i| rows[i][r]).collect();
            c.sort();
            s == (0..n).collect::<Vec<_>>() && c == s
        });
        let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| rows[rows[a][b]][c] == rows[a][rows[b][c]])));
        let ident = (0..n).any(|e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x));
        latin && assoc && ident
    }

    #[test]
    fn cyclic_tables_validate() {
        for n in 1..12 {
            let g = validate_rows(&cyclic_rows(n)).unwrap();
            assert_eq!(g.order(), n);
            assert_eq!(g.identity(), 0);
            assert!(g.is_abelian());
            assert_eq!(g.exponent(), n);
        }
    }

    #[test]
    fn altered_z4_is_rejected() {
        let mut rows = cyclic_rows(4);
        rows[1][1] = 0;
        assert!(!brute_is_group(&rows));
        assert!(matches!(validate_rows(&rows), Err(Error::NotAGroup(_))));
    }

    #[test]
    fn identity_not_first_is_found() {
        // Z3 with identity labelled 2
        let perm = [1usize, 2, 0];
        let g = validate_rows(&cyclic_rows(3)).unwrap().relabel(&perm);
        let again = validate_table(3, g.table().to_vec()).unwrap();
        assert_eq!(again.identity(), 1);
        assert_eq!(again.inv(again.identity()), again.identity());
    }

    #[test]
    fn non_associative_loop_is_rejected() {
        // smallest non-associative loop, order 5
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(!brute_is_group(&rows));
        assert_eq!(validate_rows(&rows), Err(Error::NotAGroup(NotAGroupReason::NonAssociative)));
    }

    #[test]
    fn classes_partition_group() {
        let s3 = families::symmetric(3);
        let sizes: Vec<usize> = s3.conjugacy_classes().iter().map(|c| c.len()).collect();
        let mut sorted = sizes.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 2, 3]);
    }
}
