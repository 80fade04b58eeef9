//! Coboundary spaces `B^2(Q, A)`: bases, residues modulo `B^2`, coboundary
//! preimages, and the projection onto a complement.

use super::{ColumnLayout, CochainMatrix};
use crate::abelian::{AbelianAut, AbelianStructure};
use crate::cayley::CayleyGroup;
use crate::linalg::{BitEchelon, Echelon};

/// Support of the scalar coboundary `phi_q = delta(1_q)`:
/// `phi_q(x, y) = [x = q] + [y = q] - [xy = q]`, as `(column, coefficient)`.
pub(crate) fn phi_terms(q: &CayleyGroup, target: usize) -> Vec<(usize, i64)> {
    let n = q.order();
    let mut terms: Vec<(usize, i64)> = Vec::with_capacity(3 * n);
    for y in 0..n {
        terms.push((target * n + y, 1));
        terms.push((y * n + target, 1));
    }
    for x in 0..n {
        let y = q.mul(q.inv(x), target);
        terms.push((x * n + y, -1));
    }
    terms
}

pub(crate) fn phi_dense(q: &CayleyGroup, target: usize, modulus: u64) -> Vec<u64> {
    let mut v = vec![0i64; q.order() * q.order()];
    for (c, x) in phi_terms(q, target) {
        v[c] += x;
    }
    v.into_iter().map(|x| x.rem_euclid(modulus as i64) as u64).collect()
}

/// `B^2(Q, Z_p)` for trivial action, spanned by `phi_q` for `q != 1`.
#[derive(Debug, Clone)]
pub struct ScalarCoboundaries {
    p: u64,
    n: usize,
    /// Quotient element of each inserted generator.
    gens: Vec<usize>,
    echelon: Echelon,
}

impl ScalarCoboundaries {
    pub fn new(q: &CayleyGroup, p: u64) -> Self {
        let n = q.order();
        let gens: Vec<usize> = q.elements().filter(|&x| x != q.identity()).collect();
        let mut echelon = Echelon::new(p, n * n, true);
        for &x in &gens {
            let v: Vec<u32> = phi_dense(q, x, p).into_iter().map(|x| x as u32).collect();
            echelon.insert(&v);
        }
        Self { p, n, gens, echelon }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }
    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }
    pub fn echelon(&self) -> &Echelon {
        &self.echelon
    }

    /// Canonical representative of `row + B^2`.
    pub fn residue(&self, row: &[u64]) -> Vec<u32> {
        let mut v: Vec<u32> = row.iter().map(|&x| (x % self.p) as u32).collect();
        self.echelon.reduce(&mut v);
        v
    }

    pub fn contains(&self, row: &[u64]) -> bool {
        self.residue(row).iter().all(|&x| x == 0)
    }

    /// `u : Q -> Z_p` with `delta u = row`, if `row` is a coboundary.
    pub fn preimage(&self, row: &[u64]) -> Option<Vec<u64>> {
        let v: Vec<u32> = row.iter().map(|&x| (x % self.p) as u32).collect();
        let coefs = self.echelon.preimage(&v)?;
        let mut u = vec![0u64; self.n];
        for (&x, &c) in self.gens.iter().zip(&coefs) {
            u[x] = c as u64;
        }
        Some(u)
    }
}

/// `B^2(Q, Z_p^k, theta)` for an arbitrary action, as a subspace of
/// `GF(p)^(k |Q|^2)` (coordinate-major).
#[derive(Debug, Clone)]
pub struct VectorCoboundaries {
    p: u64,
    k: usize,
    n: usize,
    gens: Vec<(usize, usize)>,
    echelon: Echelon,
}

impl VectorCoboundaries {
    pub fn new(q: &CayleyGroup, a: &AbelianStructure, action: &[AbelianAut], p: u64) -> Self {
        let n = q.order();
        let k = a.rank();
        let nn = n * n;
        let mut echelon = Echelon::new(p, k * nn, true);
        let mut gens = Vec::new();
        for t in q.elements().filter(|&x| x != q.identity()) {
            for i in 0..k {
                let mut v = vec![0u32; k * nn];
                let mut add = |row: usize, col: usize, x: u64| {
                    let slot = &mut v[row * nn + col];
                    *slot = ((*slot as u64 + x) % p) as u32;
                };
                for y in 0..n {
                    add(i, t * n + y, 1);
                }
                for x in 0..n {
                    for r in 0..k {
                        add(r, x * n + t, action[x].matrix[r][i] % p);
                    }
                    add(i, x * n + q.mul(q.inv(x), t), p - 1);
                }
                gens.push((t, i));
                echelon.insert(&v);
            }
        }
        Self { p, k, n, gens, echelon }
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn flatten(&self, m: &CochainMatrix) -> Vec<u32> {
        m.rows.iter().flat_map(|r| r.iter().map(|&x| (x % self.p) as u32)).collect()
    }

    pub fn residue(&self, m: &CochainMatrix) -> Vec<u32> {
        let mut v = self.flatten(m);
        self.echelon.reduce(&mut v);
        v
    }

    pub fn residue_flat(&self, v: &[u32]) -> Vec<u32> {
        self.echelon.residue(v)
    }

    /// `u : Q -> A` (coordinates) with `delta_theta u = m`.
    pub fn preimage(&self, m: &CochainMatrix) -> Option<Vec<Vec<u64>>> {
        let coefs = self.echelon.preimage(&self.flatten(m))?;
        let mut u = vec![vec![0u64; self.k]; self.n];
        for (&(t, i), &c) in self.gens.iter().zip(&coefs) {
            u[t][i] = c as u64;
        }
        Some(u)
    }
}

/// An independent spanning set of `B^2(Q, A, theta)` when `A` is
/// elementary abelian, and the nonzero generators `delta(u_{q,i})`
/// otherwise. Each element is a cochain matrix.
pub fn coboundary_basis(q: &CayleyGroup, a: &AbelianStructure, action: &[AbelianAut]) -> Vec<CochainMatrix> {
    let n = q.order();
    let k = a.rank();
    let layout = ColumnLayout::Full { q_order: n };
    let moduli = a.orders();
    if k == 0 || n == 1 {
        return Vec::new();
    }
    let trivial = action.iter().all(|t| t.is_identity());
    if let Some(p) = a.elementary_prime() {
        if trivial {
            let s = ScalarCoboundaries::new(q, p);
            let mut out = Vec::new();
            for i in 0..k {
                for r in s.echelon().rows() {
                    let mut m = CochainMatrix::zero(moduli, layout.clone());
                    m.rows[i] = r.iter().map(|&x| x as u64).collect();
                    out.push(m);
                }
            }
            return out;
        }
        let v = VectorCoboundaries::new(q, a, action, p);
        return v
            .echelon
            .rows()
            .iter()
            .map(|r| CochainMatrix {
                moduli: moduli.to_vec(),
                layout: layout.clone(),
                rows: r.chunks(n * n).map(|c| c.iter().map(|&x| x as u64).collect()).collect(),
            })
            .collect();
    }
    let mut out: Vec<CochainMatrix> = Vec::new();
    let qa = std::sync::Arc::new(q.clone());
    for t in q.elements().filter(|&x| x != q.identity()) {
        for i in 0..k {
            let mut e = vec![0u64; k];
            e[i] = 1;
            let m = super::ExtensionData::from_values(a.clone(), qa.clone(), action.to_vec(), |x, y| {
                let ux = if x == t { e.clone() } else { a.zero() };
                let uy = if y == t { action[x].apply(a, &e) } else { a.zero() };
                let uxy = if q.mul(x, y) == t { a.neg(&e) } else { a.zero() };
                a.add(&a.add(&ux, &uy), &uxy)
            })
            .cocycle;
            if !m.is_zero() && !out.contains(&m) {
                out.push(m);
            }
        }
    }
    out
}

/// `(dim Z^2, dim B^2)` of normalized cochains `Q x Q -> Z_p` with trivial
/// action. The cocycle identity is imposed only for `r` in a generating
/// set: the set of `r` satisfying it for all `p, q` is closed under
/// multiplication, so this cuts out the same space.
pub fn cocycle_space_dimensions(q: &CayleyGroup, p: u64) -> (usize, usize) {
    let n = q.order();
    let e = q.identity();
    let others: Vec<usize> = q.elements().filter(|&x| x != e).collect();
    let mut col = vec![usize::MAX; n * n];
    let mut width = 0;
    for &x in &others {
        for &y in &others {
            col[x * n + y] = width;
            width += 1;
        }
    }
    let b_dim = ScalarCoboundaries::new(q, p).dim();
    let gens = q.generators().to_vec();
    let mut eqs: Vec<Vec<(usize, i64)>> = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for &r in &gens {
                let mut terms = Vec::with_capacity(4);
                for (a, b, s) in [(x, y, 1), (q.mul(x, y), r, 1), (y, r, -1), (x, q.mul(y, r), -1)] {
                    let c = col[a * n + b];
                    if c != usize::MAX {
                        terms.push((c, s));
                    }
                }
                eqs.push(terms);
            }
        }
    }
    let rank = if p == 2 {
        let mut ech = BitEchelon::new(width);
        for t in &eqs {
            ech.insert_support(t.iter().map(|&(c, _)| c));
        }
        ech.rank()
    } else {
        let mut ech = Echelon::new(p, width, false);
        for t in &eqs {
            let mut v = vec![0u32; width];
            for &(c, s) in t {
                v[c] = ((v[c] as i64 + s).rem_euclid(p as i64)) as u32;
            }
            ech.insert(&v);
        }
        ech.rank()
    };
    (width - rank, b_dim)
}

/// Projection of `C^2(Q, Z_p^k)` onto the complement `W` of `B^2` spanned by
/// the pivot-free coordinates of the row-reduced coboundary basis. The same
/// column operations act on every row, so the projection commutes with
/// every coefficient automorphism.
#[derive(Debug, Clone)]
pub struct ProjectionComplement {
    scalar: ScalarCoboundaries,
}

pub fn projection_complement(q: &CayleyGroup, p: u64) -> ProjectionComplement {
    ProjectionComplement { scalar: ScalarCoboundaries::new(q, p) }
}

impl ProjectionComplement {
    /// Columns spanning `W`.
    pub fn complement_columns(&self) -> Vec<usize> {
        let piv = self.scalar.echelon().pivots();
        (0..self.scalar.echelon().width()).filter(|c| piv.binary_search(c).is_err()).collect()
    }

    pub fn project(&self, m: &CochainMatrix) -> CochainMatrix {
        CochainMatrix {
            moduli: m.moduli.clone(),
            layout: m.layout.clone(),
            rows: m.rows.iter().map(|r| self.scalar.residue(r).into_iter().map(|x| x as u64).collect()).collect(),
        }
    }

    pub fn coboundaries(&self) -> &ScalarCoboundaries {
        &self.scalar
    }
}
