//! Group constructions from extension data: reconstruction, semidirect and
//! central products, Baer groups of alternating bilinear maps, the
//! centralizer core of an extension with inner action, and complements.

use crate::abelian::{AbelianAut, AbelianStructure};
use crate::cayley::{direct_product, quotient_with_section, validate_table, CayleyGroup, GroupMap, Subgroup};
use crate::cohomology::{coboundary_witness, verify_extension_data, ExtensionData, GeneralExtensionData};
use crate::error::{Error, Result};
use crate::linalg::inv_mod;
use std::sync::Arc;

/// Element `(a, q)` of a reconstructed group, where `a` is given by its
/// coordinate code. Labels are lexicographic in `(code, q)`.
pub fn reconstructed_index(a_code: usize, q: usize, q_order: usize) -> usize {
    a_code * q_order + q
}

/// The group on `A x Q` with `(a, p)(b, q) = (a + theta_p(b) + f(p, q), pq)`.
pub fn reconstruct_abelian(ed: &ExtensionData) -> Result<CayleyGroup> {
    if !verify_extension_data(ed) {
        return Err(Error::InvalidExtensionData("abelian extension data fails the cocycle identities".into()));
    }
    let ed = ed.to_full();
    let a = &ed.coefficient;
    let q = &ed.quotient;
    let (na, nq) = (a.order(), q.order());
    let n = na * nq;
    let coords: Vec<Vec<u64>> = (0..na).map(|c| a.coords_u64(a.element_of_code(c))).collect();
    // theta_p applied to every code
    let acted: Vec<Vec<usize>> = ed.action.iter().map(|t| coords.iter().map(|c| a.code(&t.apply(a, c))).collect()).collect();
    let fcode: Vec<usize> = (0..nq * nq).map(|c| a.code(&ed.value(c / nq, c % nq))).collect();
    let add = |x: usize, y: usize| a.code(&a.add(&coords[x], &coords[y]));
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        let (ax, p) = (x / nq, x % nq);
        for y in 0..n {
            let (by, r) = (y / nq, y % nq);
            let s = add(add(ax, acted[p][by]), fcode[p * nq + r]);
            table[x * n + y] = reconstructed_index(s, q.mul(p, r), nq) as u32;
        }
    }
    validate_table(n, table)
}

/// The group on `N x Q` with `(n, p)(m, q) = (n T(p)(m) f(p, q), pq)`;
/// `(n, q)` has index `n |Q| + q`.
pub fn reconstruct_general(ged: &GeneralExtensionData) -> Result<CayleyGroup> {
    if !ged.verify() {
        return Err(Error::InvalidExtensionData("general extension data fails the extension identities".into()));
    }
    let (nn, q) = (&ged.normal, &ged.quotient);
    let nq = q.order();
    let n = nn.order() * nq;
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        let (a, p) = (x / nq, x % nq);
        for y in 0..n {
            let (b, r) = (y / nq, y % nq);
            let m = nn.mul(nn.mul(a, ged.act(p, b)), ged.value(p, r));
            table[x * n + y] = (m * nq + q.mul(p, r)) as u32;
        }
    }
    validate_table(n, table)
}

/// `A ⋊_theta Q`, the reconstruction with zero cocycle.
pub fn semidirect_product(a: &AbelianStructure, q: Arc<CayleyGroup>, theta: Vec<AbelianAut>) -> Result<CayleyGroup> {
    let zero = a.zero();
    let ed = ExtensionData::from_values(a.clone(), q, theta, |_, _| zero.clone());
    reconstruct_abelian(&ed)
}

/// An alternating bilinear map `Z_p^l x Z_p^l -> Z_p^k`, given on basis
/// pairs: `values[i][j] = f(e_i, e_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearMap {
    pub p: u64,
    pub k: usize,
    pub l: usize,
    pub values: Vec<Vec<Vec<u64>>>,
}

impl BilinearMap {
    /// Checks shape and that the map is alternating.
    pub fn new(p: u64, k: usize, l: usize, values: Vec<Vec<Vec<u64>>>) -> Result<Self> {
        let bad = |m: &str| Error::PreconditionFailed(format!("bilinear map: {m}"));
        if values.len() != l || values.iter().any(|r| r.len() != l || r.iter().any(|v| v.len() != k)) {
            return Err(bad("shape"));
        }
        let values: Vec<Vec<Vec<u64>>> = values.into_iter().map(|r| r.into_iter().map(|v| v.into_iter().map(|x| x % p).collect()).collect()).collect();
        for i in 0..l {
            if values[i][i].iter().any(|&x| x != 0) {
                return Err(bad("not alternating"));
            }
            for j in 0..l {
                if (0..k).any(|t| (values[i][j][t] + values[j][i][t]) % p != 0) {
                    return Err(bad("not alternating"));
                }
            }
        }
        Ok(Self { p, k, l, values })
    }

    pub fn eval(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.k];
        for i in 0..self.l {
            for j in 0..self.l {
                let c = x[i] * y[j] % self.p;
                if c == 0 {
                    continue;
                }
                for (o, v) in out.iter_mut().zip(&self.values[i][j]) {
                    *o = (*o + c * v) % self.p;
                }
            }
        }
        out
    }

    /// Text form: `p k l`, then `l^2` lines of `k` entries, row-major.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("bilinear map: {m}"));
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let nums = |l: Option<&str>| -> Result<Vec<u64>> {
            l.ok_or_else(|| bad("truncated"))?.split_whitespace().map(|t| t.parse().map_err(|_| bad("bad number"))).collect()
        };
        let head = nums(lines.next())?;
        let [p, k, l] = head[..] else { return Err(bad("header")) };
        if !crate::linalg::is_prime(p) {
            return Err(bad("modulus is not prime"));
        }
        let (k, l) = (k as usize, l as usize);
        let mut values = vec![vec![Vec::new(); l]; l];
        for i in 0..l {
            for j in 0..l {
                let v = if k == 0 { Vec::new() } else { nums(lines.next())? };
                if v.len() != k {
                    return Err(bad("entry length"));
                }
                values[i][j] = v;
            }
        }
        Self::new(p, k, l, values)
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("{} {} {}\n", self.p, self.k, self.l);
        for row in &self.values {
            for v in row {
                out.push_str(&v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
                out.push('\n');
            }
        }
        out
    }
}

fn digits(mut code: usize, p: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0u64; len];
    for slot in out.iter_mut().rev() {
        *slot = code as u64 % p;
        code /= p as usize;
    }
    out
}

fn undigits(v: &[u64], p: u64) -> usize {
    v.iter().fold(0usize, |acc, &x| acc * p as usize + x as usize)
}

/// The group on `Z_p^k x Z_p^l` with
/// `(a, q)(b, q') = (a + b + f(q, q') / 2, q + q')`. Element `(a, q)` has
/// index `code(a) p^l + code(q)`, codes first coordinate most significant.
pub fn baer_group(b: &BilinearMap) -> Result<CayleyGroup> {
    let p = b.p;
    if p == 2 {
        return Err(Error::EvenPrime(p));
    }
    let half = inv_mod(2, p).ok_or(Error::EvenPrime(p))?;
    let (na, nq) = ((p as usize).pow(b.k as u32), (p as usize).pow(b.l as u32));
    let n = na * nq;
    let qv: Vec<Vec<u64>> = (0..nq).map(|c| digits(c, p, b.l)).collect();
    let av: Vec<Vec<u64>> = (0..na).map(|c| digits(c, p, b.k)).collect();
    let mut fcode = vec![0usize; nq * nq];
    let mut qsum = vec![0usize; nq * nq];
    for x in 0..nq {
        for y in 0..nq {
            let f: Vec<u64> = b.eval(&qv[x], &qv[y]).into_iter().map(|v| v * half % p).collect();
            fcode[x * nq + y] = undigits(&f, p);
            let s: Vec<u64> = qv[x].iter().zip(&qv[y]).map(|(u, v)| (u + v) % p).collect();
            qsum[x * nq + y] = undigits(&s, p);
        }
    }
    let mut asum = vec![0usize; na * na];
    for x in 0..na {
        for y in 0..na {
            let s: Vec<u64> = av[x].iter().zip(&av[y]).map(|(u, v)| (u + v) % p).collect();
            asum[x * na + y] = undigits(&s, p);
        }
    }
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        let (a1, q1) = (x / nq, x % nq);
        for y in 0..n {
            let (a2, q2) = (y / nq, y % nq);
            let a = asum[asum[a1 * na + a2] * na + fcode[q1 * nq + q2]];
            table[x * n + y] = (a * nq + qsum[q1 * nq + q2]) as u32;
        }
    }
    validate_table(n, table)
}

/// A central product with the images of both factors.
#[derive(Debug, Clone)]
pub struct CentralProduct {
    pub group: CayleyGroup,
    pub embed1: Vec<usize>,
    pub embed2: Vec<usize>,
}

/// `G1 x G2` modulo `{(y^-1, phi(y)) : y in Y1}`. `phi.image` is indexed by
/// elements of `G1`; only entries on `Y1` are read.
pub fn central_product(g1: &CayleyGroup, g2: &CayleyGroup, y1: &Subgroup, phi: &GroupMap) -> Result<CentralProduct> {
    if !y1.is_central(g1) {
        return Err(Error::NotCentral);
    }
    let z2 = g2.center();
    let mut seen = vec![false; g2.order()];
    for &y in y1.members() {
        let v = phi.apply(y);
        if v >= g2.order() || !z2.contains(v) || std::mem::replace(&mut seen[v], true) {
            return Err(Error::NotCentral);
        }
        for &w in y1.members() {
            if phi.apply(g1.mul(y, w)) != g2.mul(v, phi.apply(w)) {
                return Err(Error::PreconditionFailed("central product map is not a homomorphism".into()));
            }
        }
    }
    let d = Arc::new(direct_product(g1, g2));
    let m = g2.order();
    let kernel: Vec<usize> = y1.members().iter().map(|&y| g1.inv(y) * m + phi.apply(y)).collect();
    let k = Subgroup::from_members(&d, &kernel)?;
    let qp = quotient_with_section(d, &k)?;
    let embed1 = g1.elements().map(|x| qp.project(x * m + g2.identity())).collect();
    let embed2 = g2.elements().map(|x| qp.project(g1.identity() * m + x)).collect();
    Ok(CentralProduct { group: (*qp.quotient).clone(), embed1, embed2 })
}

/// The centralizer core `G|_{Z(N)}` of an extension whose outer action is
/// trivial, as a subgroup of `G` and as a group.
#[derive(Debug, Clone)]
pub struct TrivialCore {
    pub subgroup: Subgroup,
    pub group: CayleyGroup,
    pub embed: Vec<usize>,
}

/// For each coset of `N` finds, by scanning `N`, an element inducing the same
/// automorphism of `N` as the coset representative; the corrected
/// representatives together with `Z(N)` form `G|_{Z(N)}`, an extension of
/// `Z(N)` by `G/N` with `G = N ×_{Z(N)} G|_{Z(N)}`.
pub fn act_trivial_core(g: &Arc<CayleyGroup>, n: &Subgroup) -> Result<TrivialCore> {
    let qp = quotient_with_section(g.clone(), n)?;
    let ngens = n.generators();
    let mut members: Vec<usize> = n.members().iter().copied().filter(|&z| ngens.iter().all(|&x| g.mul(z, x) == g.mul(x, z))).collect();
    for q in qp.quotient.elements() {
        let s = qp.lift(q);
        let x = n
            .members()
            .iter()
            .copied()
            .find(|&x| ngens.iter().all(|&y| g.conj(y, x) == g.conj(y, s)))
            .ok_or(Error::OuterActionNontrivial)?;
        members.push(g.mul(g.inv(x), s));
    }
    let subgroup = Subgroup::generated(g, &members);
    let (group, embed) = subgroup.as_group(g);
    Ok(TrivialCore { subgroup, group, embed })
}

/// A complement of the abelian normal subgroup `a`: with `f` and `theta` the
/// extension data over `a`, solves `u_p + theta_p(u_q) + f(p, q) = u_{pq}`
/// and returns `{u_q s(q)}`.
pub fn find_complement(g: &Arc<CayleyGroup>, a: &Subgroup) -> Result<Option<Subgroup>> {
    let qp = quotient_with_section(g.clone(), a)?;
    let kernel = crate::cohomology::AbelianKernel::new(g, a)?;
    let ed = crate::cohomology::extract_with_kernel(&qp, &kernel);
    let coef = &ed.coefficient;
    let Some(u) = coboundary_witness(coef, &ed.quotient, &ed.action, |p, q| coef.neg(&ed.value(p, q))) else {
        return Ok(None);
    };
    let members: Vec<usize> = qp.quotient.elements().map(|q| g.mul(kernel.element(&u[q]), qp.lift(q))).collect();
    Ok(Some(Subgroup::from_members(g, &members)?))
}
