//! Groups whose solvable radical is elementary abelian: for each `beta`,
//! the coefficient maps compatible with both actions and classes form a
//! module over a matrix algebra, and an isomorphism exists iff that module
//! has an invertible generator.

use super::central::quotient_isos;
use super::{abelian_verdict, assemble_witness, checked, inverse_table, to_aut, transport_rows, yes, IsoVerdict, Side};
use crate::cayley::{CayleyGroup, Subgroup};
use crate::cohomology::{ColumnLayout, CochainMatrix, VectorCoboundaries};
use crate::config::{Caps, EngineConfig};
use crate::error::{check_cap, precondition, Error, Result};
use crate::linalg::gfp::{self, nullspace, Mat};
use crate::linalg::{inv_mod, Echelon};
use std::sync::Arc;

const NAME: &str = "elem-abelian-radical";

/// A matrix algebra `U` (basis, containing the identity) and a left
/// `U`-module `V` of `k x k` matrices over `GF(p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraModulePair {
    pub p: u64,
    pub k: usize,
    pub u: Vec<Mat>,
    pub v: Vec<Mat>,
}

fn flat(m: &Mat) -> Vec<u32> {
    m.iter().flatten().copied().collect()
}

fn span(p: u64, k: usize, mats: &[Mat]) -> Echelon {
    let rows: Vec<Vec<u32>> = mats.iter().map(flat).collect();
    Echelon::from_rows(p, k * k, rows.iter().map(|r| r.as_slice()), false)
}

fn combination(p: u64, k: usize, basis: &[Mat], coefs: &[u32]) -> Mat {
    let mut out = vec![vec![0u32; k]; k];
    for (b, &c) in basis.iter().zip(coefs) {
        if c == 0 {
            continue;
        }
        for i in 0..k {
            for j in 0..k {
                out[i][j] = ((out[i][j] as u64 + c as u64 * b[i][j] as u64) % p) as u32;
            }
        }
    }
    out
}

impl AlgebraModulePair {
    /// Identity in `U`, `U` closed under products, and `U V` inside `V`.
    pub fn is_valid(&self) -> bool {
        let (p, k) = (self.p, self.k);
        let eu = span(p, k, &self.u);
        let ev = span(p, k, &self.v);
        eu.contains(&flat(&gfp::identity(k)))
            && self.u.iter().all(|a| self.u.iter().all(|b| eu.contains(&flat(&gfp::mat_mul(p, a, b)))))
            && self.u.iter().all(|a| self.v.iter().all(|b| ev.contains(&flat(&gfp::mat_mul(p, a, b)))))
    }
}

/// A generator of `V` as a `U`-module, found by scanning every element of
/// `V` in lexicographic coefficient order; `None` if `V` is not cyclic.
pub fn module_cyclicity_test(pair: &AlgebraModulePair, caps: &Caps) -> Result<Option<Mat>> {
    let (p, k) = (pair.p, pair.k);
    let basis: Vec<Mat> = span(p, k, &pair.v)
        .rows()
        .iter()
        .map(|r| r.chunks(k.max(1)).map(<[u32]>::to_vec).collect())
        .collect();
    let d = basis.len();
    let size = (p as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    check_cap("cyclicity search", size, caps.cyclicity)?;
    let mut coefs = vec![0u32; d];
    loop {
        let v = combination(p, k, &basis, &coefs);
        let images: Vec<Mat> = pair.u.iter().map(|a| gfp::mat_mul(p, a, &v)).collect();
        if span(p, k, &images).rank() == d {
            return Ok(Some(v));
        }
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            coefs[i] += 1;
            if (coefs[i] as u64) < p {
                break;
            }
            coefs[i] = 0;
        }
    }
}

/// Data over `Q_2` shared by every `beta`.
#[derive(Debug)]
struct Target {
    quotient: Arc<CayleyGroup>,
    moduli: Vec<u64>,
    theta2: Vec<Mat>,
    f2: Vec<Vec<u32>>,
    coboundaries: VectorCoboundaries,
    r2: Vec<u32>,
    u: Vec<Mat>,
}

/// One `beta`: the data of `G` transported to `Q_2` along `beta`, against
/// the data of `H`.
#[derive(Debug, Clone)]
pub struct BetaInstance {
    pub p: u64,
    pub k: usize,
    pub beta: Vec<usize>,
    /// `theta_1(beta^-1 x)`, indexed by `x` in `Q_2`.
    pub theta1: Vec<Mat>,
    /// `f_1(beta^-1 x, beta^-1 y)` as `k` rows modulo `p`.
    pub f1: Vec<Vec<u32>>,
    target: Arc<Target>,
}

fn mats_of(action: &[crate::abelian::AbelianAut], p: u64) -> Vec<Mat> {
    action.iter().map(|t| t.matrix.iter().map(|r| r.iter().map(|&x| (x % p) as u32).collect()).collect()).collect()
}

fn rows_mod(rows: &[Vec<u64>], p: u64) -> Vec<Vec<u32>> {
    rows.iter().map(|r| r.iter().map(|&x| (x % p) as u32).collect()).collect()
}

impl Target {
    fn new(s2: &Side, p: u64) -> Self {
        let quotient = s2.qp.quotient.clone();
        let coboundaries = VectorCoboundaries::new(&quotient, s2.a(), &s2.ed.action, p);
        let theta2 = mats_of(&s2.ed.action, p);
        let f2 = rows_mod(&s2.ed.cocycle.rows, p);
        let r2 = coboundaries.residue_flat(&f2.concat());
        let mut t = Self { quotient, moduli: s2.a().orders().to_vec(), theta2, f2, coboundaries, r2, u: Vec::new() };
        t.u = t.solve(&t.theta2, &t.f2);
        t
    }

    fn p(&self) -> u64 {
        self.moduli[0]
    }

    fn k(&self) -> usize {
        self.moduli.len()
    }

    /// Basis of `{X : X theta_l(q) = theta_2(q) X for all q,
    /// [X f] in span [f_2]}`.
    fn solve(&self, theta_l: &[Mat], f: &[Vec<u32>]) -> Vec<Mat> {
        let (p, k) = (self.p(), self.k());
        let vars = k * k + 1;
        let mut eqs: Vec<Vec<u32>> = Vec::new();
        for &q in self.quotient.generators() {
            for r in 0..k {
                for c in 0..k {
                    let mut row = vec![0u64; vars];
                    for j in 0..k {
                        row[r * k + j] += theta_l[q][j][c] as u64;
                        row[j * k + c] += (p - self.theta2[q][r][j] as u64) % p;
                    }
                    eqs.push(row.into_iter().map(|x| (x % p) as u32).collect());
                }
            }
        }
        let width = f.first().map_or(0, Vec::len);
        let mut cols: Vec<Vec<u32>> = Vec::with_capacity(vars);
        for i in 0..k {
            for j in 0..k {
                let mut v = vec![0u32; k * width];
                v[i * width..(i + 1) * width].copy_from_slice(&f[j]);
                cols.push(self.coboundaries.residue_flat(&v));
            }
        }
        cols.push(self.r2.iter().map(|&x| ((p - x as u64) % p) as u32).collect());
        for t in 0..k * width {
            if cols.iter().any(|c| c[t] != 0) {
                eqs.push(cols.iter().map(|c| c[t]).collect());
            }
        }
        let null = nullspace(p, vars, &eqs);
        let projected: Vec<Vec<u32>> = null.iter().map(|x| x[..k * k].to_vec()).collect();
        Echelon::from_rows(p, k * k, projected.iter().map(|r| r.as_slice()), false)
            .rows()
            .iter()
            .map(|r| r.chunks(k).map(<[u32]>::to_vec).collect())
            .collect()
    }

    /// Residue of `X f` modulo `B^2`.
    fn residue_of(&self, x: &Mat, f: &[Vec<u32>]) -> Vec<u32> {
        self.coboundaries.residue_flat(&apply_rows(self.p(), x, f).concat())
    }
}

fn apply_rows(p: u64, x: &Mat, f: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let width = f.first().map_or(0, Vec::len);
    x.iter()
        .map(|row| {
            (0..width)
                .map(|c| (row.iter().zip(f).map(|(&a, r)| a as u64 * r[c] as u64).sum::<u64>() % p) as u32)
                .collect()
        })
        .collect()
}

impl BetaInstance {
    fn new(s1: &Side, beta: Vec<usize>, target: Arc<Target>) -> Self {
        let p = target.p();
        let inv = inverse_table(&beta);
        let all = mats_of(&s1.ed.action, p);
        let theta1 = inv.iter().map(|&x| all[x].clone()).collect();
        let f1 = rows_mod(&transport_rows(&s1.ed.cocycle.rows, &inv), p);
        Self { p, k: target.k(), beta, theta1, f1, target }
    }

    pub fn theta2(&self) -> &[Mat] {
        &self.target.theta2
    }

    pub fn f2(&self) -> &[Vec<u32>] {
        &self.target.f2
    }

    pub fn quotient(&self) -> &Arc<CayleyGroup> {
        &self.target.quotient
    }

    /// `U` and `V` for this `beta`.
    pub fn module_pair(&self) -> AlgebraModulePair {
        AlgebraModulePair { p: self.p, k: self.k, u: self.target.u.clone(), v: self.target.solve(&self.theta1, &self.f1) }
    }

    /// An `alpha` with `alpha theta_1 = theta_2 alpha` on `Q_2` and
    /// `[alpha f_1] = [f_2]`, from a module generator rescaled by `a^-1`.
    pub fn decide(&self, caps: &Caps) -> Result<Option<Mat>> {
        let pair = self.module_pair();
        let Some(gen) = module_cyclicity_test(&pair, caps)? else { return Ok(None) };
        if gfp::inverse(self.p, &gen).is_none() {
            return Ok(None);
        }
        let p = self.p;
        let res = self.target.residue_of(&gen, &self.f1);
        let r2 = &self.target.r2;
        let Some(c) = r2.iter().position(|&x| x != 0) else {
            return Ok(Some(gen));
        };
        let a = res[c] as u64 * inv_mod(r2[c] as u64, p).expect("nonzero mod p") % p;
        if a == 0 {
            return Ok(None);
        }
        let ai = inv_mod(a, p).expect("nonzero mod p");
        let alpha: Mat = gen.iter().map(|r| r.iter().map(|&x| (x as u64 * ai % p) as u32).collect()).collect();
        if self.target.residue_of(&alpha, &self.f1) != *r2 {
            return Err(precondition("rescaled generator does not match the class"));
        }
        Ok(Some(alpha))
    }
}

/// The radical when it is elementary abelian, otherwise the abelian socle
/// for the least prime that has one. Both choices are characteristic and
/// depend only on the isomorphism type.
fn characteristic_subgroup(g: &Arc<CayleyGroup>) -> Result<(Subgroup, String)> {
    let r = g.solvable_radical();
    if r.is_abelian(g) {
        let (rg, _) = r.as_group(g);
        if rg.order() == 1 || crate::abelian::primary_decomposition(Arc::new(rg))?.elementary_prime().is_some() {
            return Ok((r, "radical".into()));
        }
    }
    match g.abelian_socle_primes().first() {
        Some(&p) => Ok((g.abelian_socle(p), format!("abelian {p}-socle"))),
        None => Err(Error::StrategyInapplicable { strategy: NAME, reason: "no elementary abelian characteristic subgroup".into() }),
    }
}

enum Prepared {
    Done(IsoVerdict),
    Trivial(Side, Side, Vec<Vec<usize>>),
    Ready(Side, Side, Vec<Vec<usize>>, u64),
}

fn prepare(g: &Arc<CayleyGroup>, h: &Arc<CayleyGroup>, config: &EngineConfig) -> Result<Prepared> {
    let (r1, l1) = characteristic_subgroup(g)?;
    let (r2, l2) = characteristic_subgroup(h)?;
    if g.order() != h.order() || r1.len() != r2.len() || l1 != l2 {
        return Ok(Prepared::Done(IsoVerdict::no(NAME, format!("{l1} of order {} vs {l2} of order {}", r1.len(), r2.len()))));
    }
    if r1.len() == g.order() {
        return abelian_verdict(NAME, g, h).map(Prepared::Done);
    }
    let s1 = Side::new(g, &r1)?;
    let s2 = Side::new(h, &r2)?;
    if s1.a().invariants() != s2.a().invariants() {
        return Ok(Prepared::Done(IsoVerdict::no(NAME, format!("{l1} differs"))));
    }
    let Some(psis) = quotient_isos(&s1.qp.quotient, &s2.qp.quotient, config)? else {
        return Ok(Prepared::Done(IsoVerdict::no(NAME, format!("quotients by the {l1} are not isomorphic"))));
    };
    Ok(match s1.a().elementary_prime() {
        None => Prepared::Trivial(s1, s2, psis),
        Some(p) => Prepared::Ready(s1, s2, psis, p),
    })
}

/// Decides `G ~ H` through an elementary abelian characteristic subgroup:
/// the solvable radical when it is elementary abelian, otherwise the least
/// abelian socle.
pub fn iso_elem_abelian_radical(g: &Arc<CayleyGroup>, h: &Arc<CayleyGroup>, config: &EngineConfig) -> Result<IsoVerdict> {
    let v = match prepare(g, h, config)? {
        Prepared::Done(v) => v,
        Prepared::Trivial(s1, s2, psis) => {
            let w = assemble_witness(&s1.qp, &s1.kernel, &s2.qp, &s2.kernel, &psis[0], &to_aut(&Vec::new()), &vec![Vec::new(); psis[0].len()]);
            yes(NAME, w, vec!["trivial radical: quotients isomorphic".into()])
        }
        Prepared::Ready(s1, s2, psis, p) => {
            let target = Arc::new(Target::new(&s2, p));
            let mut found = None;
            for (i, beta) in psis.into_iter().enumerate() {
                let inst = BetaInstance::new(&s1, beta, target.clone());
                if let Some(alpha) = inst.decide(&config.caps)? {
                    found = Some((i, inst, alpha));
                    break;
                }
            }
            match found {
                None => IsoVerdict::no(NAME, "no beta yields an invertible module generator"),
                Some((i, inst, alpha)) => {
                    let n = target.quotient.order();
                    let af = apply_rows(p, &alpha, &inst.f1);
                    let rows: Vec<Vec<u64>> = af
                        .iter()
                        .zip(&target.f2)
                        .map(|(x, y)| x.iter().zip(y).map(|(&a, &b)| (a as u64 + p - b as u64) % p).collect())
                        .collect();
                    let diff = CochainMatrix { moduli: target.moduli.clone(), layout: ColumnLayout::Full { q_order: n }, rows };
                    let w = target.coboundaries.preimage(&diff).ok_or_else(|| precondition("alpha f_1 - f_2 is not a coboundary"))?;
                    let aut = to_aut(&alpha);
                    let witness = assemble_witness(&s1.qp, &s1.kernel, &s2.qp, &s2.kernel, &inst.beta, &aut, &w);
                    yes(NAME, witness, vec![format!("beta #{i}: invertible generator"), format!("alpha {:?}", alpha)])
                }
            }
        }
    };
    checked(g, h, v)
}

/// Every per-`beta` instance examined by [`iso_elem_abelian_radical`]
/// (empty when the verdict is reached before the `beta` loop).
pub fn beta_instances(g: &Arc<CayleyGroup>, h: &Arc<CayleyGroup>, config: &EngineConfig) -> Result<Vec<BetaInstance>> {
    Ok(match prepare(g, h, config)? {
        Prepared::Ready(s1, s2, psis, p) => {
            let target = Arc::new(Target::new(&s2, p));
            psis.into_iter().map(|b| BetaInstance::new(&s1, b, target.clone())).collect()
        }
        _ => Vec::new(),
    })
}
