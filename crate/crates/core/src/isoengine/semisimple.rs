//! Central-radical groups whose quotient by the center is a direct product
//! of nonabelian simple groups. Factor cocycles are pulled back to one
//! reference group per isomorphism type and compared either through
//! per-factor class labels or through code equivalence of stacked matrices.

use super::{abelian_iso, assemble_witness, checked, matching_transform, to_aut, yes, IsoVerdict};
use crate::abelian::{enumerate_abelian_automorphisms, AbelianAut, AbelianStructure};
use crate::cayley::{automorphisms_mod_inner, brute_force_iso, quotient_with_section, CayleyGroup, QuotientPresentation};
use crate::cohomology::{
    coboundary_witness, extract_with_kernel, restrict_to_factor, split_central_direct_factor, AbelianKernel, ScalarCoboundaries,
};
use crate::config::EngineConfig;
use crate::error::{precondition, Error, Result};
use crate::linalg::gfp;
use crate::permtools::{block_group, code_equivalence_coset, coset_intersection, BlockStructure};
use std::sync::Arc;

const NAME1: &str = "ss-product-1";
const NAME2: &str = "ss-product-2";

/// One representative per isomorphism type of simple factor, with a
/// transversal of its inner automorphisms (identity first).
#[derive(Default)]
struct Refs {
    groups: Vec<Arc<CayleyGroup>>,
    outer: Vec<Vec<Vec<usize>>>,
}

impl Refs {
    /// Type index of `t` and an isomorphism `T_ref -> t`.
    fn classify(&mut self, t: &CayleyGroup, config: &EngineConfig) -> Result<(usize, Vec<usize>)> {
        for (i, r) in self.groups.iter().enumerate() {
            if let Some(phi) = brute_force_iso(r, t, &config.caps)? {
                return Ok((i, phi.image));
            }
        }
        let outer = automorphisms_mod_inner(t, &config.caps)?.into_iter().map(|m| m.image).collect();
        self.groups.push(Arc::new(t.clone()));
        self.outer.push(outer);
        Ok((self.groups.len() - 1, t.elements().collect()))
    }
}

struct Factor {
    ty: usize,
    /// `T_ref` element -> element of the factor's own quotient.
    phi: Vec<usize>,
    phi_inv: Vec<usize>,
    /// Factor quotient element -> element of `G/Z`.
    to_quotient: Vec<usize>,
    /// `f_i(phi x, phi y)`, one row per coordinate of `Z`.
    fref: Vec<Vec<u64>>,
}

/// `G` over its center with product sections `s(q) = prod_i s_i(q_i)`.
struct ProductSide {
    kernel: AbelianKernel,
    qp: QuotientPresentation,
    factors: Vec<Factor>,
    /// `G/Z` element -> component in each factor quotient. Factors are
    /// sorted by type.
    comps: Vec<Vec<usize>>,
}

fn inapplicable(strategy: &'static str, reason: &str) -> Error {
    Error::StrategyInapplicable { strategy, reason: reason.into() }
}

impl ProductSide {
    fn new(g: &Arc<CayleyGroup>, refs: &mut Refs, strategy: &'static str, config: &EngineConfig) -> Result<Self> {
        if !super::is_central_radical(g) {
            return Err(inapplicable(strategy, "solvable radical differs from the center"));
        }
        let z = g.center();
        let qp0 = quotient_with_section(g.clone(), &z)?;
        let q = qp0.quotient.clone();
        let subs = q.simple_factor_decomposition().map_err(|_| inapplicable(strategy, "quotient is not a product of simple groups"))?;
        let kernel = AbelianKernel::new(g, &z)?;
        let mut factors: Vec<Factor> = Vec::with_capacity(subs.len());
        let mut restrictions = Vec::with_capacity(subs.len());
        for sub in &subs {
            let restr = restrict_to_factor(&qp0, sub)?;
            let mut pos = vec![u32::MAX; g.order()];
            for (i, &x) in restr.embed.iter().enumerate() {
                pos[x] = i as u32;
            }
            let ku = AbelianKernel {
                structure: kernel.structure.clone(),
                embed: kernel.embed.iter().map(|&x| pos[x] as usize).collect(),
                index: restr.embed.iter().map(|&x| kernel.index[x]).collect(),
            };
            let ed = extract_with_kernel(&restr.qp, &ku);
            let (ty, phi) = refs.classify(&restr.qp.quotient, config)?;
            let n = phi.len();
            let fref = ed
                .cocycle
                .rows
                .iter()
                .map(|r| {
                    let mut out = vec![0u64; n * n];
                    for x in 0..n {
                        for y in 0..n {
                            out[x * n + y] = r[phi[x] * n + phi[y]];
                        }
                    }
                    out
                })
                .collect();
            factors.push(Factor { ty, phi_inv: super::inverse_table(&phi), phi, to_quotient: restr.to_quotient.clone(), fref });
            restrictions.push(restr);
        }
        let mut order: Vec<usize> = (0..factors.len()).collect();
        order.sort_by_key(|&i| factors[i].ty);
        let mut slots: Vec<Option<(Factor, crate::cohomology::FactorRestriction)>> = factors.into_iter().zip(restrictions).map(Some).collect();
        let (factors, restrictions): (Vec<Factor>, Vec<_>) = order.iter().map(|&i| slots[i].take().expect("each factor once")).unzip();
        let mut tuples: Vec<(usize, Vec<usize>)> = vec![(q.identity(), Vec::new())];
        for f in &factors {
            let mut next = Vec::with_capacity(tuples.len() * f.to_quotient.len());
            for (x, t) in &tuples {
                for (c, &y) in f.to_quotient.iter().enumerate() {
                    let mut t2 = t.clone();
                    t2.push(c);
                    next.push((q.mul(*x, y), t2));
                }
            }
            tuples = next;
        }
        let mut comps = vec![Vec::new(); q.order()];
        for (x, t) in tuples {
            comps[x] = t;
        }
        let section: Vec<u32> = comps
            .iter()
            .map(|t| {
                t.iter()
                    .zip(&restrictions)
                    .fold(g.identity(), |acc, (&c, r)| g.mul(acc, r.embed[r.qp.lift(c)])) as u32
            })
            .collect();
        let qp = QuotientPresentation::from_parts(g.clone(), z, q, qp0.projection.clone(), section)?;
        Ok(Self { kernel, qp, factors, comps })
    }

    fn a(&self) -> &AbelianStructure {
        &self.kernel.structure
    }

    fn types(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.factors.iter().map(|f| f.ty).collect();
        t.sort_unstable();
        t
    }
}

/// `(alpha f)(delta x, delta y)` for cocycle rows on a group of order `n`.
fn twisted(a: &AbelianStructure, rows: &[Vec<u64>], alpha: &AbelianAut, delta: &[usize]) -> Vec<Vec<u64>> {
    let n = delta.len();
    let k = a.rank();
    (0..k)
        .map(|i| {
            let d = a.orders()[i];
            let mut out = vec![0u64; n * n];
            for x in 0..n {
                for y in 0..n {
                    let c = delta[x] * n + delta[y];
                    out[x * n + y] = (0..k).map(|j| alpha.matrix[i][j] % d * (rows[j][c] % d)).sum::<u64>() % d;
                }
            }
            out
        })
        .collect()
}

/// A factor of `G` matched with a factor of `H`, with the outer
/// automorphisms (transversal indices) applied on each side.
struct Match {
    i: usize,
    j: usize,
    d1: usize,
    d2: usize,
}

/// Builds `G -> H` from `alpha` and factor matches with
/// `[alpha f_1i o delta_1] = [f_2j o delta_2]` on the reference groups.
fn product_witness(s1: &ProductSide, s2: &ProductSide, refs: &Refs, alpha: &AbelianAut, matches: &[Match]) -> Result<crate::cayley::GroupMap> {
    let a = s2.a();
    let k = a.rank();
    let q1 = &s1.qp.quotient;
    let q2 = &s2.qp.quotient;
    let mut psi_parts: Vec<Vec<usize>> = vec![Vec::new(); s1.factors.len()];
    let mut w_parts: Vec<Vec<Vec<u64>>> = vec![Vec::new(); s2.factors.len()];
    let mut target_of = vec![0; s1.factors.len()];
    for m in matches {
        let (f1, f2) = (&s1.factors[m.i], &s2.factors[m.j]);
        let t = &refs.groups[f1.ty];
        let n = t.order();
        let d1 = &refs.outer[f1.ty][m.d1];
        let d2 = &refs.outer[f1.ty][m.d2];
        let lhs = twisted(a, &f1.fref, alpha, d1);
        let rhs = twisted(a, &f2.fref, &AbelianAut::identity(k), d2);
        let trivial = vec![AbelianAut::identity(k); n];
        let v = coboundary_witness(a, t, &trivial, |x, y| {
            let c = x * n + y;
            (0..k).map(|r| (lhs[r][c] + a.orders()[r] - rhs[r][c]) % a.orders()[r]).collect()
        })
        .ok_or_else(|| precondition("matched factor classes differ"))?;
        let d1_inv = super::inverse_table(d1);
        let d2_inv = super::inverse_table(d2);
        psi_parts[m.i] = (0..n).map(|c| f2.phi[d2[d1_inv[f1.phi_inv[c]]]]).collect();
        w_parts[m.j] = (0..n).map(|z| v[d2_inv[f2.phi_inv[z]]].clone()).collect();
        target_of[m.i] = m.j;
    }
    let psi: Vec<usize> = q1
        .elements()
        .map(|x| {
            s1.comps[x].iter().enumerate().fold(q2.identity(), |acc, (i, &c)| {
                q2.mul(acc, s2.factors[target_of[i]].to_quotient[psi_parts[i][c]])
            })
        })
        .collect();
    let w: Vec<Vec<u64>> = q2
        .elements()
        .map(|x| s2.comps[x].iter().enumerate().fold(a.zero(), |acc, (j, &c)| a.add(&acc, &w_parts[j][c])))
        .collect();
    Ok(assemble_witness(&s1.qp, &s1.kernel, &s2.qp, &s2.kernel, &psi, alpha, &w))
}

/// Exact class labels on a reference group: residues modulo `B^2` for
/// elementary coefficients, otherwise indices of pairwise-compared
/// representatives.
enum Classifier {
    Elementary(ScalarCoboundaries),
    General { t: Arc<CayleyGroup>, reps: Vec<Vec<Vec<u64>>> },
}

impl Classifier {
    fn new(a: &AbelianStructure, t: &Arc<CayleyGroup>) -> Self {
        match a.elementary_prime() {
            Some(p) => Self::Elementary(ScalarCoboundaries::new(t, p)),
            None => Self::General { t: t.clone(), reps: Vec::new() },
        }
    }

    fn key(&mut self, a: &AbelianStructure, rows: &[Vec<u64>]) -> Vec<u32> {
        match self {
            Self::Elementary(b) => rows.iter().flat_map(|r| b.residue(r)).collect(),
            Self::General { t, reps } => {
                let n = t.order();
                let k = a.rank();
                let trivial = vec![AbelianAut::identity(k); n];
                for (i, rep) in reps.iter().enumerate() {
                    let same = coboundary_witness(a, t, &trivial, |x, y| {
                        let c = x * n + y;
                        (0..k).map(|r| (rows[r][c] + a.orders()[r] - rep[r][c]) % a.orders()[r]).collect()
                    });
                    if same.is_some() {
                        return vec![i as u32];
                    }
                }
                reps.push(rows.to_vec());
                vec![reps.len() as u32 - 1]
            }
        }
    }
}

/// Smallest label over the outer automorphisms, with the index attaining it.
fn orbit_label(cl: &mut Classifier, a: &AbelianStructure, rows: &[Vec<u64>], alpha: &AbelianAut, outer: &[Vec<usize>]) -> (Vec<u32>, usize) {
    let mut best: Option<(Vec<u32>, usize)> = None;
    for (d, delta) in outer.iter().enumerate() {
        let key = cl.key(a, &twisted(a, rows, alpha, delta));
        if best.as_ref().is_none_or(|(b, _)| key < *b) {
            best = Some((key, d));
        }
    }
    best.expect("transversal contains the identity")
}

fn pair_sides(g: &Arc<CayleyGroup>, h: &Arc<CayleyGroup>, strategy: &'static str, config: &EngineConfig) -> Result<(Refs, ProductSide, ProductSide)> {
    let mut refs = Refs::default();
    let s1 = ProductSide::new(g, &mut refs, strategy, config)?;
    let s2 = ProductSide::new(h, &mut refs, strategy, config)?;
    Ok((refs, s1, s2))
}

fn shape_mismatch(s1: &ProductSide, s2: &ProductSide) -> Option<String> {
    if s1.a().invariants() != s2.a().invariants() {
        return Some(format!("centers {:?} vs {:?}", s1.a().invariants(), s2.a().invariants()));
    }
    if s1.types() != s2.types() {
        return Some(format!("simple factor types {:?} vs {:?}", s1.types(), s2.types()));
    }
    None
}

/// Compares the multisets of per-factor class labels of `alpha f_1` and
/// `f_2` for every `alpha` in `Aut(Z)`; labels are minimized over outer
/// automorphisms of each factor.
pub fn iso_semisimple_product_small_aut_a(g: &Arc<CayleyGroup>, h: &Arc<CayleyGroup>, config: &EngineConfig) -> Result<IsoVerdict> {
    let (refs, s1, s2) = pair_sides(g, h, NAME1, config)?;
    if g.order() != h.order() {
        return Ok(IsoVerdict::no(NAME1, "orders differ"));
    }
    if let Some(why) = shape_mismatch(&s1, &s2) {
        return Ok(IsoVerdict::no(NAME1, why));
    }
    let a = s1.a().clone();
    let auts = enumerate_abelian_automorphisms(&a, &config.caps)?;
    let mut cls: Vec<Classifier> = refs.groups.iter().map(|t| Classifier::new(&a, t)).collect();
    let ident = AbelianAut::identity(a.rank());
    let labels2: Vec<(usize, Vec<u32>, usize)> = s2
        .factors
        .iter()
        .map(|f| {
            let (key, d) = orbit_label(&mut cls[f.ty], &a, &f.fref, &ident, &refs.outer[f.ty]);
            (f.ty, key, d)
        })
        .collect();
    let mut sorted2: Vec<(usize, Vec<u32>)> = labels2.iter().map(|(t, k, _)| (*t, k.clone())).collect();
    sorted2.sort();
    for (ai, alpha) in auts.iter().enumerate() {
        let labels1: Vec<(usize, Vec<u32>, usize)> = s1
            .factors
            .iter()
            .map(|f| {
                let (key, d) = orbit_label(&mut cls[f.ty], &a, &f.fref, alpha, &refs.outer[f.ty]);
                (f.ty, key, d)
            })
            .collect();
        let mut sorted1: Vec<(usize, Vec<u32>)> = labels1.iter().map(|(t, k, _)| (*t, k.clone())).collect();
        sorted1.sort();
        if sorted1 != sorted2 {
            continue;
        }
        let mut used = vec![false; labels2.len()];
        let mut matches = Vec::new();
        for (i, (t, key, d1)) in labels1.iter().enumerate() {
            let j = (0..labels2.len())
                .find(|&j| !used[j] && labels2[j].0 == *t && labels2[j].1 == *key)
                .expect("equal multisets");
            used[j] = true;
            matches.push(Match { i, j, d1: *d1, d2: labels2[j].2 });
        }
        let witness = product_witness(&s1, &s2, &refs, alpha, &matches)?;
        let pairing: Vec<usize> = matches.iter().map(|m| m.j).collect();
        let v = yes(NAME1, witness, vec![format!("alpha #{ai}: label multisets agree"), format!("factor pairing {pairing:?}")]);
        return checked(g, h, v);
    }
    Ok(IsoVerdict::no(NAME1, format!("label multisets differ for all {} alpha", auts.len())))
}

/// Stacked matrix: the cocycle rows (twisted by `delta` per factor) above
/// the coboundary basis of each factor, placed in its own block.
fn stacked(side: &ProductSide, refs: &Refs, bases: &[Vec<Vec<u32>>], p: u64, delta: &[usize]) -> Vec<Vec<u32>> {
    let k = side.a().rank();
    let ident = AbelianAut::identity(k);
    let parts: Vec<Vec<Vec<u64>>> = side
        .factors
        .iter()
        .zip(delta)
        .map(|(f, &d)| twisted(side.a(), &f.fref, &ident, &refs.outer[f.ty][d]))
        .collect();
    let widths: Vec<usize> = side.factors.iter().map(|f| f.phi.len().pow(2)).collect();
    let total: usize = widths.iter().sum();
    let mut rows: Vec<Vec<u32>> = (0..k).map(|r| parts.iter().flat_map(|pt| pt[r].iter().map(|&x| (x % p) as u32)).collect()).collect();
    let mut off = 0;
    for (f, &w) in side.factors.iter().zip(&widths) {
        for b in &bases[f.ty] {
            let mut row = vec![0u32; total];
            row[off..off + w].copy_from_slice(b);
            rows.push(row);
        }
        off += w;
    }
    rows
}

/// Sets aside maximal central direct factors, then searches block
/// permutations carrying the row space of the stacked matrix of `G` (for
/// each diagonal outer twist) onto that of `H`.
pub fn iso_semisimple_product_code(g: &Arc<CayleyGroup>, h: &Arc<CayleyGroup>, config: &EngineConfig) -> Result<IsoVerdict> {
    for x in [g, h] {
        if !super::is_central_radical(x) {
            return Err(inapplicable(NAME2, "solvable radical differs from the center"));
        }
    }
    if g.order() != h.order() {
        return Ok(IsoVerdict::no(NAME2, "orders differ"));
    }
    let sp1 = split_central_direct_factor(g)?;
    let sp2 = split_central_direct_factor(h)?;
    let (a1, a1_embed) = sp1.a_prime.as_group(g);
    let (a2, a2_embed) = sp2.a_prime.as_group(h);
    let (a1, a2) = (Arc::new(a1), Arc::new(a2));
    let Some(iota) = abelian_iso(&a1, &a2)? else {
        return Ok(IsoVerdict::no(NAME2, format!("central direct factors of orders {} and {} differ", a1.order(), a2.order())));
    };
    let (k1, k1_embed) = sp1.complement.as_group(g);
    let (k2, k2_embed) = sp2.complement.as_group(h);
    let (k1, k2) = (Arc::new(k1), Arc::new(k2));
    let (inner, certificate) = code_on_complements(&k1, &k2, config)?;
    let Some(gk) = inner else {
        return Ok(IsoVerdict { result: super::IsoResult::NotIsomorphic, witness: None, strategy: NAME2, certificate });
    };
    let mut image = vec![0usize; g.order()];
    for (ia, &x) in a1_embed.iter().enumerate() {
        for (ik, &y) in k1_embed.iter().enumerate() {
            image[g.mul(x, y)] = h.mul(a2_embed[iota.image[ia]], k2_embed[gk.image[ik]]);
        }
    }
    let mut certificate = certificate;
    certificate.insert(0, format!("set aside central direct factor of order {}", a1.order()));
    let v = yes(NAME2, crate::cayley::GroupMap { image, kind: crate::cayley::MapKind::Isomorphism }, certificate);
    checked(g, h, v)
}

fn code_on_complements(g: &Arc<CayleyGroup>, h: &Arc<CayleyGroup>, config: &EngineConfig) -> Result<(Option<crate::cayley::GroupMap>, Vec<String>)> {
    let (refs, s1, s2) = pair_sides(g, h, NAME2, config)?;
    if let Some(why) = shape_mismatch(&s1, &s2) {
        return Ok((None, vec![why]));
    }
    let a = s1.a().clone();
    let k = a.rank();
    let l = s1.factors.len();
    if k == 0 {
        let mut used = vec![false; l];
        let mut matches = Vec::new();
        for (i, f) in s1.factors.iter().enumerate() {
            let j = (0..l).find(|&j| !used[j] && s2.factors[j].ty == f.ty).expect("equal type multisets");
            used[j] = true;
            matches.push(Match { i, j, d1: 0, d2: 0 });
        }
        let w = product_witness(&s1, &s2, &refs, &AbelianAut::identity(0), &matches)?;
        return Ok((Some(w), vec!["trivial center: factor types agree".into()]));
    }
    let p = a.elementary_prime().ok_or_else(|| inapplicable(NAME2, "center is not elementary abelian"))?;
    let coboundaries: Vec<ScalarCoboundaries> = refs.groups.iter().map(|t| ScalarCoboundaries::new(t, p)).collect();
    let bases: Vec<Vec<Vec<u32>>> = coboundaries.iter().map(|b| b.echelon().rows().to_vec()).collect();
    let sizes: Vec<usize> = s1.factors.iter().map(|f| f.phi.len().pow(2)).collect();
    let classes1: Vec<usize> = s1.factors.iter().map(|f| f.ty).collect();
    let blocks = BlockStructure::consecutive(&sizes, &classes1)?;
    let full_rank = k + s1.factors.iter().map(|f| bases[f.ty].len()).sum::<usize>();
    let m2 = stacked(&s2, &refs, &bases, p, &vec![0; l]);
    if gfp::rank(p, &m2) != full_rank {
        return Err(Error::RankDeficient);
    }
    let allowed = block_group(&blocks);
    let radices: Vec<usize> = s1.factors.iter().map(|f| refs.outer[f.ty].len()).collect();
    let mut delta = vec![0usize; l];
    let mut tried = 0usize;
    loop {
        tried += 1;
        let m1 = stacked(&s1, &refs, &bases, p, &delta);
        if gfp::rank(p, &m1) != full_rank {
            return Err(Error::RankDeficient);
        }
        let coset = code_equivalence_coset(p, &m1, &m2, &blocks, &config.caps)?;
        let coset = coset_intersection(&coset, &allowed, &config.caps)?;
        if let Some(sigma) = coset.min_element(config.caps.coset_elements)? {
            let pi: Vec<usize> = blocks.blocks.iter().map(|b| blocks.blocks.iter().position(|c| c.contains(&sigma[b[0]])).expect("block image")).collect();
            let residues = |side: &ProductSide, d: &[usize], order: &[usize]| -> Vec<Vec<u32>> {
                let ident = AbelianAut::identity(k);
                let parts: Vec<Vec<Vec<u64>>> = side
                    .factors
                    .iter()
                    .zip(d)
                    .map(|(f, &di)| twisted(&a, &f.fref, &ident, &refs.outer[f.ty][di]))
                    .collect();
                (0..k)
                    .map(|r| order.iter().flat_map(|&i| coboundaries[side.factors[i].ty].residue(&parts[i][r])).collect())
                    .collect()
            };
            let mut order1 = vec![0; l];
            for (i, &j) in pi.iter().enumerate() {
                order1[j] = i;
            }
            let r1 = residues(&s1, &delta, &order1);
            let r2 = residues(&s2, &vec![0; l], &(0..l).collect::<Vec<_>>());
            let x = matching_transform(p, &r1, &r2).ok_or_else(|| precondition("code equivalence without matching residues"))?;
            let matches: Vec<Match> = (0..l).map(|i| Match { i, j: pi[i], d1: delta[i], d2: 0 }).collect();
            let w = product_witness(&s1, &s2, &refs, &to_aut(&x), &matches)?;
            return Ok((Some(w), vec![format!("diagonal {delta:?}: block permutation {pi:?}")]));
        }
        let mut i = l;
        loop {
            if i == 0 {
                return Ok((None, vec![format!("no code equivalence for any of {tried} diagonals")]));
            }
            i -= 1;
            delta[i] += 1;
            if delta[i] < radices[i] {
                break;
            }
            delta[i] = 0;
        }
    }
}
