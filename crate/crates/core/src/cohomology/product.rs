//! Central extensions of direct products: restriction to a factor,
//! assembly of product cocycles, and splitting off central direct factors.

use super::coboundary::ScalarCoboundaries;
use super::{extract_extension_data, ColumnLayout, CochainMatrix, ExtensionData, ProductLayout};
use crate::abelian::AbelianAut;
use crate::cayley::{direct_product, quotient_with_section, CayleyGroup, QuotientPresentation, Subgroup};
use crate::error::{precondition, Result};
use crate::linalg::gfp::nullspace;
use crate::linalg::{solve_congruences, Congruence};
use std::sync::Arc;

/// The preimage `U_i` of one quotient factor `T_i`, presented as an
/// extension of the central subgroup by `T_i`.
#[derive(Debug, Clone)]
pub struct FactorRestriction {
    pub qp: QuotientPresentation,
    /// Element of `U_i` -> element of `G`.
    pub embed: Vec<usize>,
    /// Element of `U_i / A` -> element of `G / A`.
    pub to_quotient: Vec<usize>,
}

/// Restricts the central extension `qp` to the factor `factor` of its
/// quotient, which must be one of the nonabelian simple direct factors.
pub fn restrict_to_factor(qp: &QuotientPresentation, factor: &Subgroup) -> Result<FactorRestriction> {
    let g = &qp.group;
    if !qp.normal.is_central(g) {
        return Err(precondition("restrict_to_factor needs a central kernel"));
    }
    let factors = qp.quotient.simple_factor_decomposition()?;
    if !factors.iter().any(|f| f.members() == factor.members()) {
        return Err(precondition("not a simple direct factor of the quotient"));
    }
    let members: Vec<usize> = g.elements().filter(|&x| factor.contains(qp.project(x))).collect();
    let u = Subgroup::from_members(g, &members)?;
    let (ug, embed) = u.as_group(g);
    let ug = Arc::new(ug);
    let a_members: Vec<usize> = ug.elements().filter(|&i| qp.normal.contains(embed[i])).collect();
    let a = Subgroup::from_members(&ug, &a_members)?;
    let rqp = quotient_with_section(ug, &a)?;
    let to_quotient = rqp.quotient.elements().map(|c| qp.project(embed[rqp.lift(c)])).collect();
    Ok(FactorRestriction { qp: rqp, embed, to_quotient })
}

/// Assembles central factor cocycles `f_i` on `T_i` into the cocycle
/// `f(p, q) = sum_i f_i(p_i, q_i)` on `T_1 x ... x T_l`. Elements of the
/// product are indexed with the first component most significant.
pub fn assemble_product_cocycle(factors: Vec<ExtensionData>) -> Result<ExtensionData> {
    let first = factors.first().ok_or_else(|| precondition("no factors"))?;
    let coefficient = first.coefficient.clone();
    if factors.iter().any(|f| !f.is_trivial_action() || f.coefficient.orders() != coefficient.orders()) {
        return Err(precondition("factor cocycles must be central over a common coefficient"));
    }
    let groups: Vec<Arc<CayleyGroup>> = factors.iter().map(|f| f.quotient.clone()).collect();
    let mut q = (*groups[0]).clone();
    for t in &groups[1..] {
        q = direct_product(&q, t);
    }
    let orders: Vec<usize> = groups.iter().map(|t| t.order()).collect();
    let tuples: Vec<Vec<u32>> = q
        .elements()
        .map(|mut x| {
            let mut t = vec![0u32; orders.len()];
            for i in (0..orders.len()).rev() {
                t[i] = (x % orders[i]) as u32;
                x /= orders[i];
            }
            t
        })
        .collect();
    let layout = ColumnLayout::Product { factor_orders: orders.clone() };
    let rows = (0..coefficient.rank())
        .map(|r| {
            factors
                .iter()
                .flat_map(|f| f.to_full().cocycle.rows[r].clone())
                .collect()
        })
        .collect();
    let cocycle = CochainMatrix { moduli: coefficient.orders().to_vec(), layout, rows };
    let k = coefficient.rank();
    let n = q.order();
    Ok(ExtensionData {
        coefficient,
        quotient: Arc::new(q),
        action: vec![AbelianAut::identity(k); n],
        cocycle,
        product: Some(ProductLayout { factors: groups, tuples }),
    })
}

/// `G = a_prime x complement` with `a_prime` central of maximal order.
#[derive(Debug, Clone)]
pub struct CentralSplit {
    pub a_prime: Subgroup,
    pub complement: Subgroup,
}

impl CentralSplit {
    /// Whether `a_prime` is central and the two subgroups form an internal
    /// direct product equal to `G`.
    pub fn is_valid(&self, g: &CayleyGroup) -> bool {
        self.a_prime.is_central(g)
            && self.complement.is_normal_in(g)
            && self.a_prime.members().iter().all(|&x| x == g.identity() || !self.complement.contains(x))
            && self.a_prime.len() * self.complement.len() == g.order()
    }
}

/// Splits off a maximal central direct factor of `G`. With elementary
/// abelian center `A = Z_p^k`, the functionals `lambda` on `A` whose composite
/// `lambda f` is a coboundary form the nullspace of the transposed residue
/// matrix of the cocycle rows; each extends to a homomorphism `G -> Z_p` and
/// the joint kernel is the complement. Other centers are split one cyclic
/// factor at a time through the abelianization.
pub fn split_central_direct_factor(g: &Arc<CayleyGroup>) -> Result<CentralSplit> {
    let z = g.center();
    if z.is_trivial() {
        return Ok(CentralSplit { a_prime: z, complement: Subgroup::whole(g) });
    }
    if z.len() == g.order() {
        return Ok(CentralSplit { a_prime: z, complement: Subgroup::trivial(g) });
    }
    if let Some(split) = split_perfect_quotient(g, &z)? {
        return Ok(split);
    }
    let qp = quotient_with_section(g.clone(), &z)?;
    let ed = extract_extension_data(&qp)?;
    match ed.coefficient.elementary_prime() {
        Some(p) => split_elementary(g, &qp, &ed, p),
        None => split_cyclic_greedy(g),
    }
}

/// With `G/Z` perfect, `G = Z G'` and a central direct factor meets `G'`
/// trivially, so any complement of `Z ∩ G'` in an elementary abelian `Z`
/// is a maximal one, with complement `G'`.
fn split_perfect_quotient(g: &Arc<CayleyGroup>, z: &Subgroup) -> Result<Option<CentralSplit>> {
    let d = g.commutator_subgroup();
    let meet: Vec<usize> = z.members().iter().copied().filter(|&x| d.contains(x)).collect();
    if z.len() * d.len() != g.order() * meet.len() {
        return Ok(None);
    }
    let orders = g.element_orders();
    let p = z.members().iter().map(|&x| orders[x]).max().unwrap_or(1);
    if !z.members().iter().all(|&x| orders[x] == 1 || orders[x] == p) || !crate::linalg::is_prime(p as u64) {
        return split_cyclic_greedy(g).map(Some);
    }
    let mut span = Subgroup::from_members(g, &meet)?;
    let mut picks = Vec::new();
    for &x in z.members() {
        if !span.contains(x) {
            picks.push(x);
            span = span.extended(g, &[x]);
        }
    }
    Ok(Some(CentralSplit { a_prime: Subgroup::generated(g, &picks), complement: d }))
}

fn split_elementary(g: &CayleyGroup, qp: &QuotientPresentation, ed: &ExtensionData, p: u64) -> Result<CentralSplit> {
    let a = &ed.coefficient;
    let k = a.rank();
    let b = ScalarCoboundaries::new(&qp.quotient, p);
    let res: Vec<Vec<u32>> = ed.cocycle.rows.iter().map(|r| b.residue(r)).collect();
    let w = ed.cocycle.width();
    let transposed: Vec<Vec<u32>> = (0..w).map(|c| res.iter().map(|r| r[c]).collect()).collect();
    let lambdas = nullspace(p, k, &transposed);
    let d = lambdas.len();
    let mut us = Vec::with_capacity(d);
    for l in &lambdas {
        let comb: Vec<u64> = (0..w)
            .map(|c| (0..k).map(|i| l[i] as u64 * ed.cocycle.rows[i][c]).sum::<u64>() % p)
            .collect();
        us.push(b.preimage(&comb).ok_or_else(|| precondition("functional is not a coboundary"))?);
    }
    let kernel = super::AbelianKernel::new(g, &qp.normal)?;
    let phi = |x: usize| -> Vec<u64> {
        let (n, q) = qp.decompose(x);
        let c = kernel.coords_of(n);
        lambdas
            .iter()
            .zip(&us)
            .map(|(l, u)| ((0..k).map(|i| l[i] as u64 * c[i]).sum::<u64>() + u[q]) % p)
            .collect()
    };
    let zero = vec![0u64; d];
    let kernel_members: Vec<usize> = g.elements().filter(|&x| phi(x) == zero).collect();
    let complement = Subgroup::from_members(g, &kernel_members)?;
    let mut picks: Vec<Option<usize>> = vec![None; d];
    for &x in qp.normal.members() {
        let v = phi(x);
        if v.iter().filter(|&&c| c != 0).count() == 1 && v.iter().any(|&c| c == 1) {
            let j = v.iter().position(|&c| c == 1).unwrap_or(0);
            picks[j].get_or_insert(x);
        }
    }
    let gens: Vec<usize> = picks.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| precondition("functionals not independent on the center"))?;
    Ok(CentralSplit { a_prime: Subgroup::generated(g, &gens), complement })
}

fn split_cyclic_greedy(g: &Arc<CayleyGroup>) -> Result<CentralSplit> {
    let mut factor_gens: Vec<usize> = Vec::new();
    let mut current = Subgroup::whole(g);
    loop {
        let (h, embed) = current.as_group(g);
        match split_one_cyclic(&h)? {
            Some((z, complement)) => {
                factor_gens.push(embed[z]);
                let members: Vec<usize> = complement.members().iter().map(|&x| embed[x]).collect();
                current = Subgroup::from_members(g, &members)?;
            }
            None => break,
        }
    }
    Ok(CentralSplit { a_prime: Subgroup::generated(g, &factor_gens), complement: current })
}

/// A central element `z` of maximal order such that `<z>` has a normal
/// complement, with that complement.
fn split_one_cyclic(h: &CayleyGroup) -> Result<Option<(usize, Subgroup)>> {
    if h.order() == 1 {
        return Ok(None);
    }
    let hab_sub = h.commutator_subgroup();
    let hq = quotient_with_section(Arc::new(h.clone()), &hab_sub)?;
    let ab = crate::abelian::primary_decomposition(hq.quotient.clone())?;
    let mut cands: Vec<usize> = h.center().members().iter().copied().filter(|&x| x != h.identity()).collect();
    cands.sort_by_key(|&x| (std::cmp::Reverse(h.element_order(x)), x));
    for z in cands {
        let m = h.element_order(z) as u64;
        let cz = ab.coords_u64(hq.project(z));
        let mut eqs: Vec<Congruence> = (0..ab.rank())
            .map(|j| {
                let mut coeffs = vec![0i64; ab.rank()];
                coeffs[j] = ab.orders()[j] as i64;
                Congruence { coeffs, rhs: 0, modulus: m }
            })
            .collect();
        eqs.push(Congruence { coeffs: cz.iter().map(|&c| c as i64).collect(), rhs: 1, modulus: m });
        let Some(psi) = solve_congruences(&eqs, ab.rank()) else { continue };
        let kernel: Vec<usize> = h
            .elements()
            .filter(|&x| {
                let c = ab.coords_u64(hq.project(x));
                c.iter().zip(&psi).map(|(a, b)| a * b % m).sum::<u64>() % m == 0
            })
            .collect();
        return Ok(Some((z, Subgroup::from_members(h, &kernel)?)));
    }
    Ok(None)
}
