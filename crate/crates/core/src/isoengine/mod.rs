//! Isomorphism decision procedures built on extension data, and a
//! dispatcher choosing among them.

mod central;
mod elemab;
mod regression;
mod semisimple;

pub use central::{central_class_test, iso_central_radical};
pub use elemab::{beta_instances, iso_elem_abelian_radical, module_cyclicity_test, AlgebraModulePair, BetaInstance};
pub use regression::{carrying_automorphism, non_pc_fixture, non_pc_regression, p_times_top_order_count, NonPcFixture};
pub use semisimple::{iso_semisimple_product_code, iso_semisimple_product_small_aut_a};

use crate::abelian::{primary_decomposition, AbelianAut, AbelianStructure};
use crate::cayley::{brute_force_iso, invariant_signature, CayleyGroup, GroupMap, MapKind, QuotientPresentation, Subgroup};
use crate::cohomology::{extract_with_kernel, AbelianKernel, ExtensionData};
use crate::config::EngineConfig;
use crate::error::{precondition, Error, Result};
use crate::linalg::gfp::{self, Mat};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsoResult {
    Isomorphic,
    NotIsomorphic,
}

impl fmt::Display for IsoResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Isomorphic => "isomorphic",
            Self::NotIsomorphic => "not-isomorphic",
        })
    }
}

/// Outcome of an isomorphism test. Isomorphic verdicts carry a witness that
/// has been checked on the full tables.
#[derive(Debug, Clone)]
pub struct IsoVerdict {
    pub result: IsoResult,
    pub witness: Option<GroupMap>,
    pub strategy: &'static str,
    pub certificate: Vec<String>,
}

impl IsoVerdict {
    pub fn is_isomorphic(&self) -> bool {
        self.result == IsoResult::Isomorphic
    }

    fn no(strategy: &'static str, why: impl Into<String>) -> Self {
        Self { result: IsoResult::NotIsomorphic, witness: None, strategy, certificate: vec![why.into()] }
    }

    fn note(mut self, line: impl Into<String>) -> Self {
        self.certificate.insert(0, line.into());
        self
    }
}

/// Strategy names accepted by [`iso_with_strategy`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Auto,
    CentralRadical,
    ElemAbelianRadical,
    SsProduct1,
    SsProduct2,
    Brute,
}

impl Strategy {
    pub fn label(self) -> &'static str {
        match self {
            Self::Auto => "auto",
            Self::CentralRadical => "central-radical",
            Self::ElemAbelianRadical => "elem-abelian-radical",
            Self::SsProduct1 => "ss-product-1",
            Self::SsProduct2 => "ss-product-2",
            Self::Brute => "brute",
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [Self::Auto, Self::CentralRadical, Self::ElemAbelianRadical, Self::SsProduct1, Self::SsProduct2, Self::Brute]
            .into_iter()
            .find(|x| x.label() == s)
            .ok_or_else(|| Error::Parse(format!("unknown strategy {s}")))
    }
}

/// Returns the verdict after checking its witness on the full tables.
fn checked(g: &CayleyGroup, h: &CayleyGroup, v: IsoVerdict) -> Result<IsoVerdict> {
    if v.is_isomorphic() {
        let ok = v.witness.as_ref().is_some_and(|w| w.is_isomorphism(g, h));
        if !ok {
            return Err(precondition(format!("{} produced a witness that is not an isomorphism", v.strategy)));
        }
    }
    Ok(v)
}

fn yes(strategy: &'static str, witness: GroupMap, certificate: Vec<String>) -> IsoVerdict {
    IsoVerdict {
        result: IsoResult::Isomorphic,
        witness: Some(GroupMap { image: witness.image, kind: MapKind::Isomorphism }),
        strategy,
        certificate,
    }
}

/// An isomorphism between abelian groups with equal invariants, matching
/// primary-decomposition coordinates.
pub fn abelian_iso(g: &Arc<CayleyGroup>, h: &Arc<CayleyGroup>) -> Result<Option<GroupMap>> {
    let sg = primary_decomposition(g.clone())?;
    let sh = primary_decomposition(h.clone())?;
    if sg.invariants() != sh.invariants() {
        return Ok(None);
    }
    let image = g.elements().map(|x| sh.element(&sg.coords_u64(x))).collect();
    Ok(Some(GroupMap { image, kind: MapKind::Isomorphism }))
}

fn abelian_verdict(strategy: &'static str, g: &Arc<CayleyGroup>, h: &Arc<CayleyGroup>) -> Result<IsoVerdict> {
    let sg = primary_decomposition(g.clone())?;
    let sh = primary_decomposition(h.clone())?;
    let line = format!("abelian invariants {:?} vs {:?}", sg.invariants(), sh.invariants());
    Ok(match abelian_iso(g, h)? {
        Some(w) => yes(strategy, w, vec![line]),
        None => IsoVerdict::no(strategy, line),
    })
}

/// `G` as an extension of an abelian normal subgroup `S`, with coordinates
/// on `S` from its primary decomposition.
#[derive(Debug, Clone)]
pub(crate) struct Side {
    pub qp: QuotientPresentation,
    pub kernel: AbelianKernel,
    pub ed: ExtensionData,
}

impl Side {
    pub fn new(g: &Arc<CayleyGroup>, s: &Subgroup) -> Result<Self> {
        let qp = crate::cayley::quotient_with_section(g.clone(), s)?;
        let kernel = AbelianKernel::new(g, s)?;
        let ed = extract_with_kernel(&qp, &kernel);
        Ok(Self { qp, kernel, ed })
    }

    pub fn a(&self) -> &AbelianStructure {
        &self.kernel.structure
    }
}

/// The isomorphism `a s_1(p) -> (alpha a + w(psi p)) s_2(psi p)` for
/// `alpha f_1 o psi^-1 - f_2 = delta w`.
pub(crate) fn assemble_witness(
    qp1: &QuotientPresentation,
    k1: &AbelianKernel,
    qp2: &QuotientPresentation,
    k2: &AbelianKernel,
    psi: &[usize],
    alpha: &AbelianAut,
    w: &[Vec<u64>],
) -> GroupMap {
    let a2 = &k2.structure;
    let g2 = &qp2.group;
    let image = qp1
        .group
        .elements()
        .map(|x| {
            let (n, p) = qp1.decompose(x);
            let b = a2.add(&alpha.apply(a2, &k1.coords_of(n)), &w[psi[p]]);
            g2.mul(k2.element(&b), qp2.lift(psi[p]))
        })
        .collect();
    GroupMap { image, kind: MapKind::Isomorphism }
}

/// `psi^-1` as an image table.
pub(crate) fn inverse_table(psi: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; psi.len()];
    for (x, &y) in psi.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

/// Rows of `f(psi^-1 x, psi^-1 y)` for a full-layout cocycle on `Q_1`.
pub(crate) fn transport_rows(rows: &[Vec<u64>], psi_inv: &[usize]) -> Vec<Vec<u64>> {
    let n = psi_inv.len();
    rows.iter()
        .map(|r| {
            let mut out = vec![0u64; n * n];
            for x in 0..n {
                let px = psi_inv[x] * n;
                for y in 0..n {
                    out[x * n + y] = r[px + psi_inv[y]];
                }
            }
            out
        })
        .collect()
}

/// Row reduction of a `k`-row matrix with the transform: `P rows = R` in
/// reduced echelon form, zero rows last.
pub(crate) fn rref_with_transform(p: u64, rows: &[Vec<u32>]) -> (Mat, Mat) {
    let k = rows.len();
    let w = rows.first().map_or(0, Vec::len);
    let mut m: Mat = rows.to_vec();
    let mut t = gfp::identity(k);
    let mut r = 0;
    for c in 0..w {
        if r == k {
            break;
        }
        let Some(piv) = (r..k).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        t.swap(r, piv);
        let inv = crate::linalg::inv_mod(m[r][c] as u64, p).expect("nonzero entry is invertible");
        for x in m[r].iter_mut().chain(t[r].iter_mut()) {
            *x = (*x as u64 * inv % p) as u32;
        }
        for i in 0..k {
            if i != r && m[i][c] != 0 {
                let f = p - m[i][c] as u64;
                let (mr, tr) = (m[r].clone(), t[r].clone());
                for (x, &y) in m[i].iter_mut().zip(&mr) {
                    *x = ((*x as u64 + f * y as u64) % p) as u32;
                }
                for (x, &y) in t[i].iter_mut().zip(&tr) {
                    *x = ((*x as u64 + f * y as u64) % p) as u32;
                }
            }
        }
        r += 1;
    }
    (m, t)
}

/// The invertible `X` with `X r_1 = r_2`, when the two row sets have the
/// same span.
pub(crate) fn matching_transform(p: u64, r1: &[Vec<u32>], r2: &[Vec<u32>]) -> Option<Mat> {
    let (e1, t1) = rref_with_transform(p, r1);
    let (e2, t2) = rref_with_transform(p, r2);
    if e1 != e2 {
        return None;
    }
    Some(gfp::mat_mul(p, &gfp::inverse(p, &t2)?, &t1))
}

pub(crate) fn to_aut(m: &Mat) -> AbelianAut {
    AbelianAut { matrix: m.iter().map(|r| r.iter().map(|&x| x as u64).collect()).collect() }
}

/// Solvable radical equal to the center.
pub(crate) fn is_central_radical(g: &CayleyGroup) -> bool {
    g.solvable_radical().members() == g.center().members()
}

fn central_route(g: &Arc<CayleyGroup>, h: &Arc<CayleyGroup>, config: &EngineConfig) -> Result<IsoVerdict> {
    let qg = crate::cayley::quotient_with_section(g.clone(), &g.center())?.quotient;
    if qg.simple_factor_decomposition().is_err() {
        return iso_central_radical(g, h, config);
    }
    match iso_semisimple_product_small_aut_a(g, h, config) {
        Err(Error::CapExceeded { .. }) => {
            let z = g.center();
            let (zg, _) = z.as_group(g);
            if primary_decomposition(Arc::new(zg))?.elementary_prime().is_some() || z.is_trivial() {
                iso_semisimple_product_code(g, h, config)
            } else {
                iso_central_radical(g, h, config)
            }
        }
        other => other,
    }
}

fn brute_verdict(g: &CayleyGroup, h: &CayleyGroup, config: &EngineConfig) -> Result<IsoVerdict> {
    Ok(match brute_force_iso(g, h, &config.caps)? {
        Some(w) => yes("brute", w, vec!["backtracking search found an isomorphism".into()]),
        None => IsoVerdict::no("brute", "backtracking search exhausted"),
    })
}

/// Quick rejection, then the route chosen by the shapes of `G` and `H`.
pub fn iso_auto(g: &Arc<CayleyGroup>, h: &Arc<CayleyGroup>, config: &EngineConfig) -> Result<IsoVerdict> {
    let v = if g.order() != h.order() {
        IsoVerdict::no("invariants", format!("orders {} and {}", g.order(), h.order()))
    } else if invariant_signature(g) != invariant_signature(h) {
        IsoVerdict::no("invariants", "invariant signatures differ")
    } else if g.is_abelian() {
        abelian_verdict("abelian", g, h)?
    } else if is_central_radical(g) && is_central_radical(h) {
        central_route(g, h, config)?
    } else {
        let (rg, rh) = (g.solvable_radical(), h.solvable_radical());
        let elementary = |x: &Arc<CayleyGroup>, r: &Subgroup| -> Result<bool> {
            if !r.is_abelian(x) || r.is_trivial() {
                return Ok(false);
            }
            Ok(primary_decomposition(Arc::new(r.as_group(x).0))?.elementary_prime().is_some())
        };
        if elementary(g, &rg)? && elementary(h, &rh)? {
            iso_elem_abelian_radical(g, h, config)?
        } else {
            brute_verdict(g, h, config)?
        }
    };
    let v = checked(g, h, v)?;
    oracle(g, h, v, config)
}

fn oracle(g: &CayleyGroup, h: &CayleyGroup, v: IsoVerdict, config: &EngineConfig) -> Result<IsoVerdict> {
    if !config.oracle_check || g.order() > config.caps.oracle_order {
        return Ok(v);
    }
    let truth = brute_force_iso(g, h, &config.caps)?.is_some();
    if truth != v.is_isomorphic() {
        return Err(precondition(format!("oracle disagreement: {} says {}, brute force says {}", v.strategy, v.result, truth)));
    }
    Ok(v.note("oracle: brute force agrees"))
}

/// Runs one named strategy (or the dispatcher).
pub fn iso_with_strategy(g: &Arc<CayleyGroup>, h: &Arc<CayleyGroup>, strategy: Strategy, config: &EngineConfig) -> Result<IsoVerdict> {
    let v = match strategy {
        Strategy::Auto => return iso_auto(g, h, config),
        Strategy::CentralRadical => iso_central_radical(g, h, config)?,
        Strategy::ElemAbelianRadical => iso_elem_abelian_radical(g, h, config)?,
        Strategy::SsProduct1 => iso_semisimple_product_small_aut_a(g, h, config)?,
        Strategy::SsProduct2 => iso_semisimple_product_code(g, h, config)?,
        Strategy::Brute => brute_verdict(g, h, config)?,
    };
    let v = checked(g, h, v)?;
    oracle(g, h, v, config)
}

#[cfg(test)]
mod tests;
