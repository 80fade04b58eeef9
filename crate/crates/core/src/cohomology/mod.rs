//! Extension data of extensions by abelian (and general) normal subgroups,
//! 2-cochain matrices, coboundary spaces and class tests.

mod classes;
mod coboundary;
mod general;
mod product;

pub use classes::{cohomologous, coboundary_witness, pseudo_congruent, same_class_up_to_aut_a};
pub use coboundary::{
    coboundary_basis, cocycle_space_dimensions, projection_complement, ProjectionComplement, ScalarCoboundaries,
    VectorCoboundaries,
};
pub use general::{extract_general_extension_data, GeneralExtensionData};
pub use product::{assemble_product_cocycle, restrict_to_factor, split_central_direct_factor, CentralSplit, FactorRestriction};

use crate::abelian::{primary_decomposition, AbelianAut, AbelianStructure};
use crate::cayley::{CayleyGroup, GroupMap, QuotientPresentation, Subgroup};
use crate::error::{Error, Result};
use std::sync::Arc;

/// Column labels of a cochain matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnLayout {
    /// Column `p * |Q| + q` holds `f(p, q)`.
    Full { q_order: usize },
    /// Concatenated blocks; block `i` has column `x * |T_i| + y` for
    /// `f_i(x, y)`.
    Product { factor_orders: Vec<usize> },
}

impl ColumnLayout {
    pub fn width(&self) -> usize {
        match self {
            Self::Full { q_order } => q_order * q_order,
            Self::Product { factor_orders } => factor_orders.iter().map(|t| t * t).sum(),
        }
    }

    /// Start column of each block (a single block in full mode).
    pub fn offsets(&self) -> Vec<usize> {
        match self {
            Self::Full { .. } => vec![0],
            Self::Product { factor_orders } => {
                let mut acc = 0;
                factor_orders
                    .iter()
                    .map(|t| {
                        let o = acc;
                        acc += t * t;
                        o
                    })
                    .collect()
            }
        }
    }

    pub fn label(&self, c: usize) -> String {
        match self {
            Self::Full { q_order } => format!("{},{}", c / q_order, c % q_order),
            Self::Product { factor_orders } => {
                let mut c = c;
                for (i, t) in factor_orders.iter().enumerate() {
                    if c < t * t {
                        return format!("{}:{},{}", i, c / t, c % t);
                    }
                    c -= t * t;
                }
                unreachable!("column out of range")
            }
        }
    }
}

/// A cochain as a `k x m` integer matrix; row `i` is taken modulo
/// `moduli[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainMatrix {
    pub moduli: Vec<u64>,
    pub layout: ColumnLayout,
    pub rows: Vec<Vec<u64>>,
}

impl CochainMatrix {
    pub fn zero(moduli: &[u64], layout: ColumnLayout) -> Self {
        let w = layout.width();
        Self { moduli: moduli.to_vec(), rows: vec![vec![0; w]; moduli.len()], layout }
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.layout.width()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|&x| x == 0))
    }

    /// Text form: `k m`, the moduli, the column labels, then the rows.
    pub fn serialize(&self) -> String {
        let mut out = format!("{} {}\n", self.k(), self.width());
        out.push_str(&join(self.moduli.iter()));
        out.push('\n');
        out.push_str(&(0..self.width()).map(|c| self.layout.label(c)).collect::<Vec<_>>().join(" "));
        out.push('\n');
        for r in &self.rows {
            out.push_str(&join(r.iter()));
            out.push('\n');
        }
        out
    }

    /// Parses the text form (full or product labels).
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("cochain matrix: {m}"));
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let nums = |l: Option<&str>| -> Result<Vec<u64>> {
            l.ok_or_else(|| bad("truncated"))?
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| bad("bad number")))
                .collect()
        };
        let head = nums(lines.next())?;
        let [k, m] = head[..] else { return Err(bad("header")) };
        let (k, m) = (k as usize, m as usize);
        let moduli = if k == 0 { lines.next(); Vec::new() } else { nums(lines.next())? };
        if moduli.len() != k {
            return Err(bad("modulus count"));
        }
        let labels: Vec<&str> = lines.next().unwrap_or("").split_whitespace().collect();
        if labels.len() != m {
            return Err(bad("label count"));
        }
        let layout = if m == 0 || !labels[0].contains(':') {
            let q = (m as f64).sqrt().round() as usize;
            if q * q != m {
                return Err(bad("full layout needs a square column count"));
            }
            ColumnLayout::Full { q_order: q }
        } else {
            let mut orders: Vec<usize> = Vec::new();
            for l in &labels {
                let (i, _) = l.split_once(':').ok_or_else(|| bad("mixed labels"))?;
                let i: usize = i.parse().map_err(|_| bad("label"))?;
                if i == orders.len() {
                    orders.push(0);
                }
                *orders.last_mut().ok_or_else(|| bad("label order"))? += 1;
            }
            let factor_orders = orders
                .iter()
                .map(|&c| {
                    let t = (c as f64).sqrt().round() as usize;
                    if t * t == c { Ok(t) } else { Err(bad("block size")) }
                })
                .collect::<Result<Vec<_>>>()?;
            ColumnLayout::Product { factor_orders }
        };
        let mut rows = Vec::with_capacity(k);
        for i in 0..k {
            let r = nums(lines.next())?;
            if r.len() != m {
                return Err(bad("row length"));
            }
            rows.push(r.into_iter().map(|x| x % moduli[i]).collect());
        }
        let out = Self { moduli, layout, rows };
        if (0..m).map(|c| out.layout.label(c)).zip(&labels).any(|(a, b)| a != *b) {
            return Err(bad("column labels out of order"));
        }
        Ok(out)
    }
}

fn join<T: ToString>(it: impl Iterator<Item = T>) -> String {
    it.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// How a direct-product quotient decomposes into factors.
#[derive(Debug, Clone)]
pub struct ProductLayout {
    pub factors: Vec<Arc<CayleyGroup>>,
    /// `tuples[q][i]` is the `i`-th component of `q`.
    pub tuples: Vec<Vec<u32>>,
}

/// Extension data `(A, Q, theta, f)` with `A` abelian. In product layout the
/// action is trivial and `f(p, q) = sum_i f_i(p_i, q_i)`.
#[derive(Debug, Clone)]
pub struct ExtensionData {
    pub coefficient: AbelianStructure,
    pub quotient: Arc<CayleyGroup>,
    /// `action[q]` is `theta_q`.
    pub action: Vec<AbelianAut>,
    pub cocycle: CochainMatrix,
    pub product: Option<ProductLayout>,
}

impl ExtensionData {
    /// Full-layout data from a value function.
    pub fn from_values(
        coefficient: AbelianStructure,
        quotient: Arc<CayleyGroup>,
        action: Vec<AbelianAut>,
        value: impl Fn(usize, usize) -> Vec<u64>,
    ) -> Self {
        let n = quotient.order();
        let k = coefficient.rank();
        let mut rows = vec![vec![0u64; n * n]; k];
        for p in 0..n {
            for q in 0..n {
                let v = value(p, q);
                for i in 0..k {
                    rows[i][p * n + q] = v[i] % coefficient.orders()[i];
                }
            }
        }
        let cocycle = CochainMatrix { moduli: coefficient.orders().to_vec(), layout: ColumnLayout::Full { q_order: n }, rows };
        Self { coefficient, quotient, action, cocycle, product: None }
    }

    /// Zero cocycle with trivial action.
    pub fn trivial(coefficient: AbelianStructure, quotient: Arc<CayleyGroup>) -> Self {
        let k = coefficient.rank();
        let action = vec![AbelianAut::identity(k); quotient.order()];
        let zero = vec![0u64; k];
        Self::from_values(coefficient, quotient, action, |_, _| zero.clone())
    }

    pub fn k(&self) -> usize {
        self.coefficient.rank()
    }

    pub fn q_order(&self) -> usize {
        self.quotient.order()
    }

    pub fn is_trivial_action(&self) -> bool {
        self.action.iter().all(|a| a.is_identity())
    }

    /// Coordinates of `f(p, q)`.
    pub fn value(&self, p: usize, q: usize) -> Vec<u64> {
        match &self.product {
            None => {
                let n = self.q_order();
                self.cocycle.rows.iter().map(|r| r[p * n + q]).collect()
            }
            Some(pl) => {
                let offs = self.cocycle.layout.offsets();
                let (tp, tq) = (&pl.tuples[p], &pl.tuples[q]);
                self.cocycle
                    .rows
                    .iter()
                    .zip(self.coefficient.orders())
                    .map(|(r, &d)| {
                        pl.factors.iter().enumerate().fold(0, |acc, (i, t)| {
                            (acc + r[offs[i] + tp[i] as usize * t.order() + tq[i] as usize]) % d
                        })
                    })
                    .collect()
            }
        }
    }

    /// The same data in full layout.
    pub fn to_full(&self) -> ExtensionData {
        if self.product.is_none() {
            return self.clone();
        }
        Self::from_values(self.coefficient.clone(), self.quotient.clone(), self.action.clone(), |p, q| self.value(p, q))
    }
}

/// An abelian normal subgroup with its own coordinate structure.
#[derive(Debug, Clone)]
pub struct AbelianKernel {
    pub structure: AbelianStructure,
    /// Element of the abstract group -> element of the parent.
    pub embed: Vec<usize>,
    /// Parent element -> abstract element (`u32::MAX` outside).
    pub index: Vec<u32>,
}

impl AbelianKernel {
    pub fn new(g: &CayleyGroup, n: &Subgroup) -> Result<Self> {
        if !n.is_abelian(g) {
            return Err(Error::NotAbelian);
        }
        let (ng, embed) = n.as_group(g);
        let structure = primary_decomposition(Arc::new(ng))?;
        let mut index = vec![u32::MAX; g.order()];
        for (i, &x) in embed.iter().enumerate() {
            index[x] = i as u32;
        }
        Ok(Self { structure, embed, index })
    }

    pub fn coords_of(&self, x: usize) -> Vec<u64> {
        self.structure.coords_u64(self.index[x] as usize)
    }

    pub fn element(&self, c: &[u64]) -> usize {
        self.embed[self.structure.element(c)]
    }
}

/// Extension data of `G` over the abelian normal subgroup of `qp`:
/// `theta_q(a) = s(q) a s(q)^-1`, `f(p, q) = s(p) s(q) s(pq)^-1`.
pub fn extract_extension_data(qp: &QuotientPresentation) -> Result<ExtensionData> {
    let kernel = AbelianKernel::new(&qp.group, &qp.normal)?;
    Ok(extract_with_kernel(qp, &kernel))
}

/// As [`extract_extension_data`] with a given coordinate structure on the
/// kernel.
pub fn extract_with_kernel(qp: &QuotientPresentation, kernel: &AbelianKernel) -> ExtensionData {
    let g = &qp.group;
    let q = &qp.quotient;
    let a = &kernel.structure;
    let action: Vec<AbelianAut> = q
        .elements()
        .map(|x| {
            let s = qp.lift(x);
            AbelianAut::from_element_map(a, |b| kernel.index[g.conj(kernel.embed[b], s)] as usize)
        })
        .collect();
    ExtensionData::from_values(a.clone(), q.clone(), action, |x, y| {
        let v = g.mul(g.mul(qp.lift(x), qp.lift(y)), g.inv(qp.lift(q.mul(x, y))));
        kernel.coords_of(v)
    })
}

/// Checks the action is a homomorphism into `Aut(A)`, the cocycle is
/// normalized, and the 2-cocycle identity
/// `f(p,q) + f(pq,r) = theta_p f(q,r) + f(p,qr)` holds for all triples.
/// Product-layout data are checked factor by factor.
pub fn verify_extension_data(ed: &ExtensionData) -> bool {
    let a = &ed.coefficient;
    let q = &ed.quotient;
    if ed.action.len() != q.order() || !ed.action[q.identity()].is_identity() {
        return false;
    }
    if ed.action.iter().any(|t| !t.is_automorphism(a)) {
        return false;
    }
    let gens = q.generators();
    for x in q.elements() {
        for &s in gens {
            let lhs = ed.action[x].compose(a, &ed.action[s]);
            let rhs = &ed.action[q.mul(x, s)];
            if (0..a.rank()).any(|j| {
                let e: Vec<u64> = (0..a.rank()).map(|i| u64::from(i == j)).collect();
                lhs.apply(a, &e) != rhs.apply(a, &e)
            }) {
                return false;
            }
        }
    }
    if let Some(pl) = &ed.product {
        if !ed.is_trivial_action() {
            return false;
        }
        let offs = ed.cocycle.layout.offsets();
        return pl.factors.iter().enumerate().all(|(i, t)| {
            let tn = t.order();
            let block = ExtensionData::from_values(
                a.clone(),
                t.clone(),
                vec![AbelianAut::identity(a.rank()); tn],
                |x, y| ed.cocycle.rows.iter().map(|r| r[offs[i] + x * tn + y]).collect(),
            );
            verify_extension_data(&block)
        });
    }
    let n = q.order();
    let e = q.identity();
    let vals: Vec<Vec<u64>> = (0..n * n).map(|c| ed.value(c / n, c % n)).collect();
    let zero = a.zero();
    if q.elements().any(|x| vals[e * n + x] != zero || vals[x * n + e] != zero) {
        return false;
    }
    for p in 0..n {
        let theta = &ed.action[p];
        for x in 0..n {
            let pq = q.mul(p, x);
            let left_base = &vals[p * n + x];
            for r in 0..n {
                let lhs = a.add(left_base, &vals[pq * n + r]);
                let rhs = a.add(&theta.apply(a, &vals[x * n + r]), &vals[p * n + q.mul(x, r)]);
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// The twisted data `theta'(q) = alpha^-1 theta_{beta q} alpha`,
/// `f'(p, q) = alpha^-1 f(beta p, beta q)`. Twisting is a right action.
pub fn twist(ed: &ExtensionData, alpha: &AbelianAut, beta: &GroupMap) -> ExtensionData {
    let a = &ed.coefficient;
    let ainv = alpha.inverse(a);
    let action: Vec<AbelianAut> = ed
        .quotient
        .elements()
        .map(|x| ainv.compose(a, &ed.action[beta.apply(x)].compose(a, alpha)))
        .collect();
    ExtensionData::from_values(a.clone(), ed.quotient.clone(), action, |p, q| {
        ainv.apply(a, &ed.value(beta.apply(p), beta.apply(q)))
    })
}

/// Matrix form of the cocycle. Product mode reads the blocks on
/// `T_i x T_i` and fails unless `f(p, q) = sum_i f(p_i, q_i)` everywhere.
pub fn to_matrix(ed: &ExtensionData, product: Option<&ProductLayout>) -> Result<CochainMatrix> {
    let Some(pl) = product else {
        return Ok(ed.to_full().cocycle);
    };
    if let Some(own) = &ed.product {
        if own.tuples == pl.tuples {
            return Ok(ed.cocycle.clone());
        }
    }
    let n = ed.q_order();
    let factor_orders: Vec<usize> = pl.factors.iter().map(|t| t.order()).collect();
    // element of Q with only component i equal to x
    let mut single: Vec<Vec<usize>> = factor_orders.iter().map(|&t| vec![usize::MAX; t]).collect();
    for q in 0..n {
        let t = &pl.tuples[q];
        let nonid: Vec<usize> = (0..t.len()).filter(|&i| t[i] as usize != pl.factors[i].identity()).collect();
        match nonid[..] {
            [] => {
                for (i, s) in single.iter_mut().enumerate() {
                    s[pl.factors[i].identity()] = q;
                }
            }
            [i] => single[i][t[i] as usize] = q,
            _ => {}
        }
    }
    let layout = ColumnLayout::Product { factor_orders: factor_orders.clone() };
    let offs = layout.offsets();
    let mut m = CochainMatrix::zero(ed.coefficient.orders(), layout);
    for (i, &tn) in factor_orders.iter().enumerate() {
        for x in 0..tn {
            for y in 0..tn {
                let v = ed.value(single[i][x], single[i][y]);
                for (r, &val) in m.rows.iter_mut().zip(&v) {
                    r[offs[i] + x * tn + y] = val;
                }
            }
        }
    }
    let orders = ed.coefficient.orders();
    for p in 0..n {
        for q in 0..n {
            let (tp, tq) = (&pl.tuples[p], &pl.tuples[q]);
            let expect: Vec<u64> = (0..ed.k())
                .map(|r| {
                    (0..factor_orders.len()).fold(0, |acc, i| {
                        (acc + m.rows[r][offs[i] + tp[i] as usize * factor_orders[i] + tq[i] as usize]) % orders[r]
                    })
                })
                .collect();
            if expect != ed.value(p, q) {
                return Err(Error::NotProductRespecting);
            }
        }
    }
    Ok(m)
}
