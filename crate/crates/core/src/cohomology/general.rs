//! Extension data over an arbitrary normal subgroup.

use crate::cayley::{CayleyGroup, QuotientPresentation};
use std::sync::Arc;

/// `(N, Q, T, f)` with `T(q)` the automorphism `n -> s(q) n s(q)^-1` of `N`
/// and `f(p, q) = s(p) s(q) s(pq)^-1` in `N`.
#[derive(Debug, Clone)]
pub struct GeneralExtensionData {
    pub normal: Arc<CayleyGroup>,
    pub quotient: Arc<CayleyGroup>,
    /// `action[q][n] = T(q)(n)`.
    pub action: Vec<Vec<u32>>,
    /// `cocycle[p * |Q| + q] = f(p, q)`.
    pub cocycle: Vec<u32>,
}

impl GeneralExtensionData {
    pub fn value(&self, p: usize, q: usize) -> usize {
        self.cocycle[p * self.quotient.order() + q] as usize
    }

    pub fn act(&self, q: usize, n: usize) -> usize {
        self.action[q][n] as usize
    }

    /// Checks that each `T(q)` is an automorphism with `T(1) = 1`, that `f`
    /// is normalized, and the identities
    /// `T(p) T(q) = c_{f(p,q)} T(pq)` and
    /// `f(p,q) f(pq,r) = T(p)(f(q,r)) f(p,qr)`.
    pub fn verify(&self) -> bool {
        let (nn, q) = (&self.normal, &self.quotient);
        let qn = q.order();
        if self.action.len() != qn || self.cocycle.len() != qn * qn {
            return false;
        }
        let e = q.identity();
        if nn.elements().any(|x| self.act(e, x) != x) {
            return false;
        }
        if q.elements().any(|x| self.value(e, x) != nn.identity() || self.value(x, e) != nn.identity()) {
            return false;
        }
        let ngens = nn.generators();
        for t in &self.action {
            let mut seen = vec![false; nn.order()];
            for &v in t {
                if std::mem::replace(&mut seen[v as usize], true) {
                    return false;
                }
            }
            let hom = nn.elements().all(|x| {
                ngens.iter().all(|&y| t[nn.mul(x, y)] as usize == nn.mul(t[x] as usize, t[y] as usize))
            });
            if !hom {
                return false;
            }
        }
        for a in 0..qn {
            for b in 0..qn {
                let f = self.value(a, b);
                let ab = q.mul(a, b);
                if ngens.iter().any(|&x| self.act(a, self.act(b, x)) != nn.conj(self.act(ab, x), f)) {
                    return false;
                }
                for c in 0..qn {
                    let lhs = nn.mul(f, self.value(ab, c));
                    let rhs = nn.mul(self.act(a, self.value(b, c)), self.value(a, q.mul(b, c)));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// General extension data of `qp`, with `N` relabelled as its own group.
pub fn extract_general_extension_data(qp: &QuotientPresentation) -> GeneralExtensionData {
    let g = &qp.group;
    let (ng, embed) = qp.normal.as_group(g);
    let mut index = vec![u32::MAX; g.order()];
    for (i, &x) in embed.iter().enumerate() {
        index[x] = i as u32;
    }
    let q = &qp.quotient;
    let action = q
        .elements()
        .map(|x| {
            let s = qp.lift(x);
            embed.iter().map(|&n| index[g.conj(n, s)]).collect()
        })
        .collect();
    let mut cocycle = Vec::with_capacity(q.order() * q.order());
    for a in q.elements() {
        for b in q.elements() {
            let v = g.mul(g.mul(qp.lift(a), qp.lift(b)), g.inv(qp.lift(q.mul(a, b))));
            cocycle.push(index[v]);
        }
    }
    GeneralExtensionData { normal: Arc::new(ng), quotient: q.clone(), action, cocycle }
}
