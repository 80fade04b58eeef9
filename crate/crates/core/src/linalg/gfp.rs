//! Dense matrices and reduced row echelon forms over `GF(p)`.

use super::inv_mod;

/// Dense row-major matrix over `GF(p)`.
pub type Mat = Vec<Vec<u32>>;

#[inline]
fn axpy(p: u64, target: &mut [u32], coef: u32, row: &[u32], from: usize) {
    // target -= coef * row, entries from `from` on
    let neg = (p - coef as u64) % p;
    if neg == 0 {
        return;
    }
    for (t, &r) in target[from..].iter_mut().zip(&row[from..]) {
        if r != 0 {
            *t = ((*t as u64 + neg * r as u64) % p) as u32;
        }
    }
}

/// A subspace of `GF(p)^width` kept in reduced row echelon form.
///
/// With tracking enabled every echelon row remembers its expression as a
/// combination of the inserted vectors, so membership tests can return a
/// preimage.
#[derive(Debug, Clone)]
pub struct Echelon {
    p: u64,
    width: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    combos: Option<Vec<Vec<u32>>>,
    inputs: usize,
}

impl Echelon {
    pub fn new(p: u64, width: usize, track: bool) -> Self {
        Self { p, width, rows: Vec::new(), pivots: Vec::new(), combos: track.then(Vec::new), inputs: 0 }
    }

    pub fn from_rows<'a>(p: u64, width: usize, rows: impl IntoIterator<Item = &'a [u32]>, track: bool) -> Self {
        let mut e = Self::new(p, width, track);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn prime(&self) -> u64 {
        self.p
    }
    pub fn width(&self) -> usize {
        self.width
    }
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    /// Number of vectors inserted so far.
    pub fn inputs(&self) -> usize {
        self.inputs
    }

    /// Reduces `v` in place to its canonical residue (zero at every pivot
    /// column) and returns the coefficients of the subtracted echelon rows.
    pub fn reduce(&self, v: &mut [u32]) -> Vec<u32> {
        debug_assert_eq!(v.len(), self.width);
        let mut coefs = vec![0u32; self.rows.len()];
        for (i, (&c, row)) in self.pivots.iter().zip(&self.rows).enumerate() {
            let x = v[c];
            if x != 0 {
                coefs[i] = x;
                axpy(self.p, v, x, row, c);
            }
        }
        coefs
    }

    pub fn residue(&self, v: &[u32]) -> Vec<u32> {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.residue(v).iter().all(|&x| x == 0)
    }

    /// Coefficients `c` over the inserted vectors with `sum c_j input_j = v`.
    /// Requires tracking.
    pub fn preimage(&self, v: &[u32]) -> Option<Vec<u32>> {
        let combos = self.combos.as_ref().expect("echelon built without tracking");
        let mut w = v.to_vec();
        let coefs = self.reduce(&mut w);
        if w.iter().any(|&x| x != 0) {
            return None;
        }
        let mut out = vec![0u32; self.inputs];
        for (c, combo) in coefs.iter().zip(combos) {
            if *c == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(combo) {
                *o = ((*o as u64 + *c as u64 * x as u64) % self.p) as u32;
            }
        }
        Some(out)
    }

    /// Inserts `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let p = self.p;
        let idx = self.inputs;
        self.inputs += 1;
        let mut w: Vec<u32> = v.iter().map(|&x| (x as u64 % p) as u32).collect();
        let coefs = self.reduce(&mut w);
        let Some(piv) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let mut combo = Vec::new();
        if let Some(combos) = &self.combos {
            combo = vec![0u32; idx + 1];
            combo[idx] = 1;
            for (c, row_combo) in coefs.iter().zip(combos) {
                if *c != 0 {
                    axpy(p, &mut combo[..row_combo.len()], *c, row_combo, 0);
                }
            }
        }
        let inv = inv_mod(w[piv] as u64, p).unwrap();
        for x in w[piv..].iter_mut() {
            *x = (*x as u64 * inv % p) as u32;
        }
        for x in combo.iter_mut() {
            *x = (*x as u64 * inv % p) as u32;
        }
        for i in 0..self.rows.len() {
            let c = self.rows[i][piv];
            if c != 0 {
                let from = self.pivots[i];
                axpy(p, &mut self.rows[i], c, &w, from.min(piv));
                if let Some(combos) = &mut self.combos {
                    let rc = &mut combos[i];
                    rc.resize(combo.len(), 0);
                    axpy(p, rc, c, &combo, 0);
                }
            }
        }
        let pos = self.pivots.partition_point(|&c| c < piv);
        self.pivots.insert(pos, piv);
        self.rows.insert(pos, w);
        if let Some(combos) = &mut self.combos {
            combos.insert(pos, combo);
        }
        true
    }

    /// Whether two echelon forms span the same subspace.
    pub fn same_span(&self, other: &Echelon) -> bool {
        self.p == other.p && self.width == other.width && self.pivots == other.pivots && self.rows == other.rows
    }
}

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect()
}

pub fn mat_mul(p: u64, a: &Mat, b: &Mat) -> Mat {
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    (row.iter().zip(b).map(|(&x, br)| x as u64 * br[j] as u64 % p).sum::<u64>() % p) as u32
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(p: u64, a: &Mat, v: &[u32]) -> Vec<u32> {
    a.iter()
        .map(|row| (row.iter().zip(v).map(|(&x, &y)| x as u64 * y as u64 % p).sum::<u64>() % p) as u32)
        .collect()
}

/// `row * A` for a row vector.
pub fn vec_mat(p: u64, v: &[u32], a: &Mat) -> Vec<u32> {
    let m = a.first().map_or(0, |r| r.len());
    let mut out = vec![0u64; m];
    for (&c, row) in v.iter().zip(a) {
        if c != 0 {
            for (o, &x) in out.iter_mut().zip(row) {
                *o = (*o + c as u64 * x as u64) % p;
            }
        }
    }
    out.into_iter().map(|x| x as u32).collect()
}

pub fn rank(p: u64, a: &Mat) -> usize {
    let width = a.first().map_or(0, |r| r.len());
    Echelon::from_rows(p, width, a.iter().map(|r| r.as_slice()), false).rank()
}

/// Inverse of a square matrix, if it is invertible.
pub fn inverse(p: u64, a: &Mat) -> Option<Mat> {
    let n = a.len();
    let mut aug: Mat = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| u32::from(i == j)));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| aug[r][col] != 0)?;
        aug.swap(col, piv);
        let inv = inv_mod(aug[col][col] as u64, p)?;
        for x in aug[col].iter_mut() {
            *x = (*x as u64 * inv % p) as u32;
        }
        let pivot_row = aug[col].clone();
        for r in 0..n {
            if r != col {
                let c = aug[r][col];
                axpy(p, &mut aug[r], c, &pivot_row, 0);
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of `{x : A x = 0}` where `A` has `width` columns.
pub fn nullspace(p: u64, width: usize, a: &Mat) -> Mat {
    let e = Echelon::from_rows(p, width, a.iter().map(|r| r.as_slice()), false);
    let mut basis = Vec::new();
    let pivots = e.pivots();
    for free in (0..width).filter(|c| !pivots.contains(c)) {
        let mut x = vec![0u32; width];
        x[free] = 1;
        for (row, &pc) in e.rows().iter().zip(pivots) {
            x[pc] = ((p - row[free] as u64) % p) as u32;
        }
        basis.push(x);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat_strategy(p: u32, rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
        proptest::collection::vec(proptest::collection::vec(0..p, cols), rows)
    }

    #[test]
    fn inverse_of_small_matrix() {
        let a = vec![vec![1, 2], vec![3, 4]];
        let inv = inverse(5, &a).unwrap();
        assert_eq!(mat_mul(5, &a, &inv), identity(2));
        assert!(inverse(2, &vec![vec![1, 1], vec![1, 1]]).is_none());
    }

    proptest! {
        #[test]
        fn preimage_reconstructs(a in mat_strategy(3, 5, 7), c in proptest::collection::vec(0u32..3, 5)) {
            let e = Echelon::from_rows(3, 7, a.iter().map(|r| r.as_slice()), true);
            let v = vec_mat(3, &c, &a);
            let pre = e.preimage(&v).unwrap();
            prop_assert_eq!(vec_mat(3, &pre, &a), v);
        }

        #[test]
        fn nullspace_is_annihilated(a in mat_strategy(5, 4, 6)) {
            let n = nullspace(5, 6, &a);
            prop_assert_eq!(n.len() + rank(5, &a), 6);
            for x in &n {
                prop_assert!(mat_vec(5, &a, x).iter().all(|&y| y == 0));
            }
        }

        #[test]
        fn rref_is_canonical(a in mat_strategy(2, 4, 6), b in mat_strategy(2, 4, 4)) {
            // rows of b*a span a subspace of rowspan(a); when b is invertible
            // the echelon forms coincide
            let ea = Echelon::from_rows(2, 6, a.iter().map(|r| r.as_slice()), false);
            let ba = mat_mul(2, &b, &a);
            let eb = Echelon::from_rows(2, 6, ba.iter().map(|r| r.as_slice()), false);
            if inverse(2, &b).is_some() {
                prop_assert!(ea.same_span(&eb));
            }
            for r in &ba {
                prop_assert!(ea.contains(r));
            }
        }
    }
}
