//! Smith normal form over `Z/p^e` and linear congruence systems with mixed
//! moduli.

use super::{factorize, inv_mod, valuation};

#[derive(Debug, Clone)]
struct PivotStep {
    swap_with: usize,
    unit_inv: u64,
    /// `(row, w)`: row -= w * pivot row.
    eliminations: Vec<(usize, u64)>,
}

/// A factorization `U A V = D` of a matrix over `Z/p^e` with `D` diagonal,
/// reusable for many right-hand sides.
#[derive(Debug, Clone)]
pub struct SmithSolver {
    p: u64,
    e: u32,
    modulus: u64,
    rows: usize,
    cols: usize,
    steps: Vec<PivotStep>,
    /// Valuations of the diagonal entries of `D`.
    diag: Vec<u32>,
    /// Column transform, `cols x cols`.
    v: Vec<Vec<u64>>,
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

impl SmithSolver {
    /// Factors the `rows x cols` matrix `a` (entries taken modulo `p^e`).
    pub fn new(a: &[Vec<i64>], cols: usize, p: u64, e: u32) -> Self {
        let m = p.pow(e);
        let rows = a.len();
        let mut mat: Vec<Vec<u64>> =
            a.iter().map(|r| r.iter().map(|&x| x.rem_euclid(m as i64) as u64).collect()).collect();
        let mut v: Vec<Vec<u64>> = (0..cols).map(|i| (0..cols).map(|j| u64::from(i == j)).collect()).collect();
        let mut steps = Vec::new();
        let mut diag = Vec::new();
        let mut t = 0;
        while t < rows.min(cols) {
            let mut best: Option<(u32, usize, usize)> = None;
            'search: for (i, row) in mat.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 {
                        let val = valuation(x, p, e);
                        if best.is_none_or(|b| val < b.0) {
                            best = Some((val, i, j));
                            if val == 0 {
                                break 'search;
                            }
                        }
                    }
                }
            }
            let Some((val, i, j)) = best else { break };
            mat.swap(t, i);
            if j != t {
                for row in mat.iter_mut() {
                    row.swap(t, j);
                }
                for row in v.iter_mut() {
                    row.swap(t, j);
                }
            }
            let pv = p.pow(val);
            let unit = mat[t][t] / pv;
            let unit_inv = inv_mod(unit % m, m).expect("unit");
            for x in mat[t].iter_mut() {
                *x = mulmod(*x, unit_inv, m);
            }
            let pivot_row = mat[t].clone();
            let mut eliminations = Vec::new();
            for (r, row) in mat.iter_mut().enumerate().skip(t + 1) {
                if row[t] != 0 {
                    let w = row[t] / pv;
                    for (x, &y) in row.iter_mut().zip(&pivot_row).skip(t) {
                        *x = (*x + m - mulmod(w, y, m)) % m;
                    }
                    eliminations.push((r, w));
                }
            }
            for c in t + 1..cols {
                let x = mat[t][c];
                if x != 0 {
                    let w = x / pv;
                    mat[t][c] = 0;
                    for row in v.iter_mut() {
                        row[c] = (row[c] + m - mulmod(w, row[t], m)) % m;
                    }
                }
            }
            steps.push(PivotStep { swap_with: i, unit_inv, eliminations });
            diag.push(val);
            t += 1;
        }
        Self { p, e, modulus: m, rows, cols, steps, diag, v }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Valuations of the nonzero invariant factors.
    pub fn invariant_valuations(&self) -> &[u32] {
        &self.diag
    }

    /// A solution of `A x = b` over `Z/p^e`, if one exists.
    pub fn solve(&self, b: &[i64]) -> Option<Vec<u64>> {
        let m = self.modulus;
        debug_assert_eq!(b.len(), self.rows);
        let mut c: Vec<u64> = b.iter().map(|&x| x.rem_euclid(m as i64) as u64).collect();
        for (t, step) in self.steps.iter().enumerate() {
            c.swap(t, step.swap_with);
            c[t] = mulmod(c[t], step.unit_inv, m);
            let ct = c[t];
            for &(r, w) in &step.eliminations {
                c[r] = (c[r] + m - mulmod(w, ct, m)) % m;
            }
        }
        if c[self.diag.len()..].iter().any(|&x| x != 0) {
            return None;
        }
        let mut y = vec![0u64; self.cols];
        for (t, &d) in self.diag.iter().enumerate() {
            if valuation(c[t], self.p, self.e) < d {
                return None;
            }
            y[t] = c[t] / self.p.pow(d);
        }
        Some(
            (0..self.cols)
                .map(|i| self.v[i].iter().zip(&y).fold(0, |acc, (&a, &b)| (acc + mulmod(a, b, m)) % m))
                .collect(),
        )
    }
}

/// One congruence `sum coeffs_j x_j = rhs (mod modulus)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    pub coeffs: Vec<i64>,
    pub rhs: i64,
    pub modulus: u64,
}

/// Solves a system of congruences in `nvars` integer unknowns. The returned
/// values are reduced modulo the lcm of the moduli.
///
/// Each prime is handled separately: equations are scaled to a common
/// power of the prime, solved by Smith normal form, and recombined by CRT.
pub fn solve_congruences(eqs: &[Congruence], nvars: usize) -> Option<Vec<u64>> {
    let mut primes: Vec<(u64, u32)> = Vec::new();
    for eq in eqs {
        for (p, e) in factorize(eq.modulus) {
            match primes.iter_mut().find(|(q, _)| *q == p) {
                Some(entry) => entry.1 = entry.1.max(e),
                None => primes.push((p, e)),
            }
        }
    }
    primes.sort();
    let mut x = vec![0u64; nvars];
    let mut modulus = 1u64;
    for (p, big_e) in primes {
        let pe = p.pow(big_e);
        let mut mat = Vec::new();
        let mut rhs = Vec::new();
        for eq in eqs {
            let e = valuation(eq.modulus, p, 64);
            if e == 0 {
                continue;
            }
            let scale = p.pow(big_e - e) as i128;
            let red = |v: i64| ((v as i128).rem_euclid(pe as i128) * scale % pe as i128) as i64;
            mat.push(eq.coeffs.iter().map(|&c| red(c)).collect());
            rhs.push(red(eq.rhs));
        }
        let sol = SmithSolver::new(&mat, nvars, p, big_e).solve(&rhs)?;
        // CRT: x = x + modulus * k with x + modulus*k = sol (mod pe)
        let inv = inv_mod(modulus % pe, pe).unwrap();
        for (xi, si) in x.iter_mut().zip(sol) {
            let diff = (si + pe - *xi % pe) % pe;
            let k = mulmod(diff, inv, pe);
            *xi += modulus * k;
        }
        modulus *= pe;
    }
    Some(x)
}
