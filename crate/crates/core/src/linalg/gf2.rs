//! Bit-packed reduced row echelon form over `GF(2)`.

/// Subspace of `GF(2)^width` in reduced row echelon form, rows packed into
/// 64-bit words.
#[derive(Debug, Clone)]
pub struct BitEchelon {
    width: usize,
    words: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    /// `pivot_row[c]` is the row whose pivot is column `c`.
    pivot_row: Vec<Option<usize>>,
}

impl BitEchelon {
    pub fn new(width: usize) -> Self {
        let words = width.div_ceil(64);
        Self { width, words, rows: Vec::new(), pivots: Vec::new(), pivot_row: vec![None; width] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    fn pack(&self, support: impl IntoIterator<Item = usize>) -> Vec<u64> {
        let mut v = vec![0u64; self.words];
        for c in support {
            v[c / 64] ^= 1 << (c % 64);
        }
        v
    }

    fn reduce_packed(&self, v: &mut [u64]) {
        // Rows are fully reduced, so one pass over the original set bits at
        // pivot columns suffices; collect them first.
        let hits: Vec<usize> = self
            .pivots
            .iter()
            .filter(|&&c| v[c / 64] >> (c % 64) & 1 == 1)
            .map(|&c| self.pivot_row[c].unwrap())
            .collect();
        for r in hits {
            for (x, y) in v.iter_mut().zip(&self.rows[r]) {
                *x ^= y;
            }
        }
    }

    /// Inserts the vector whose support is given (repeated columns cancel).
    pub fn insert_support(&mut self, support: impl IntoIterator<Item = usize>) -> bool {
        let v = self.pack(support);
        self.insert_packed(v)
    }

    pub fn insert_dense(&mut self, v: &[u32]) -> bool {
        let packed = self.pack(v.iter().enumerate().filter(|(_, &x)| x & 1 == 1).map(|(i, _)| i));
        self.insert_packed(packed)
    }

    pub fn contains_support(&self, support: impl IntoIterator<Item = usize>) -> bool {
        let mut v = self.pack(support);
        self.reduce_packed(&mut v);
        v.iter().all(|&w| w == 0)
    }

    fn insert_packed(&mut self, mut v: Vec<u64>) -> bool {
        self.reduce_packed(&mut v);
        let Some(wi) = v.iter().position(|&w| w != 0) else {
            return false;
        };
        let piv = wi * 64 + v[wi].trailing_zeros() as usize;
        for row in self.rows.iter_mut() {
            if row[piv / 64] >> (piv % 64) & 1 == 1 {
                for (x, y) in row.iter_mut().zip(&v) {
                    *x ^= y;
                }
            }
        }
        self.pivot_row[piv] = Some(self.rows.len());
        self.pivots.push(piv);
        self.rows.push(v);
        true
    }
}
