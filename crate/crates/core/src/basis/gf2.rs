//! Dense bit vectors and row reduction over GF(2).

/// Fixed-length vector over GF(2), packed into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = BitVec::zeros(len);
        v.set(i, true);
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.len);
        let bit = 1u64 << (i % 64);
        if v {
            self.words[i / 64] |= bit;
        } else {
            self.words[i / 64] &= !bit;
        }
    }

    pub fn toggle(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + t)
                }
            })
        })
    }

    pub fn dot(&self, other: &BitVec) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }
}

/// Row-major matrix over GF(2).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    ncols: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    pub fn new(ncols: usize, rows: Vec<BitVec>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == ncols));
        BitMatrix { ncols, rows }
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        BitMatrix {
            ncols,
            rows: vec![BitVec::zeros(ncols); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix {
            ncols: n,
            rows: (0..n).map(|i| BitVec::unit(n, i)).collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.rows[r].set(c, v)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.ncols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter_ones() {
                t.rows[c].set(r, true);
            }
        }
        t
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            if row.dot(v) {
                out.set(r, true);
            }
        }
        out
    }

    /// Reduced row echelon form. Returns the pivot column of each nonzero row;
    /// zero rows are dropped.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.ncols {
            let Some(p) = (rank..self.rows.len()).find(|&r| self.rows[r].get(col)) else {
                continue;
            };
            self.rows.swap(rank, p);
            let pivot_row = self.rows[rank].clone();
            for (r, row) in self.rows.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        self.rows.truncate(rank);
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<BitMatrix> {
        let n = self.rows.len();
        if n != self.ncols {
            return None;
        }
        let mut aug: Vec<BitVec> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut v = BitVec::zeros(2 * n);
                for c in row.iter_ones() {
                    v.set(c, true);
                }
                v.set(n + i, true);
                v
            })
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&r| aug[r].get(col))?;
            aug.swap(col, p);
            let pivot = aug[col].clone();
            for (r, row) in aug.iter_mut().enumerate() {
                if r != col && row.get(col) {
                    row.xor_assign(&pivot);
                }
            }
        }
        let rows = aug
            .into_iter()
            .map(|v| {
                let mut out = BitVec::zeros(n);
                for c in v.iter_ones().filter(|&c| c >= n) {
                    out.set(c - n, true);
                }
                out
            })
            .collect();
        Some(BitMatrix { ncols: n, rows })
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.ncols, other.nrows());
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = BitVec::zeros(other.ncols);
                for k in row.iter_ones() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        BitMatrix {
            ncols: other.ncols,
            rows,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(rng: &mut ChaCha8Rng, r: usize, c: usize) -> BitMatrix {
        let mut m = BitMatrix::zeros(r, c);
        for i in 0..r {
            for j in 0..c {
                m.set(i, j, rng.gen_bool(0.5));
            }
        }
        m
    }

    #[test]
    fn bitvec_ops() {
        let mut v = BitVec::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(v.count_ones(), 3);
        v.toggle(0);
        assert_eq!(v.first_one(), Some(64));
    }

    #[test]
    fn inverse_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut found = 0;
        for _ in 0..200 {
            let m = random(&mut rng, 6, 6);
            if let Some(inv) = m.inverse() {
                assert_eq!(m.mul(&inv), BitMatrix::identity(6));
                found += 1;
            } else {
                assert!(m.rank() < 6);
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn rref_preserves_row_space() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let m = random(&mut rng, 5, 9);
            let mut r = m.clone();
            let pivots = r.rref();
            // each original row is a combination of the reduced rows
            for row in m.rows() {
                let mut x = row.clone();
                for (k, &p) in pivots.iter().enumerate() {
                    if x.get(p) {
                        x.xor_assign(&r.rows()[k]);
                    }
                }
                assert!(x.is_zero());
            }
            for (k, &p) in pivots.iter().enumerate() {
                for (j, row) in r.rows().iter().enumerate() {
                    assert_eq!(row.get(p), j == k);
                }
            }
        }
    }
}
