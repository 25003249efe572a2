//! Smith normal form over Z with unimodular transforms.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// `u * a * v = diag(diag)` with `u`, `v` unimodular and
/// `diag[0] | diag[1] | ...`. `v_inv` is the inverse of `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub diag: Vec<BigInt>,
    pub rank: usize,
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    pub v_inv: Vec<Vec<BigInt>>,
}

impl Snf {
    /// Invariant factors different from 1 (the torsion of the cokernel).
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diag[..self.rank]
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

struct Calc {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    v_inv: Vec<Vec<BigInt>>,
    m: usize,
    n: usize,
}

impl Calc {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        for row in self.v.iter_mut() {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    /// row_i -= q * row_t
    fn row_sub(&mut self, i: usize, t: usize, q: &BigInt) {
        for mat in [&mut self.a, &mut self.u] {
            let src = mat[t].clone();
            for (x, s) in mat[i].iter_mut().zip(src.iter()) {
                *x -= q * s;
            }
        }
    }

    /// col_j -= q * col_t
    fn col_sub(&mut self, j: usize, t: usize, q: &BigInt) {
        for mat in [&mut self.a, &mut self.v] {
            for row in mat.iter_mut() {
                let s = row[t].clone();
                row[j] -= q * s;
            }
        }
        // v_inv <- E^{-1} v_inv with E^{-1} = I + q e_t e_j^T
        let src = self.v_inv[j].clone();
        for (x, s) in self.v_inv[t].iter_mut().zip(src.iter()) {
            *x += q * s;
        }
    }

    fn negate_row(&mut self, t: usize) {
        for mat in [&mut self.a, &mut self.u] {
            for x in mat[t].iter_mut() {
                *x = -&*x;
            }
        }
    }

    fn min_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.m {
            for j in t..self.n {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn run(&mut self) -> usize {
        let mut t = 0;
        while t < self.m.min(self.n) {
            let Some((pi, pj)) = self.min_in_block(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.m {
                    if !self.a[i][t].is_zero() {
                        let q = &self.a[i][t] / &self.a[t][t];
                        self.row_sub(i, t, &q);
                        if !self.a[i][t].is_zero() {
                            clean = false;
                        }
                    }
                }
                for j in t + 1..self.n {
                    if !self.a[t][j].is_zero() {
                        let q = &self.a[t][j] / &self.a[t][t];
                        self.col_sub(j, t, &q);
                        if !self.a[t][j].is_zero() {
                            clean = false;
                        }
                    }
                }
                if !clean {
                    // bring the smallest remainder in row/column t to the pivot
                    let mut best = (t, t);
                    for i in t + 1..self.m {
                        let x = &self.a[i][t];
                        if !x.is_zero() && x.abs() < self.a[best.0][best.1].abs() {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..self.n {
                        let x = &self.a[t][j];
                        if !x.is_zero() && x.abs() < self.a[best.0][best.1].abs() {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                // divisibility of the remaining block
                let d = self.a[t][t].clone();
                let bad = (t + 1..self.m)
                    .find(|&i| (t + 1..self.n).any(|j| !(&self.a[i][j] % &d).is_zero()));
                match bad {
                    Some(i) => {
                        let minus_one = -BigInt::one();
                        self.row_sub(t, i, &minus_one);
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        t
    }
}

/// Smith normal form of the `rows.len() x ncols` matrix `rows`.
pub fn smith_normal_form(rows: &[Vec<BigInt>], ncols: usize) -> Snf {
    let m = rows.len();
    let mut c = Calc {
        a: rows.to_vec(),
        u: identity(m),
        v: identity(ncols),
        v_inv: identity(ncols),
        m,
        n: ncols,
    };
    let rank = c.run();
    let diag = (0..m.min(ncols)).map(|i| c.a[i][i].clone()).collect();
    Snf {
        diag,
        rank,
        u: c.u,
        v: c.v,
        v_inv: c.v_inv,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], inner: usize, cols: usize) -> Vec<Vec<BigInt>> {
        a.iter()
            .map(|row| {
                (0..cols)
                    .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                    .collect()
            })
            .collect()
    }

    fn det(m: &[Vec<BigInt>]) -> BigInt {
        // Bareiss fraction-free elimination
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        let mut a = m.to_vec();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    #[test]
    fn unimodular_oracle_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for trial in 0..300 {
            let m = rng.gen_range(0..5);
            let n = rng.gen_range(1..5);
            let a: Vec<Vec<BigInt>> = (0..m)
                .map(|_| {
                    (0..n)
                        .map(|_| BigInt::from(rng.gen_range(-9..=9)))
                        .collect()
                })
                .collect();
            let s = smith_normal_form(&a, n);
            let uav = matmul(&matmul(&s.u, &a, m, n), &s.v, n, n);
            for (i, row) in uav.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    let expect = if i == j {
                        s.diag[i].clone()
                    } else {
                        BigInt::zero()
                    };
                    assert_eq!(*x, expect, "trial {trial}: U A V != D");
                }
            }
            assert!(det(&s.u).abs().is_one());
            assert!(det(&s.v).abs().is_one());
            let vv = matmul(&s.v, &s.v_inv, n, n);
            assert_eq!(vv, identity(n));
            for k in 0..s.rank {
                assert!(s.diag[k].is_positive());
                if k + 1 < s.rank {
                    assert!((&s.diag[k + 1] % &s.diag[k]).is_zero());
                }
            }
            for k in s.rank..m.min(n) {
                assert!(s.diag[k].is_zero());
            }
        }
    }

    #[test]
    fn known_invariants() {
        let a = vec![
            vec![BigInt::from(2), BigInt::from(4), BigInt::from(4)],
            vec![BigInt::from(-6), BigInt::from(6), BigInt::from(12)],
            vec![BigInt::from(10), BigInt::from(-4), BigInt::from(-16)],
        ];
        let s = smith_normal_form(&a, 3);
        assert_eq!(
            s.diag,
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
        assert_eq!(s.torsion().len(), 3);
    }
}
