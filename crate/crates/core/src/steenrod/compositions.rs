/// Weak compositions of `n` into `k` parts, in lexicographic order.
#[derive(Clone, Debug)]
pub struct Compositions {
    current: Option<Vec<u32>>,
}

/// All `(p_1, …, p_k)` with `p_j ≥ 0` and `Σ p_j = n`, starting from
/// `(0, …, 0, n)` and ending at `(n, 0, …, 0)`.
pub fn compositions(n: u32, k: usize) -> Compositions {
    assert!(k >= 1, "at least one part");
    let mut first = vec![0; k];
    first[k - 1] = n;
    Compositions {
        current: Some(first),
    }
}

impl Iterator for Compositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let cur = self.current.take()?;
        let k = cur.len();
        let mut tail = 0;
        let mut next = None;
        for i in (0..k - 1).rev() {
            tail += cur[i + 1];
            if tail > 0 {
                let mut p = cur.clone();
                p[i] += 1;
                p[i + 1..].iter_mut().for_each(|x| *x = 0);
                p[k - 1] = tail - 1;
                next = Some(p);
                break;
            }
        }
        self.current = next;
        Some(cur)
    }
}

/// `C(n + k - 1, k - 1)`, the number of weak compositions.
pub fn composition_count(n: u32, k: usize) -> u128 {
    let top = u128::from(n) + k as u128 - 1;
    let r = (k as u128 - 1).min(u128::from(n));
    (0..r).fold(1u128, |acc, i| acc * (top - i) / (i + 1))
}
