use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// Parity of `C(n, k)` by Lucas' theorem.
pub fn binomial_odd(n: u64, k: u64) -> bool {
    k & n == k
}

/// A formal GF(2) sum of composites `Sq^{a_1} ∘ … ∘ Sq^{a_r}`.
///
/// Each composite is stored outermost letter first, so `[1, 2]` is
/// `Sq^1 Sq^2` and `Sq^2` is applied first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AdemWord {
    terms: BTreeSet<Vec<u32>>,
}

impl AdemWord {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn letter(k: u32) -> Self {
        Self::composite(vec![k])
    }

    pub fn composite(letters: Vec<u32>) -> Self {
        let mut w = Self::zero();
        w.toggle(letters);
        w
    }

    fn toggle(&mut self, letters: Vec<u32>) {
        if !self.terms.remove(&letters) {
            self.terms.insert(letters);
        }
    }

    pub fn add_assign(&mut self, other: &AdemWord) {
        for t in &other.terms {
            self.toggle(t.clone());
        }
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &AdemWord) -> AdemWord {
        let mut out = AdemWord::zero();
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.iter().chain(b).copied().collect());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &[u32]> {
        self.terms.iter().map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether every letter has power-of-two degree.
    pub fn is_power_of_two_word(&self) -> bool {
        self.terms.iter().flatten().all(|k| k.is_power_of_two())
    }
}

impl fmt::Display for AdemWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                t.iter()
                    .map(|k| format!("Sq^{k}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// One Adem rewrite of `Sq^k`, `k` not a power of two.
///
/// With `b` the largest power of two below `k` and `a = k - b`:
/// `Sq^k = Sq^a Sq^b + Σ_{c ≥ 1} C(b-c-1, a-2c) Sq^{k-c} Sq^c`.
/// Letters on the right need not be powers of two.
pub fn adem_step(k: u32) -> AdemWord {
    assert!(k >= 1 && !k.is_power_of_two(), "Sq^{k} is indecomposable");
    let b = 1u32 << (31 - k.leading_zeros());
    let a = k - b;
    let mut w = AdemWord::composite(vec![a, b]);
    for c in 1..=a / 2 {
        if binomial_odd(u64::from(b - c - 1), u64::from(a - 2 * c)) {
            w.add_assign(&AdemWord::composite(vec![k - c, c]));
        }
    }
    w
}

fn cache() -> &'static Mutex<HashMap<u32, AdemWord>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, AdemWord>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Writes `Sq^k` as a sum of composites of power-of-two squares.
pub fn adem_decompose(k: u32) -> AdemWord {
    assert!(k >= 1, "Sq^0 is the identity");
    if k.is_power_of_two() {
        return AdemWord::letter(k);
    }
    if let Some(w) = cache().lock().unwrap().get(&k) {
        return w.clone();
    }
    let mut out = AdemWord::zero();
    for t in adem_step(k).terms() {
        let mut acc = AdemWord::composite(Vec::new());
        for &letter in t {
            acc = acc.compose(&adem_decompose(letter));
        }
        out.add_assign(&acc);
    }
    cache().lock().unwrap().insert(k, out.clone());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(terms: &[&[u32]]) -> AdemWord {
        let mut w = AdemWord::zero();
        for t in terms {
            w.add_assign(&AdemWord::composite(t.to_vec()));
        }
        w
    }

    #[test]
    fn lucas_matches_pascal() {
        let mut row = vec![1u64];
        for n in 0..40u64 {
            for (k, &c) in row.iter().enumerate() {
                assert_eq!(binomial_odd(n, k as u64), c % 2 == 1, "C({n},{k})");
            }
            let mut next = vec![1u64; row.len() + 1];
            for k in 1..row.len() {
                next[k] = (row[k - 1] + row[k]) % 1024;
            }
            row = next;
        }
    }

    #[test]
    fn small_decompositions() {
        assert_eq!(adem_decompose(4), word(&[&[4]]));
        assert_eq!(adem_decompose(3), word(&[&[1, 2]]));
        assert_eq!(adem_decompose(5), word(&[&[1, 4]]));
        assert_eq!(adem_step(6), word(&[&[2, 4], &[5, 1]]));
        assert_eq!(adem_decompose(6), word(&[&[2, 4], &[1, 4, 1]]));
        assert_eq!(adem_decompose(7), word(&[&[1, 2, 4]]));
        assert_eq!(adem_decompose(3).to_string(), "Sq^1 Sq^2");
    }

    /// Removes composites containing `Sq^1 Sq^1 = 0`.
    fn drop_sq1sq1(w: &AdemWord) -> AdemWord {
        let mut out = AdemWord::zero();
        for t in w.terms().filter(|t| !t.windows(2).any(|p| p == [1, 1])) {
            out.add_assign(&AdemWord::composite(t.to_vec()));
        }
        out
    }

    #[test]
    fn odd_squares_factor_through_sq1() {
        for n in 1..40u32 {
            let k = 2 * n + 1;
            let even = AdemWord::letter(1).compose(&adem_decompose(2 * n));
            assert_eq!(
                drop_sq1sq1(&adem_decompose(k)),
                drop_sq1sq1(&even),
                "Sq^{k}"
            );
        }
    }

    #[test]
    fn decompositions_use_powers_of_two() {
        for k in 1..200 {
            let w = adem_decompose(k);
            assert!(w.is_power_of_two_word(), "Sq^{k}");
            assert!(!w.is_zero());
            assert!(w.terms().all(|t| t.iter().sum::<u32>() == k));
        }
    }
}
