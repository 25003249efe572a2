use std::cmp::Ordering;

use super::GeneratorTable;

/// Exponent vector over a generator table, with its cached weighted degree.
///
/// `Ord` is graded reverse lexicographic: first by degree, then the monomial
/// with the *smaller* exponent in the last declared generator where the two
/// differ is the larger one. Under this order `y2^6*y3 > y3*y12`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            degree: 0,
            exps: vec![0; nvars].into_boxed_slice(),
        }
    }

    pub fn generator(gens: &GeneratorTable, i: usize) -> Self {
        let mut exps = vec![0; gens.len()];
        exps[i] = 1;
        Monomial {
            degree: gens.degree(i),
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn from_exponents(gens: &GeneratorTable, exps: Vec<u32>) -> Self {
        assert_eq!(exps.len(), gens.len(), "exponent vector length");
        let degree = exps
            .iter()
            .enumerate()
            .map(|(i, &e)| e * gens.degree(i))
            .sum();
        Monomial {
            degree,
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0 && self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            degree: self.degree + other.degree,
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Monomial {
        Monomial {
            degree: self.degree * e,
            exps: self.exps.iter().map(|a| a * e).collect(),
        }
    }

    /// Divides by `other` if it divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(other.exps.iter()) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial {
            degree: self.degree - other.degree,
            exps: exps.into_boxed_slice(),
        })
    }

    /// `(generator index, exponent)` pairs for the generators that occur.
    pub fn support(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i, e))
    }

    pub fn render(&self, gens: &GeneratorTable) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, e) in self.support() {
            if e == 1 {
                parts.push(gens.name(i).to_string());
            } else {
                parts.push(format!("{}^{}", gens.name(i), e));
            }
        }
        parts.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for (a, b) in self.exps.iter().zip(other.exps.iter()).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            self.exps.len().cmp(&other.exps.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of weighted degree `d`, in descending grevlex order.
pub fn monomials_of_degree(gens: &GeneratorTable, d: u32) -> Vec<Monomial> {
    fn rec(
        gens: &GeneratorTable,
        i: usize,
        remaining: u32,
        cur: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        if i == gens.len() {
            if remaining == 0 {
                out.push(Monomial::from_exponents(gens, cur.clone()));
            }
            return;
        }
        let deg = gens.degree(i);
        for e in 0..=remaining / deg {
            cur.push(e);
            rec(gens, i + 1, remaining - e * deg, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(gens, 0, d, &mut Vec::with_capacity(gens.len()), &mut out);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}
