//! Boolean parameters: GF(2) polynomials reduced multilinearly (`p^2 = p`).
//!
//! Every element of this ring is idempotent, which the Steenrod engine relies
//! on when it squares a class coefficient-wise.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use super::generators::is_identifier;
use super::PolyError;

pub const MAX_PARAMS: usize = 64;

/// Declared parameter names. Bit `i` of a [`ParamPoly`] monomial refers to
/// the `i`-th name.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ParamSet {
    names: Vec<String>,
}

impl ParamSet {
    pub fn new<I, S>(names: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out: Vec<String> = Vec::new();
        for n in names {
            let n = n.into();
            if !is_identifier(&n) {
                return Err(PolyError::InvalidName(n));
            }
            if out.contains(&n) {
                return Err(PolyError::DuplicateName(n));
            }
            out.push(n);
        }
        if out.len() > MAX_PARAMS {
            return Err(PolyError::TooManyParameters(out.len()));
        }
        Ok(ParamSet { names: out })
    }

    pub fn empty() -> Self {
        ParamSet::default()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// A (partial) assignment of parameters to bits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Assignment {
    /// Which parameters are assigned.
    pub mask: u64,
    /// Values of the assigned parameters (bits outside `mask` are ignored).
    pub values: u64,
}

impl Assignment {
    pub fn total(values: u64, nparams: usize) -> Self {
        let mask = if nparams >= 64 {
            u64::MAX
        } else {
            (1u64 << nparams) - 1
        };
        Assignment {
            mask,
            values: values & mask,
        }
    }

    pub fn set(&mut self, index: usize, value: bool) {
        self.mask |= 1 << index;
        if value {
            self.values |= 1 << index;
        } else {
            self.values &= !(1 << index);
        }
    }
}

/// Multilinear GF(2) polynomial in the declared parameters. Each monomial is
/// a bitmask of the parameters it contains; the empty mask is the constant 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ParamPoly {
    terms: BTreeSet<u64>,
}

fn mask_cmp(a: u64, b: u64) -> Ordering {
    a.count_ones().cmp(&b.count_ones()).then_with(|| {
        // lexicographic on the ascending index lists
        let (mut x, mut y) = (a, b);
        while x != 0 && y != 0 {
            let (i, j) = (x.trailing_zeros(), y.trailing_zeros());
            if i != j {
                return i.cmp(&j);
            }
            x &= x - 1;
            y &= y - 1;
        }
        Ordering::Equal
    })
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly::default()
    }

    pub fn one() -> Self {
        ParamPoly::from_masks([0])
    }

    pub fn param(index: usize) -> Self {
        assert!(index < MAX_PARAMS);
        ParamPoly::from_masks([1u64 << index])
    }

    /// Builds a polynomial from monomial masks; repeated masks cancel.
    pub fn from_masks<I: IntoIterator<Item = u64>>(masks: I) -> Self {
        let mut terms = BTreeSet::new();
        for m in masks {
            if !terms.remove(&m) {
                terms.insert(m);
            }
        }
        ParamPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.contains(&0)
    }

    /// True when no parameter occurs.
    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|&m| m == 0)
    }

    /// Number of terms; `is_zero` is the emptiness test.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn masks(&self) -> impl Iterator<Item = u64> + '_ {
        self.terms.iter().copied()
    }

    /// Union of all parameters that occur.
    pub fn support(&self) -> u64 {
        self.terms.iter().fold(0, |acc, m| acc | m)
    }

    pub fn add(&self, other: &ParamPoly) -> ParamPoly {
        let terms = self
            .terms
            .symmetric_difference(&other.terms)
            .copied()
            .collect();
        ParamPoly { terms }
    }

    pub fn add_assign(&mut self, other: &ParamPoly) {
        for &m in &other.terms {
            if !self.terms.remove(&m) {
                self.terms.insert(m);
            }
        }
    }

    pub fn mul(&self, other: &ParamPoly) -> ParamPoly {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut terms = BTreeSet::new();
        for &a in &self.terms {
            for &b in &other.terms {
                let m = a | b;
                if !terms.remove(&m) {
                    terms.insert(m);
                }
            }
        }
        ParamPoly { terms }
    }

    /// Value under a total assignment (bits of `values`).
    pub fn eval(&self, values: u64) -> bool {
        self.terms.iter().filter(|&&m| m & !values == 0).count() % 2 == 1
    }

    /// Substitutes the assigned parameters, leaving the rest symbolic.
    pub fn substitute(&self, a: &Assignment) -> ParamPoly {
        ParamPoly::from_masks(self.terms.iter().filter_map(|&m| {
            let assigned = m & a.mask;
            if assigned & !a.values != 0 {
                None
            } else {
                Some(m & !a.mask)
            }
        }))
    }

    /// Replaces parameter `i` by `subs[i]` wherever a replacement is given.
    pub fn compose(&self, subs: &BTreeMap<usize, ParamPoly>) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for &m in &self.terms {
            let mut term = ParamPoly::from_masks([0]);
            let mut x = m;
            while x != 0 {
                let i = x.trailing_zeros() as usize;
                let f = subs.get(&i).cloned().unwrap_or_else(|| ParamPoly::param(i));
                term = term.mul(&f);
                x &= x - 1;
            }
            out.add_assign(&term);
        }
        out
    }

    /// Canonical text: `1+b2+n2`, monomials as `a*b`, zero as `0`.
    pub fn render(&self, params: &ParamSet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut masks: Vec<u64> = self.terms.iter().copied().collect();
        masks.sort_by(|a, b| mask_cmp(*a, *b));
        let mut out = String::new();
        for (k, m) in masks.into_iter().enumerate() {
            if k > 0 {
                out.push('+');
            }
            if m == 0 {
                out.push('1');
                continue;
            }
            let mut first = true;
            let mut x = m;
            while x != 0 {
                let i = x.trailing_zeros() as usize;
                if !first {
                    out.push('*');
                }
                first = false;
                let _ = write!(out, "{}", params.name(i));
                x &= x - 1;
            }
        }
        out
    }
}

/// Canonical ordering used for condition sets.
pub fn param_poly_cmp(a: &ParamPoly, b: &ParamPoly) -> Ordering {
    let mut xa: Vec<u64> = a.terms.iter().copied().collect();
    let mut xb: Vec<u64> = b.terms.iter().copied().collect();
    xa.sort_by(|p, q| mask_cmp(*p, *q));
    xb.sort_by(|p, q| mask_cmp(*p, *q));
    xa.len().cmp(&xb.len()).then_with(|| {
        for (p, q) in xa.iter().zip(xb.iter()) {
            let c = mask_cmp(*p, *q);
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idempotent() {
        let b = ParamPoly::param(0);
        assert_eq!(b.mul(&b), b);
        let q = ParamPoly::one()
            .add(&ParamPoly::param(1))
            .add(&ParamPoly::param(2));
        assert_eq!(q.mul(&q), q);
    }

    #[test]
    fn render_canonical() {
        let ps = ParamSet::new(["b2", "n2", "a"]).unwrap();
        let q = ParamPoly::param(1)
            .add(&ParamPoly::one())
            .add(&ParamPoly::param(0));
        assert_eq!(q.render(&ps), "1+b2+n2");
        let r = ParamPoly::param(2).mul(&ParamPoly::param(0));
        assert_eq!(r.render(&ps), "b2*a");
        assert_eq!(ParamPoly::zero().render(&ps), "0");
    }

    #[test]
    fn substitution() {
        let q = ParamPoly::one()
            .add(&ParamPoly::param(0))
            .add(&ParamPoly::param(1));
        let mut a = Assignment::default();
        a.set(0, true);
        assert_eq!(q.substitute(&a), ParamPoly::param(1));
        a.set(1, false);
        assert!(q.substitute(&a).is_zero());
    }

    #[test]
    fn too_many_parameters() {
        let names: Vec<String> = (0..65).map(|i| format!("p{i}")).collect();
        assert!(matches!(
            ParamSet::new(names),
            Err(PolyError::TooManyParameters(65))
        ));
    }
}
