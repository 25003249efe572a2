use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use super::{Coeff, GeneratorTable, Monomial, ParamSet, PolyError};

/// Finite sum of monomials with coefficients in `C`. Zero coefficients are
/// never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassPoly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> ClassPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        ClassPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(Monomial::one(nvars), C::one())
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    pub fn monomial(m: Monomial, c: C) -> Self {
        let mut p = ClassPoly::zero(m.nvars());
        p.add_term(m, c);
        p
    }

    pub fn generator(gens: &GeneratorTable, i: usize) -> Self {
        Self::monomial(Monomial::generator(gens, i), C::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of terms; `is_zero` is the emptiness test.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &ClassPoly<C>) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &C) -> ClassPoly<C> {
        let mut out = ClassPoly::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (m, d) in &self.terms {
            out.add_term(m.clone(), d.mul(c));
        }
        out
    }

    pub fn neg(&self) -> ClassPoly<C> {
        ClassPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &ClassPoly<C>) -> ClassPoly<C> {
        let mut out = self.clone();
        out.add_assign(&other.neg());
        out
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &C) -> ClassPoly<C> {
        let mut out = ClassPoly::zero(self.nvars);
        for (n, d) in &self.terms {
            out.add_term(n.mul(m), d.mul(c));
        }
        out
    }

    /// Ring product; errors when the operands live over different generator
    /// tables.
    pub fn checked_mul(&self, other: &ClassPoly<C>) -> Result<ClassPoly<C>, PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::DomainMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        let mut out = ClassPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                out.add_term(m.mul(n), c.mul(d));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> ClassPoly<C> {
        let mut acc = ClassPoly::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The common degree of all terms; `Ok(None)` for zero.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>, PolyError> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Ok(None);
        };
        let d = first.degree();
        for m in it {
            if m.degree() != d {
                return Err(PolyError::Inhomogeneous {
                    degrees: (d, m.degree()),
                });
            }
        }
        Ok(Some(d))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_ok()
    }

    /// The part of degree `d`.
    pub fn component(&self, d: u32) -> ClassPoly<C> {
        ClassPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs<D: Coeff>(&self, mut f: impl FnMut(&C) -> D) -> ClassPoly<D> {
        let mut out = ClassPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Deterministic text in descending grevlex order; parses back to `self`.
    pub fn render(&self, gens: &GeneratorTable, params: &ParamSet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono = if m.is_one() {
                None
            } else {
                Some(m.render(gens))
            };
            c.write_term(&mut out, mono.as_deref(), params, k == 0);
        }
        out
    }
}

impl<C: Coeff> Add for &ClassPoly<C> {
    type Output = ClassPoly<C>;

    fn add(self, rhs: &ClassPoly<C>) -> ClassPoly<C> {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl<C: Coeff> Mul for &ClassPoly<C> {
    type Output = ClassPoly<C>;

    /// Panics on operands over different generator tables; see
    /// [`ClassPoly::checked_mul`].
    fn mul(self, rhs: &ClassPoly<C>) -> ClassPoly<C> {
        self.checked_mul(rhs)
            .expect("operands over different generator tables")
    }
}

/// Renders a polynomial; `0` for zero.
pub fn render<C: Coeff>(p: &ClassPoly<C>, gens: &GeneratorTable, params: &ParamSet) -> String {
    p.render(gens, params)
}

/// Ring product with domain checking.
pub fn poly_mul<C: Coeff>(a: &ClassPoly<C>, b: &ClassPoly<C>) -> Result<ClassPoly<C>, PolyError> {
    a.checked_mul(b)
}
