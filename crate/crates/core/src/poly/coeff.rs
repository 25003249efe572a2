use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ParamPoly, ParamSet};

/// Coefficient domain of a [`ClassPoly`](super::ClassPoly).
pub trait Coeff: Clone + Eq + Debug + Send + Sync + 'static {
    /// Short domain name used in diagnostics.
    const DOMAIN: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_integer(n: &BigInt) -> Self;
    /// The coefficient for a bare parameter, if the domain has parameters.
    fn from_param(index: usize) -> Option<Self>;

    fn add_assign(&mut self, other: &Self) {
        *self = self.add(other);
    }

    /// Appends one term (`mono` is `None` for the unit monomial) to `out`.
    fn write_term(&self, out: &mut String, mono: Option<&str>, params: &ParamSet, first: bool);
}

/// The field with two elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2(pub bool);

impl Coeff for Gf2 {
    const DOMAIN: &'static str = "gf2";

    fn zero() -> Self {
        Gf2(false)
    }
    fn one() -> Self {
        Gf2(true)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn is_one(&self) -> bool {
        self.0
    }
    fn add(&self, other: &Self) -> Self {
        Gf2(self.0 ^ other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Gf2(self.0 && other.0)
    }
    fn neg(&self) -> Self {
        *self
    }
    fn from_integer(n: &BigInt) -> Self {
        Gf2(n.bit(0))
    }
    fn from_param(_: usize) -> Option<Self> {
        None
    }
    fn write_term(&self, out: &mut String, mono: Option<&str>, _: &ParamSet, first: bool) {
        if !first {
            out.push_str(" + ");
        }
        out.push_str(mono.unwrap_or("1"));
    }
}

impl Coeff for ParamPoly {
    const DOMAIN: &'static str = "gf2-parametric";

    fn zero() -> Self {
        ParamPoly::zero()
    }
    fn one() -> Self {
        ParamPoly::one()
    }
    fn is_zero(&self) -> bool {
        ParamPoly::is_zero(self)
    }
    fn is_one(&self) -> bool {
        ParamPoly::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        ParamPoly::add(self, other)
    }
    fn add_assign(&mut self, other: &Self) {
        ParamPoly::add_assign(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        ParamPoly::mul(self, other)
    }
    fn neg(&self) -> Self {
        self.clone()
    }
    fn from_integer(n: &BigInt) -> Self {
        if n.bit(0) {
            ParamPoly::one()
        } else {
            ParamPoly::zero()
        }
    }
    fn from_param(index: usize) -> Option<Self> {
        Some(ParamPoly::param(index))
    }
    fn write_term(&self, out: &mut String, mono: Option<&str>, params: &ParamSet, first: bool) {
        if !first {
            out.push_str(" + ");
        }
        if self.is_one() {
            out.push_str(mono.unwrap_or("1"));
            return;
        }
        let c = self.render(params);
        if self.len() > 1 {
            out.push('(');
            out.push_str(&c);
            out.push(')');
        } else {
            out.push_str(&c);
        }
        if let Some(m) = mono {
            out.push_str(" * ");
            out.push_str(m);
        }
    }
}

impl Coeff for BigInt {
    const DOMAIN: &'static str = "int";

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_integer(n: &BigInt) -> Self {
        n.clone()
    }
    fn from_param(_: usize) -> Option<Self> {
        None
    }
    fn write_term(&self, out: &mut String, mono: Option<&str>, _: &ParamSet, first: bool) {
        let neg = self.is_negative();
        match (first, neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        let abs = self.abs();
        match mono {
            None => out.push_str(&abs.to_string()),
            Some(m) if One::is_one(&abs) => out.push_str(m),
            Some(m) => {
                out.push_str(&abs.to_string());
                out.push('*');
                out.push_str(m);
            }
        }
    }
}
