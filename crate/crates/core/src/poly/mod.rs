//! Multivariate polynomials over GF(2), GF(2) with Boolean parameters, and Z.

mod class;
mod coeff;
mod generators;
mod monomial;
mod param;
mod parse;

use thiserror::Error;

pub use class::{poly_mul, render, ClassPoly};
pub use coeff::{Coeff, Gf2};
pub use generators::{Generator, GeneratorTable};
pub use monomial::{monomials_of_degree, Monomial};
pub use param::{param_poly_cmp, Assignment, ParamPoly, ParamSet, MAX_PARAMS};
pub use parse::{parse_expr, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("`{0}` is not a valid identifier")]
    InvalidName(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("generator `{0}` must have positive degree")]
    ZeroDegree(String),
    #[error("at most 64 parameters are supported, got {0}")]
    TooManyParameters(usize),
    #[error("operands use different generator tables ({left} vs {right} generators)")]
    DomainMismatch { left: usize, right: usize },
    #[error("inhomogeneous polynomial (degrees {} and {})", degrees.0, degrees.1)]
    Inhomogeneous { degrees: (u32, u32) },
}
