//! Per-degree additive bases of a presented ring: standard monomials and
//! normal forms over GF(2), Smith normal form over Z, Betti numbers and the
//! Poincaré pairing.

mod gf2;
mod graded;
mod integral;
mod presentation;
mod snf;

use thiserror::Error;

use crate::poly::{ParseError, PolyError};

pub use gf2::{BitMatrix, BitVec};
pub use graded::{DegreeBasis, GradedRing, PairingMatrix};
pub use integral::{mod2_reduce, IntDegreeBasis, IntegralRing};
pub use presentation::{Mode, Presentation};
pub use snf::{smith_normal_form, Snf};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BasisError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{context}: {source}")]
    Parse {
        context: String,
        #[source]
        source: ParseError,
    },
    #[error("relation {index} is inhomogeneous (degrees {} and {})", degrees.0, degrees.1)]
    InhomogeneousRelation { index: usize, degrees: (u32, u32) },
    #[error("degree {degree} exceeds the formal dimension {dim}")]
    DimensionOverflow { degree: u32, dim: u32 },
    #[error("class is inhomogeneous (degrees {} and {})", degrees.0, degrees.1)]
    InhomogeneousInput { degrees: (u32, u32) },
    #[error("not a Poincaré duality algebra: {0}")]
    NotPoincare(String),
    #[error("cup pairing between degrees {degree} and {complement} is degenerate")]
    DegeneratePairing { degree: u32, complement: u32 },
    #[error("integral cohomology has torsion {factors:?} in degree {degree}")]
    TorsionPresent { degree: u32, factors: Vec<String> },
    #[error("operation requires {expected} mode, presentation is {found}")]
    WrongMode { expected: &'static str, found: Mode },
    #[error("gf2 mode does not allow parameters; use gf2-parametric")]
    ParametersInGf2Mode,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid Steenrod entry Sq^{index} {generator}: {reason}")]
    BadSquareEntry {
        generator: String,
        index: u32,
        reason: String,
    },
}
