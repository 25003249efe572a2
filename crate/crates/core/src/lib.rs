//! Computations in finitely presented graded-commutative rings: additive
//! bases over GF(2) and Z, Steenrod squares from partial tables on ring
//! generators, Wu and Stiefel-Whitney classes, k-orientability verdicts,
//! Euler characteristics and intersection-form signatures.

pub mod analysis;
pub mod basis;
pub mod corpus;
pub mod manifest;
pub mod orient;
pub mod poly;
pub mod steenrod;

pub use analysis::{Analysis, AnalysisOptions};
pub use basis::{DegreeBasis, GradedRing, IntegralRing, Mode, Presentation};
pub use num_bigint::BigInt;
pub use poly::{ClassPoly, Coeff, GeneratorTable, Gf2, Monomial, ParamPoly, ParamSet};
pub use steenrod::SquareTable;
