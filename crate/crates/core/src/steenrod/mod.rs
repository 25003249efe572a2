//! Steenrod squares on presented rings: Adem decomposition, completion of
//! partial tables on generators, and Cartan-formula evaluation.

mod adem;
mod compositions;
mod consistency;
mod eval;
mod table;

use thiserror::Error;

use crate::basis::BasisError;

pub use adem::{adem_decompose, adem_step, binomial_odd, AdemWord};
pub use compositions::{composition_count, compositions, Compositions};
pub use consistency::{
    adem_constraints, consistency_constraints, solve_constraints, Consistency, ParamSolution,
    Undetermined,
};
pub use eval::{
    apply_composite, sq, sq_class, sq_monomial, sq_monomial_naive, sq_power, sq_power_naive, sq_raw,
};
pub use table::{complete_table, Provenance, Reduction, SquareTable, TableEntry};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SqError {
    #[error(transparent)]
    Basis(#[from] BasisError),
    #[error("Steenrod table has no value for {entry}, and none is forced")]
    MissingEntry { entry: String },
    #[error("computation needs {entry}, which the Steenrod table does not determine")]
    TableIncomplete { entry: String },
    #[error("result degree {degree} exceeds the formal dimension {dim}")]
    DegreeOverflow { degree: u32, dim: u32 },
    #[error("the Steenrod table contradicts the relations for every parameter value")]
    Inconsistent,
    #[error("cannot derive {entry}: {reason}")]
    Underivable { entry: String, reason: String },
}
