//! Wu and Stiefel-Whitney classes, k-orientability verdicts, Euler
//! characteristics and intersection-form signatures.

mod signature;
mod verdict;
mod wu;

use thiserror::Error;

use crate::basis::BasisError;
use crate::steenrod::SqError;

pub use signature::{form_signature, intersection_form, signature, IntersectionForm, Signature};
pub use verdict::{
    max_level, orientability_verdict, orientability_verdict_w, parity_theorem_check,
    verdict_ladder, ParityEntry, ParityReport, Status, Verdict, Witness,
};
pub use wu::{stiefel_whitney, stiefel_whitney_partial, verify_wu, wu_class, WuClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrientError {
    #[error(transparent)]
    Sq(#[from] SqError),
    #[error("{0}")]
    NotApplicable(String),
    #[error("middle degree {degree} has torsion {factors:?}")]
    OddMiddleTorsion { degree: u32, factors: Vec<String> },
    #[error("intersection form is not symmetric")]
    NotSymmetric,
}

impl From<BasisError> for OrientError {
    fn from(e: BasisError) -> Self {
        OrientError::Sq(SqError::Basis(e))
    }
}
