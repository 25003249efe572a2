use std::fmt;

use wusq_core::basis::BasisError;
use wusq_core::corpus::{CorpusError, FixtureError};
use wusq_core::manifest::ManifestError;
use wusq_core::orient::OrientError;
use wusq_core::steenrod::SqError;

/// Exit status contract.
pub const INVALID_INPUT: u8 = 2;
pub const LIMITATION: u8 = 3;
pub const GOLDEN_MISMATCH: u8 = 4;

#[derive(Debug, Clone)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: INVALID_INPUT,
            message: message.into(),
        }
    }

    pub fn limitation(message: impl Into<String>) -> Self {
        CliError {
            code: LIMITATION,
            message: message.into(),
        }
    }

    pub fn golden(message: impl Into<String>) -> Self {
        CliError {
            code: GOLDEN_MISMATCH,
            message: message.into(),
        }
    }

    pub fn code(&self) -> u8 {
        self.code
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn basis_code(e: &BasisError) -> u8 {
    match e {
        BasisError::NotPoincare(_)
        | BasisError::DegeneratePairing { .. }
        | BasisError::TorsionPresent { .. } => LIMITATION,
        _ => INVALID_INPUT,
    }
}

fn sq_code(e: &SqError) -> u8 {
    match e {
        SqError::Basis(b) => basis_code(b),
        SqError::DegreeOverflow { .. } => INVALID_INPUT,
        _ => LIMITATION,
    }
}

pub fn orient_code(e: &OrientError) -> u8 {
    match e {
        OrientError::Sq(s) => sq_code(s),
        OrientError::NotApplicable(_) => INVALID_INPUT,
        _ => LIMITATION,
    }
}

impl From<OrientError> for CliError {
    fn from(e: OrientError) -> Self {
        CliError {
            code: orient_code(&e),
            message: e.to_string(),
        }
    }
}

impl From<SqError> for CliError {
    fn from(e: SqError) -> Self {
        OrientError::from(e).into()
    }
}

impl From<BasisError> for CliError {
    fn from(e: BasisError) -> Self {
        OrientError::from(e).into()
    }
}

impl From<ManifestError> for CliError {
    fn from(e: ManifestError) -> Self {
        CliError::usage(format!("invalid manifest: {e}"))
    }
}

impl From<CorpusError> for CliError {
    fn from(e: CorpusError) -> Self {
        match e {
            CorpusError::Basis(b) => b.into(),
            other => CliError::usage(other.to_string()),
        }
    }
}

impl From<FixtureError> for CliError {
    fn from(e: FixtureError) -> Self {
        match e {
            FixtureError::Orient(o) => o.into(),
            FixtureError::Corpus(c) => c.into(),
            other => CliError::usage(other.to_string()),
        }
    }
}
