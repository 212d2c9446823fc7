//! Families of products `m_{α,t}` on `A[t]/(t^{N+1})`: associativity analysis,
//! cocycles, obstructions, order-by-order extension, gauge equivalence, and
//! recovery of `ε` from an abstract family.

mod analysis;
mod family;
mod recover;

pub use analysis::{
    AssociativityReport, AssociativityWitness, DeformationContext, Extension, GaugeTransform, ObstructionCertificate,
    UnitSearch,
};
pub use family::{AbstractFamily, DeformationFamily, TruncatedElement};
pub use recover::{recover_epsilon, ConditionFiveWitness, RecoverError};

use thiserror::Error;

use crate::complex::{ComplexError, CochainSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeformationError {
    #[error("truncation orders or dimensions do not match")]
    TruncationMismatch,
    #[error("deformation terms must be degree-2 cochains with values in A")]
    NotDegreeTwo,
    #[error("cochain lives in {found:?}, expected {expected:?}")]
    SpaceMismatch { expected: CochainSpace, found: CochainSpace },
    #[error("family is not associative mod t^{required}: {witness}")]
    NotAssociative { required: usize, witness: AssociativityWitness },
    #[error("order {0} is outside the admissible range")]
    OrderOutOfRange(usize),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

impl From<crate::linalg::LinalgError> for DeformationError {
    fn from(e: crate::linalg::LinalgError) -> Self {
        DeformationError::Complex(ComplexError::Linalg(e))
    }
}
