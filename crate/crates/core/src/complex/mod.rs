//! The secondary Hochschild complex `C^n((A, B, ε); M)` and its coboundary.

mod hochschild;
mod secondary;
mod space;

pub use hochschild::{classical_hochschild_dim, hochschild_coboundary_matrix, hochschild_space};
pub use secondary::{CohomologyDim, SecondaryComplex, DEFAULT_MAX_DEGREE, EXPENSIVE_DIM};
pub(crate) use space::expand_slots;
pub use space::{pair_position, upper_pairs, Cochain, CochainBasisIndex, CochainSpace};

use thiserror::Error;

use crate::linalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("degree {degree} exceeds the configured maximum {max}")]
    DegreeAboveMaximum { degree: usize, max: usize },
    #[error("cochain space of degree {degree} is too large to index")]
    TooLarge { degree: usize },
    #[error("cochain lives in {found:?}, expected {expected:?}")]
    SpaceMismatch { expected: CochainSpace, found: CochainSpace },
    #[error("coefficient vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("the bimodule is not over the algebra A of the triple")]
    ModuleMismatch,
    #[error("this operation needs M = A (the regular bimodule)")]
    NotRegular,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
