//! The simplicial group `K(G, 2)` and the secondary cyclic module `₂K(B)`,
//! with exhaustive verification of their simplicial and cyclic identities.

mod cyclic;
mod kg2;
mod report;

pub use cyclic::{verify_cyclic_module, CyclicIndexSet, CyclicStructure, SecondaryCyclicModule};
pub use kg2::{
    kg2_cyclic, kg2_degeneracy, kg2_face, verify_kg2, FiniteAbelianGroup, KG2Element, EXHAUSTIVE_LIMIT, SAMPLE_SIZE,
};
pub use report::{FamilySummary, IdentityCheck, IdentityFamily, VerificationReport, Witness};

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplicialError {
    #[error("group is not abelian")]
    NotAbelian,
    #[error(transparent)]
    Group(AlgebraError),
    #[error("level {level} needs {expected} entries, found {found}")]
    WrongLength { level: usize, expected: usize, found: usize },
    #[error("{0} is not an element of the group")]
    NotAnElement(usize),
    #[error("index {index} is out of range at level {level}")]
    IndexOutOfRange { index: usize, level: usize },
    #[error("B must be commutative")]
    NotCommutative,
    #[error("augmentation must be an algebra map from B to the ground field")]
    InvalidAugmentation,
}
