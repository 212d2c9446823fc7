//! Finite-dimensional algebras by structure constants, algebra morphisms,
//! bimodules and triples `(A, B, ε)`.

mod bimodule;
mod group;
mod morphism;
mod structure;
mod triple;

pub use bimodule::{regular_bimodule, Bimodule, BimoduleTable};
pub use group::FiniteGroup;
pub use morphism::{epsilon_map, AlgebraMorphism};
pub use structure::{
    group_algebra, matrix_algebra, truncated_polynomial_algebra, validate_algebra, AlgebraTable, StructureAlgebra,
    ValidationReport, Violation,
};
pub use triple::Triple;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("invalid algebra: {0}")]
    Invalid(ValidationReport),
    #[error("an algebra needs at least one basis element")]
    ZeroDimension,
    #[error("objects over different fields")]
    FieldMismatch,
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("invalid morphism: {0}")]
    Morphism(String),
    #[error("invalid bimodule: {0}")]
    Bimodule(String),
    #[error("the coefficient algebra B must be declared commutative")]
    NotCommutative,
}
