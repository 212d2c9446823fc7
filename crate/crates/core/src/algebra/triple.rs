use std::sync::Arc;

use super::morphism::AlgebraMorphism;
use super::structure::StructureAlgebra;
use super::AlgebraError;

/// `(A, B, ε)` with `B` commutative and `ε(B)` central in `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triple {
    epsilon: AlgebraMorphism,
}

impl Triple {
    pub fn new(epsilon: AlgebraMorphism) -> Result<Self, AlgebraError> {
        if !epsilon.source().is_commutative() {
            return Err(AlgebraError::NotCommutative);
        }
        Ok(Triple { epsilon })
    }

    /// `(A, k, unit inclusion)`.
    pub fn with_ground(a: Arc<StructureAlgebra>) -> Self {
        Triple::new(AlgebraMorphism::unit_inclusion(a)).expect("k is commutative")
    }

    /// `(A, A, id)` for commutative `A`.
    pub fn with_identity(a: Arc<StructureAlgebra>) -> Result<Self, AlgebraError> {
        Triple::new(AlgebraMorphism::identity(a)?)
    }

    pub fn a(&self) -> &Arc<StructureAlgebra> {
        self.epsilon.target()
    }

    pub fn b(&self) -> &Arc<StructureAlgebra> {
        self.epsilon.source()
    }

    pub fn epsilon(&self) -> &AlgebraMorphism {
        &self.epsilon
    }

    pub fn field(&self) -> crate::linalg::Field {
        self.a().field()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{epsilon_map, matrix_algebra, truncated_polynomial_algebra};
    use crate::linalg::Field;

    #[test]
    fn noncommutative_b_is_rejected() {
        let m = Arc::new(matrix_algebra(Field::Rationals, 2).unwrap());
        let id = epsilon_map(m.clone(), m.clone(), {
            let f = Field::Rationals;
            (0..4).map(|i| (0..4).map(|j| if i == j { f.one() } else { f.zero() }).collect()).collect()
        });
        // the identity of M_2 fails centrality before commutativity is even asked
        assert!(id.is_err());
        let a = Arc::new(truncated_polynomial_algebra(Field::Rationals, 2).unwrap());
        assert!(Triple::with_identity(a).is_ok());
    }
}
