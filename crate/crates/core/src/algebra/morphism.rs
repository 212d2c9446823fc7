use std::sync::Arc;

use crate::linalg::{compress, Coords, Scalar};

use super::structure::StructureAlgebra;
use super::AlgebraError;

/// A unital algebra map `ε: B → A` with central image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMorphism {
    source: Arc<StructureAlgebra>,
    target: Arc<StructureAlgebra>,
    /// `dim A` rows, `dim B` columns; column `j` holds `ε(b_j)`.
    matrix: Vec<Vec<Scalar>>,
    images: Vec<Coords>,
}

/// Builds and validates `ε: B → A` from its `dim A × dim B` matrix.
pub fn epsilon_map(
    source: Arc<StructureAlgebra>,
    target: Arc<StructureAlgebra>,
    matrix: Vec<Vec<Scalar>>,
) -> Result<AlgebraMorphism, AlgebraError> {
    let (db, da) = (source.dim(), target.dim());
    if source.field() != target.field() {
        return Err(AlgebraError::FieldMismatch);
    }
    if matrix.len() != da || matrix.iter().any(|r| r.len() != db) {
        return Err(AlgebraError::Morphism(format!("matrix must be {da}×{db}")));
    }
    if matrix.iter().flatten().any(|x| x.field() != source.field()) {
        return Err(AlgebraError::FieldMismatch);
    }
    let images: Vec<Coords> = (0..db)
        .map(|j| compress(&matrix.iter().map(|r| r[j].clone()).collect::<Vec<_>>()))
        .collect();
    let m = AlgebraMorphism { source, target, matrix, images };
    let (b, a) = (&m.source, &m.target);
    if m.apply(b.unit()) != *a.unit() {
        return Err(AlgebraError::Morphism("not unital: ε(1) ≠ 1".into()));
    }
    for i in 0..db {
        for j in 0..db {
            if m.apply(b.mul_basis(i, j)) != a.mul(&m.images[i], &m.images[j]) {
                return Err(AlgebraError::Morphism(format!(
                    "not multiplicative on ({}, {})",
                    b.labels()[i],
                    b.labels()[j]
                )));
            }
        }
    }
    let one = a.field().one();
    for i in 0..db {
        for k in 0..da {
            let e = [(k, one.clone())];
            if a.mul(&m.images[i], &e) != a.mul(&e, &m.images[i]) {
                return Err(AlgebraError::Morphism(format!(
                    "image not central: ε({}) does not commute with {}",
                    b.labels()[i],
                    a.labels()[k]
                )));
            }
        }
    }
    Ok(m)
}

impl AlgebraMorphism {
    /// The unital inclusion `k → A`.
    pub fn unit_inclusion(target: Arc<StructureAlgebra>) -> AlgebraMorphism {
        let k = Arc::new(StructureAlgebra::ground(target.field()));
        let matrix = target.unit_dense().iter().map(|x| vec![x.clone()]).collect();
        epsilon_map(k, target, matrix).expect("unit inclusion is a morphism")
    }

    /// The identity of a commutative algebra.
    pub fn identity(a: Arc<StructureAlgebra>) -> Result<AlgebraMorphism, AlgebraError> {
        let f = a.field();
        let d = a.dim();
        let matrix = (0..d).map(|i| (0..d).map(|j| if i == j { f.one() } else { f.zero() }).collect()).collect();
        epsilon_map(a.clone(), a, matrix)
    }

    pub fn source(&self) -> &Arc<StructureAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<StructureAlgebra> {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<Scalar>] {
        &self.matrix
    }

    /// `ε(b_j)`.
    pub fn image(&self, j: usize) -> &Coords {
        &self.images[j]
    }

    pub fn apply(&self, x: &[(usize, Scalar)]) -> Coords {
        let mut acc = vec![self.target.field().zero(); self.target.dim()];
        for (j, c) in x {
            crate::linalg::axpy_dense(&mut acc, c, &self.images[*j]);
        }
        compress(&acc)
    }
}
