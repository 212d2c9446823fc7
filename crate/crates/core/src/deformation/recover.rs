use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{epsilon_map, AlgebraError, AlgebraMorphism, AlgebraTable, StructureAlgebra, Triple};
use crate::linalg::{compress, solve, Coords, DenseVector, Scalar, SparseMatrix};

use super::family::AbstractFamily;

/// A basis tuple on which `m_{βγ}(m_α(a ⊗ b) ⊗ c) ≠ m_{αβ}(a ⊗ m_γ(b ⊗ c))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionFiveWitness {
    pub alpha: [usize; 3],
    pub a: [usize; 3],
}

impl fmt::Display for ConditionFiveWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(α, β, γ) = ({}, {}, {}), (a, b, c) = ({}, {}, {})",
            self.alpha[0], self.alpha[1], self.alpha[2], self.a[0], self.a[1], self.a[2]
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecoverError {
    #[error("product tables have the wrong shape")]
    Shape,
    #[error("(A, m_1) has no unit")]
    NoUnit,
    #[error("(A, m_1) is not an algebra: {0}")]
    NotAnAlgebra(AlgebraError),
    #[error("generalized associativity fails on {0}")]
    ConditionFive(ConditionFiveWitness),
    #[error("recovered map is not a B-algebra structure: {0}")]
    Tripwire(AlgebraError),
}

impl AbstractFamily {
    /// `m_α(a ⊗ b) = ε(α)ab`.
    pub fn from_triple(triple: &Triple) -> AbstractFamily {
        let (a, b) = (triple.a(), triple.b());
        let d = a.dim();
        let field = a.field();
        let products = (0..b.dim())
            .map(|j| {
                let mut t = vec![field.zero(); d * d * d];
                for i in 0..d {
                    for l in 0..d {
                        for (k, x) in a.mul(triple.epsilon().image(j), a.mul_basis(i, l)) {
                            t[(i * d + l) * d + k] = x;
                        }
                    }
                }
                t
            })
            .collect();
        AbstractFamily { labels: a.labels().to_vec(), products }
    }
}

struct Products<'a> {
    fam: &'a AbstractFamily,
    d: usize,
    field: crate::linalg::Field,
}

impl Products<'_> {
    /// `m_x(y ⊗ z)` for `x ∈ B`, `y, z ∈ A`.
    fn apply(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)], z: &[(usize, Scalar)]) -> Coords {
        let d = self.d;
        let mut acc = vec![self.field.zero(); d];
        for (j, cj) in x {
            let t = &self.fam.products[*j];
            for (i, ci) in y {
                for (l, cl) in z {
                    let c = &(cj * ci) * cl;
                    for k in 0..d {
                        let m = &t[(i * d + l) * d + k];
                        if !m.is_zero() {
                            acc[k] = &acc[k] + &(&c * m);
                        }
                    }
                }
            }
        }
        compress(&acc)
    }
}

/// Recovers `ε(α) = m_α(1 ⊗ 1)` where `1` is the unit of `(A, m_1)`.
/// The returned morphism targets the algebra `(A, m_1)`.
pub fn recover_epsilon(b: Arc<StructureAlgebra>, fam: &AbstractFamily) -> Result<AlgebraMorphism, RecoverError> {
    let d = fam.labels.len();
    let field = b.field();
    if d == 0 || fam.products.len() != b.dim() || fam.products.iter().any(|t| t.len() != d * d * d) {
        return Err(RecoverError::Shape);
    }
    if fam.products.iter().flatten().any(|x| x.field() != field) {
        return Err(RecoverError::Shape);
    }
    let p = Products { fam, d, field };
    let one = field.one();
    let e = |i: usize| vec![(i, one.clone())];
    let one_b = b.unit().clone();
    // m_1 as a table
    let mut table = AlgebraTable::new(field, fam.labels.clone());
    for i in 0..d {
        for l in 0..d {
            for (k, x) in p.apply(&one_b, &e(i), &e(l)) {
                table.set(i, l, k, x);
            }
        }
    }
    // unit: m_1(u, e_i) = e_i = m_1(e_i, u)
    let mut triplets = Vec::new();
    let mut rhs = DenseVector::zeros(field, 2 * d * d);
    for i in 0..d {
        for u in 0..d {
            for k in 0..d {
                let x = table.get(u, i, k);
                if !x.is_zero() {
                    triplets.push((i * d + k, u, x.clone()));
                }
                let y = table.get(i, u, k);
                if !y.is_zero() {
                    triplets.push(((d + i) * d + k, u, y.clone()));
                }
            }
        }
        rhs.set(i * d + i, one.clone());
        rhs.set((d + i) * d + i, one.clone());
    }
    let m = SparseMatrix::from_triplets(field, 2 * d * d, d, triplets).map_err(|_| RecoverError::Shape)?;
    let unit = solve(&m, &rhs).map_err(|_| RecoverError::Shape)?.ok_or(RecoverError::NoUnit)?;
    table.unit = unit.entries().to_vec();
    let a1 = Arc::new(StructureAlgebra::new(table).map_err(RecoverError::NotAnAlgebra)?);
    let db = b.dim();
    for a in 0..d {
        for bb in 0..d {
            for c in 0..d {
                for al in 0..db {
                    for be in 0..db {
                        for g in 0..db {
                            let lhs = p.apply(b.mul_basis(be, g), &p.apply(&e(al), &e(a), &e(bb)), &e(c));
                            let rhs = p.apply(b.mul_basis(al, be), &e(a), &p.apply(&e(g), &e(bb), &e(c)));
                            if lhs != rhs {
                                return Err(RecoverError::ConditionFive(ConditionFiveWitness {
                                    alpha: [al, be, g],
                                    a: [a, bb, c],
                                }));
                            }
                        }
                    }
                }
            }
        }
    }
    let u = unit.coords();
    let images: Vec<Coords> = (0..db).map(|j| p.apply(&e(j), &u, &u)).collect();
    let matrix = (0..d)
        .map(|k| {
            (0..db)
                .map(|j| images[j].iter().find(|(i, _)| *i == k).map_or_else(|| field.zero(), |(_, x)| x.clone()))
                .collect()
        })
        .collect();
    epsilon_map(b, a1, matrix).map_err(RecoverError::Tripwire)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::truncated_polynomial_algebra;
    use crate::linalg::Field;

    #[test]
    fn round_trip_on_dual_numbers() {
        let a = Arc::new(truncated_polynomial_algebra(Field::Rationals, 2).unwrap());
        let t = Triple::with_identity(a.clone()).unwrap();
        let fam = AbstractFamily::from_triple(&t);
        let eps = recover_epsilon(t.b().clone(), &fam).unwrap();
        assert_eq!(eps.matrix(), t.epsilon().matrix());
        assert_eq!(eps.target().table().constants, a.table().constants);
    }

    #[test]
    fn broken_table_is_rejected_with_witness() {
        let a = Arc::new(truncated_polynomial_algebra(Field::Rationals, 2).unwrap());
        let t = Triple::with_identity(a).unwrap();
        let mut fam = AbstractFamily::from_triple(&t);
        // m_x(x ⊗ 1) := x instead of 0
        fam.products[1][(1 * 2) * 2 + 1] = Field::Rationals.one();
        assert!(matches!(recover_epsilon(t.b().clone(), &fam), Err(RecoverError::ConditionFive(_))));
    }
}
