use std::sync::Arc;

use crate::linalg::{compress, Coords, Scalar};

use super::structure::StructureAlgebra;
use super::AlgebraError;

/// Raw bimodule actions. `left[(i * m + s) * m + t]` is the coefficient of `f_t`
/// in `e_i · f_s`; `right[(s * d + i) * m + t]` that of `f_t` in `f_s · e_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BimoduleTable {
    pub labels: Vec<String>,
    pub left: Vec<Scalar>,
    pub right: Vec<Scalar>,
}

impl BimoduleTable {
    pub fn new(algebra: &StructureAlgebra, labels: Vec<String>) -> Self {
        let (d, m) = (algebra.dim(), labels.len());
        let z = algebra.field().zero();
        BimoduleTable { labels, left: vec![z.clone(); d * m * m], right: vec![z; m * d * m] }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bimodule {
    algebra: Arc<StructureAlgebra>,
    table: BimoduleTable,
    left: Vec<Coords>,
    right: Vec<Coords>,
}

impl Bimodule {
    /// Validates the three associativity laws and unitality on all basis triples.
    pub fn new(algebra: Arc<StructureAlgebra>, table: BimoduleTable) -> Result<Self, AlgebraError> {
        let (d, m) = (algebra.dim(), table.labels.len());
        if m == 0 || table.left.len() != d * m * m || table.right.len() != m * d * m {
            return Err(AlgebraError::Bimodule("action tensors have the wrong size".into()));
        }
        if table.left.iter().chain(&table.right).any(|x| x.field() != algebra.field()) {
            return Err(AlgebraError::FieldMismatch);
        }
        let left = (0..d * m).map(|is| compress(&table.left[is * m..(is + 1) * m])).collect();
        let right = (0..m * d).map(|si| compress(&table.right[si * m..(si + 1) * m])).collect();
        let module = Bimodule { algebra, table, left, right };
        module.check()?;
        Ok(module)
    }

    fn check(&self) -> Result<(), AlgebraError> {
        let a = &self.algebra;
        let (d, m) = (a.dim(), self.dim());
        let one = a.field().one();
        let l = &self.table.labels;
        let al = a.labels();
        let fail = |msg: String| Err(AlgebraError::Bimodule(msg));
        for s in 0..m {
            let fs = vec![(s, one.clone())];
            if self.left_action(a.unit(), &fs) != fs {
                return fail(format!("1·{} ≠ {}", l[s], l[s]));
            }
            if self.right_action(&fs, a.unit()) != fs {
                return fail(format!("{}·1 ≠ {}", l[s], l[s]));
            }
            for i in 0..d {
                let ei = vec![(i, one.clone())];
                for j in 0..d {
                    let ej = vec![(j, one.clone())];
                    let eij = a.mul_basis(i, j);
                    if self.left_action(eij, &fs) != self.left_action(&ei, &self.left_action(&ej, &fs)) {
                        return fail(format!("({}{})·{} ≠ {}·({}·{})", al[i], al[j], l[s], al[i], al[j], l[s]));
                    }
                    if self.right_action(&fs, eij) != self.right_action(&self.right_action(&fs, &ei), &ej) {
                        return fail(format!("{}·({}{}) ≠ ({}·{})·{}", l[s], al[i], al[j], l[s], al[i], al[j]));
                    }
                    let lhs = self.right_action(&self.left_action(&ei, &fs), &ej);
                    let rhs = self.left_action(&ei, &self.right_action(&fs, &ej));
                    if lhs != rhs {
                        return fail(format!("({}·{})·{} ≠ {}·({}·{})", al[i], l[s], al[j], al[i], l[s], al[j]));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<StructureAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.table.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.table.labels
    }

    pub fn table(&self) -> &BimoduleTable {
        &self.table
    }

    /// `e_i · f_s`.
    pub fn left_basis(&self, i: usize, s: usize) -> &Coords {
        &self.left[i * self.dim() + s]
    }

    /// `f_s · e_i`.
    pub fn right_basis(&self, s: usize, i: usize) -> &Coords {
        &self.right[s * self.algebra.dim() + i]
    }

    pub fn left_action(&self, a: &[(usize, Scalar)], v: &[(usize, Scalar)]) -> Coords {
        let mut acc = vec![self.algebra.field().zero(); self.dim()];
        for (i, x) in a {
            for (s, y) in v {
                crate::linalg::axpy_dense(&mut acc, &(x * y), self.left_basis(*i, *s));
            }
        }
        compress(&acc)
    }

    pub fn right_action(&self, v: &[(usize, Scalar)], a: &[(usize, Scalar)]) -> Coords {
        let mut acc = vec![self.algebra.field().zero(); self.dim()];
        for (s, y) in v {
            for (i, x) in a {
                crate::linalg::axpy_dense(&mut acc, &(x * y), self.right_basis(*s, *i));
            }
        }
        compress(&acc)
    }
}

/// `A` as a bimodule over itself.
pub fn regular_bimodule(a: Arc<StructureAlgebra>) -> Bimodule {
    let d = a.dim();
    let mut t = BimoduleTable::new(&a, a.labels().to_vec());
    for i in 0..d {
        for s in 0..d {
            for k in 0..d {
                t.left[(i * d + s) * d + k] = a.structure_constant(i, s, k).clone();
                t.right[(s * d + i) * d + k] = a.structure_constant(s, i, k).clone();
            }
        }
    }
    Bimodule::new(a, t).expect("regular bimodule of a valid algebra")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{matrix_algebra, truncated_polynomial_algebra};
    use crate::linalg::Field;

    #[test]
    fn regular_bimodules() {
        let k = Arc::new(StructureAlgebra::ground(Field::Rationals));
        assert_eq!(regular_bimodule(k).dim(), 1);
        let a = Arc::new(truncated_polynomial_algebra(Field::Rationals, 2).unwrap());
        let m = regular_bimodule(a);
        let t = m.table();
        for i in 0..2 {
            for s in 0..2 {
                for k in 0..2 {
                    assert_eq!(t.left[(i * 2 + s) * 2 + k], t.right[(s * 2 + i) * 2 + k]);
                }
            }
        }
        let mat = regular_bimodule(Arc::new(matrix_algebra(Field::Rationals, 2).unwrap()));
        assert_eq!(mat.dim(), 4);
    }

    #[test]
    fn broken_action_is_rejected() {
        let a = Arc::new(truncated_polynomial_algebra(Field::Rationals, 2).unwrap());
        let mut t = regular_bimodule(a.clone()).table().clone();
        // 1 · f_0 := 2 f_0
        t.left[0] = Field::Rationals.from_i64(2);
        assert!(Bimodule::new(a, t).is_err());
    }
}
