use std::fmt;

use crate::linalg::{compress, Coords, Field, Scalar};

use super::group::FiniteGroup;
use super::AlgebraError;

/// Raw, unvalidated algebra data. Convert with [`StructureAlgebra::new`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraTable {
    pub field: Field,
    pub labels: Vec<String>,
    /// `constants[(i * d + j) * d + k]` is the coefficient of `e_k` in `e_i · e_j`.
    pub constants: Vec<Scalar>,
    pub unit: Vec<Scalar>,
    pub commutative: bool,
}

impl AlgebraTable {
    pub fn new(field: Field, labels: Vec<String>) -> Self {
        let d = labels.len();
        AlgebraTable {
            field,
            labels,
            constants: vec![field.zero(); d * d * d],
            unit: vec![field.zero(); d],
            commutative: false,
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Scalar) {
        let d = self.dim();
        self.constants[(i * d + j) * d + k] = value;
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        let d = self.dim();
        &self.constants[(i * d + j) * d + k]
    }

    fn product(&self, i: usize, j: usize) -> Vec<Scalar> {
        let d = self.dim();
        self.constants[(i * d + j) * d..(i * d + j + 1) * d].to_vec()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Shape(String),
    FieldMismatch,
    /// `(e_i e_j) e_l ≠ e_i (e_j e_l)`.
    Associativity { i: usize, j: usize, l: usize },
    /// `1 · e_i ≠ e_i`.
    LeftUnit { i: usize },
    /// `e_i · 1 ≠ e_i`.
    RightUnit { i: usize },
    /// Declared commutative but `e_i e_j ≠ e_j e_i`.
    Commutativity { i: usize, j: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub labels: Vec<String>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        let l = |i: &usize| self.labels.get(*i).cloned().unwrap_or_else(|| i.to_string());
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| match v {
                Violation::Shape(s) => format!("shape: {s}"),
                Violation::FieldMismatch => "scalars from a different field".to_string(),
                Violation::Associativity { i, j, l: k } => {
                    format!("associativity fails on ({}, {}, {})", l(i), l(j), l(k))
                }
                Violation::LeftUnit { i } => format!("1·{} ≠ {}", l(i), l(i)),
                Violation::RightUnit { i } => format!("{}·1 ≠ {}", l(i), l(i)),
                Violation::Commutativity { i, j } => format!("{}·{} ≠ {}·{}", l(i), l(j), l(j), l(i)),
            })
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Checks every associativity and unit instance, plus commutativity when the
/// flag is set. Returns all violations, not just the first.
pub fn validate_algebra(t: &AlgebraTable) -> ValidationReport {
    let d = t.dim();
    let mut violations = Vec::new();
    let report = |violations| ValidationReport { labels: t.labels.clone(), violations };
    if t.constants.len() != d * d * d || t.unit.len() != d || d == 0 {
        violations.push(Violation::Shape(format!(
            "dimension {d} needs {} structure constants and {d} unit coordinates, got {} and {}",
            d * d * d,
            t.constants.len(),
            t.unit.len()
        )));
        return report(violations);
    }
    if t.constants.iter().chain(&t.unit).any(|s| s.field() != t.field) {
        violations.push(Violation::FieldMismatch);
        return report(violations);
    }
    let zero = t.field.zero();
    for i in 0..d {
        for j in 0..d {
            let ij = t.product(i, j);
            for l in 0..d {
                let jl = t.product(j, l);
                let ok = (0..d).all(|k| {
                    let lhs = (0..d).fold(zero.clone(), |acc, r| &acc + &(&ij[r] * t.get(r, l, k)));
                    let rhs = (0..d).fold(zero.clone(), |acc, r| &acc + &(&jl[r] * t.get(i, r, k)));
                    lhs == rhs
                });
                if !ok {
                    violations.push(Violation::Associativity { i, j, l });
                }
            }
        }
    }
    for i in 0..d {
        let delta = |k: usize| if k == i { t.field.one() } else { zero.clone() };
        let left_ok = (0..d).all(|k| {
            (0..d).fold(zero.clone(), |acc, r| &acc + &(&t.unit[r] * t.get(r, i, k))) == delta(k)
        });
        if !left_ok {
            violations.push(Violation::LeftUnit { i });
        }
        let right_ok = (0..d).all(|k| {
            (0..d).fold(zero.clone(), |acc, r| &acc + &(&t.unit[r] * t.get(i, r, k))) == delta(k)
        });
        if !right_ok {
            violations.push(Violation::RightUnit { i });
        }
    }
    if t.commutative {
        for i in 0..d {
            for j in i + 1..d {
                if t.product(i, j) != t.product(j, i) {
                    violations.push(Violation::Commutativity { i, j });
                }
            }
        }
    }
    report(violations)
}

/// A validated finite-dimensional associative unital algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureAlgebra {
    table: AlgebraTable,
    products: Vec<Coords>,
    unit: Coords,
}

impl StructureAlgebra {
    pub fn new(table: AlgebraTable) -> Result<Self, AlgebraError> {
        let report = validate_algebra(&table);
        if !report.is_valid() {
            return Err(AlgebraError::Invalid(report));
        }
        let d = table.dim();
        let products = (0..d * d).map(|ij| compress(&table.constants[ij * d..(ij + 1) * d])).collect();
        let unit = compress(&table.unit);
        Ok(StructureAlgebra { table, products, unit })
    }

    /// The ground field `k` as a 1-dimensional algebra with basis label `1`.
    pub fn ground(field: Field) -> Self {
        truncated_polynomial_algebra(field, 1).expect("k is valid")
    }

    pub fn table(&self) -> &AlgebraTable {
        &self.table
    }

    pub fn field(&self) -> Field {
        self.table.field
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn labels(&self) -> &[String] {
        &self.table.labels
    }

    pub fn is_commutative(&self) -> bool {
        self.table.commutative
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        self.table.get(i, j, k)
    }

    /// Coordinates of `e_i · e_j`.
    pub fn mul_basis(&self, i: usize, j: usize) -> &Coords {
        &self.products[i * self.dim() + j]
    }

    /// Coordinates of `1`.
    pub fn unit(&self) -> &Coords {
        &self.unit
    }

    pub fn unit_dense(&self) -> &[Scalar] {
        &self.table.unit
    }

    pub fn mul(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> Coords {
        let mut acc = vec![self.field().zero(); self.dim()];
        for (i, a) in x {
            for (j, b) in y {
                let ab = a * b;
                crate::linalg::axpy_dense(&mut acc, &ab, self.mul_basis(*i, *j));
            }
        }
        compress(&acc)
    }

    /// Product of a sequence of basis elements; the empty product is `1`.
    pub fn product_of_basis(&self, factors: &[usize]) -> Coords {
        let mut acc = self.unit.clone();
        for &f in factors {
            acc = self.mul(&acc, &[(f, self.field().one())]);
        }
        acc
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.table.labels.iter().position(|l| l == label)
    }
}

/// `k[x]/(x^d)` with basis `1, x, x^2, …`.
pub fn truncated_polynomial_algebra(field: Field, d: usize) -> Result<StructureAlgebra, AlgebraError> {
    if d == 0 {
        return Err(AlgebraError::ZeroDimension);
    }
    let labels = (0..d)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    let mut t = AlgebraTable::new(field, labels);
    for i in 0..d {
        for j in 0..d - i {
            t.set(i, j, i + j, field.one());
        }
    }
    t.unit[0] = field.one();
    t.commutative = true;
    StructureAlgebra::new(t)
}

/// The group algebra `k[G]`; the commutative flag follows `G`.
pub fn group_algebra(field: Field, group: &FiniteGroup) -> Result<StructureAlgebra, AlgebraError> {
    let n = group.order();
    let mut t = AlgebraTable::new(field, group.labels().to_vec());
    for g in 0..n {
        for h in 0..n {
            t.set(g, h, group.op(g, h), field.one());
        }
    }
    t.unit[group.identity()] = field.one();
    t.commutative = group.is_abelian();
    StructureAlgebra::new(t)
}

/// `M_n(k)` with matrix units `e{i}{j}` (1-based labels).
pub fn matrix_algebra(field: Field, n: usize) -> Result<StructureAlgebra, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::ZeroDimension);
    }
    let idx = |i: usize, j: usize| i * n + j;
    let labels = (0..n * n).map(|k| format!("e{}{}", k / n + 1, k % n + 1)).collect();
    let mut t = AlgebraTable::new(field, labels);
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                t.set(idx(i, j), idx(j, l), idx(i, l), field.one());
            }
        }
        t.unit[idx(i, i)] = field.one();
    }
    t.commutative = n == 1;
    StructureAlgebra::new(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_field_and_dual_numbers_are_valid() {
        let k = StructureAlgebra::ground(Field::Rationals);
        assert_eq!(k.dim(), 1);
        assert_eq!(k.labels(), &["1".to_string()]);
        let d = truncated_polynomial_algebra(Field::Rationals, 2).unwrap();
        assert!(d.mul_basis(1, 1).is_empty());
        assert!(d.is_commutative());
    }

    #[test]
    fn cubic_truncation() {
        let a = truncated_polynomial_algebra(Field::Rationals, 3).unwrap();
        assert!(a.mul_basis(1, 2).is_empty());
        assert_eq!(a.mul_basis(1, 1), &vec![(2, Field::Rationals.one())]);
        assert!(matches!(truncated_polynomial_algebra(Field::Rationals, 0), Err(AlgebraError::ZeroDimension)));
    }

    #[test]
    fn perturbed_table_reports_the_broken_triple() {
        // x·x = x + 1 is the valid algebra k[x]/(x^2 - x - 1)
        let q = Field::Rationals;
        let mut t = AlgebraTable::new(q, vec!["1".into(), "x".into()]);
        t.set(0, 0, 0, q.one());
        t.set(0, 1, 1, q.one());
        t.set(1, 0, 1, q.one());
        t.set(1, 1, 0, q.one());
        t.set(1, 1, 1, q.one());
        t.unit[0] = q.one();
        assert!(validate_algebra(&t).is_valid());
        // break x·1 = x into x·1 = 2x
        t.set(1, 0, 1, q.from_i64(2));
        let report = validate_algebra(&t);
        assert!(report.violations.contains(&Violation::RightUnit { i: 1 }));
        assert!(report.violations.contains(&Violation::Associativity { i: 1, j: 0, l: 0 }));
        assert!(report.violations.iter().all(|v| !matches!(v, Violation::Associativity { i: 0, j: 0, l: 0 })));
        assert!(StructureAlgebra::new(t).is_err());
    }

    #[test]
    fn commutativity_flag_is_verified() {
        let mut t = matrix_algebra(Field::Rationals, 2).unwrap().table().clone();
        t.commutative = true;
        let r = validate_algebra(&t);
        assert!(r.violations.contains(&Violation::Commutativity { i: 0, j: 1 }));
    }

    #[test]
    fn matrix_algebra_is_valid() {
        let m = matrix_algebra(Field::Rationals, 2).unwrap();
        assert_eq!(m.dim(), 4);
        assert_eq!(m.unit().len(), 2);
    }
}
