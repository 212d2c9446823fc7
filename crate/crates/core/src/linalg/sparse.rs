//! Sparse matrices (row-compressed) and dense vectors over an exact [`Field`].

use std::fmt;

use super::field::{Field, Scalar};
use super::LinalgError;

/// A sparse vector: strictly increasing indices, no stored zeros.
pub type Coords = Vec<(usize, Scalar)>;

/// `acc += factor * v` on dense buffers.
pub(crate) fn axpy_dense(acc: &mut [Scalar], factor: &Scalar, v: &[(usize, Scalar)]) {
    if factor.is_zero() {
        return;
    }
    for (i, x) in v {
        acc[*i] = &acc[*i] + &(factor * x);
    }
}

/// Collects the nonzero entries of a dense buffer.
pub fn compress(dense: &[Scalar]) -> Coords {
    dense
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Sums duplicate indices and drops zeros.
pub fn normalize(mut v: Vec<(usize, Scalar)>) -> Coords {
    v.sort_by_key(|(i, _)| *i);
    let mut out: Coords = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = &*y + &x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

/// `a + f * b` for sorted sparse vectors.
pub(crate) fn merge_axpy(a: &[(usize, Scalar)], f: &Scalar, b: &[(usize, Scalar)]) -> Coords {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + &(f * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// A dense vector tagged with its field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DenseVector {
    field: Field,
    entries: Vec<Scalar>,
}

impl DenseVector {
    pub fn zeros(field: Field, len: usize) -> Self {
        DenseVector { field, entries: vec![field.zero(); len] }
    }

    pub fn from_entries(field: Field, entries: Vec<Scalar>) -> Result<Self, LinalgError> {
        if let Some(bad) = entries.iter().find(|s| s.field() != field) {
            return Err(LinalgError::FieldMismatch { expected: field, found: bad.field() });
        }
        Ok(DenseVector { field, entries })
    }

    pub fn from_coords(field: Field, len: usize, coords: &[(usize, Scalar)]) -> Result<Self, LinalgError> {
        let mut v = Self::zeros(field, len);
        for (i, x) in coords {
            if *i >= len {
                return Err(LinalgError::IndexOutOfBounds { index: *i, len });
            }
            if x.field() != field {
                return Err(LinalgError::FieldMismatch { expected: field, found: x.field() });
            }
            v.entries[*i] = &v.entries[*i] + x;
        }
        Ok(v)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn coords(&self) -> Coords {
        compress(&self.entries)
    }

    pub fn set(&mut self, i: usize, x: Scalar) {
        assert_eq!(x.field(), self.field, "scalar field mismatch");
        self.entries[i] = x;
    }

    fn check(&self, other: &DenseVector) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch { expected: self.field, found: other.field });
        }
        if self.len() != other.len() {
            return Err(LinalgError::DimensionMismatch {
                op: "vector add",
                left: (self.len(), 1),
                right: (other.len(), 1),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &DenseVector) -> Result<DenseVector, LinalgError> {
        self.check(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(DenseVector { field: self.field, entries })
    }

    pub fn sub(&self, other: &DenseVector) -> Result<DenseVector, LinalgError> {
        self.check(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(DenseVector { field: self.field, entries })
    }

    pub fn scale(&self, f: &Scalar) -> DenseVector {
        DenseVector { field: self.field, entries: self.entries.iter().map(|a| f * a).collect() }
    }
}

impl std::ops::Index<usize> for DenseVector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.entries[i]
    }
}

/// Row-compressed sparse matrix. Rows hold sorted `(column, value)` pairs with
/// no explicit zeros, so structural equality is value equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    field: Field,
    nrows: usize,
    ncols: usize,
    rows: Vec<Coords>,
}

impl SparseMatrix {
    pub fn zero(field: Field, nrows: usize, ncols: usize) -> Self {
        SparseMatrix { field, nrows, ncols, rows: vec![Vec::new(); nrows] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let rows = (0..n).map(|i| vec![(i, field.one())]).collect();
        SparseMatrix { field, nrows: n, ncols: n, rows }
    }

    /// Duplicate positions are summed.
    pub fn from_triplets<I>(field: Field, nrows: usize, ncols: usize, triplets: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); nrows];
        for (r, c, x) in triplets {
            if r >= nrows {
                return Err(LinalgError::IndexOutOfBounds { index: r, len: nrows });
            }
            if c >= ncols {
                return Err(LinalgError::IndexOutOfBounds { index: c, len: ncols });
            }
            if x.field() != field {
                return Err(LinalgError::FieldMismatch { expected: field, found: x.field() });
            }
            rows[r].push((c, x));
        }
        let rows = rows.into_iter().map(normalize).collect();
        Ok(SparseMatrix { field, nrows, ncols, rows })
    }

    /// Rows need not be sorted; duplicates are summed.
    pub fn from_rows(field: Field, ncols: usize, rows: Vec<Vec<(usize, Scalar)>>) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let mut out = Vec::with_capacity(nrows);
        for row in rows {
            for (c, x) in &row {
                if *c >= ncols {
                    return Err(LinalgError::IndexOutOfBounds { index: *c, len: ncols });
                }
                if x.field() != field {
                    return Err(LinalgError::FieldMismatch { expected: field, found: x.field() });
                }
            }
            out.push(normalize(row));
        }
        Ok(SparseMatrix { field, nrows, ncols, rows: out })
    }

    /// Trusted constructor for rows already in canonical form.
    pub(crate) fn from_canonical_rows(field: Field, ncols: usize, rows: Vec<Coords>) -> Self {
        debug_assert!(rows.iter().all(|r| r.windows(2).all(|w| w[0].0 < w[1].0)
            && r.iter().all(|(c, x)| *c < ncols && !x.is_zero())));
        SparseMatrix { field, nrows: rows.len(), ncols, rows }
    }

    pub fn from_dense(field: Field, ncols: usize, dense: &[Vec<Scalar>]) -> Result<Self, LinalgError> {
        let mut rows = Vec::with_capacity(dense.len());
        for row in dense {
            if row.len() != ncols {
                return Err(LinalgError::DimensionMismatch {
                    op: "from_dense",
                    left: (dense.len(), ncols),
                    right: (1, row.len()),
                });
            }
            rows.push(row.iter().enumerate().map(|(c, x)| (c, x.clone())).collect());
        }
        Self::from_rows(field, ncols, rows)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, Scalar)] {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[Coords] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.rows[r].binary_search_by_key(&c, |(j, _)| *j) {
            Ok(k) => self.rows[r][k].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.rows.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, x)| (r, *c, x)))
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![self.field.zero(); self.ncols]; self.nrows];
        for (r, c, x) in self.triplets() {
            out[r][c] = x.clone();
        }
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut rows: Vec<Coords> = vec![Vec::new(); self.ncols];
        for (r, c, x) in self.triplets() {
            rows[c].push((r, x.clone()));
        }
        SparseMatrix { field: self.field, nrows: self.ncols, ncols: self.nrows, rows }
    }

    fn check_field(&self, other: &SparseMatrix) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch { expected: self.field, found: other.field });
        }
        Ok(())
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        self.check_field(other)?;
        if self.ncols != other.nrows {
            return Err(LinalgError::DimensionMismatch {
                op: "matrix product",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut buf = vec![self.field.zero(); other.ncols];
        let mut touched: Vec<usize> = Vec::new();
        let mut mark = vec![false; other.ncols];
        let mut rows = Vec::with_capacity(self.nrows);
        for row in &self.rows {
            for (k, a) in row {
                for (c, b) in &other.rows[*k] {
                    if !mark[*c] {
                        mark[*c] = true;
                        touched.push(*c);
                    }
                    buf[*c] = &buf[*c] + &(a * b);
                }
            }
            touched.sort_unstable();
            let mut out = Vec::with_capacity(touched.len());
            for c in touched.drain(..) {
                mark[c] = false;
                let v = std::mem::replace(&mut buf[c], self.field.zero());
                if !v.is_zero() {
                    out.push((c, v));
                }
            }
            rows.push(out);
        }
        Ok(SparseMatrix { field: self.field, nrows: self.nrows, ncols: other.ncols, rows })
    }

    pub fn mul_vec(&self, v: &DenseVector) -> Result<DenseVector, LinalgError> {
        if v.field() != self.field {
            return Err(LinalgError::FieldMismatch { expected: self.field, found: v.field() });
        }
        if v.len() != self.ncols {
            return Err(LinalgError::DimensionMismatch {
                op: "matrix-vector product",
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        let entries = self
            .rows
            .iter()
            .map(|row| row.iter().fold(self.field.zero(), |acc, (c, x)| &acc + &(x * &v[*c])))
            .collect();
        Ok(DenseVector { field: self.field, entries })
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        self.combine(other, &self.field.one(), "matrix sum")
    }

    pub fn sub(&self, other: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        self.combine(other, &-self.field.one(), "matrix difference")
    }

    fn combine(&self, other: &SparseMatrix, f: &Scalar, op: &'static str) -> Result<SparseMatrix, LinalgError> {
        self.check_field(other)?;
        if self.shape() != other.shape() {
            return Err(LinalgError::DimensionMismatch { op, left: self.shape(), right: other.shape() });
        }
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| merge_axpy(a, f, b)).collect();
        Ok(SparseMatrix { field: self.field, nrows: self.nrows, ncols: self.ncols, rows })
    }

    /// First position (row-major) where `self` and `other` differ.
    pub fn first_difference(&self, other: &SparseMatrix) -> Option<(usize, usize)> {
        if self.shape() != other.shape() {
            return Some((0, 0));
        }
        for (r, (a, b)) in self.rows.iter().zip(&other.rows).enumerate() {
            if a != b {
                let d = merge_axpy(a, &-self.field.one(), b);
                return Some((r, d[0].0));
            }
        }
        None
    }
}

impl fmt::Display for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Field::Rationals.from_i64(n)
    }

    #[test]
    fn triplets_sum_duplicates_and_drop_zeros() {
        let m = SparseMatrix::from_triplets(
            Field::Rationals,
            2,
            3,
            vec![(0, 1, q(2)), (0, 1, q(-2)), (1, 2, q(1)), (1, 2, q(3))],
        )
        .unwrap();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 2), q(4));
        assert!(m.get(0, 1).is_zero());
    }

    #[test]
    fn product_and_transpose_agree_with_dense() {
        let a = SparseMatrix::from_dense(Field::Rationals, 2, &[vec![q(1), q(2)], vec![q(0), q(3)]]).unwrap();
        let b = SparseMatrix::from_dense(Field::Rationals, 2, &[vec![q(4), q(0)], vec![q(-1), q(5)]]).unwrap();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.to_dense(), vec![vec![q(2), q(10)], vec![q(-3), q(15)]]);
        let bt_at = b.transpose().mul(&a.transpose()).unwrap();
        assert_eq!(bt_at, ab.transpose());
    }

    #[test]
    fn shape_errors_are_reported() {
        let a = SparseMatrix::zero(Field::Rationals, 2, 3);
        assert!(matches!(a.mul(&a), Err(LinalgError::DimensionMismatch { .. })));
        let v = DenseVector::zeros(Field::Rationals, 2);
        assert!(a.mul_vec(&v).is_err());
        let w = DenseVector::zeros(Field::Prime(3), 3);
        assert!(matches!(a.mul_vec(&w), Err(LinalgError::FieldMismatch { .. })));
    }

    #[test]
    fn merge_axpy_cancels() {
        let a = vec![(0, q(1)), (2, q(3))];
        let b = vec![(2, q(1)), (5, q(1))];
        assert_eq!(merge_axpy(&a, &q(-3), &b), vec![(0, q(1)), (5, q(-3))]);
    }
}
