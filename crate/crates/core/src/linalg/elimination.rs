//! Exact sparse Gaussian elimination: rank, kernel basis, linear solve.
//!
//! Pivot choice is deterministic. The pivot column is the one with the fewest
//! nonzeros among the remaining rows (ties to the smallest index); the pivot row
//! is the sparsest row holding that column (ties to the smallest index).

use std::collections::BTreeSet;

use super::field::Scalar;
use super::sparse::{merge_axpy, Coords, DenseVector, SparseMatrix};
use super::LinalgError;

struct Row {
    entries: Coords,
    rhs: Option<Scalar>,
}

struct Eliminator {
    rows: Vec<Row>,
    /// Rows (not yet used as pivots) containing each column.
    col_rows: Vec<BTreeSet<usize>>,
    /// `(count, col)` for every unpivoted column with `count > 0`.
    queue: BTreeSet<(usize, usize)>,
    pivoted: Vec<bool>,
    /// `(col, row)` in elimination order.
    pivots: Vec<(usize, usize)>,
}

impl Eliminator {
    fn new(m: &SparseMatrix, rhs: Option<&DenseVector>) -> Self {
        let mut col_rows = vec![BTreeSet::new(); m.ncols()];
        let rows: Vec<Row> = m
            .rows()
            .iter()
            .enumerate()
            .map(|(r, entries)| {
                for (c, _) in entries {
                    col_rows[*c].insert(r);
                }
                Row { entries: entries.clone(), rhs: rhs.map(|b| b[r].clone()) }
            })
            .collect();
        let queue = col_rows
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_empty())
            .map(|(c, s)| (s.len(), c))
            .collect();
        Eliminator { rows, col_rows, queue, pivoted: vec![false; m.ncols()], pivots: Vec::new() }
    }

    fn set_membership(&mut self, col: usize, row: usize, present: bool) {
        let set = &mut self.col_rows[col];
        let before = set.len();
        if present {
            set.insert(row);
        } else {
            set.remove(&row);
        }
        let after = set.len();
        if before != after && !self.pivoted[col] {
            if before > 0 {
                self.queue.remove(&(before, col));
            }
            if after > 0 {
                self.queue.insert((after, col));
            }
        }
    }

    /// `rows[target] -= factor * rows[source]`, keeping the column index in sync.
    fn eliminate(&mut self, target: usize, source: usize, factor: &Scalar) {
        let neg = -factor;
        let old = std::mem::take(&mut self.rows[target].entries);
        let new = merge_axpy(&old, &neg, &self.rows[source].entries);
        let (mut i, mut j) = (0, 0);
        let mut changes = Vec::new();
        while i < old.len() || j < new.len() {
            if j == new.len() || (i < old.len() && old[i].0 < new[j].0) {
                changes.push((old[i].0, false));
                i += 1;
            } else if i == old.len() || new[j].0 < old[i].0 {
                changes.push((new[j].0, true));
                j += 1;
            } else {
                i += 1;
                j += 1;
            }
        }
        self.rows[target].entries = new;
        if let Some(src_rhs) = self.rows[source].rhs.clone() {
            let t = self.rows[target].rhs.take().expect("augmented rows");
            self.rows[target].rhs = Some(&t + &(&neg * &src_rhs));
        }
        for (c, present) in changes {
            self.set_membership(c, target, present);
        }
    }

    fn forward(&mut self) {
        while let Some(&(_, col)) = self.queue.iter().next() {
            let prow = *self
                .col_rows[col]
                .iter()
                .min_by_key(|&&r| (self.rows[r].entries.len(), r))
                .expect("queued column has rows");
            // normalise pivot row
            let lead = lookup(&self.rows[prow].entries, col).expect("pivot present");
            let inv = lead.inv().expect("nonzero pivot");
            if !inv.is_one() {
                for (_, x) in self.rows[prow].entries.iter_mut() {
                    *x = &*x * &inv;
                }
                if let Some(b) = self.rows[prow].rhs.as_mut() {
                    *b = &*b * &inv;
                }
            }
            // retire the pivot row from the active index
            self.queue.remove(&(self.col_rows[col].len(), col));
            self.pivoted[col] = true;
            let cols: Vec<usize> = self.rows[prow].entries.iter().map(|(c, _)| *c).collect();
            for c in cols {
                self.set_membership(c, prow, false);
            }
            let others: Vec<usize> = self.col_rows[col].iter().copied().collect();
            for r in others {
                let f = lookup(&self.rows[r].entries, col).expect("indexed entry");
                self.eliminate(r, prow, &f);
            }
            self.pivots.push((col, prow));
        }
    }

    /// Reduce pivot rows to RREF. Uses a fresh column index over pivot rows.
    fn backward(&mut self) {
        let n = self.col_rows.len();
        let mut index: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for &(_, r) in &self.pivots {
            for (c, _) in &self.rows[r].entries {
                index[*c].insert(r);
            }
        }
        for k in (0..self.pivots.len()).rev() {
            let (col, prow) = self.pivots[k];
            let targets: Vec<usize> = index[col].iter().copied().filter(|&r| r != prow).collect();
            for r in targets {
                let f = lookup(&self.rows[r].entries, col).expect("indexed entry");
                let before: Vec<usize> = self.rows[r].entries.iter().map(|(c, _)| *c).collect();
                let neg = -&f;
                self.rows[r].entries = merge_axpy(&self.rows[r].entries, &neg, &self.rows[prow].entries);
                if let Some(src) = self.rows[prow].rhs.clone() {
                    let t = self.rows[r].rhs.take().expect("augmented rows");
                    self.rows[r].rhs = Some(&t + &(&neg * &src));
                }
                for c in before {
                    index[c].remove(&r);
                }
                for (c, _) in &self.rows[r].entries {
                    index[*c].insert(r);
                }
            }
        }
    }

    fn inconsistent(&self) -> bool {
        let pivot_rows: BTreeSet<usize> = self.pivots.iter().map(|&(_, r)| r).collect();
        self.rows.iter().enumerate().any(|(r, row)| {
            !pivot_rows.contains(&r) && row.entries.is_empty() && row.rhs.as_ref().is_some_and(|b| !b.is_zero())
        })
    }
}

fn lookup(row: &[(usize, Scalar)], col: usize) -> Option<Scalar> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|k| row[k].1.clone())
}

pub fn rank(m: &SparseMatrix) -> usize {
    let mut e = Eliminator::new(m, None);
    e.forward();
    e.pivots.len()
}

/// Basis of the right kernel, one vector per free column in increasing order.
/// Each vector has a 1 in its free column and zeros in the other free columns.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<DenseVector> {
    let field = m.field();
    let mut e = Eliminator::new(m, None);
    e.forward();
    e.backward();
    let mut pivot_row_of = vec![None; m.ncols()];
    for &(c, r) in &e.pivots {
        pivot_row_of[c] = Some(r);
    }
    let free: Vec<usize> = (0..m.ncols()).filter(|&c| pivot_row_of[c].is_none()).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = DenseVector::zeros(field, m.ncols());
        v.set(f, field.one());
        for &(c, r) in &e.pivots {
            if let Some(x) = lookup(&e.rows[r].entries, f) {
                v.set(c, -&x);
            }
        }
        basis.push(v);
    }
    basis
}

/// Solves `m x = b`. Returns `Ok(None)` when the system is inconsistent.
/// Free variables are set to zero, so the returned solution is deterministic.
pub fn solve(m: &SparseMatrix, b: &DenseVector) -> Result<Option<DenseVector>, LinalgError> {
    if b.field() != m.field() {
        return Err(LinalgError::FieldMismatch { expected: m.field(), found: b.field() });
    }
    if b.len() != m.nrows() {
        return Err(LinalgError::DimensionMismatch {
            op: "solve",
            left: m.shape(),
            right: (b.len(), 1),
        });
    }
    let mut e = Eliminator::new(m, Some(b));
    e.forward();
    if e.inconsistent() {
        return Ok(None);
    }
    e.backward();
    let mut x = DenseVector::zeros(m.field(), m.ncols());
    for &(c, r) in &e.pivots {
        x.set(c, e.rows[r].rhs.clone().expect("augmented rows"));
    }
    Ok(Some(x))
}

pub fn nullity(m: &SparseMatrix) -> usize {
    m.ncols() - rank(m)
}
