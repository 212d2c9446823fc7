use crate::linalg::{compress, Coords, DenseVector, Field, Scalar};

use super::ComplexError;

/// The pairs `(u, v)` with `0 ≤ u < v < n` in lexicographic order.
pub fn upper_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Position of `(u, v)` in [`upper_pairs`]`(n)`.
pub fn pair_position(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < n);
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

/// Basis of `C^n = Hom(A^{⊗n} ⊗ B^{⊗n(n-1)/2}, M)`.
///
/// Flat index: `(s · dim_a^n + I) · dim_b^{n(n-1)/2} + J` with `I`, `J` read in
/// base `dim_a` and `dim_b`, most significant slot first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CochainSpace {
    pub field: Field,
    pub dim_a: usize,
    pub dim_b: usize,
    pub dim_m: usize,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CochainBasisIndex {
    pub a: Vec<usize>,
    /// In the order of [`upper_pairs`]`(degree)`.
    pub b: Vec<usize>,
    pub m: usize,
}

impl CochainSpace {
    pub fn b_slots(&self) -> usize {
        self.degree * self.degree.saturating_sub(1) / 2
    }

    /// Number of basis arguments `(I, J)`, or `None` on overflow.
    pub fn checked_args(&self) -> Option<usize> {
        let a = self.dim_a.checked_pow(self.degree as u32)?;
        let b = self.dim_b.checked_pow(self.b_slots() as u32)?;
        a.checked_mul(b)
    }

    pub fn checked_dim(&self) -> Option<usize> {
        self.checked_args()?.checked_mul(self.dim_m)
    }

    pub fn args(&self) -> usize {
        self.checked_args().expect("cochain space too large")
    }

    pub fn dim(&self) -> usize {
        self.checked_dim().expect("cochain space too large")
    }

    /// Radices of the argument slots: `degree` copies of `dim_a`, then the B-slots.
    pub fn radices(&self) -> Vec<usize> {
        let mut r = vec![self.dim_a; self.degree];
        r.extend(std::iter::repeat_n(self.dim_b, self.b_slots()));
        r
    }

    pub fn arg_index(&self, a: &[usize], b: &[usize]) -> usize {
        debug_assert_eq!(a.len(), self.degree);
        debug_assert_eq!(b.len(), self.b_slots());
        let i = a.iter().fold(0, |acc, &x| acc * self.dim_a + x);
        b.iter().fold(i, |acc, &x| acc * self.dim_b + x)
    }

    pub fn index(&self, idx: &CochainBasisIndex) -> usize {
        idx.m * self.args() + self.arg_index(&idx.a, &idx.b)
    }

    pub fn decode_args(&self, mut flat: usize) -> (Vec<usize>, Vec<usize>) {
        let mut b = vec![0; self.b_slots()];
        for slot in b.iter_mut().rev() {
            *slot = flat % self.dim_b;
            flat /= self.dim_b;
        }
        let mut a = vec![0; self.degree];
        for slot in a.iter_mut().rev() {
            *slot = flat % self.dim_a;
            flat /= self.dim_a;
        }
        (a, b)
    }

    pub fn decode(&self, flat: usize) -> CochainBasisIndex {
        let args = self.args();
        let (a, b) = self.decode_args(flat % args);
        CochainBasisIndex { a, b, m: flat / args }
    }

    pub fn with_degree(&self, degree: usize) -> CochainSpace {
        CochainSpace { degree, ..*self }
    }
}

/// Expands `Π slots` into `(mixed-radix index, coefficient)` pairs.
pub(crate) fn expand_slots(field: Field, slots: &[&[(usize, Scalar)]], radices: &[usize]) -> Vec<(usize, Scalar)> {
    let mut acc = vec![(0usize, field.one())];
    for (slot, &r) in slots.iter().zip(radices) {
        if slot.is_empty() {
            return Vec::new();
        }
        let mut next = Vec::with_capacity(acc.len() * slot.len());
        for (idx, c) in &acc {
            for (x, d) in slot.iter() {
                next.push((idx * r + x, c * d));
            }
        }
        acc = next;
    }
    acc
}

/// An element of `C^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    space: CochainSpace,
    coefficients: DenseVector,
}

impl Cochain {
    pub fn new(space: CochainSpace, coefficients: DenseVector) -> Result<Self, ComplexError> {
        if coefficients.field() != space.field {
            return Err(ComplexError::Linalg(crate::linalg::LinalgError::FieldMismatch {
                expected: space.field,
                found: coefficients.field(),
            }));
        }
        if coefficients.len() != space.dim() {
            return Err(ComplexError::LengthMismatch { expected: space.dim(), found: coefficients.len() });
        }
        Ok(Cochain { space, coefficients })
    }

    pub fn zero(space: CochainSpace) -> Self {
        Cochain { space, coefficients: DenseVector::zeros(space.field, space.dim()) }
    }

    pub fn from_entries(space: CochainSpace, entries: &[(CochainBasisIndex, Scalar)]) -> Result<Self, ComplexError> {
        let mut v = DenseVector::zeros(space.field, space.dim());
        for (idx, x) in entries {
            let i = space.index(idx);
            v.set(i, &v[i] + x);
        }
        Cochain::new(space, v)
    }

    pub fn space(&self) -> &CochainSpace {
        &self.space
    }

    pub fn degree(&self) -> usize {
        self.space.degree
    }

    pub fn coefficients(&self) -> &DenseVector {
        &self.coefficients
    }

    pub fn into_coefficients(self) -> DenseVector {
        self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_zero()
    }

    /// Multilinear evaluation on arbitrary elements: `a_args` in `A`, `b_args` in `B`.
    /// Returns coordinates in `M`.
    pub fn evaluate(&self, a_args: &[Coords], b_args: &[Coords]) -> Coords {
        let sp = &self.space;
        assert_eq!(a_args.len(), sp.degree, "wrong number of A-arguments");
        assert_eq!(b_args.len(), sp.b_slots(), "wrong number of B-arguments");
        let slots: Vec<&[(usize, Scalar)]> = a_args.iter().chain(b_args).map(Vec::as_slice).collect();
        let terms = expand_slots(sp.field, &slots, &sp.radices());
        let args = sp.args();
        let mut out = vec![sp.field.zero(); sp.dim_m];
        for (arg, c) in terms {
            for (s, slot) in out.iter_mut().enumerate() {
                let f = &self.coefficients[s * args + arg];
                if !f.is_zero() {
                    *slot = &*slot + &(f * &c);
                }
            }
        }
        compress(&out)
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain, ComplexError> {
        self.same_space(other)?;
        Ok(Cochain { space: self.space, coefficients: self.coefficients.add(&other.coefficients)? })
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain, ComplexError> {
        self.same_space(other)?;
        Ok(Cochain { space: self.space, coefficients: self.coefficients.sub(&other.coefficients)? })
    }

    pub fn scale(&self, f: &Scalar) -> Cochain {
        Cochain { space: self.space, coefficients: self.coefficients.scale(f) }
    }

    fn same_space(&self, other: &Cochain) -> Result<(), ComplexError> {
        if self.space != other.space {
            return Err(ComplexError::SpaceMismatch { expected: self.space, found: other.space });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(a: usize, b: usize, m: usize, n: usize) -> CochainSpace {
        CochainSpace { field: Field::Rationals, dim_a: a, dim_b: b, dim_m: m, degree: n }
    }

    #[test]
    fn dimension_formula() {
        assert_eq!(space(2, 1, 2, 3).dim(), 16);
        assert_eq!(space(5, 7, 3, 0).dim(), 3);
        assert_eq!(space(2, 2, 2, 3).dim(), 128);
        assert_eq!(space(2, 2, 2, 5).dim(), 65536);
    }

    #[test]
    fn pair_positions_follow_lexicographic_order() {
        for n in 0..7 {
            for (k, (u, v)) in upper_pairs(n).into_iter().enumerate() {
                assert_eq!(pair_position(n, u, v), k);
            }
        }
    }

    #[test]
    fn index_round_trip() {
        let sp = space(3, 2, 2, 3);
        for flat in 0..sp.dim() {
            assert_eq!(sp.index(&sp.decode(flat)), flat);
        }
        let idx = CochainBasisIndex { a: vec![2, 0, 1], b: vec![1, 0, 1], m: 1 };
        assert_eq!(sp.index(&idx), ((1 * 27 + 2 * 9 + 1) * 8) + 4 + 1);
    }

    #[test]
    fn evaluation_is_multilinear() {
        let q = Field::Rationals;
        let sp = space(2, 2, 2, 2);
        let entries: Vec<Scalar> = (0..sp.dim()).map(|i| q.from_i64(i as i64 % 5 - 2)).collect();
        let c = Cochain::new(sp, DenseVector::from_entries(q, entries).unwrap()).unwrap();
        let e = |i: usize| vec![(i, q.one())];
        let sum = vec![(0, q.from_i64(3)), (1, q.from_i64(-1))];
        let lhs = c.evaluate(&[sum.clone(), e(1)], &[e(0)]);
        let r0 = c.evaluate(&[e(0), e(1)], &[e(0)]);
        let r1 = c.evaluate(&[e(1), e(1)], &[e(0)]);
        let mut dense = vec![q.zero(); 2];
        crate::linalg::axpy_dense(&mut dense, &q.from_i64(3), &r0);
        crate::linalg::axpy_dense(&mut dense, &q.from_i64(-1), &r1);
        assert_eq!(lhs, compress(&dense));
    }
}
