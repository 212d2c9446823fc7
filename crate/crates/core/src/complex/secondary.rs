use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::algebra::{regular_bimodule, Bimodule, Triple};
use crate::exec::Strategy;
use crate::linalg::{rank, Coords, Scalar, SparseMatrix};

use super::space::{expand_slots, pair_position, upper_pairs, Cochain, CochainSpace};
use super::ComplexError;

/// Default largest degree `n` for which `δ_n` (into `C^{n+1}`) is built.
pub const DEFAULT_MAX_DEGREE: usize = 4;

/// Cochain spaces above this dimension are reported as expensive.
pub const EXPENSIVE_DIM: usize = 1 << 14;

/// The complex `(C^n((A, B, ε); M), δ^ε_n)`.
#[derive(Debug)]
pub struct SecondaryComplex {
    triple: Triple,
    module: Bimodule,
    strategy: Strategy,
    max_degree: usize,
    matrices: Mutex<BTreeMap<usize, Arc<SparseMatrix>>>,
    ranks: Mutex<BTreeMap<usize, usize>>,
}

/// `dim H^n` together with the numbers it was computed from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CohomologyDim {
    pub degree: usize,
    pub cochain_dim: usize,
    /// `rank δ_n`.
    pub rank_out: usize,
    /// `rank δ_{n-1}` (zero for `n = 0`).
    pub rank_in: usize,
    pub dim: usize,
}

impl CohomologyDim {
    pub fn cocycle_dim(&self) -> usize {
        self.cochain_dim - self.rank_out
    }
}

impl SecondaryComplex {
    pub fn new(triple: Triple, module: Bimodule) -> Result<Self, ComplexError> {
        if module.algebra().as_ref() != triple.a().as_ref() {
            return Err(ComplexError::ModuleMismatch);
        }
        Ok(SecondaryComplex {
            triple,
            module,
            strategy: Strategy::default(),
            max_degree: DEFAULT_MAX_DEGREE,
            matrices: Mutex::new(BTreeMap::new()),
            ranks: Mutex::new(BTreeMap::new()),
        })
    }

    /// `M = A`.
    pub fn regular(triple: Triple) -> Self {
        let module = regular_bimodule(triple.a().clone());
        Self::new(triple, module).expect("regular bimodule matches")
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_max_degree(mut self, max_degree: usize) -> Self {
        self.max_degree = max_degree;
        self
    }

    pub fn triple(&self) -> &Triple {
        &self.triple
    }

    pub fn module(&self) -> &Bimodule {
        &self.module
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn is_regular(&self) -> bool {
        self.module == regular_bimodule(self.triple.a().clone())
    }

    pub fn space(&self, n: usize) -> CochainSpace {
        CochainSpace {
            field: self.triple.field(),
            dim_a: self.triple.a().dim(),
            dim_b: self.triple.b().dim(),
            dim_m: self.module.dim(),
            degree: n,
        }
    }

    pub fn cochain_dim(&self, n: usize) -> usize {
        self.space(n).dim()
    }

    pub fn is_expensive(&self, n: usize) -> bool {
        self.space(n).checked_dim().is_none_or(|d| d > EXPENSIVE_DIM)
    }

    fn check_degree(&self, n: usize) -> Result<(), ComplexError> {
        if n > self.max_degree {
            return Err(ComplexError::DegreeAboveMaximum { degree: n, max: self.max_degree });
        }
        if self.space(n + 1).checked_dim().is_none() {
            return Err(ComplexError::TooLarge { degree: n + 1 });
        }
        Ok(())
    }

    /// `δ^ε_n : C^n → C^{n+1}` as a `dim C^{n+1} × dim C^n` matrix.
    pub fn coboundary_matrix(&self, n: usize) -> Result<Arc<SparseMatrix>, ComplexError> {
        self.check_degree(n)?;
        if let Some(m) = self.matrices.lock().expect("cache lock").get(&n) {
            return Ok(m.clone());
        }
        let m = Arc::new(self.assemble(n));
        self.matrices.lock().expect("cache lock").insert(n, m.clone());
        Ok(m)
    }

    pub fn coboundary_rank(&self, n: usize) -> Result<usize, ComplexError> {
        if let Some(r) = self.ranks.lock().expect("cache lock").get(&n) {
            return Ok(*r);
        }
        let r = rank(self.coboundary_matrix(n)?.as_ref());
        self.ranks.lock().expect("cache lock").insert(n, r);
        Ok(r)
    }

    pub fn apply_coboundary(&self, f: &Cochain) -> Result<Cochain, ComplexError> {
        let n = f.degree();
        if *f.space() != self.space(n) {
            return Err(ComplexError::SpaceMismatch { expected: self.space(n), found: *f.space() });
        }
        let m = self.coboundary_matrix(n)?;
        Cochain::new(self.space(n + 1), m.mul_vec(f.coefficients())?)
    }

    /// `dim ker δ_n − rank δ_{n−1}`.
    pub fn cohomology_dim(&self, n: usize) -> Result<CohomologyDim, ComplexError> {
        let rank_out = self.coboundary_rank(n)?;
        let rank_in = if n == 0 { 0 } else { self.coboundary_rank(n - 1)? };
        let cochain_dim = self.cochain_dim(n);
        Ok(CohomologyDim { degree: n, cochain_dim, rank_out, rank_in, dim: cochain_dim - rank_out - rank_in })
    }

    /// `ε` applied to the product of the given basis elements of `B`.
    fn eps_of_product(&self, factors: &[usize]) -> Coords {
        self.triple.epsilon().apply(&self.triple.b().product_of_basis(factors))
    }

    /// Row-wise assembly: each basis argument `X` of `C^{n+1}` yields the `dim M`
    /// rows `(t, X)` by expanding the `n + 2` terms of `δ^ε_n f (X)`.
    fn assemble(&self, n: usize) -> SparseMatrix {
        let src = self.space(n);
        let dst = self.space(n + 1);
        let field = src.field;
        let (a_alg, b_alg) = (self.triple.a(), self.triple.b());
        let dim_m = self.module.dim();
        let src_args = src.args();
        let src_radices = src.radices();
        let src_pairs = upper_pairs(n);
        let one = field.one();
        let per_arg = |x: usize| -> Vec<Coords> {
            let (a, b) = dst.decode_args(x);
            let bb = |u: usize, v: usize| b[pair_position(n + 1, u, v)];
            let mut acc: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); dim_m];
            let mut add = |t: usize, col: usize, c: Scalar| {
                let e = acc[t].entry(col).or_insert_with(|| field.zero());
                *e = &*e + &c;
            };
            // term 0: a_0 ε(b_{01} ⋯ b_{0n}) · f(X without row/column 0)
            {
                let eps = self.eps_of_product(&(1..=n).map(|v| bb(0, v)).collect::<Vec<_>>());
                let ell = a_alg.mul(&[(a[0], one.clone())], &eps);
                let ya: Vec<usize> = a[1..].to_vec();
                let yb: Vec<usize> = src_pairs.iter().map(|&(u, v)| bb(u + 1, v + 1)).collect();
                let y = src.arg_index(&ya, &yb);
                for s in 0..dim_m {
                    for (t, c) in self.module.left_action(&ell, &[(s, one.clone())]) {
                        add(t, s * src_args + y, c);
                    }
                }
            }
            // terms 1..n: merge row/column i into i − 1
            for i in 1..=n {
                let sign = if i % 2 == 0 { one.clone() } else { -&one };
                let pre = |w: usize| -> Vec<usize> {
                    if w + 1 < i {
                        vec![w]
                    } else if w + 1 == i {
                        vec![i - 1, i]
                    } else {
                        vec![w + 1]
                    }
                };
                let mut slots: Vec<Coords> = Vec::with_capacity(src_radices.len());
                for w in 0..n {
                    if w + 1 < i {
                        slots.push(vec![(a[w], one.clone())]);
                    } else if w + 1 == i {
                        let eps = self.eps_of_product(&[bb(i - 1, i)]);
                        let prod = a_alg.mul_basis(a[i - 1], a[i]);
                        slots.push(a_alg.mul(&eps, prod));
                    } else {
                        slots.push(vec![(a[w + 1], one.clone())]);
                    }
                }
                for &(u, v) in &src_pairs {
                    let mut factors = Vec::new();
                    for &uu in &pre(u) {
                        for &vv in &pre(v) {
                            factors.push(bb(uu, vv));
                        }
                    }
                    slots.push(b_alg.product_of_basis(&factors));
                }
                let refs: Vec<&[(usize, Scalar)]> = slots.iter().map(Vec::as_slice).collect();
                for (y, c) in expand_slots(field, &refs, &src_radices) {
                    let c = &sign * &c;
                    for s in 0..dim_m {
                        add(s, s * src_args + y, c.clone());
                    }
                }
            }
            // term n + 1: ε(b_{0n} ⋯ b_{n−1,n}) f(X without row/column n) a_n
            {
                let sign = if (n + 1) % 2 == 0 { one.clone() } else { -&one };
                let eps = self.eps_of_product(&(0..n).map(|u| bb(u, n)).collect::<Vec<_>>());
                let ya: Vec<usize> = a[..n].to_vec();
                let yb: Vec<usize> = src_pairs.iter().map(|&(u, v)| bb(u, v)).collect();
                let y = src.arg_index(&ya, &yb);
                let an = [(a[n], one.clone())];
                for s in 0..dim_m {
                    let left = self.module.left_action(&eps, &[(s, one.clone())]);
                    for (t, c) in self.module.right_action(&left, &an) {
                        add(t, s * src_args + y, &sign * &c);
                    }
                }
            }
            acc.into_iter()
                .map(|row| row.into_iter().filter(|(_, c)| !c.is_zero()).collect())
                .collect()
        };
        let dst_args = dst.args();
        let per_x = self.strategy.map_range(dst_args, per_arg);
        let mut rows: Vec<Coords> = vec![Vec::new(); dst.dim()];
        for (x, by_t) in per_x.into_iter().enumerate() {
            for (t, row) in by_t.into_iter().enumerate() {
                rows[t * dst_args + x] = row;
            }
        }
        SparseMatrix::from_canonical_rows(field, src.dim(), rows)
    }

    /// `r : C^n((A, B, ε); M) → C^n(A, M)`, setting every `b_{u,v}` to `1_B`.
    /// The target uses the same indexing with `dim_b = 1`.
    pub fn restriction_matrix(&self, n: usize) -> SparseMatrix {
        let src = self.space(n);
        let dst = CochainSpace { dim_b: 1, ..src };
        let field = src.field;
        let unit = self.triple.b().unit();
        let slots: Vec<&[(usize, Scalar)]> = vec![unit.as_slice(); src.b_slots()];
        let radices = vec![src.dim_b; src.b_slots()];
        let js = expand_slots(field, &slots, &radices);
        let jcount = src.dim_b.pow(src.b_slots() as u32);
        let rows = (0..dst.dim())
            .map(|r| js.iter().map(|(j, c)| (r * jcount + j, c.clone())).collect())
            .collect();
        SparseMatrix::from_canonical_rows(field, src.dim(), rows)
    }

    /// `(f ∘̄ g)(a, b, c; α, β, γ) = f(g(a, b, α), c, βγ) − f(a, g(b, c, γ), αβ)`
    /// with `α = b_{01}`, `β = b_{02}`, `γ = b_{12}`. Requires `M = A`.
    pub fn circle_product(&self, f: &Cochain, g: &Cochain) -> Result<Cochain, ComplexError> {
        if !self.is_regular() {
            return Err(ComplexError::NotRegular);
        }
        let s2 = self.space(2);
        for c in [f, g] {
            if *c.space() != s2 {
                return Err(ComplexError::SpaceMismatch { expected: s2, found: *c.space() });
            }
        }
        let s3 = self.space(3);
        let field = s3.field;
        let one = field.one();
        let b_alg = self.triple.b();
        let e = |i: usize| vec![(i, one.clone())];
        let args = s3.args();
        let values = self.strategy.map_range(args, |x| {
            let (a, b) = s3.decode_args(x);
            let (al, be, ga) = (b[0], b[1], b[2]);
            let gab = g.evaluate(&[e(a[0]), e(a[1])], &[e(al)]);
            let left = f.evaluate(&[gab, e(a[2])], &[b_alg.mul_basis(be, ga).clone()]);
            let gbc = g.evaluate(&[e(a[1]), e(a[2])], &[e(ga)]);
            let right = f.evaluate(&[e(a[0]), gbc], &[b_alg.mul_basis(al, be).clone()]);
            crate::linalg::normalize(
                left.into_iter().chain(right.into_iter().map(|(t, c)| (t, -&c))).collect(),
            )
        });
        let mut coeffs = crate::linalg::DenseVector::zeros(field, s3.dim());
        for (x, val) in values.into_iter().enumerate() {
            for (t, c) in val {
                coeffs.set(t * args + x, c);
            }
        }
        Cochain::new(s3, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::truncated_polynomial_algebra;
    use crate::complex::{classical_hochschild_dim, hochschild_coboundary_matrix};
    use crate::linalg::Field;

    fn dual() -> Arc<crate::algebra::StructureAlgebra> {
        Arc::new(truncated_polynomial_algebra(Field::Rationals, 2).unwrap())
    }

    #[test]
    fn ground_coefficients_reduce_to_hochschild() {
        let c = SecondaryComplex::regular(Triple::with_ground(dual()));
        for n in 0..4 {
            let classical = hochschild_coboundary_matrix(c.module(), n);
            assert_eq!(*c.coboundary_matrix(n).unwrap(), classical, "degree {n}");
        }
        let dims: Vec<usize> = (0..5).map(|n| c.cohomology_dim(n).unwrap().dim).collect();
        assert_eq!(dims, vec![2, 1, 1, 1, 1]);
        let ranks: Vec<usize> = (0..5).map(|n| c.coboundary_rank(n).unwrap()).collect();
        assert_eq!(ranks, vec![0, 3, 4, 11, 20]);
        assert_eq!(classical_hochschild_dim(c.module(), 2).dim, 1);
    }

    #[test]
    fn dual_numbers_over_themselves() {
        let c = SecondaryComplex::regular(Triple::with_identity(dual()).unwrap());
        let dims: Vec<usize> = (0..4).map(|n| c.cohomology_dim(n).unwrap().dim).collect();
        assert_eq!(dims, vec![2, 0, 0, 0]);
        let ranks: Vec<usize> = (0..4).map(|n| c.coboundary_rank(n).unwrap()).collect();
        assert_eq!(ranks, vec![0, 4, 12, 116]);
    }

    #[test]
    fn strategies_build_identical_matrices() {
        let t = Triple::with_identity(dual()).unwrap();
        let seq = SecondaryComplex::regular(t.clone()).with_strategy(Strategy::Sequential);
        let par = SecondaryComplex::regular(t).with_strategy(Strategy::Parallel);
        for n in 0..3 {
            assert_eq!(seq.coboundary_matrix(n).unwrap(), par.coboundary_matrix(n).unwrap());
        }
    }

    #[test]
    fn degree_limit_is_enforced() {
        let c = SecondaryComplex::regular(Triple::with_ground(dual())).with_max_degree(2);
        assert!(matches!(c.coboundary_matrix(3), Err(ComplexError::DegreeAboveMaximum { degree: 3, max: 2 })));
    }

    #[test]
    fn restriction_is_identity_for_ground_coefficients() {
        let c = SecondaryComplex::regular(Triple::with_ground(dual()));
        for n in 0..4 {
            assert_eq!(c.restriction_matrix(n), SparseMatrix::identity(Field::Rationals, c.cochain_dim(n)));
        }
    }
}
