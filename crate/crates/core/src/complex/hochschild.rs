//! The classical Hochschild complex `C^n(A, M) = Hom(A^{⊗n}, M)`, assembled
//! column by column from basis cochains. Kept separate from the secondary
//! assembly so the two can be compared.

use crate::algebra::Bimodule;
use crate::linalg::{rank, Scalar, SparseMatrix};

use super::space::CochainSpace;
use super::CohomologyDim;

/// Indexing matches [`CochainSpace`] with `dim_b = 1`.
pub fn hochschild_space(module: &Bimodule, n: usize) -> CochainSpace {
    CochainSpace {
        field: module.algebra().field(),
        dim_a: module.algebra().dim(),
        dim_b: 1,
        dim_m: module.dim(),
        degree: n,
    }
}

/// `δ_n f(a_0, …, a_n) = a_0 f(a_1, …) + Σ (−1)^i f(…, a_{i−1} a_i, …) + (−1)^{n+1} f(a_0, …, a_{n−1}) a_n`.
pub fn hochschild_coboundary_matrix(module: &Bimodule, n: usize) -> SparseMatrix {
    let a = module.algebra();
    let field = a.field();
    let (d, m) = (a.dim(), module.dim());
    let src_args = d.pow(n as u32);
    let dst_args = d.pow(n as u32 + 1);
    let mut triplets: Vec<(usize, usize, Scalar)> = Vec::new();
    let digits = |mut x: usize, len: usize| {
        let mut v = vec![0; len];
        for slot in v.iter_mut().rev() {
            *slot = x % d;
            x /= d;
        }
        v
    };
    let pack = |v: &[usize]| v.iter().fold(0, |acc, &x| acc * d + x);
    let neg_one = -field.one();
    let sign = |k: usize| if k % 2 == 0 { field.one() } else { neg_one.clone() };
    for s in 0..m {
        for i_flat in 0..src_args {
            let col = s * src_args + i_flat;
            let idx = digits(i_flat, n);
            for a0 in 0..d {
                let mut x = vec![a0];
                x.extend(&idx);
                for (t, c) in module.left_basis(a0, s) {
                    triplets.push((t * dst_args + pack(&x), col, c.clone()));
                }
            }
            for i in 1..=n {
                let target = idx[i - 1];
                for p in 0..d {
                    for q in 0..d {
                        let mu = a.structure_constant(p, q, target);
                        if mu.is_zero() {
                            continue;
                        }
                        let mut x = idx[..i - 1].to_vec();
                        x.push(p);
                        x.push(q);
                        x.extend(&idx[i..]);
                        triplets.push((s * dst_args + pack(&x), col, &sign(i) * mu));
                    }
                }
            }
            for an in 0..d {
                let mut x = idx.clone();
                x.push(an);
                for (t, c) in module.right_basis(s, an) {
                    triplets.push((t * dst_args + pack(&x), col, &sign(n + 1) * c));
                }
            }
        }
    }
    SparseMatrix::from_triplets(field, m * dst_args, m * src_args, triplets).expect("indices in range")
}

/// `dim H^n(A, M)` from the classical complex.
pub fn classical_hochschild_dim(module: &Bimodule, n: usize) -> CohomologyDim {
    let cochain_dim = hochschild_space(module, n).dim();
    let rank_out = rank(&hochschild_coboundary_matrix(module, n));
    let rank_in = if n == 0 { 0 } else { rank(&hochschild_coboundary_matrix(module, n - 1)) };
    CohomologyDim { degree: n, cochain_dim, rank_out, rank_in, dim: cochain_dim - rank_out - rank_in }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{regular_bimodule, truncated_polynomial_algebra, StructureAlgebra};
    use crate::linalg::Field;

    #[test]
    fn ground_field() {
        let k = regular_bimodule(Arc::new(StructureAlgebra::ground(Field::Rationals)));
        assert_eq!(classical_hochschild_dim(&k, 0).dim, 1);
        for n in 1..4 {
            assert_eq!(classical_hochschild_dim(&k, n).dim, 0);
        }
        assert!(hochschild_coboundary_matrix(&k, 0).is_zero());
        // δ_1 f(1, 1) = f(1) − f(1) + f(1)
        assert_eq!(hochschild_coboundary_matrix(&k, 1), SparseMatrix::identity(Field::Rationals, 1));
    }

    #[test]
    fn dual_numbers() {
        let a = regular_bimodule(Arc::new(truncated_polynomial_algebra(Field::Rationals, 2).unwrap()));
        let dims: Vec<usize> = (0..3).map(|n| classical_hochschild_dim(&a, n).dim).collect();
        assert_eq!(dims, vec![2, 1, 1]);
        for n in 0..3 {
            let p = hochschild_coboundary_matrix(&a, n + 1).mul(&hochschild_coboundary_matrix(&a, n)).unwrap();
            assert!(p.is_zero());
        }
    }
}
