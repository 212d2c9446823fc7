#![allow(dead_code)]

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use secohom_core::algebra::{
    epsilon_map, group_algebra, truncated_polynomial_algebra, AlgebraTable, FiniteGroup, StructureAlgebra, Triple,
};
use secohom_core::complex::{Cochain, CochainSpace};
use secohom_core::{DenseVector, Field};

pub const Q: Field = Field::Rationals;

pub fn dual() -> Arc<StructureAlgebra> {
    Arc::new(truncated_polynomial_algebra(Q, 2).unwrap())
}

pub fn cubic() -> Arc<StructureAlgebra> {
    Arc::new(truncated_polynomial_algebra(Q, 3).unwrap())
}

pub fn z2() -> Arc<StructureAlgebra> {
    Arc::new(group_algebra(Q, &FiniteGroup::cyclic(2).unwrap()).unwrap())
}

pub fn z3() -> Arc<StructureAlgebra> {
    Arc::new(group_algebra(Q, &FiniteGroup::cyclic(3).unwrap()).unwrap())
}

/// `k[x, y]/(x, y)^2` with basis `1, x, y`.
pub fn square_zero_plane() -> Arc<StructureAlgebra> {
    let mut t = AlgebraTable::new(Q, vec!["1".into(), "x".into(), "y".into()]);
    for i in 0..3 {
        t.set(0, i, i, Q.one());
        t.set(i, 0, i, Q.one());
    }
    t.unit[0] = Q.one();
    t.commutative = true;
    Arc::new(StructureAlgebra::new(t).unwrap())
}

pub fn dual_over_ground() -> Triple {
    Triple::with_ground(dual())
}

pub fn dual_over_itself() -> Triple {
    Triple::with_identity(dual()).unwrap()
}

/// `k[ℤ/2]` over itself with `ε(g) = 1` for every group element.
pub fn z2_augmented() -> Triple {
    let a = z2();
    let id = a.table().unit.iter().position(|x| x.is_one()).unwrap();
    let matrix = (0..2).map(|r| vec![if r == id { Q.one() } else { Q.zero() }; 2]).collect();
    Triple::new(epsilon_map(a.clone(), a, matrix).unwrap()).unwrap()
}

pub fn all_triples() -> Vec<(&'static str, Triple)> {
    vec![
        ("k[x]/(x^2) over k", dual_over_ground()),
        ("k[x]/(x^2) over itself", dual_over_itself()),
        ("k[Z/2] over itself, eps = 1", z2_augmented()),
        ("k[x]/(x^3) over k", Triple::with_ground(cubic())),
        ("k[x,y]/(x,y)^2 over k", Triple::with_ground(square_zero_plane())),
        ("k[Z/3] over k", Triple::with_ground(z3())),
    ]
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries drawn uniformly from `-3..=3`.
pub fn random_cochain(space: CochainSpace, rng: &mut ChaCha8Rng) -> Cochain {
    let entries = (0..space.dim()).map(|_| space.field.from_i64(rng.gen_range(-3..=3))).collect();
    Cochain::new(space, DenseVector::from_entries(space.field, entries).unwrap()).unwrap()
}

/// Textbook Gauss–Jordan rank on a dense copy, first nonzero pivot in each column.
pub fn dense_rank(mut rows: Vec<Vec<secohom_core::Scalar>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv().unwrap();
        let pivot: Vec<_> = rows[r].iter().map(|x| x * &inv).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}
