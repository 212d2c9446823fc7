mod common;

use std::sync::OnceLock;

use common::*;
use proptest::prelude::*;
use secohom_core::complex::{Cochain, SecondaryComplex};
use secohom_core::deformation::DeformationContext;
use secohom_core::linalg::{kernel_basis, nullity, rank, solve};
use secohom_core::simplicial::{kg2_cyclic, kg2_degeneracy, kg2_face, FiniteAbelianGroup, KG2Element};
use secohom_core::{DenseVector, Field, Scalar, SparseMatrix};

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rationals), Just(Field::prime(2).unwrap()), Just(Field::prime(7).unwrap())]
}

/// Sparse-ish matrices with entries in `-2..=2`, up to 20 × 20.
fn matrix_strategy() -> impl Strategy<Value = SparseMatrix> {
    (field_strategy(), 1usize..=20, 1usize..=20).prop_flat_map(|(field, r, c)| {
        prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -2i64..=2], r * c).prop_map(move |xs| {
            let dense: Vec<Vec<Scalar>> = xs.chunks(c).map(|row| row.iter().map(|&x| field.from_i64(x)).collect()).collect();
            SparseMatrix::from_dense(field, c, &dense).unwrap()
        })
    })
}

fn dual_context() -> &'static DeformationContext {
    static CTX: OnceLock<DeformationContext> = OnceLock::new();
    CTX.get_or_init(|| DeformationContext::new(dual_over_itself()))
}

fn cochain_from(space: secohom_core::complex::CochainSpace, xs: &[i64]) -> Cochain {
    let entries = xs.iter().map(|&x| space.field.from_i64(x)).collect();
    Cochain::new(space, DenseVector::from_entries(space.field, entries).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity_is_the_column_count(m in matrix_strategy()) {
        prop_assert_eq!(rank(&m) + nullity(&m), m.ncols());
        for v in kernel_basis(&m) {
            prop_assert!(m.mul_vec(&v).unwrap().is_zero());
        }
    }

    #[test]
    fn rank_matches_dense_oracle(m in matrix_strategy()) {
        prop_assert_eq!(rank(&m), dense_rank(m.to_dense()));
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn solve_finds_a_preimage_of_every_image(m in matrix_strategy(), seed in any::<u64>()) {
        let field = m.field();
        let mut r = rng(seed);
        let x0: Vec<Scalar> = (0..m.ncols()).map(|_| field.from_i64(rand::Rng::gen_range(&mut r, -3..=3))).collect();
        let b = m.mul_vec(&DenseVector::from_entries(field, x0).unwrap()).unwrap();
        let x = solve(&m, &b).unwrap().expect("consistent system");
        prop_assert_eq!(m.mul_vec(&x).unwrap(), b);
    }

    #[test]
    fn products_of_coboundaries_vanish_on_random_cochains(xs in prop::collection::vec(-3i64..=3, 16)) {
        let c = dual_context().complex();
        let f = cochain_from(c.space(2), &xs);
        let ddf = c.apply_coboundary(&c.apply_coboundary(&f).unwrap()).unwrap();
        prop_assert!(ddf.is_zero());
    }

    #[test]
    fn products_are_linear_in_alpha(
        xs in prop::collection::vec(-3i64..=3, 16),
        alpha in prop::collection::vec(-3i64..=3, 2),
        beta in prop::collection::vec(-3i64..=3, 2),
        a in 0usize..2,
        b in 0usize..2,
    ) {
        let ctx = dual_context();
        let q = Field::Rationals;
        let fam = ctx.family(vec![cochain_from(ctx.space(), &xs)]).unwrap();
        let coords = |v: &[i64]| -> Vec<(usize, Scalar)> {
            v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, q.from_i64(x))).collect()
        };
        let sum: Vec<i64> = alpha.iter().zip(&beta).map(|(x, y)| x + y).collect();
        let ea = secohom_core::deformation::TruncatedElement::constant(q, 2, 1, &[(a, q.one())]);
        let eb = secohom_core::deformation::TruncatedElement::constant(q, 2, 1, &[(b, q.one())]);
        let lhs = ctx.multiply(&fam, &coords(&sum), &ea, &eb).unwrap();
        let rhs = ctx
            .multiply(&fam, &coords(&alpha), &ea, &eb)
            .unwrap()
            .add(&ctx.multiply(&fam, &coords(&beta), &ea, &eb).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn associativity_mod_t2_iff_two_cocycle(
        xs in prop::collection::vec(-1i64..=1, 16),
        kernel_weights in prop::collection::vec(-2i64..=2, 4),
        use_kernel in any::<bool>(),
    ) {
        let ctx = dual_context();
        let c = if use_kernel {
            let ker = kernel_basis(&ctx.complex().coboundary_matrix(2).unwrap());
            let mut v = DenseVector::zeros(Field::Rationals, 16);
            for (k, w) in ker.iter().zip(&kernel_weights) {
                v = v.add(&k.scale(&Field::Rationals.from_i64(*w))).unwrap();
            }
            Cochain::new(ctx.space(), v).unwrap()
        } else {
            cochain_from(ctx.space(), &xs)
        };
        let cocycle = ctx.is_two_cocycle(&c).unwrap();
        let fam = ctx.family(vec![c]).unwrap();
        prop_assert_eq!(ctx.check_generalized_associativity(&fam, 2).unwrap().passed(), cocycle);
    }

    #[test]
    fn kg2_identities_hold_on_random_elements(
        order in 2usize..=5,
        q in 2usize..=6,
        raw in prop::collection::vec(0usize..1000, 15),
    ) {
        let g = FiniteAbelianGroup::cyclic_product(&[order]).unwrap();
        let len = q * (q - 1) / 2;
        let x = KG2Element::new(&g, q, raw[..len].iter().map(|r| r % order).collect()).unwrap();
        let d = |i, y: &KG2Element| kg2_face(&g, i, y).unwrap();
        let s = |i, y: &KG2Element| kg2_degeneracy(&g, i, y).unwrap();
        let t = |y: &KG2Element| kg2_cyclic(&g, y).unwrap();
        let mut y = x.clone();
        for _ in 0..=q {
            y = t(&y);
        }
        prop_assert_eq!(&y, &x);
        for j in 0..=q {
            for i in 0..j {
                prop_assert_eq!(d(i, &d(j, &x)), d(j - 1, &d(i, &x)));
            }
            for i in 0..=j {
                prop_assert_eq!(s(i, &s(j, &x)), s(j + 1, &s(i, &x)));
            }
            prop_assert_eq!(d(j, &s(j, &x)), x.clone());
            prop_assert_eq!(d(j + 1, &s(j, &x)), x.clone());
        }
        for i in 1..=q {
            prop_assert_eq!(d(i, &t(&x)), t(&d(i - 1, &x)));
            prop_assert_eq!(s(i, &t(&x)), t(&s(i - 1, &x)));
        }
        prop_assert_eq!(d(0, &t(&x)), d(q, &x));
    }

    #[test]
    fn restriction_commutes_with_coboundaries(xs in prop::collection::vec(-3i64..=3, 16)) {
        let c: &SecondaryComplex = dual_context().complex();
        let f = cochain_from(c.space(2), &xs);
        let classical = secohom_core::complex::hochschild_coboundary_matrix(c.module(), 2);
        let lhs = c.restriction_matrix(3).mul_vec(c.apply_coboundary(&f).unwrap().coefficients()).unwrap();
        let rhs = classical.mul_vec(&c.restriction_matrix(2).mul_vec(f.coefficients()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
