mod common;

use common::*;
use secohom_core::algebra::{StructureAlgebra, Triple};
use secohom_core::complex::{classical_hochschild_dim, Cochain, CochainBasisIndex, SecondaryComplex};
use secohom_core::deformation::{DeformationContext, Extension};
use secohom_core::linalg::{rank, Coords};
use secohom_core::{Field, Scalar};

fn add_into(acc: &mut [Scalar], x: &Coords, sign: &Scalar) {
    for (i, c) in x {
        acc[*i] = &acc[*i] + &(c * sign);
    }
}

/// Multilinear evaluation straight from the coefficient table.
fn eval(f: &Cochain, a: &[Coords], b: &[Coords]) -> Vec<Scalar> {
    let sp = *f.space();
    let mut out = vec![sp.field.zero(); sp.dim_m];
    let mut stack: Vec<(Vec<usize>, Scalar)> = vec![(vec![], sp.field.one())];
    for slot in a.iter().chain(b) {
        stack = stack
            .into_iter()
            .flat_map(|(idx, c)| slot.iter().map(move |(i, x)| ([idx.clone(), vec![*i]].concat(), &c * x)))
            .collect();
    }
    for (idx, c) in stack {
        let (ai, bi) = idx.split_at(sp.degree);
        for (s, slot) in out.iter_mut().enumerate() {
            let k = sp.index(&CochainBasisIndex { a: ai.to_vec(), b: bi.to_vec(), m: s });
            *slot = &*slot + &(&f.coefficients()[k] * &c);
        }
    }
    out
}

fn sparse(v: &[Scalar]) -> Coords {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// The four-term degree-2 coboundary evaluated on every basis tensor matrix.
fn check_degree_two_formula(t: Triple, seed: u64) {
    let c = SecondaryComplex::regular(t.clone());
    let (a, b, eps) = (t.a(), t.b(), t.epsilon());
    let q = t.field();
    let e = |i: usize| vec![(i, q.one())];
    let mut rng = rng(seed);
    let f = random_cochain(c.space(2), &mut rng);
    let df = c.apply_coboundary(&f).unwrap();
    let s3 = c.space(3);
    let (one, minus) = (q.one(), q.from_i64(-1));
    for arg in 0..s3.args() {
        let (ai, bi) = s3.decode_args(arg);
        let (a0, a1, a2) = (e(ai[0]), e(ai[1]), e(ai[2]));
        let (b01, b02, b12) = (e(bi[0]), e(bi[1]), e(bi[2]));
        let mut want = vec![q.zero(); a.dim()];
        let x = eval(&f, &[a1.clone(), a2.clone()], &[b12.clone()]);
        add_into(&mut want, &a.mul(&a.mul(&eps.apply(&b.mul(&b01, &b02)), &a0), &sparse(&x)), &one);
        let left = a.mul(&a.mul(&eps.apply(&b01), &a0), &a1);
        add_into(&mut want, &sparse(&eval(&f, &[left, a2.clone()], &[b.mul(&b02, &b12)])), &minus);
        let right = a.mul(&a.mul(&eps.apply(&b12), &a1), &a2);
        add_into(&mut want, &sparse(&eval(&f, &[a0.clone(), right], &[b.mul(&b01, &b02)])), &one);
        let x = eval(&f, &[a0, a1], &[b01]);
        add_into(&mut want, &a.mul(&a.mul(&eps.apply(&b.mul(&b02, &b12)), &sparse(&x)), &a2), &minus);
        let got: Vec<Scalar> = (0..a.dim()).map(|s| df.coefficients()[s * s3.args() + arg].clone()).collect();
        assert_eq!(got, want, "argument a = {ai:?}, b = {bi:?}");
    }
}

#[test]
fn degree_two_coboundary_matches_the_explicit_formula() {
    check_degree_two_formula(dual_over_itself(), 1);
    check_degree_two_formula(z2_augmented(), 2);
    check_degree_two_formula(dual_over_ground(), 3);
}

#[test]
fn circle_product_matches_the_explicit_formula() {
    let t = dual_over_itself();
    let c = SecondaryComplex::regular(t.clone());
    let (a, b) = (t.a(), t.b());
    let q = t.field();
    let e = |i: usize| vec![(i, q.one())];
    let mut rng = rng(9);
    let f = random_cochain(c.space(2), &mut rng);
    let g = random_cochain(c.space(2), &mut rng);
    let fg = c.circle_product(&f, &g).unwrap();
    let s3 = c.space(3);
    for arg in 0..s3.args() {
        let (ai, bi) = s3.decode_args(arg);
        let (x, y, z) = (e(ai[0]), e(ai[1]), e(ai[2]));
        let (al, be, ga) = (e(bi[0]), e(bi[1]), e(bi[2]));
        let inner = sparse(&eval(&g, &[x.clone(), y.clone()], &[al.clone()]));
        let mut want = eval(&f, &[inner, z.clone()], &[b.mul(&be, &ga)]);
        let inner = sparse(&eval(&g, &[y, z], &[ga]));
        add_into(&mut want, &sparse(&eval(&f, &[x, inner], &[b.mul(&al, &be)])), &q.from_i64(-1));
        let got: Vec<Scalar> = (0..a.dim()).map(|s| fg.coefficients()[s * s3.args() + arg].clone()).collect();
        assert_eq!(got, want);
    }
}

#[test]
fn sparse_rank_matches_dense_elimination_on_coboundaries() {
    for (name, t) in all_triples() {
        let c = SecondaryComplex::regular(t);
        for n in 0..3 {
            let m = c.coboundary_matrix(n).unwrap();
            if m.nrows() * m.ncols() > 1 << 16 {
                continue;
            }
            assert_eq!(rank(&m), dense_rank(m.to_dense()), "{name}, δ_{n}");
        }
    }
}

#[test]
fn cohomology_regression_values() {
    let cases: [(&str, Triple, Vec<usize>); 4] = [
        ("k[x]/(x^3)", Triple::with_ground(cubic()), vec![3, 2, 2, 2]),
        ("k[x,y]/(x,y)^2", Triple::with_ground(square_zero_plane()), vec![3, 4, 6, 12]),
        ("dual over itself", dual_over_itself(), vec![2, 0, 0, 0]),
        ("k[Z/2] with eps = 1", z2_augmented(), vec![2, 0, 0, 0]),
    ];
    for (name, t, expected) in cases {
        let c = SecondaryComplex::regular(t);
        let dims: Vec<usize> = (0..expected.len()).map(|n| c.cohomology_dim(n).unwrap().dim).collect();
        assert_eq!(dims, expected, "{name}");
        if c.triple().b().dim() == 1 {
            let classical: Vec<usize> =
                (0..expected.len()).map(|n| classical_hochschild_dim(c.module(), n).dim).collect();
            assert_eq!(classical, expected, "{name}, classical path");
        }
    }
}

#[test]
fn prime_field_agrees_with_rationals_on_dual_numbers() {
    let p = Field::prime(7).unwrap();
    let a = std::sync::Arc::new(secohom_core::algebra::truncated_polynomial_algebra(p, 2).unwrap());
    let c = SecondaryComplex::regular(Triple::with_ground(a));
    let dims: Vec<usize> = (0..5).map(|n| c.cohomology_dim(n).unwrap().dim).collect();
    assert_eq!(dims, vec![2, 1, 1, 1, 1]);
}

#[test]
fn ground_field_cohomology_is_concentrated_in_degree_zero() {
    let c = SecondaryComplex::regular(Triple::with_ground(std::sync::Arc::new(StructureAlgebra::ground(Q))));
    let dims: Vec<usize> = (0..5).map(|n| c.cohomology_dim(n).unwrap().dim).collect();
    assert_eq!(dims, vec![1, 0, 0, 0, 0]);
}

#[test]
fn square_zero_plane_obstruction_is_certified() {
    let ctx = DeformationContext::new(Triple::with_ground(square_zero_plane()));
    let c = Cochain::from_entries(ctx.space(), &[(CochainBasisIndex { a: vec![1, 2], b: vec![0], m: 1 }, Q.one())])
        .unwrap();
    let fam = ctx.family(vec![c.clone()]).unwrap();
    match ctx.extend_one_order(&fam).unwrap() {
        Extension::Obstructed(cert) => {
            assert_eq!(cert.omega, ctx.complex().circle_product(&c, &c).unwrap());
            assert!(ctx.complex().apply_coboundary(&cert.omega).unwrap().is_zero());
            let d2 = ctx.complex().coboundary_matrix(2).unwrap();
            let mut rows = d2.to_dense();
            for (row, x) in rows.iter_mut().zip(cert.omega.coefficients().entries()) {
                row.push(x.clone());
            }
            assert_eq!(dense_rank(rows), dense_rank(d2.to_dense()) + 1);
        }
        Extension::Extended { .. } => panic!("expected an obstruction"),
    }
}
