use std::fmt;

use crate::algebra::Triple;
use crate::complex::{Cochain, CochainSpace, SecondaryComplex};
use crate::linalg::{compress, rank, solve, Coords, DenseVector, Scalar, SparseMatrix};

use super::family::{DeformationFamily, TruncatedElement};
use super::DeformationError;

/// First failure of generalized associativity: the coefficients of `t^power`
/// in `m_{αβ}(a, m_γ(b, c))` and `m_{βγ}(m_α(a, b), c)` differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociativityWitness {
    pub power: usize,
    /// `(a, b, c)` basis indices of `A`.
    pub a: [usize; 3],
    /// `(α, β, γ)` basis indices of `B`.
    pub alpha: [usize; 3],
    pub lhs: Coords,
    pub rhs: Coords,
}

impl fmt::Display for AssociativityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "coefficient of t^{} differs on a = ({}, {}, {}), α = ({}, {}, {})",
            self.power, self.a[0], self.a[1], self.a[2], self.alpha[0], self.alpha[1], self.alpha[2]
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociativityReport {
    /// Coefficients `t^0 … t^{k−1}` were compared.
    pub k_order: usize,
    pub tuples_checked: usize,
    pub witness: Option<AssociativityWitness>,
}

impl AssociativityReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// The obstruction `ω` together with the rank computation proving `ω ∉ im δ_2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionCertificate {
    pub omega: Cochain,
    pub rank_coboundary: usize,
    pub rank_augmented: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extension {
    Extended { term: Cochain, family: DeformationFamily },
    Obstructed(ObstructionCertificate),
}

/// First-order gauge map `f_1: A → A`; `matrix[s][i]` is the coefficient of
/// `e_s` in `f_1(e_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeTransform {
    pub matrix: Vec<Vec<Scalar>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnitSearch {
    Unit { unit: TruncatedElement, epsilon_bar: Vec<TruncatedElement> },
    /// No unit: the linear system for the coefficient of `t^order` is inconsistent.
    NoUnit { order: usize },
}

/// Deformation computations over a fixed triple with `M = A`.
#[derive(Debug)]
pub struct DeformationContext {
    complex: SecondaryComplex,
}

impl DeformationContext {
    pub fn new(triple: Triple) -> Self {
        DeformationContext { complex: SecondaryComplex::regular(triple) }
    }

    pub fn from_complex(complex: SecondaryComplex) -> Result<Self, DeformationError> {
        if !complex.is_regular() {
            return Err(DeformationError::Complex(crate::complex::ComplexError::NotRegular));
        }
        Ok(DeformationContext { complex })
    }

    pub fn complex(&self) -> &SecondaryComplex {
        &self.complex
    }

    pub fn triple(&self) -> &Triple {
        self.complex.triple()
    }

    /// Degree-2 space `Hom(A ⊗ A ⊗ B, A)`.
    pub fn space(&self) -> CochainSpace {
        self.complex.space(2)
    }

    pub fn zero_family(&self, order: usize) -> DeformationFamily {
        DeformationFamily::zero(self.space(), order).expect("degree-2 space")
    }

    pub fn family(&self, terms: Vec<Cochain>) -> Result<DeformationFamily, DeformationError> {
        DeformationFamily::new(self.space(), terms)
    }

    fn check_family(&self, fam: &DeformationFamily) -> Result<(), DeformationError> {
        if *fam.space() != self.space() {
            return Err(DeformationError::SpaceMismatch { expected: self.space(), found: *fam.space() });
        }
        Ok(())
    }

    fn check_degree_two(&self, c: &Cochain) -> Result<(), DeformationError> {
        if *c.space() != self.space() {
            return Err(DeformationError::SpaceMismatch { expected: self.space(), found: *c.space() });
        }
        Ok(())
    }

    /// `c_r(x ⊗ y ⊗ α)` with `c_0(x ⊗ y ⊗ α) = ε(α)xy`.
    fn c_eval(&self, fam: &DeformationFamily, r: usize, x: &Coords, y: &Coords, alpha: &Coords) -> Coords {
        let a = self.triple().a();
        if r == 0 {
            let e = self.triple().epsilon().apply(alpha);
            a.mul(&e, &a.mul(x, y))
        } else {
            fam.term(r).evaluate(&[x.clone(), y.clone()], &[alpha.clone()])
        }
    }

    /// `m_{α,t}(a ⊗ b)` truncated at `t^N`.
    pub fn multiply(
        &self,
        fam: &DeformationFamily,
        alpha: &[(usize, Scalar)],
        a: &TruncatedElement,
        b: &TruncatedElement,
    ) -> Result<TruncatedElement, DeformationError> {
        self.check_family(fam)?;
        let n = fam.order();
        let d = self.triple().a().dim();
        if a.order() != n || b.order() != n || a.dim() != d || b.dim() != d {
            return Err(DeformationError::TruncationMismatch);
        }
        let alpha = alpha.to_vec();
        let mut out = TruncatedElement::zero(self.triple().field(), d, n);
        let ac: Vec<Coords> = (0..=n).map(|p| a.coords(p)).collect();
        let bc: Vec<Coords> = (0..=n).map(|q| b.coords(q)).collect();
        for p in 0..=n {
            for q in 0..=n - p {
                for r in 0..=n - p - q {
                    let v = self.c_eval(fam, r, &ac[p], &bc[q], &alpha);
                    out.add_at(p + q + r, &v);
                }
            }
        }
        Ok(out)
    }

    /// Compares both sides of `m_{αβ}(a, m_γ(b, c)) = m_{βγ}(m_α(a, b), c)`
    /// on basis tuples in the coefficients of `t^0, …, t^{k−1}`. The witness is
    /// the failure with the smallest power, then the smallest tuple in the
    /// order `(a, b, c, α, β, γ)`.
    pub fn check_generalized_associativity(
        &self,
        fam: &DeformationFamily,
        k_order: usize,
    ) -> Result<AssociativityReport, DeformationError> {
        self.check_family(fam)?;
        if k_order == 0 || k_order > fam.order() + 1 {
            return Err(DeformationError::OrderOutOfRange(k_order));
        }
        let (a_alg, b_alg) = (self.triple().a(), self.triple().b());
        let (da, db) = (a_alg.dim(), b_alg.dim());
        let field = self.triple().field();
        let n = fam.order();
        let one = field.one();
        let basis_a = |i: usize| TruncatedElement::constant(field, da, n, &[(i, one.clone())]);
        let e = |i: usize| vec![(i, one.clone())];
        let total = da * da * da * db * db * db;
        let results = self.complex.strategy().map_range(total, |x| {
            let g = x % db;
            let be = (x / db) % db;
            let al = (x / (db * db)) % db;
            let c = (x / (db * db * db)) % da;
            let b = (x / (db * db * db * da)) % da;
            let a = x / (db * db * db * da * da);
            let inner = self.multiply(fam, &e(g), &basis_a(b), &basis_a(c)).expect("shapes");
            let lhs = self.multiply(fam, b_alg.mul_basis(al, be), &basis_a(a), &inner).expect("shapes");
            let first = self.multiply(fam, &e(al), &basis_a(a), &basis_a(b)).expect("shapes");
            let rhs = self.multiply(fam, b_alg.mul_basis(be, g), &first, &basis_a(c)).expect("shapes");
            (0..k_order).find(|&p| lhs.coefficient(p) != rhs.coefficient(p)).map(|p| AssociativityWitness {
                power: p,
                a: [a, b, c],
                alpha: [al, be, g],
                lhs: lhs.coords(p),
                rhs: rhs.coords(p),
            })
        });
        let witness = results.into_iter().flatten().min_by_key(|w| (w.power, w.a, w.alpha));
        Ok(AssociativityReport { k_order, tuples_checked: total, witness })
    }

    /// Evaluates the 2-cocycle condition directly on every basis 6-tuple:
    /// `ε(αβ)a c(b,c,γ) − c(ε(α)ab, c, βγ) + c(a, ε(γ)bc, αβ) − ε(βγ)c(a,b,α)c = 0`.
    pub fn two_cocycle_condition_holds(&self, c: &Cochain) -> Result<bool, DeformationError> {
        self.check_degree_two(c)?;
        let (a_alg, b_alg) = (self.triple().a(), self.triple().b());
        let eps = self.triple().epsilon();
        let (da, db) = (a_alg.dim(), b_alg.dim());
        let one = self.triple().field().one();
        let e = |i: usize| vec![(i, one.clone())];
        let total = da * da * da * db * db * db;
        let failure = self.complex.strategy().find_first(total, |x| {
            let g = x % db;
            let be = (x / db) % db;
            let al = (x / (db * db)) % db;
            let cc = (x / (db * db * db)) % da;
            let b = (x / (db * db * db * da)) % da;
            let a = x / (db * db * db * da * da);
            let t1 = a_alg.mul(&eps.apply(b_alg.mul_basis(al, be)), &a_alg.mul(&e(a), &c.evaluate(&[e(b), e(cc)], &[e(g)])));
            let ab = a_alg.mul(&eps.apply(&e(al)), a_alg.mul_basis(a, b));
            let t2 = c.evaluate(&[ab, e(cc)], &[b_alg.mul_basis(be, g).clone()]);
            let bc = a_alg.mul(&eps.apply(&e(g)), a_alg.mul_basis(b, cc));
            let t3 = c.evaluate(&[e(a), bc], &[b_alg.mul_basis(al, be).clone()]);
            let t4 = a_alg.mul(&eps.apply(b_alg.mul_basis(be, g)), &a_alg.mul(&c.evaluate(&[e(a), e(b)], &[e(al)]), &e(cc)));
            let mut sum = vec![one.field().zero(); da];
            crate::linalg::axpy_dense(&mut sum, &one, &t1);
            crate::linalg::axpy_dense(&mut sum, &-&one, &t2);
            crate::linalg::axpy_dense(&mut sum, &one, &t3);
            crate::linalg::axpy_dense(&mut sum, &-&one, &t4);
            (!compress(&sum).is_empty()).then_some(x)
        });
        Ok(failure.is_none())
    }

    /// `δ^ε_2(c) = 0`, cross-checked against the direct evaluation.
    pub fn is_two_cocycle(&self, c: &Cochain) -> Result<bool, DeformationError> {
        self.check_degree_two(c)?;
        let by_matrix = self.complex.apply_coboundary(c)?.is_zero();
        let direct = self.two_cocycle_condition_holds(c)?;
        if by_matrix != direct {
            return Err(DeformationError::Inconsistent(format!(
                "coboundary matrix says {by_matrix}, direct evaluation says {direct}"
            )));
        }
        Ok(by_matrix)
    }

    /// `ω = Σ_{p+q=N+1, p,q≥1} c_p ∘̄ c_q` for a family of order `N`.
    pub fn obstruction(&self, fam: &DeformationFamily) -> Result<Cochain, DeformationError> {
        self.check_family(fam)?;
        let n = fam.order();
        let report = self.check_generalized_associativity(fam, n + 1)?;
        if let Some(witness) = report.witness {
            return Err(DeformationError::NotAssociative { required: n + 1, witness });
        }
        let mut omega = Cochain::zero(self.complex.space(3));
        for p in 1..=n {
            let q = n + 1 - p;
            omega = omega.add(&self.complex.circle_product(fam.term(p), fam.term(q))?)?;
        }
        if !self.complex.apply_coboundary(&omega)?.is_zero() {
            return Err(DeformationError::Inconsistent("obstruction is not a 3-cocycle".into()));
        }
        Ok(omega)
    }

    /// Solves `δ^ε_2(c_{N+1}) = ω`.
    pub fn extend_one_order(&self, fam: &DeformationFamily) -> Result<Extension, DeformationError> {
        let omega = self.obstruction(fam)?;
        let d2 = self.complex.coboundary_matrix(2)?;
        match solve(&d2, omega.coefficients())? {
            Some(x) => {
                let term = Cochain::new(self.space(), x)?;
                let family = fam.extended(term.clone())?;
                let check = self.check_generalized_associativity(&family, family.order() + 1)?;
                if let Some(w) = check.witness {
                    return Err(DeformationError::Inconsistent(format!("extended family fails: {w}")));
                }
                Ok(Extension::Extended { term, family })
            }
            None => {
                let rank_coboundary = self.complex.coboundary_rank(2)?;
                let rank_augmented = rank(&append_column(&d2, omega.coefficients()));
                Ok(Extension::Obstructed(ObstructionCertificate { omega, rank_coboundary, rank_augmented }))
            }
        }
    }

    /// Some `f_1` with `c_1 − d_1 = δ^ε_1(f_1)`, or `None`.
    pub fn gauge_equivalent_first_order(
        &self,
        c1: &Cochain,
        d1: &Cochain,
    ) -> Result<Option<GaugeTransform>, DeformationError> {
        self.check_degree_two(c1)?;
        self.check_degree_two(d1)?;
        let diff = c1.sub(d1)?;
        let d = self.complex.coboundary_matrix(1)?;
        let da = self.triple().a().dim();
        Ok(solve(&d, diff.coefficients())?.map(|f| GaugeTransform {
            matrix: (0..da).map(|s| (0..da).map(|i| f[s * da + i].clone()).collect()).collect(),
        }))
    }

    /// The degree-1 cochain of a gauge transform.
    pub fn gauge_cochain(&self, g: &GaugeTransform) -> Result<Cochain, DeformationError> {
        let entries = g.matrix.iter().flatten().cloned().collect();
        Ok(Cochain::new(self.complex.space(1), DenseVector::from_entries(self.triple().field(), entries)?)?)
    }

    /// `c̃_i(a ⊗ b ⊗ α) = ε(α) c_i(a ⊗ b)` for classical cochains `c_i ∈ C^2(A, A)`.
    pub fn trivial_lift(&self, classical: &[Cochain]) -> Result<DeformationFamily, DeformationError> {
        let target = self.space();
        let source = CochainSpace { dim_b: 1, ..target };
        let a_alg = self.triple().a();
        let eps = self.triple().epsilon();
        let one = self.triple().field().one();
        let e = |i: usize| vec![(i, one.clone())];
        let (da, db) = (target.dim_a, target.dim_b);
        let mut terms = Vec::with_capacity(classical.len());
        for c in classical {
            if *c.space() != source {
                return Err(DeformationError::SpaceMismatch { expected: source, found: *c.space() });
            }
            let mut v = DenseVector::zeros(target.field, target.dim());
            for a in 0..da {
                for b in 0..da {
                    let val = c.evaluate(&[e(a), e(b)], &[e(0)]);
                    for al in 0..db {
                        for (t, x) in a_alg.mul(eps.image(al), &val) {
                            v.set(target.index(&crate::complex::CochainBasisIndex { a: vec![a, b], b: vec![al], m: t }), x);
                        }
                    }
                }
            }
            terms.push(Cochain::new(target, v)?);
        }
        DeformationFamily::new(target, terms)
    }

    /// Unit of `(A[t]/(t^{N+1}), m_{1,t})`, solved order by order, and
    /// `ε̄(α) = m_{α,t}(1 ⊗ 1)` on the basis of `B`.
    pub fn unit_epsilon(&self, fam: &DeformationFamily) -> Result<UnitSearch, DeformationError> {
        self.check_family(fam)?;
        let (a_alg, b_alg) = (self.triple().a(), self.triple().b());
        let field = self.triple().field();
        let da = a_alg.dim();
        let n = fam.order();
        let one_b = b_alg.unit().clone();
        let one = field.one();
        let e = |i: usize| vec![(i, one.clone())];
        // u ↦ (u·e_a, e_a·u) for all a
        let mut triplets = Vec::new();
        for a in 0..da {
            for i in 0..da {
                for (t, x) in a_alg.mul_basis(i, a) {
                    triplets.push((a * da + t, i, x.clone()));
                }
                for (t, x) in a_alg.mul_basis(a, i) {
                    triplets.push(((da + a) * da + t, i, x.clone()));
                }
            }
        }
        let lmat = SparseMatrix::from_triplets(field, 2 * da * da, da, triplets)?;
        let mut units: Vec<Coords> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut rhs = DenseVector::zeros(field, 2 * da * da);
            if k == 0 {
                for a in 0..da {
                    rhs.set(a * da + a, one.clone());
                    rhs.set((da + a) * da + a, one.clone());
                }
            } else {
                for r in 1..=k {
                    for a in 0..da {
                        let left = self.c_eval(fam, r, &units[k - r], &e(a), &one_b);
                        let right = self.c_eval(fam, r, &e(a), &units[k - r], &one_b);
                        for (t, x) in left {
                            rhs.set(a * da + t, &rhs[a * da + t] - &x);
                        }
                        for (t, x) in right {
                            rhs.set((da + a) * da + t, &rhs[(da + a) * da + t] - &x);
                        }
                    }
                }
            }
            match solve(&lmat, &rhs)? {
                Some(u) => units.push(u.coords()),
                None => return Ok(UnitSearch::NoUnit { order: k }),
            }
        }
        let unit = TruncatedElement::from_coefficients(
            units.iter().map(|u| DenseVector::from_coords(field, da, u).map(DenseVector::into_entries)).collect::<Result<_, _>>()?,
        )?;
        let epsilon_bar = (0..b_alg.dim())
            .map(|al| self.multiply(fam, &e(al), &unit, &unit))
            .collect::<Result<_, _>>()?;
        Ok(UnitSearch::Unit { unit, epsilon_bar })
    }
}

fn append_column(m: &SparseMatrix, v: &DenseVector) -> SparseMatrix {
    let c = m.ncols();
    let rows = m
        .rows()
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut row = row.clone();
            if !v[r].is_zero() {
                row.push((c, v[r].clone()));
            }
            row
        })
        .collect();
    SparseMatrix::from_rows(m.field(), c + 1, rows).expect("shapes")
}
