//! The secondary cyclic module `₂K(B)`: level `n` is `B^{⊗I_n}`, with operators
//! realised as sparse matrices on basis functions `I_n → basis(B)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::algebra::{AlgebraMorphism, StructureAlgebra};
use crate::complex::expand_slots;
use crate::exec::Strategy;
use crate::linalg::{Coords, Field, Scalar, SparseMatrix};

use super::report::{IdentityCheck, IdentityFamily, VerificationReport, Witness};
use super::SimplicialError;

/// `I_n = {(u, v) : 0 ≤ u, v ≤ n, u ≠ v, u ≢ v + 1 (mod n + 1)}` in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicIndexSet {
    level: usize,
    pairs: Vec<(usize, usize)>,
    positions: HashMap<(usize, usize), usize>,
}

impl CyclicIndexSet {
    pub fn new(level: usize) -> Self {
        let m = level + 1;
        let pairs: Vec<(usize, usize)> = (0..m)
            .flat_map(|u| (0..m).map(move |v| (u, v)))
            .filter(|&(u, v)| u != v && u % m != (v + 1) % m)
            .collect();
        let positions = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        CyclicIndexSet { level, pairs, positions }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn position(&self, u: usize, v: usize) -> Option<usize> {
        self.positions.get(&(u, v)).copied()
    }
}

/// A cyclic object presented by its last face, last degeneracy and cyclic
/// operator; the remaining faces and degeneracies are conjugates.
pub trait CyclicStructure: Sync {
    fn field(&self) -> Field;

    fn dim(&self, n: usize) -> usize;

    /// `τ_n` on level `n`.
    fn tau(&self, n: usize) -> SparseMatrix;

    /// `∂_n` from level `n ≥ 1` to `n − 1`.
    fn face_last(&self, n: usize) -> SparseMatrix;

    /// `s_n` from level `n` to `n + 1`.
    fn degeneracy_last(&self, n: usize) -> SparseMatrix;

    /// `τ_n^k` with `k` read modulo `n + 1`.
    fn tau_power(&self, n: usize, k: usize) -> SparseMatrix {
        let t = self.tau(n);
        let mut acc = SparseMatrix::identity(self.field(), self.dim(n));
        for _ in 0..k % (n + 1) {
            acc = t.mul(&acc).expect("square");
        }
        acc
    }

    /// `∂_i = τ_{n−1}^{i−n} ∂_n τ_n^{n−i}`.
    fn face(&self, i: usize, n: usize) -> SparseMatrix {
        assert!(n >= 1 && i <= n, "face index out of range");
        let right = self.tau_power(n, n - i);
        let left = self.tau_power(n - 1, i);
        left.mul(&self.face_last(n).mul(&right).expect("shape")).expect("shape")
    }

    /// `s_i = τ_{n+1}^{i−1−n} s_n τ_n^{n−i+1}`.
    fn degeneracy(&self, i: usize, n: usize) -> SparseMatrix {
        assert!(i <= n, "degeneracy index out of range");
        let right = self.tau_power(n, n - i + 1);
        let left = self.tau_power(n + 1, i + 1);
        left.mul(&self.degeneracy_last(n).mul(&right).expect("shape")).expect("shape")
    }
}

/// `₂K(B)` for a commutative `B` with augmentation `ε: B → k`.
#[derive(Debug)]
pub struct SecondaryCyclicModule {
    b: Arc<StructureAlgebra>,
    epsilon: Vec<Scalar>,
    strategy: Strategy,
    index_sets: Mutex<HashMap<usize, Arc<CyclicIndexSet>>>,
}

impl SecondaryCyclicModule {
    /// `epsilon` must be an algebra map from `b` to its ground field.
    pub fn new(b: Arc<StructureAlgebra>, epsilon: &AlgebraMorphism) -> Result<Self, SimplicialError> {
        if !b.is_commutative() {
            return Err(SimplicialError::NotCommutative);
        }
        if epsilon.source().as_ref() != b.as_ref() || epsilon.target().dim() != 1 {
            return Err(SimplicialError::InvalidAugmentation);
        }
        let eps = epsilon.matrix()[0].clone();
        Ok(SecondaryCyclicModule {
            b,
            epsilon: eps,
            strategy: Strategy::default(),
            index_sets: Mutex::new(HashMap::new()),
        })
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn algebra(&self) -> &Arc<StructureAlgebra> {
        &self.b
    }

    pub fn epsilon(&self) -> &[Scalar] {
        &self.epsilon
    }

    pub fn index_set(&self, n: usize) -> Arc<CyclicIndexSet> {
        self.index_sets.lock().expect("poisoned").entry(n).or_insert_with(|| Arc::new(CyclicIndexSet::new(n))).clone()
    }

    /// Values of the basis function with flat index `c`, most significant
    /// position first.
    pub fn decode(&self, n: usize, c: usize) -> Vec<usize> {
        self.decode_len(self.index_set(n).len(), c)
    }

    fn decode_len(&self, len: usize, mut c: usize) -> Vec<usize> {
        let d = self.b.dim();
        let mut out = vec![0; len];
        for slot in out.iter_mut().rev() {
            *slot = c % d;
            c /= d;
        }
        out
    }

    pub fn encode(&self, values: &[usize]) -> usize {
        values.iter().fold(0, |acc, &x| acc * self.b.dim() + x)
    }

    fn build(&self, rows: usize, cols: usize, column: impl Fn(usize) -> Vec<(usize, Scalar)> + Sync + Send) -> SparseMatrix {
        let columns = self.strategy.map_range(cols, column);
        let triplets = columns.into_iter().enumerate().flat_map(|(c, col)| col.into_iter().map(move |(r, x)| (r, c, x)));
        SparseMatrix::from_triplets(self.field(), rows, cols, triplets).expect("indices in range")
    }
}

impl CyclicStructure for SecondaryCyclicModule {
    fn field(&self) -> Field {
        self.b.field()
    }

    fn dim(&self, n: usize) -> usize {
        self.b.dim().pow(self.index_set(n).len() as u32)
    }

    fn tau(&self, n: usize) -> SparseMatrix {
        let set = self.index_set(n);
        let m = n + 1;
        let target: Vec<usize> = set
            .pairs()
            .iter()
            .map(|&(u, v)| set.position((u + 1) % m, (v + 1) % m).expect("I_n is τ-stable"))
            .collect();
        let one = self.field().one();
        self.build(self.dim(n), self.dim(n), |c| {
            let x = self.decode_len(set.len(), c);
            let mut y = vec![0; x.len()];
            for (k, &b) in x.iter().enumerate() {
                y[target[k]] = b;
            }
            vec![(self.encode(&y), one.clone())]
        })
    }

    fn face_last(&self, n: usize) -> SparseMatrix {
        assert!(n >= 1, "face_last needs n ≥ 1");
        let (src, dst) = (self.index_set(n), self.index_set(n - 1));
        let phi = |w: usize| if w < n { w } else { n - 1 };
        let target: Vec<Option<usize>> = src.pairs().iter().map(|&(u, v)| dst.position(phi(u), phi(v))).collect();
        let field = self.field();
        let radices = vec![self.b.dim(); dst.len()];
        self.build(self.dim(n - 1), self.dim(n), |c| {
            let x = self.decode_len(src.len(), c);
            let mut coef = field.one();
            let mut slots: Vec<Coords> = vec![self.b.unit().clone(); dst.len()];
            for (k, &b) in x.iter().enumerate() {
                match target[k] {
                    Some(p) => slots[p] = self.b.mul(&slots[p], &[(b, field.one())]),
                    None => coef = &coef * &self.epsilon[b],
                }
            }
            if coef.is_zero() {
                return Vec::new();
            }
            let refs: Vec<&[(usize, Scalar)]> = slots.iter().map(Vec::as_slice).collect();
            expand_slots(field, &refs, &radices).into_iter().map(|(r, x)| (r, &x * &coef)).collect()
        })
    }

    fn degeneracy_last(&self, n: usize) -> SparseMatrix {
        let (src, dst) = (self.index_set(n), self.index_set(n + 1));
        let field = self.field();
        let carried: Vec<Option<usize>> = dst.pairs().iter().map(|&(u, v)| src.position(u, v)).collect();
        let radices = vec![self.b.dim(); dst.len()];
        self.build(self.dim(n + 1), self.dim(n), |c| {
            let x = self.decode_len(src.len(), c);
            let slots: Vec<Coords> = carried
                .iter()
                .map(|k| match k {
                    Some(k) => vec![(x[*k], field.one())],
                    None => self.b.unit().clone(),
                })
                .collect();
            let refs: Vec<&[(usize, Scalar)]> = slots.iter().map(Vec::as_slice).collect();
            expand_slots(field, &refs, &radices)
        })
    }
}

/// Memoised conjugated operators of a [`CyclicStructure`].
struct Operators<'a, C: CyclicStructure + ?Sized> {
    c: &'a C,
    faces: Mutex<HashMap<(usize, usize), Arc<SparseMatrix>>>,
    degeneracies: Mutex<HashMap<(usize, usize), Arc<SparseMatrix>>>,
    taus: Mutex<HashMap<usize, Arc<SparseMatrix>>>,
}

impl<'a, C: CyclicStructure + ?Sized> Operators<'a, C> {
    fn new(c: &'a C) -> Self {
        Operators { c, faces: Mutex::default(), degeneracies: Mutex::default(), taus: Mutex::default() }
    }

    fn d(&self, i: usize, n: usize) -> Arc<SparseMatrix> {
        if let Some(m) = self.faces.lock().expect("poisoned").get(&(i, n)) {
            return m.clone();
        }
        let m = Arc::new(self.c.face(i, n));
        self.faces.lock().expect("poisoned").insert((i, n), m.clone());
        m
    }

    fn s(&self, i: usize, n: usize) -> Arc<SparseMatrix> {
        if let Some(m) = self.degeneracies.lock().expect("poisoned").get(&(i, n)) {
            return m.clone();
        }
        let m = Arc::new(self.c.degeneracy(i, n));
        self.degeneracies.lock().expect("poisoned").insert((i, n), m.clone());
        m
    }

    fn t(&self, n: usize) -> Arc<SparseMatrix> {
        if let Some(m) = self.taus.lock().expect("poisoned").get(&n) {
            return m.clone();
        }
        let m = Arc::new(self.c.tau(n));
        self.taus.lock().expect("poisoned").insert(n, m.clone());
        m
    }
}

fn compare(lhs: SparseMatrix, rhs: &SparseMatrix) -> Option<Witness> {
    lhs.first_difference(rhs).map(|(row, col)| Witness::MatrixEntry { row, col })
}

fn prod(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    a.mul(b).expect("composable")
}

/// Checks every simplicial and cyclic identity whose source level lies in
/// `1..=n_max`; `s_i s_j` is checked up to `n_max − 1` so that no space above
/// level `n_max + 1` is built.
pub fn verify_cyclic_module<C: CyclicStructure + ?Sized>(c: &C, n_max: usize) -> VerificationReport {
    let ops = Operators::new(c);
    let field = c.field();
    let mut checks = Vec::new();
    let mut push = |family, level, indices: Vec<usize>, witness| checks.push(IdentityCheck { family, level, indices, witness });
    for n in 1..=n_max {
        let t = ops.t(n);
        let mut power = SparseMatrix::identity(field, c.dim(n));
        for _ in 0..=n {
            power = prod(&t, &power);
        }
        push(IdentityFamily::TauOrder, n, vec![], compare(power, &SparseMatrix::identity(field, c.dim(n))));
        if n >= 2 {
            for j in 0..=n {
                for i in 0..j {
                    let w = compare(prod(&ops.d(i, n - 1), &ops.d(j, n)), &prod(&ops.d(j - 1, n - 1), &ops.d(i, n)));
                    push(IdentityFamily::FaceFace, n, vec![i, j], w);
                }
            }
        }
        if n < n_max {
            for j in 0..=n {
                for i in 0..=j {
                    let w = compare(prod(&ops.s(i, n + 1), &ops.s(j, n)), &prod(&ops.s(j + 1, n + 1), &ops.s(i, n)));
                    push(IdentityFamily::DegeneracyDegeneracy, n, vec![i, j], w);
                }
            }
        }
        for j in 0..=n {
            for i in 0..=n + 1 {
                let lhs = prod(&ops.d(i, n + 1), &ops.s(j, n));
                let rhs = if i < j {
                    prod(&ops.s(j - 1, n - 1), &ops.d(i, n))
                } else if i == j || i == j + 1 {
                    SparseMatrix::identity(field, c.dim(n))
                } else {
                    prod(&ops.s(j, n - 1), &ops.d(i - 1, n))
                };
                push(IdentityFamily::FaceDegeneracy, n, vec![i, j], compare(lhs, &rhs));
            }
        }
        for i in 1..=n {
            let w = compare(prod(&ops.d(i, n), &t), &prod(&ops.t(n - 1), &ops.d(i - 1, n)));
            push(IdentityFamily::FaceTau, n, vec![i], w);
            let w = compare(prod(&ops.s(i, n), &t), &prod(&ops.t(n + 1), &ops.s(i - 1, n)));
            push(IdentityFamily::DegeneracyTau, n, vec![i], w);
        }
        push(IdentityFamily::FaceZeroTau, n, vec![], compare(prod(&ops.d(0, n), &t), &ops.d(n, n)));
        let t1 = ops.t(n + 1);
        let w = compare(prod(&ops.s(0, n), &t), &prod(&t1, &prod(&t1, &ops.s(n, n))));
        push(IdentityFamily::DegeneracyZeroTau, n, vec![], w);
    }
    VerificationReport::new(checks, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{epsilon_map, truncated_polynomial_algebra};

    fn dual(field: Field) -> SecondaryCyclicModule {
        let b = Arc::new(truncated_polynomial_algebra(field, 2).unwrap());
        let k = Arc::new(StructureAlgebra::ground(field));
        let eps = epsilon_map(b.clone(), k, vec![vec![field.one(), field.zero()]]).unwrap();
        SecondaryCyclicModule::new(b, &eps).unwrap()
    }

    fn ground(field: Field) -> SecondaryCyclicModule {
        let k = Arc::new(StructureAlgebra::ground(field));
        let eps = epsilon_map(k.clone(), k.clone(), vec![vec![field.one()]]).unwrap();
        SecondaryCyclicModule::new(k, &eps).unwrap()
    }

    #[test]
    fn index_sets_have_n_squared_minus_one_elements() {
        for n in 0..7 {
            assert_eq!(CyclicIndexSet::new(n).len(), (n * n).saturating_sub(1));
        }
        assert_eq!(CyclicIndexSet::new(2).pairs(), &[(0, 1), (1, 2), (2, 0)]);
    }

    #[test]
    fn last_face_on_level_two_is_the_product_of_augmentations() {
        let m = dual(Field::Rationals);
        let f = m.face_last(2);
        assert_eq!(f.shape(), (1, 8));
        for c in 0..8 {
            let expected = if c == 0 { Field::Rationals.one() } else { Field::Rationals.zero() };
            assert_eq!(f.get(0, c), expected);
        }
    }

    #[test]
    fn last_face_prefactor_positions() {
        let m = dual(Field::Rationals);
        let n = 3;
        let (src, dst) = (m.index_set(n), m.index_set(n - 1));
        let f = m.face_last(n);
        let scalar_slots = [(n - 1, n), (n, n - 2), (0, n - 1)];
        for (k, &(u, v)) in src.pairs().iter().enumerate() {
            let mut x = vec![0; src.len()];
            x[k] = 1;
            let col = m.encode(&x);
            let nonzero: Vec<(usize, Scalar)> =
                (0..f.nrows()).filter(|&r| !f.get(r, col).is_zero()).map(|r| (r, f.get(r, col))).collect();
            if scalar_slots.contains(&(u, v)) {
                assert!(nonzero.is_empty(), "({u}, {v})");
            } else {
                let phi = |w: usize| if w < n { w } else { n - 1 };
                let mut y = vec![0; dst.len()];
                y[dst.position(phi(u), phi(v)).unwrap()] = 1;
                assert_eq!(nonzero, vec![(m.encode(&y), Field::Rationals.one())], "({u}, {v})");
            }
        }
    }

    #[test]
    fn degeneracy_shapes_and_section() {
        let m = dual(Field::Rationals);
        let s = m.degeneracy_last(2);
        assert_eq!(s.shape(), (256, 8));
        assert!((0..8).all(|c| s.triplets().filter(|t| t.1 == c).count() == 1));
        for n in 0..3 {
            let id = m.face_last(n + 1).mul(&m.degeneracy_last(n)).unwrap();
            assert_eq!(id, SparseMatrix::identity(Field::Rationals, m.dim(n)));
        }
    }

    #[test]
    fn tau_is_a_permutation_of_order_n_plus_one() {
        let m = dual(Field::prime(5).unwrap());
        let t = m.tau(3);
        assert_eq!(t.nnz(), 1 << 8);
        assert_eq!(m.tau_power(3, 4), SparseMatrix::identity(m.field(), 256));
        assert_ne!(m.tau_power(3, 1), SparseMatrix::identity(m.field(), 256));
    }

    #[test]
    fn ground_field_passes() {
        let r = verify_cyclic_module(&ground(Field::Rationals), 3);
        assert!(r.passed(), "{:?}", r.first_failure());
    }

    #[test]
    fn dual_numbers_fail_only_off_diagonal_face_degeneracy() {
        let r = verify_cyclic_module(&dual(Field::Rationals), 2);
        for c in &r.checks {
            let off_diagonal = c.family == IdentityFamily::FaceDegeneracy && {
                let (i, j) = (c.indices[0], c.indices[1]);
                i != j && i != j + 1
            };
            if !off_diagonal {
                assert!(c.passed(), "{c}");
            }
        }
        assert!(!r.family_passed(IdentityFamily::FaceDegeneracy));
    }

    struct Corrupted(SecondaryCyclicModule);

    impl CyclicStructure for Corrupted {
        fn field(&self) -> Field {
            self.0.field()
        }
        fn dim(&self, n: usize) -> usize {
            self.0.dim(n)
        }
        fn tau(&self, n: usize) -> SparseMatrix {
            let t = self.0.tau(n);
            if n != 2 {
                return t;
            }
            let mut rows: Vec<Coords> = t.rows().to_vec();
            rows.swap(1, 2);
            SparseMatrix::from_rows(t.field(), t.ncols(), rows).unwrap()
        }
        fn face_last(&self, n: usize) -> SparseMatrix {
            self.0.face_last(n)
        }
        fn degeneracy_last(&self, n: usize) -> SparseMatrix {
            self.0.degeneracy_last(n)
        }
    }

    #[test]
    fn corrupted_tau_is_caught() {
        let r = verify_cyclic_module(&Corrupted(dual(Field::Rationals)), 2);
        let c = r.checks.iter().find(|c| c.family == IdentityFamily::TauOrder && c.level == 2).unwrap();
        assert!(matches!(c.witness, Some(Witness::MatrixEntry { .. })));
    }
}
