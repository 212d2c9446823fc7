//! The simplicial group `K(G, 2)` with `K_q = G^{q(q−1)/2}` and its cyclic
//! operator `τ_q`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::FiniteGroup;
use crate::complex::{pair_position, upper_pairs};
use crate::exec::Strategy;

use super::report::{IdentityCheck, IdentityFamily, VerificationReport, Witness};
use super::SimplicialError;

/// Levels with more elements than this are sampled.
pub const EXHAUSTIVE_LIMIT: usize = 1_000_000;
/// Number of sampled elements per level.
pub const SAMPLE_SIZE: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    group: FiniteGroup,
}

impl FiniteAbelianGroup {
    pub fn new(group: FiniteGroup) -> Result<Self, SimplicialError> {
        if !group.is_abelian() {
            return Err(SimplicialError::NotAbelian);
        }
        Ok(FiniteAbelianGroup { group })
    }

    /// `ℤ/n_1 × ℤ/n_2 × …`.
    pub fn cyclic_product(orders: &[usize]) -> Result<Self, SimplicialError> {
        let mut g = FiniteGroup::cyclic(1).map_err(SimplicialError::Group)?;
        for (k, &n) in orders.iter().enumerate() {
            let c = FiniteGroup::cyclic(n).map_err(SimplicialError::Group)?;
            g = if k == 0 { c } else { FiniteGroup::direct_product(&g, &c).map_err(SimplicialError::Group)? };
        }
        Self::new(g)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    fn op(&self, a: usize, b: usize) -> usize {
        self.group.op(a, b)
    }

    fn inv(&self, a: usize) -> usize {
        self.group.inverse(a)
    }

    fn e(&self) -> usize {
        self.group.identity()
    }
}

/// `(g_{u,v})_{0 ≤ u < v < q}` in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KG2Element {
    level: usize,
    entries: Vec<usize>,
}

impl KG2Element {
    pub fn new(group: &FiniteAbelianGroup, level: usize, entries: Vec<usize>) -> Result<Self, SimplicialError> {
        let expected = level * level.saturating_sub(1) / 2;
        if entries.len() != expected {
            return Err(SimplicialError::WrongLength { level, expected, found: entries.len() });
        }
        if let Some(&g) = entries.iter().find(|&&g| g >= group.order()) {
            return Err(SimplicialError::NotAnElement(g));
        }
        Ok(KG2Element { level, entries })
    }

    pub fn identity(group: &FiniteAbelianGroup, level: usize) -> Self {
        KG2Element { level, entries: vec![group.e(); level * level.saturating_sub(1) / 2] }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// `g_{u,v}` for `u < v`.
    pub fn get(&self, u: usize, v: usize) -> usize {
        self.entries[pair_position(self.level, u, v)]
    }
}

/// `∂_i : K_q → K_{q−1}` for `0 ≤ i ≤ q`.
pub fn kg2_face(group: &FiniteAbelianGroup, i: usize, x: &KG2Element) -> Result<KG2Element, SimplicialError> {
    let q = x.level;
    if q == 0 || i > q {
        return Err(SimplicialError::IndexOutOfRange { index: i, level: q });
    }
    let g = |u, v| x.get(u, v);
    let entries = upper_pairs(q - 1)
        .into_iter()
        .map(|(u, v)| {
            if v + 1 < i {
                g(u, v)
            } else if v + 1 == i {
                group.op(g(u, v), g(u, v + 1))
            } else if u + 1 < i {
                g(u, v + 1)
            } else if u + 1 == i {
                group.op(g(u, v + 1), g(u + 1, v + 1))
            } else {
                g(u + 1, v + 1)
            }
        })
        .collect();
    Ok(KG2Element { level: q - 1, entries })
}

/// `s_i : K_q → K_{q+1}` for `0 ≤ i ≤ q`: inserts an identity row and column at `i`.
pub fn kg2_degeneracy(group: &FiniteAbelianGroup, i: usize, x: &KG2Element) -> Result<KG2Element, SimplicialError> {
    let q = x.level;
    if i > q {
        return Err(SimplicialError::IndexOutOfRange { index: i, level: q });
    }
    let g = |u, v| x.get(u, v);
    let entries = upper_pairs(q + 1)
        .into_iter()
        .map(|(u, v)| {
            if v < i {
                g(u, v)
            } else if v == i || u == i {
                group.e()
            } else if u < i {
                g(u, v - 1)
            } else {
                g(u - 1, v - 1)
            }
        })
        .collect();
    Ok(KG2Element { level: q + 1, entries })
}

/// `τ_q : K_q → K_q`; `τ_0` is the identity of the point `K_0`.
pub fn kg2_cyclic(group: &FiniteAbelianGroup, x: &KG2Element) -> Result<KG2Element, SimplicialError> {
    let q = x.level;
    let g = |u, v| x.get(u, v);
    let entries = upper_pairs(q)
        .into_iter()
        .map(|(u, v)| {
            if u == 0 {
                let mut h = group.e();
                for w in v..q {
                    h = group.op(h, g(v - 1, w));
                }
                for w in 0..v - 1 {
                    h = group.op(h, group.inv(g(w, v - 1)));
                }
                h
            } else {
                g(u - 1, v - 1)
            }
        })
        .collect();
    Ok(KG2Element { level: q, entries })
}

fn level_size(group: &FiniteAbelianGroup, q: usize) -> Option<usize> {
    group.order().checked_pow((q * q.saturating_sub(1) / 2) as u32)
}

fn decode(group: &FiniteAbelianGroup, q: usize, mut idx: usize) -> KG2Element {
    let len = q * q.saturating_sub(1) / 2;
    let mut entries = vec![0; len];
    for slot in entries.iter_mut().rev() {
        *slot = idx % group.order();
        idx /= group.order();
    }
    KG2Element { level: q, entries }
}

type Check<'a> = (IdentityFamily, Vec<usize>, Box<dyn Fn(&KG2Element) -> bool + Sync + Send + 'a>);

fn checks_at_level(g: &FiniteAbelianGroup, q: usize) -> Vec<Check<'_>> {
    let d = move |i: usize, x: &KG2Element| kg2_face(g, i, x).expect("face index");
    let s = move |i: usize, x: &KG2Element| kg2_degeneracy(g, i, x).expect("degeneracy index");
    let t = move |x: &KG2Element| kg2_cyclic(g, x).expect("total");
    let mut out: Vec<Check<'_>> = Vec::new();
    out.push((
        IdentityFamily::TauOrder,
        vec![],
        Box::new(move |x| {
            let mut y = x.clone();
            for _ in 0..=q {
                y = t(&y);
            }
            y == *x
        }),
    ));
    if q >= 2 {
        for j in 0..=q {
            for i in 0..j {
                out.push((IdentityFamily::FaceFace, vec![i, j], Box::new(move |x| d(i, &d(j, x)) == d(j - 1, &d(i, x)))));
            }
        }
    }
    for j in 0..=q {
        for i in 0..=j {
            out.push((
                IdentityFamily::DegeneracyDegeneracy,
                vec![i, j],
                Box::new(move |x| s(i, &s(j, x)) == s(j + 1, &s(i, x))),
            ));
        }
    }
    for j in 0..=q {
        for i in 0..=q + 1 {
            out.push((
                IdentityFamily::FaceDegeneracy,
                vec![i, j],
                Box::new(move |x| {
                    let lhs = d(i, &s(j, x));
                    if i < j {
                        lhs == s(j - 1, &d(i, x))
                    } else if i == j || i == j + 1 {
                        lhs == *x
                    } else {
                        lhs == s(j, &d(i - 1, x))
                    }
                }),
            ));
        }
    }
    for i in 1..=q {
        out.push((IdentityFamily::FaceTau, vec![i], Box::new(move |x| d(i, &t(x)) == t(&d(i - 1, x)))));
        out.push((IdentityFamily::DegeneracyTau, vec![i], Box::new(move |x| s(i, &t(x)) == t(&s(i - 1, x)))));
    }
    out.push((IdentityFamily::FaceZeroTau, vec![], Box::new(move |x| d(0, &t(x)) == d(q, x))));
    out.push((IdentityFamily::DegeneracyZeroTau, vec![], Box::new(move |x| s(0, &t(x)) == t(&t(&s(q, x))))));
    out
}

/// Checks every simplicial and cyclic identity on `K_q` for `1 ≤ q ≤ q_max`,
/// exhaustively up to [`EXHAUSTIVE_LIMIT`] elements per level and on
/// [`SAMPLE_SIZE`] seeded random elements above it. `d_0 τ_q = d_q` on `K_1`
/// is vacuous since `K_0` is a point.
pub fn verify_kg2(group: &FiniteAbelianGroup, q_max: usize, strategy: Strategy, seed: u64) -> VerificationReport {
    let mut results = Vec::new();
    let mut sampled = false;
    for q in 1..=q_max {
        let elements: Vec<KG2Element> = match level_size(group, q) {
            Some(n) if n <= EXHAUSTIVE_LIMIT => (0..n).map(|i| decode(group, q, i)).collect(),
            _ => {
                sampled = true;
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(q as u64));
                let len = q * (q - 1) / 2;
                (0..SAMPLE_SIZE)
                    .map(|_| KG2Element { level: q, entries: (0..len).map(|_| rng.gen_range(0..group.order())).collect() })
                    .collect()
            }
        };
        for (family, indices, check) in checks_at_level(group, q) {
            let witness = strategy
                .find_first(elements.len(), |k| (!check(&elements[k])).then(|| elements[k].entries.clone()))
                .map(Witness::Element);
            results.push(IdentityCheck { family, level: q, indices, witness });
        }
    }
    VerificationReport::new(results, sampled)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic_product(&[n]).unwrap()
    }

    #[test]
    fn face_example_on_k3() {
        let g = z(2);
        let x = KG2Element::new(&g, 3, vec![1, 0, 1]).unwrap();
        assert_eq!(kg2_face(&g, 0, &x).unwrap().entries(), &[1]);
    }

    #[test]
    fn low_levels() {
        let g = z(3);
        let x = KG2Element::new(&g, 2, vec![2]).unwrap();
        for i in 0..=2 {
            assert_eq!(kg2_face(&g, i, &x).unwrap().entries(), &[] as &[usize]);
        }
        let p = KG2Element::identity(&g, 1);
        for i in 0..=1 {
            assert_eq!(kg2_degeneracy(&g, i, &p).unwrap().entries(), &[0]);
        }
        assert!(kg2_face(&g, 3, &x).is_err());
        assert_eq!(kg2_cyclic(&g, &KG2Element::identity(&g, 4)).unwrap(), KG2Element::identity(&g, 4));
    }

    #[test]
    fn all_identities_hold_for_small_groups() {
        let r = verify_kg2(&z(2), 4, Strategy::Parallel, 0);
        assert!(r.passed(), "{:?}", r.first_failure());
        assert!(!r.sampled);
        let r = verify_kg2(&FiniteAbelianGroup::cyclic_product(&[2, 2]).unwrap(), 3, Strategy::Sequential, 0);
        assert!(r.passed(), "{:?}", r.first_failure());
    }

    #[test]
    fn large_levels_are_sampled() {
        let r = verify_kg2(&z(4), 5, Strategy::Parallel, 7);
        assert!(r.sampled);
        assert!(r.passed());
    }

    #[test]
    fn non_abelian_groups_are_rejected() {
        assert!(FiniteAbelianGroup::new(FiniteGroup::symmetric(3).unwrap()).is_err());
    }
}
