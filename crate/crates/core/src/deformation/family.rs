use crate::complex::{Cochain, CochainSpace};
use crate::linalg::{Coords, Field, Scalar};

use super::DeformationError;

/// `a_0 + a_1 t + … + a_N t^N` with each `a_p ∈ A` stored densely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedElement {
    coefficients: Vec<Vec<Scalar>>,
}

impl TruncatedElement {
    pub fn zero(field: Field, dim: usize, order: usize) -> Self {
        TruncatedElement { coefficients: vec![vec![field.zero(); dim]; order + 1] }
    }

    /// The constant series `x`.
    pub fn constant(field: Field, dim: usize, order: usize, x: &[(usize, Scalar)]) -> Self {
        let mut e = Self::zero(field, dim, order);
        for (i, c) in x {
            e.coefficients[0][*i] = c.clone();
        }
        e
    }

    pub fn from_coefficients(coefficients: Vec<Vec<Scalar>>) -> Result<Self, DeformationError> {
        if coefficients.is_empty() || coefficients.iter().any(|c| c.len() != coefficients[0].len()) {
            return Err(DeformationError::TruncationMismatch);
        }
        Ok(TruncatedElement { coefficients })
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.coefficients[0].len()
    }

    /// Coefficient of `t^p`.
    pub fn coefficient(&self, p: usize) -> &[Scalar] {
        &self.coefficients[p]
    }

    pub fn coefficients(&self) -> &[Vec<Scalar>] {
        &self.coefficients
    }

    pub(crate) fn coords(&self, p: usize) -> Coords {
        crate::linalg::compress(&self.coefficients[p])
    }

    pub(crate) fn add_at(&mut self, p: usize, x: &[(usize, Scalar)]) {
        for (i, c) in x {
            self.coefficients[p][*i] = &self.coefficients[p][*i] + c;
        }
    }

    pub fn add(&self, other: &TruncatedElement) -> Result<TruncatedElement, DeformationError> {
        if self.order() != other.order() || self.dim() != other.dim() {
            return Err(DeformationError::TruncationMismatch);
        }
        let coefficients = self
            .coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(x, y)| x.iter().zip(y).map(|(a, b)| a + b).collect())
            .collect();
        Ok(TruncatedElement { coefficients })
    }

    pub fn scale(&self, f: &Scalar) -> TruncatedElement {
        TruncatedElement {
            coefficients: self.coefficients.iter().map(|x| x.iter().map(|a| f * a).collect()).collect(),
        }
    }
}

/// `m_{α,t}(a ⊗ b) = ε(α)ab + Σ_{i=1}^{N} c_i(a ⊗ b ⊗ α) t^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationFamily {
    space: CochainSpace,
    terms: Vec<Cochain>,
}

impl DeformationFamily {
    /// `space` must be the degree-2 space with `M = A`.
    pub fn new(space: CochainSpace, terms: Vec<Cochain>) -> Result<Self, DeformationError> {
        if space.degree != 2 || space.dim_m != space.dim_a {
            return Err(DeformationError::NotDegreeTwo);
        }
        if let Some(bad) = terms.iter().find(|c| *c.space() != space) {
            return Err(DeformationError::SpaceMismatch { expected: space, found: *bad.space() });
        }
        Ok(DeformationFamily { space, terms })
    }

    pub fn zero(space: CochainSpace, order: usize) -> Result<Self, DeformationError> {
        Self::new(space, vec![Cochain::zero(space); order])
    }

    pub fn space(&self) -> &CochainSpace {
        &self.space
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    /// `c_p` for `1 ≤ p ≤ N`.
    pub fn term(&self, p: usize) -> &Cochain {
        &self.terms[p - 1]
    }

    pub fn terms(&self) -> &[Cochain] {
        &self.terms
    }

    pub fn extended(&self, next: Cochain) -> Result<Self, DeformationError> {
        let mut terms = self.terms.clone();
        terms.push(next);
        Self::new(self.space, terms)
    }
}

/// `{m_α}` given on a basis of `B`: `products[j][(i * d + l) * d + k]` is the
/// coefficient of `e_k` in `m_{b_j}(e_i ⊗ e_l)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractFamily {
    pub labels: Vec<String>,
    pub products: Vec<Vec<Scalar>>,
}
