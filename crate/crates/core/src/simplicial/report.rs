use std::fmt;

/// The identity families checked for simplicial and cyclic objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityFamily {
    /// `τ_n^{n+1} = id`.
    TauOrder,
    /// `∂_i ∂_j = ∂_{j−1} ∂_i` for `i < j`.
    FaceFace,
    /// `s_i s_j = s_{j+1} s_i` for `i ≤ j`.
    DegeneracyDegeneracy,
    /// `∂_i s_j` = `s_{j−1} ∂_i`, `id`, or `s_j ∂_{i−1}`.
    FaceDegeneracy,
    /// `∂_i τ_n = τ_{n−1} ∂_{i−1}` for `1 ≤ i ≤ n`.
    FaceTau,
    /// `s_i τ_n = τ_{n+1} s_{i−1}` for `1 ≤ i ≤ n`.
    DegeneracyTau,
    /// `∂_0 τ_n = ∂_n`.
    FaceZeroTau,
    /// `s_0 τ_n = τ_{n+1}^2 s_n`.
    DegeneracyZeroTau,
}

impl IdentityFamily {
    pub const ALL: [IdentityFamily; 8] = [
        IdentityFamily::TauOrder,
        IdentityFamily::FaceFace,
        IdentityFamily::DegeneracyDegeneracy,
        IdentityFamily::FaceDegeneracy,
        IdentityFamily::FaceTau,
        IdentityFamily::DegeneracyTau,
        IdentityFamily::FaceZeroTau,
        IdentityFamily::DegeneracyZeroTau,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            IdentityFamily::TauOrder => "tau^(n+1) = id",
            IdentityFamily::FaceFace => "d_i d_j = d_(j-1) d_i",
            IdentityFamily::DegeneracyDegeneracy => "s_i s_j = s_(j+1) s_i",
            IdentityFamily::FaceDegeneracy => "d_i s_j",
            IdentityFamily::FaceTau => "d_i tau = tau d_(i-1)",
            IdentityFamily::DegeneracyTau => "s_i tau = tau s_(i-1)",
            IdentityFamily::FaceZeroTau => "d_0 tau = d_n",
            IdentityFamily::DegeneracyZeroTau => "s_0 tau = tau^2 s_n",
        }
    }

    pub fn slug(&self) -> &'static str {
        match self {
            IdentityFamily::TauOrder => "tau_order",
            IdentityFamily::FaceFace => "face_face",
            IdentityFamily::DegeneracyDegeneracy => "degeneracy_degeneracy",
            IdentityFamily::FaceDegeneracy => "face_degeneracy",
            IdentityFamily::FaceTau => "face_tau",
            IdentityFamily::DegeneracyTau => "degeneracy_tau",
            IdentityFamily::FaceZeroTau => "face_zero_tau",
            IdentityFamily::DegeneracyZeroTau => "degeneracy_zero_tau",
        }
    }
}

impl fmt::Display for IdentityFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A group-valued tuple in lexicographic `(u, v)` order.
    Element(Vec<usize>),
    /// First entry (row-major) where the two sides' matrices differ; the
    /// column is the input basis function.
    MatrixEntry { row: usize, col: usize },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Element(x) => write!(f, "element {x:?}"),
            Witness::MatrixEntry { row, col } => write!(f, "matrix entry ({row}, {col})"),
        }
    }
}

/// One instance of an identity: a family at a level with its indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub family: IdentityFamily,
    pub level: usize,
    /// `[i]` or `[i, j]` as in the family's statement.
    pub indices: Vec<usize>,
    pub witness: Option<Witness>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

impl fmt::Display for IdentityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at level {} with indices {:?}", self.family, self.level, self.indices)?;
        if let Some(w) = &self.witness {
            write!(f, " fails on {w}")?;
        }
        Ok(())
    }
}

/// Pass/fail counts for one identity family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySummary {
    pub family: IdentityFamily,
    pub checked: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    /// Sorted by `(level, family, indices)`.
    pub checks: Vec<IdentityCheck>,
    /// `true` when some level was sampled rather than enumerated.
    pub sampled: bool,
}

impl VerificationReport {
    pub(crate) fn new(mut checks: Vec<IdentityCheck>, sampled: bool) -> Self {
        checks.sort_by(|a, b| (a.level, a.family, &a.indices).cmp(&(b.level, b.family, &b.indices)));
        VerificationReport { checks, sampled }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }

    pub fn first_failure(&self) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| !c.passed())
    }

    pub fn family_passed(&self, family: IdentityFamily) -> bool {
        self.checks.iter().filter(|c| c.family == family).all(IdentityCheck::passed)
    }

    pub fn summary(&self) -> Vec<FamilySummary> {
        IdentityFamily::ALL
            .iter()
            .map(|&family| {
                let of: Vec<&IdentityCheck> = self.checks.iter().filter(|c| c.family == family).collect();
                FamilySummary { family, checked: of.len(), failed: of.iter().filter(|c| !c.passed()).count() }
            })
            .filter(|s| s.checked > 0)
            .collect()
    }
}
