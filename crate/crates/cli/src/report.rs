//! The machine-readable report, schema `secohom-report/1`.
//!
//! Everything except `timing` is a function of the input file and the
//! command line, and serialises byte-for-byte identically across runs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "secohom-report/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema: String,
    pub deterministic: Deterministic,
    pub timing: Timing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Deterministic {
    pub command: String,
    /// File name of the problem, without directories.
    pub input: String,
    pub field: String,
    pub parameters: BTreeMap<String, String>,
    pub verdict: Verdict,
    pub results: Results,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Timing {
    pub elapsed_micros: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Shape, fill and rank of a matrix used in a computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixInfo {
    pub name: String,
    pub rows: usize,
    pub cols: usize,
    pub nonzeros: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeResult {
    pub degree: usize,
    pub cochain_dim: usize,
    /// `dim H^n = cochain_dim − rank(outgoing) − rank(incoming)`.
    pub dim: usize,
    pub outgoing: MatrixInfo,
    pub incoming: Option<MatrixInfo>,
}

/// A sparse cochain; values are exact literals `n` or `p/q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainJson {
    pub degree: usize,
    pub entries: Vec<CochainEntryJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainEntryJson {
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub m: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssociativityWitnessJson {
    /// The power of `t` whose coefficients differ.
    pub power: usize,
    pub a: Vec<String>,
    pub alpha: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObstructionJson {
    pub omega: CochainJson,
    pub omega_is_cocycle: bool,
    pub coboundary: MatrixInfo,
    /// Rank of `δ_2` with `ω` appended as a column.
    pub augmented_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectStatus {
    pub object: String,
    pub valid: bool,
    pub message: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyResult {
    pub family: String,
    pub checked: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentityFailure {
    pub family: String,
    pub level: usize,
    pub indices: Vec<usize>,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Results {
    Validation {
        objects: Vec<ObjectStatus>,
    },
    Cohomology {
        triple: String,
        module: String,
        degrees: Vec<DegreeResult>,
    },
    Hochschild {
        algebra: String,
        module: String,
        degrees: Vec<DegreeResult>,
    },
    Associativity {
        family: String,
        order: usize,
        /// Coefficients of `t^0 … t^{k_order − 1}` were compared.
        k_order: usize,
        tuples_checked: usize,
        first_term_is_cocycle: Option<bool>,
        witness: Option<AssociativityWitnessJson>,
    },
    Extension {
        family: String,
        order: usize,
        extended: bool,
        next_term: Option<CochainJson>,
        obstruction: ObstructionJson,
    },
    Obstruction {
        family: String,
        order: usize,
        class_vanishes: bool,
        obstruction: ObstructionJson,
    },
    Gauge {
        first: String,
        second: String,
        equivalent: bool,
        coboundary: MatrixInfo,
        /// `transform[s][i]`: coefficient of `e_s` in `f_1(e_i)`.
        transform: Option<Vec<Vec<String>>>,
    },
    Identities {
        object: String,
        max_level: usize,
        sampled: bool,
        families: Vec<FamilyResult>,
        failures: Vec<IdentityFailure>,
    },
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    /// Parses a report and checks its schema tag.
    pub fn from_json(text: &str) -> Result<Report, String> {
        let r: Report = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if r.schema != SCHEMA {
            return Err(format!("unsupported schema `{}`", r.schema));
        }
        Ok(r)
    }

    /// The report without its timing section.
    pub fn deterministic_json(&self) -> String {
        serde_json::to_string_pretty(&self.deterministic).expect("report serialises")
    }
}
