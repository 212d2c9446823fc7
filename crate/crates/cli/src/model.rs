//! Resolves a parsed [`ProblemFile`] into validated engine objects over a
//! chosen field.

use std::collections::BTreeMap;
use std::sync::Arc;

use secohom_core::algebra::{
    epsilon_map, group_algebra, regular_bimodule, truncated_polynomial_algebra, validate_algebra, AlgebraMorphism,
    AlgebraTable, Bimodule, BimoduleTable, FiniteGroup, StructureAlgebra, Triple,
};
use secohom_core::complex::{Cochain, CochainBasisIndex, CochainSpace, SecondaryComplex};
use secohom_core::{Field, Scalar};

use crate::error::{CliError, Issue};
use crate::problem::{
    AlgebraDef, BimoduleKind, FamilyTerms, GroupDef, Literal, MorphismKind, ProblemFile, Term, TripleEntry,
};

#[derive(Debug, Clone)]
pub struct TripleEntryModel {
    pub triple: Triple,
    pub module: Bimodule,
    pub module_name: String,
}

#[derive(Debug, Clone)]
pub struct Model {
    pub field: Field,
    pub groups: BTreeMap<String, FiniteGroup>,
    pub algebras: BTreeMap<String, Arc<StructureAlgebra>>,
    pub morphisms: BTreeMap<String, AlgebraMorphism>,
    pub bimodules: BTreeMap<String, Bimodule>,
    pub triples: BTreeMap<String, TripleEntryModel>,
    pub cochains: BTreeMap<String, (String, Cochain)>,
    /// Triple name and terms `c_1 … c_N`.
    pub families: BTreeMap<String, (String, Vec<Cochain>)>,
}

fn perr(line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse { line, message: message.into() }
}

fn scalar(field: Field, lit: &Literal) -> Result<Scalar, CliError> {
    field.parse_scalar(&lit.text).map_err(|e| perr(lit.line, e.to_string()))
}

/// Label first, then a 0-based integer index.
fn resolve(labels: &[String], token: &str, line: usize, what: &str) -> Result<usize, CliError> {
    if let Some(i) = labels.iter().position(|l| l == token) {
        return Ok(i);
    }
    match token.parse::<usize>() {
        Ok(i) if i < labels.len() => Ok(i),
        _ => Err(perr(line, format!("`{token}` is not a basis element of {what}"))),
    }
}

fn combination(field: Field, labels: &[String], terms: &[Term], what: &str) -> Result<Vec<Scalar>, CliError> {
    let mut v = vec![field.zero(); labels.len()];
    for t in terms {
        let i = resolve(labels, &t.label, t.coefficient.line, what)?;
        v[i] = &v[i] + &scalar(field, &t.coefficient)?;
    }
    Ok(v)
}

fn skipped(object: String, line: usize) -> Issue {
    Issue { object, line, message: "not checked: depends on an invalid object".into() }
}

fn triple_entries(
    field: Field,
    entries: &[TripleEntry],
    labels: [&[String]; 3],
    what: [&str; 3],
    mut set: impl FnMut(usize, usize, usize, Scalar),
) -> Result<(), CliError> {
    for e in entries {
        let line = e.value.line;
        let i = resolve(labels[0], &e.indices[0], line, what[0])?;
        let j = resolve(labels[1], &e.indices[1], line, what[1])?;
        let k = resolve(labels[2], &e.indices[2], line, what[2])?;
        set(i, j, k, scalar(field, &e.value)?);
    }
    Ok(())
}

impl Model {
    /// Builds every object; algebraic failures are collected per object and
    /// objects depending on a failed one are skipped.
    pub fn build(p: &ProblemFile, field: Field) -> Result<Model, CliError> {
        let mut issues = Vec::new();
        let mut m = Model {
            field,
            groups: BTreeMap::new(),
            algebras: BTreeMap::new(),
            morphisms: BTreeMap::new(),
            bimodules: BTreeMap::new(),
            triples: BTreeMap::new(),
            cochains: BTreeMap::new(),
            families: BTreeMap::new(),
        };
        for g in &p.groups {
            let built = match &g.body {
                GroupDef::Cyclic(orders) => orders.iter().try_fold(None::<FiniteGroup>, |acc, &n| {
                    let c = FiniteGroup::cyclic(n)?;
                    Ok::<_, secohom_core::algebra::AlgebraError>(Some(match acc {
                        None => c,
                        Some(a) => FiniteGroup::direct_product(&a, &c)?,
                    }))
                }),
                GroupDef::Symmetric(n) => FiniteGroup::symmetric(*n).map(Some),
            };
            match built {
                Ok(Some(group)) => {
                    m.groups.insert(g.name.clone(), group);
                }
                Ok(None) => unreachable!("cyclic groups have at least one factor"),
                Err(e) => issues.push(Issue { object: format!("group {}", g.name), line: g.line, message: e.to_string() }),
            }
        }
        for a in &p.algebras {
            let issue = |message: String| Issue { object: format!("algebra {}", a.name), line: a.line, message };
            let built = match &a.body {
                AlgebraDef::Ground => Ok(StructureAlgebra::ground(field)),
                AlgebraDef::Truncated(d) => truncated_polynomial_algebra(field, *d),
                AlgebraDef::Group(g) => match m.groups.get(g) {
                    Some(group) => group_algebra(field, group),
                    None => {
                        issues.push(skipped(format!("algebra {}", a.name), a.line));
                        continue;
                    }
                },
                AlgebraDef::Table { basis, unit, commutative, constants } => {
                    let mut t = AlgebraTable::new(field, basis.clone());
                    t.unit = combination(field, basis, unit, &a.name)?;
                    t.commutative = *commutative;
                    triple_entries(field, constants, [basis, basis, basis], [&a.name, &a.name, &a.name], |i, j, k, x| {
                        t.set(i, j, k, x)
                    })?;
                    let report = validate_algebra(&t);
                    if !report.is_valid() {
                        issues.push(issue(report.to_string()));
                        continue;
                    }
                    StructureAlgebra::new(t)
                }
            };
            match built {
                Ok(alg) => {
                    m.algebras.insert(a.name.clone(), Arc::new(alg));
                }
                Err(e) => issues.push(issue(e.to_string())),
            }
        }
        for d in &p.morphisms {
            let (Some(src), Some(tgt)) = (m.algebras.get(&d.body.source), m.algebras.get(&d.body.target)) else {
                issues.push(skipped(format!("morphism {}", d.name), d.line));
                continue;
            };
            let (src, tgt) = (src.clone(), tgt.clone());
            let issue = |message: String| Issue { object: format!("morphism {}", d.name), line: d.line, message };
            let matrix: Vec<Vec<Scalar>> = match &d.body.kind {
                MorphismKind::Unit => {
                    if src.dim() != 1 {
                        return Err(perr(d.line, format!("`unit` needs a one-dimensional source, `{}` has dimension {}", d.body.source, src.dim())));
                    }
                    tgt.unit_dense().iter().map(|x| vec![x.clone()]).collect()
                }
                MorphismKind::Identity => {
                    if src != tgt {
                        return Err(perr(d.line, "`identity` needs equal source and target"));
                    }
                    (0..src.dim())
                        .map(|i| (0..src.dim()).map(|j| if i == j { field.one() } else { field.zero() }).collect())
                        .collect()
                }
                MorphismKind::Images(images) => {
                    let mut matrix = vec![vec![field.zero(); src.dim()]; tgt.dim()];
                    let mut seen = vec![false; src.dim()];
                    for (label, image, line) in images {
                        let j = resolve(src.labels(), label, *line, &d.body.source)?;
                        if std::mem::replace(&mut seen[j], true) {
                            return Err(perr(*line, format!("image of `{label}` given twice")));
                        }
                        for (i, x) in combination(field, tgt.labels(), image, &d.body.target)?.into_iter().enumerate() {
                            matrix[i][j] = x;
                        }
                    }
                    matrix
                }
            };
            match epsilon_map(src, tgt, matrix) {
                Ok(mor) => {
                    m.morphisms.insert(d.name.clone(), mor);
                }
                Err(e) => issues.push(issue(e.to_string())),
            }
        }
        for b in &p.bimodules {
            let Some(alg) = m.algebras.get(&b.body.algebra).cloned() else {
                issues.push(skipped(format!("bimodule {}", b.name), b.line));
                continue;
            };
            let built = match &b.body.kind {
                BimoduleKind::Regular => Ok(regular_bimodule(alg)),
                BimoduleKind::Table { basis, left, right } => {
                    let mut t = BimoduleTable::new(&alg, basis.clone());
                    let (d, n) = (alg.dim(), basis.len());
                    let al = alg.labels().to_vec();
                    let an = b.body.algebra.as_str();
                    triple_entries(field, left, [&al, basis, basis], [an, &b.name, &b.name], |i, s, u, x| {
                        t.left[(i * n + s) * n + u] = x
                    })?;
                    triple_entries(field, right, [basis, &al, basis], [&b.name, an, &b.name], |s, i, u, x| {
                        t.right[(s * d + i) * n + u] = x
                    })?;
                    Bimodule::new(alg, t)
                }
            };
            match built {
                Ok(module) => {
                    m.bimodules.insert(b.name.clone(), module);
                }
                Err(e) => issues.push(Issue { object: format!("bimodule {}", b.name), line: b.line, message: e.to_string() }),
            }
        }
        for t in &p.triples {
            let Some(eps) = m.morphisms.get(&t.body.epsilon).cloned() else {
                issues.push(skipped(format!("triple {}", t.name), t.line));
                continue;
            };
            let (module, module_name) = match &t.body.module {
                Some(name) => match m.bimodules.get(name) {
                    Some(b) => (b.clone(), name.clone()),
                    None => {
                        issues.push(skipped(format!("triple {}", t.name), t.line));
                        continue;
                    }
                },
                None => (regular_bimodule(eps.target().clone()), "regular".to_string()),
            };
            if module.algebra() != eps.target() {
                return Err(perr(t.line, format!("module of triple `{}` is not over the target of `{}`", t.name, t.body.epsilon)));
            }
            match Triple::new(eps) {
                Ok(triple) => {
                    m.triples.insert(t.name.clone(), TripleEntryModel { triple, module, module_name });
                }
                Err(e) => issues.push(Issue { object: format!("triple {}", t.name), line: t.line, message: e.to_string() }),
            }
        }
        if !issues.is_empty() {
            return Err(CliError::Validation(issues));
        }
        for c in &p.cochains {
            let entry = &m.triples[&c.body.triple];
            let space = CochainSpace {
                field,
                dim_a: entry.triple.a().dim(),
                dim_b: entry.triple.b().dim(),
                dim_m: entry.module.dim(),
                degree: c.body.degree,
            };
            if space.checked_dim().is_none() {
                return Err(perr(c.line, "cochain space is too large"));
            }
            let slots = space.b_slots();
            let mut entries = Vec::new();
            for e in &c.body.entries {
                let line = e.value.line;
                if e.a.len() != c.body.degree || e.b.len() != slots {
                    return Err(perr(
                        line,
                        format!("degree {} needs {} A-arguments and {slots} B-arguments", c.body.degree, c.body.degree),
                    ));
                }
                let a = e.a.iter().map(|x| resolve(entry.triple.a().labels(), x, line, "A")).collect::<Result<_, _>>()?;
                let b = e.b.iter().map(|x| resolve(entry.triple.b().labels(), x, line, "B")).collect::<Result<_, _>>()?;
                let mi = resolve(entry.module.labels(), &e.m, line, "M")?;
                entries.push((CochainBasisIndex { a, b, m: mi }, scalar(field, &e.value)?));
            }
            let mut acc = Cochain::zero(space);
            for (idx, x) in entries {
                let single = Cochain::from_entries(space, &[(idx, x)]).map_err(|e| perr(c.line, e.to_string()))?;
                acc = acc.add(&single).map_err(|e| CliError::Internal(e.to_string()))?;
            }
            m.cochains.insert(c.name.clone(), (c.body.triple.clone(), acc));
        }
        for f in &p.families {
            let entry = &m.triples[&f.body.triple];
            let space = SecondaryComplex::new(entry.triple.clone(), entry.module.clone())
                .map_err(|e| perr(f.line, e.to_string()))?
                .space(2);
            let terms = match &f.body.terms {
                FamilyTerms::Zero(order) => vec![Cochain::zero(space); *order],
                FamilyTerms::Terms(names) => {
                    let mut out = Vec::new();
                    for n in names {
                        let (t, c) = &m.cochains[n];
                        if t != &f.body.triple || c.degree() != 2 {
                            return Err(perr(f.line, format!("term `{n}` must be a degree-2 cochain on `{}`", f.body.triple)));
                        }
                        out.push(c.clone());
                    }
                    out
                }
            };
            m.families.insert(f.name.clone(), (f.body.triple.clone(), terms));
        }
        Ok(m)
    }
}
