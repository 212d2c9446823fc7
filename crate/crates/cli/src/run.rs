//! Command dispatch: problem file in, [`Report`] out.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use secohom_core::algebra::{regular_bimodule, Bimodule, StructureAlgebra};
use secohom_core::complex::{hochschild_coboundary_matrix, Cochain, SecondaryComplex};
use secohom_core::deformation::{DeformationContext, DeformationError, Extension};
use secohom_core::linalg::{rank, solve};
use secohom_core::simplicial::{
    verify_cyclic_module, verify_kg2, FiniteAbelianGroup, SecondaryCyclicModule, VerificationReport,
};
use secohom_core::{Field, SparseMatrix, Strategy};

use crate::error::{exit, CliError, Issue};
use crate::model::Model;
use crate::problem::ProblemFile;
use crate::report::*;

pub const DEFAULT_SEED: u64 = 0x5ec0;
pub const DEFAULT_DEGREE: usize = 2;
pub const DEFAULT_KG2_LEVEL: usize = 4;
pub const DEFAULT_CYCLIC_LEVEL: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Cohomology,
    Hochschild,
    DeformCheck,
    DeformExtend,
    DeformObstruction,
    DeformGauge,
    SimplicialVerify,
    CyclicVerify,
    Validate,
}

impl Command {
    pub const ALL: [Command; 9] = [
        Command::Cohomology,
        Command::Hochschild,
        Command::DeformCheck,
        Command::DeformExtend,
        Command::DeformObstruction,
        Command::DeformGauge,
        Command::SimplicialVerify,
        Command::CyclicVerify,
        Command::Validate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Cohomology => "cohomology",
            Command::Hochschild => "hochschild",
            Command::DeformCheck => "deform-check",
            Command::DeformExtend => "deform-extend",
            Command::DeformObstruction => "deform-obstruction",
            Command::DeformGauge => "deform-gauge",
            Command::SimplicialVerify => "simplicial-verify",
            Command::CyclicVerify => "cyclic-verify",
            Command::Validate => "validate",
        }
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Command::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| format!("unknown command `{s}`"))
    }
}

/// Command-line overrides; `None` falls back to the task line, then to defaults.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overrides {
    pub degree: Option<usize>,
    pub order: Option<usize>,
    pub nmax: Option<usize>,
    pub field: Option<Field>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: u8,
}

struct Ctx<'a> {
    problem: &'a ProblemFile,
    overrides: &'a Overrides,
    params: BTreeMap<String, String>,
}

impl Ctx<'_> {
    fn number(&mut self, key: &str, flag: Option<u64>, default: u64) -> Result<u64, CliError> {
        let v = match (flag, self.problem.task.get(key)) {
            (Some(v), _) => v,
            (None, Some(t)) => {
                t.parse().map_err(|_| CliError::Parse { line: 0, message: format!("task {key}=`{t}` is not a number") })?
            }
            (None, None) => default,
        };
        self.params.insert(key.into(), v.to_string());
        Ok(v)
    }

    /// The task's choice for `key`, or the only candidate.
    fn pick<T>(&mut self, key: &str, map: &BTreeMap<String, T>, accept: impl Fn(&T) -> bool) -> Result<String, CliError> {
        let name = match self.problem.task.get(key) {
            Some(n) => n.clone(),
            None => {
                let candidates: Vec<&String> = map.iter().filter(|(_, v)| accept(v)).map(|(k, _)| k).collect();
                match candidates.as_slice() {
                    [one] => (*one).clone(),
                    [] => return Err(CliError::Usage(format!("the problem file defines no suitable {key}"))),
                    _ => return Err(CliError::Usage(format!("several candidates for {key}; add `task {key}=NAME`"))),
                }
            }
        };
        self.params.insert(key.into(), name.clone());
        Ok(name)
    }
}

fn math(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

fn matrix_info(name: String, m: &SparseMatrix, r: usize) -> MatrixInfo {
    MatrixInfo { name, rows: m.nrows(), cols: m.ncols(), nonzeros: m.nnz(), rank: r }
}

fn cochain_json(c: &Cochain, a: &StructureAlgebra, b: &StructureAlgebra, m: &Bimodule) -> CochainJson {
    let sp = c.space();
    let entries = c
        .coefficients()
        .coords()
        .into_iter()
        .map(|(k, x)| {
            let idx = sp.decode(k);
            CochainEntryJson {
                a: idx.a.iter().map(|&i| a.labels()[i].clone()).collect(),
                b: idx.b.iter().map(|&i| b.labels()[i].clone()).collect(),
                m: m.labels()[idx.m].clone(),
                value: x.to_string(),
            }
        })
        .collect();
    CochainJson { degree: c.degree(), entries }
}

fn identities(object: String, max_level: usize, r: &VerificationReport) -> Results {
    Results::Identities {
        object,
        max_level,
        sampled: r.sampled,
        families: r
            .summary()
            .into_iter()
            .map(|s| FamilyResult { family: s.family.slug().into(), checked: s.checked, failed: s.failed })
            .collect(),
        failures: r
            .checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| IdentityFailure {
                family: c.family.slug().into(),
                level: c.level,
                indices: c.indices.clone(),
                witness: c.witness.as_ref().map(ToString::to_string).unwrap_or_default(),
            })
            .collect(),
    }
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// Parses, builds and runs one command. `input` is the file name echoed in the report.
pub fn execute(command: Command, text: &str, input: &str, overrides: &Overrides) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let problem = ProblemFile::parse(text)?;
    let field = overrides.field.or(problem.field).unwrap_or_default();
    let mut ctx = Ctx { problem: &problem, overrides, params: BTreeMap::new() };
    let (verdict, results) = match Model::build(&problem, field) {
        Err(CliError::Validation(issues)) if command == Command::Validate => (Verdict::Fail, validation(&problem, &issues)),
        Err(e) => return Err(e),
        Ok(model) => dispatch(command, &model, &mut ctx)?,
    };
    let exit_code = match (verdict, command) {
        (Verdict::Pass, _) => exit::PASS,
        (Verdict::Fail, Command::Validate) => exit::VALIDATION,
        (Verdict::Fail, _) => exit::MATH_FAILURE,
    };
    let report = Report {
        schema: SCHEMA.into(),
        deterministic: Deterministic {
            command: command.name().into(),
            input: input.into(),
            field: field.to_string(),
            parameters: ctx.params,
            verdict,
            results,
        },
        timing: Timing { elapsed_micros: start.elapsed().as_micros() as u64 },
    };
    Ok(Outcome { report, exit_code })
}

fn object_names(p: &ProblemFile) -> Vec<(String, usize)> {
    let mut out = Vec::new();
    out.extend(p.groups.iter().map(|d| (format!("group {}", d.name), d.line)));
    out.extend(p.algebras.iter().map(|d| (format!("algebra {}", d.name), d.line)));
    out.extend(p.morphisms.iter().map(|d| (format!("morphism {}", d.name), d.line)));
    out.extend(p.bimodules.iter().map(|d| (format!("bimodule {}", d.name), d.line)));
    out.extend(p.triples.iter().map(|d| (format!("triple {}", d.name), d.line)));
    out
}

fn validation(p: &ProblemFile, issues: &[Issue]) -> Results {
    let objects = object_names(p)
        .into_iter()
        .map(|(object, _)| {
            let message = issues.iter().find(|i| i.object == object).map(|i| i.message.clone());
            ObjectStatus { valid: message.is_none(), object, message }
        })
        .collect();
    Results::Validation { objects }
}

fn dispatch(command: Command, model: &Model, ctx: &mut Ctx) -> Result<(Verdict, Results), CliError> {
    match command {
        Command::Validate => Ok((Verdict::Pass, validation(ctx.problem, &[]))),
        Command::Cohomology => {
            let name = ctx.pick("triple", &model.triples, |_| true)?;
            let degree = ctx.number("degree", ctx.overrides.degree.map(|d| d as u64), DEFAULT_DEGREE as u64)? as usize;
            let entry = &model.triples[&name];
            let cx = SecondaryComplex::new(entry.triple.clone(), entry.module.clone())
                .map_err(math)?
                .with_max_degree(degree.max(secohom_core::complex::DEFAULT_MAX_DEGREE));
            let mut degrees = Vec::new();
            for n in 0..=degree {
                let h = cx.cohomology_dim(n).map_err(math)?;
                let out = matrix_info(format!("delta_{n}"), &*cx.coboundary_matrix(n).map_err(math)?, h.rank_out);
                let incoming = if n == 0 {
                    None
                } else {
                    Some(matrix_info(format!("delta_{}", n - 1), &*cx.coboundary_matrix(n - 1).map_err(math)?, h.rank_in))
                };
                degrees.push(DegreeResult { degree: n, cochain_dim: h.cochain_dim, dim: h.dim, outgoing: out, incoming });
            }
            Ok((Verdict::Pass, Results::Cohomology { triple: name, module: entry.module_name.clone(), degrees }))
        }
        Command::Hochschild => {
            let (algebra, module_name, module) = if ctx.problem.task.contains_key("algebra") || model.triples.is_empty() {
                let name = ctx.pick("algebra", &model.algebras, |_| true)?;
                let a = model.algebras[&name].clone();
                (name, "regular".to_string(), regular_bimodule(a))
            } else {
                let t = ctx.pick("triple", &model.triples, |_| true)?;
                let entry = &model.triples[&t];
                let a = model
                    .algebras
                    .iter()
                    .find(|(_, a)| *a == entry.triple.a())
                    .map(|(n, _)| n.clone())
                    .unwrap_or_else(|| "A".into());
                (a, entry.module_name.clone(), entry.module.clone())
            };
            let degree = ctx.number("degree", ctx.overrides.degree.map(|d| d as u64), DEFAULT_DEGREE as u64)? as usize;
            let mats: Vec<SparseMatrix> = (0..=degree).map(|n| hochschild_coboundary_matrix(&module, n)).collect();
            let ranks: Vec<usize> = mats.iter().map(rank).collect();
            let degrees = (0..=degree)
                .map(|n| {
                    let cochain_dim = mats[n].ncols();
                    let rank_in = if n == 0 { 0 } else { ranks[n - 1] };
                    DegreeResult {
                        degree: n,
                        cochain_dim,
                        dim: cochain_dim - ranks[n] - rank_in,
                        outgoing: matrix_info(format!("d_{n}"), &mats[n], ranks[n]),
                        incoming: (n > 0).then(|| matrix_info(format!("d_{}", n - 1), &mats[n - 1], ranks[n - 1])),
                    }
                })
                .collect();
            Ok((Verdict::Pass, Results::Hochschild { algebra, module: module_name, degrees }))
        }
        Command::DeformCheck | Command::DeformExtend | Command::DeformObstruction => deform(command, model, ctx),
        Command::DeformGauge => {
            let first = ctx.pick("cochain", &model.cochains, |(_, c)| c.degree() == 2)?;
            let second = match ctx.problem.task.get("other") {
                Some(o) => o.clone(),
                None => return Err(CliError::Usage("deform-gauge needs `task cochain=C other=D`".into())),
            };
            ctx.params.insert("other".into(), second.clone());
            let (t1, c) = &model.cochains[&first];
            let (t2, d) = &model.cochains[&second];
            if t1 != t2 {
                return Err(CliError::Usage(format!("`{first}` and `{second}` live on different triples")));
            }
            let dctx = deformation_context(model, t1)?;
            let g = dctx.gauge_equivalent_first_order(c, d).map_err(deform_error)?;
            let d1 = dctx.complex().coboundary_matrix(1).map_err(math)?;
            let r = dctx.complex().coboundary_rank(1).map_err(math)?;
            let transform = g.map(|g| g.matrix.iter().map(|row| row.iter().map(ToString::to_string).collect()).collect());
            Ok((
                verdict(transform.is_some()),
                Results::Gauge {
                    first,
                    second,
                    equivalent: transform.is_some(),
                    coboundary: matrix_info("delta_1".into(), &d1, r),
                    transform,
                },
            ))
        }
        Command::SimplicialVerify => {
            let name = ctx.pick("group", &model.groups, |_| true)?;
            let q_max = ctx.number("nmax", ctx.overrides.nmax.map(|d| d as u64), DEFAULT_KG2_LEVEL as u64)? as usize;
            let seed = ctx.number("seed", ctx.overrides.seed, DEFAULT_SEED)?;
            let g = FiniteAbelianGroup::new(model.groups[&name].clone()).map_err(|e| {
                CliError::Validation(vec![Issue { object: format!("group {name}"), line: 0, message: e.to_string() }])
            })?;
            let r = verify_kg2(&g, q_max, Strategy::default(), seed);
            Ok((verdict(r.passed()), identities(format!("K({name}, 2)"), q_max, &r)))
        }
        Command::CyclicVerify => {
            let name = ctx.pick("augmentation", &model.morphisms, |m| m.target().dim() == 1)?;
            let n_max = ctx.number("nmax", ctx.overrides.nmax.map(|d| d as u64), DEFAULT_CYCLIC_LEVEL as u64)? as usize;
            let eps = &model.morphisms[&name];
            let b: Arc<StructureAlgebra> = eps.source().clone();
            let module = SecondaryCyclicModule::new(b, eps).map_err(|e| {
                CliError::Validation(vec![Issue { object: format!("morphism {name}"), line: 0, message: e.to_string() }])
            })?;
            let source = model
                .algebras
                .iter()
                .find(|(_, a)| *a == eps.source())
                .map(|(n, _)| n.clone())
                .unwrap_or_else(|| "B".into());
            let r = verify_cyclic_module(&module, n_max);
            Ok((verdict(r.passed()), identities(format!("2K({source})"), n_max, &r)))
        }
    }
}

fn deformation_context(model: &Model, triple: &str) -> Result<DeformationContext, CliError> {
    let entry = &model.triples[triple];
    let cx = SecondaryComplex::new(entry.triple.clone(), entry.module.clone()).map_err(math)?;
    DeformationContext::from_complex(cx)
        .map_err(|_| CliError::Usage(format!("deformations need M = A, but triple `{triple}` uses another module")))
}

fn deform_error(e: DeformationError) -> CliError {
    match e {
        DeformationError::NotAssociative { .. } => CliError::Math(e.to_string()),
        other => CliError::Internal(other.to_string()),
    }
}

fn deform(command: Command, model: &Model, ctx: &mut Ctx) -> Result<(Verdict, Results), CliError> {
    let name = ctx.pick("family", &model.families, |_| true)?;
    let (triple, terms) = &model.families[&name];
    let dctx = deformation_context(model, triple)?;
    let fam = dctx.family(terms.clone()).map_err(deform_error)?;
    let entry = &model.triples[triple];
    let (a, b) = (entry.triple.a(), entry.triple.b());
    let json = |c: &Cochain| cochain_json(c, a, b, &entry.module);
    let order = fam.order();
    match command {
        Command::DeformCheck => {
            let k = ctx.number("order", ctx.overrides.order.map(|d| d as u64), order as u64 + 1)? as usize;
            if k == 0 || k > order + 1 {
                return Err(CliError::Usage(format!("--order must lie in 1..={} for a family of order {order}", order + 1)));
            }
            let r = dctx.check_generalized_associativity(&fam, k).map_err(deform_error)?;
            let first_term_is_cocycle =
                if order >= 1 { Some(dctx.is_two_cocycle(fam.term(1)).map_err(deform_error)?) } else { None };
            let witness = r.witness.as_ref().map(|w| AssociativityWitnessJson {
                power: w.power,
                a: w.a.iter().map(|&i| a.labels()[i].clone()).collect(),
                alpha: w.alpha.iter().map(|&i| b.labels()[i].clone()).collect(),
            });
            Ok((
                verdict(r.passed()),
                Results::Associativity {
                    family: name,
                    order,
                    k_order: k,
                    tuples_checked: r.tuples_checked,
                    first_term_is_cocycle,
                    witness,
                },
            ))
        }
        _ => {
            let omega = dctx.obstruction(&fam).map_err(deform_error)?;
            let cx = dctx.complex();
            let d2 = cx.coboundary_matrix(2).map_err(math)?;
            let r = cx.coboundary_rank(2).map_err(math)?;
            let omega_is_cocycle = cx.apply_coboundary(&omega).map_err(math)?.is_zero();
            let vanishes = solve(&d2, omega.coefficients()).map_err(math)?.is_some();
            let obstruction = ObstructionJson {
                omega: json(&omega),
                omega_is_cocycle,
                coboundary: matrix_info("delta_2".into(), &d2, r),
                augmented_rank: if vanishes { r } else { r + 1 },
            };
            if command == Command::DeformObstruction {
                return Ok((
                    verdict(vanishes),
                    Results::Obstruction { family: name, order, class_vanishes: vanishes, obstruction },
                ));
            }
            let next_term = match dctx.extend_one_order(&fam).map_err(deform_error)? {
                Extension::Extended { term, .. } => Some(json(&term)),
                Extension::Obstructed(cert) => {
                    if cert.rank_augmented != obstruction.augmented_rank {
                        return Err(CliError::Internal("obstruction certificate disagrees with direct solve".into()));
                    }
                    None
                }
            };
            Ok((
                verdict(next_term.is_some()),
                Results::Extension { family: name, order, extended: next_term.is_some(), next_term, obstruction },
            ))
        }
    }
}

/// Fixed-width human summary of a report.
pub fn render_table(r: &Report) -> String {
    let d = &r.deterministic;
    let mut s = String::new();
    let verdict = match d.verdict {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
    };
    let _ = writeln!(s, "{:<14}{}", "command", d.command);
    let _ = writeln!(s, "{:<14}{}", "input", d.input);
    let _ = writeln!(s, "{:<14}{}", "field", d.field);
    for (k, v) in &d.parameters {
        let _ = writeln!(s, "{:<14}{}", k, v);
    }
    let _ = writeln!(s, "{:<14}{}", "verdict", verdict);
    let _ = writeln!(s);
    let cochain = |s: &mut String, title: &str, c: &CochainJson| {
        let _ = writeln!(s, "{title} (degree {}, {} nonzero entries)", c.degree, c.entries.len());
        for e in &c.entries {
            let _ = writeln!(s, "  ({} ; {}) -> {} = {}", e.a.join(", "), e.b.join(", "), e.m, e.value);
        }
    };
    match &d.results {
        Results::Validation { objects } => {
            for o in objects {
                let _ = writeln!(s, "{:<32}{:<8}{}", o.object, if o.valid { "ok" } else { "INVALID" }, o.message.as_deref().unwrap_or(""));
            }
        }
        Results::Cohomology { degrees, .. } | Results::Hochschild { degrees, .. } => {
            let _ = writeln!(s, "{:>6}{:>12}{:>12}{:>12}{:>8}", "n", "dim C^n", "rank out", "rank in", "dim H^n");
            for g in degrees {
                let rin = g.incoming.as_ref().map_or(0, |m| m.rank);
                let _ = writeln!(s, "{:>6}{:>12}{:>12}{:>12}{:>8}", g.degree, g.cochain_dim, g.outgoing.rank, rin, g.dim);
            }
        }
        Results::Associativity { k_order, tuples_checked, first_term_is_cocycle, witness, .. } => {
            let _ = writeln!(s, "{:<24}t^0 .. t^{}", "compared", k_order - 1);
            let _ = writeln!(s, "{:<24}{}", "tuples checked", tuples_checked);
            if let Some(c) = first_term_is_cocycle {
                let _ = writeln!(s, "{:<24}{}", "c_1 is a 2-cocycle", c);
            }
            if let Some(w) = witness {
                let _ = writeln!(s, "{:<24}t^{} on a = ({}), alpha = ({})", "witness", w.power, w.a.join(", "), w.alpha.join(", "));
            }
        }
        Results::Extension { next_term, obstruction, .. } => {
            let _ = writeln!(s, "{:<24}{} / {}", "rank delta_2 / with w", obstruction.coboundary.rank, obstruction.augmented_rank);
            match next_term {
                Some(c) => cochain(&mut s, "next term", c),
                None => cochain(&mut s, "obstruction w", &obstruction.omega),
            }
        }
        Results::Obstruction { class_vanishes, obstruction, .. } => {
            let _ = writeln!(s, "{:<24}{}", "w is a 3-cocycle", obstruction.omega_is_cocycle);
            let _ = writeln!(s, "{:<24}{}", "class vanishes", class_vanishes);
            let _ = writeln!(s, "{:<24}{} / {}", "rank delta_2 / with w", obstruction.coboundary.rank, obstruction.augmented_rank);
            cochain(&mut s, "obstruction w", &obstruction.omega);
        }
        Results::Gauge { equivalent, transform, .. } => {
            let _ = writeln!(s, "{:<24}{}", "gauge equivalent", equivalent);
            if let Some(t) = transform {
                let _ = writeln!(s, "f_1 (row s, column i: coefficient of e_s in f_1(e_i))");
                for row in t {
                    let _ = writeln!(s, "  {}", row.iter().map(|x| format!("{x:>8}")).collect::<String>());
                }
            }
        }
        Results::Identities { families, failures, sampled, .. } => {
            let _ = writeln!(s, "{:<24}{:>9}{:>9}", "identity", "checked", "failed");
            for f in families {
                let _ = writeln!(s, "{:<24}{:>9}{:>9}", f.family, f.checked, f.failed);
            }
            if *sampled {
                let _ = writeln!(s, "(some levels were sampled)");
            }
            if let Some(f) = failures.first() {
                let _ = writeln!(s, "first failure: {} at level {} indices {:?}: {}", f.family, f.level, f.indices, f.witness);
            }
        }
    }
    s
}
