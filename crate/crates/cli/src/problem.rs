//! Line-oriented problem files. See `docs/problem-format.md` for the grammar.
//!
//! Parsing is purely syntactic; names are resolved and algebraic data is
//! checked by [`crate::model::Model::build`].

use std::collections::BTreeMap;

use secohom_core::Field;

use crate::error::CliError;

/// An unparsed scalar literal with the line it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Literal {
    pub text: String,
    pub line: usize,
}

/// `coefficient * label`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coefficient: Literal,
    pub label: String,
}

/// `(x, y, z) = value`, indices given as labels or 0-based integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleEntry {
    pub indices: [String; 3],
    pub value: Literal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Def<T> {
    pub name: String,
    pub line: usize,
    pub body: T,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupDef {
    /// `ℤ/n_1 × ℤ/n_2 × …`.
    Cyclic(Vec<usize>),
    Symmetric(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraDef {
    Ground,
    Truncated(usize),
    Group(String),
    Table { basis: Vec<String>, unit: Vec<Term>, commutative: bool, constants: Vec<TripleEntry> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismKind {
    Unit,
    Identity,
    /// `label -> combination`; omitted basis elements map to zero.
    Images(Vec<(String, Vec<Term>, usize)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismDef {
    pub source: String,
    pub target: String,
    pub kind: MorphismKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BimoduleKind {
    Regular,
    /// `left (a, m, m') = v` gives the coefficient of `m'` in `a·m`; `right (m, a, m') = v` in `m·a`.
    Table { basis: Vec<String>, left: Vec<TripleEntry>, right: Vec<TripleEntry> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BimoduleDef {
    pub algebra: String,
    pub kind: BimoduleKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleDef {
    pub epsilon: String,
    pub module: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainEntry {
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub m: String,
    pub value: Literal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainDef {
    pub triple: String,
    pub degree: usize,
    pub entries: Vec<CochainEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyTerms {
    Zero(usize),
    Terms(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyDef {
    pub triple: String,
    pub terms: FamilyTerms,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProblemFile {
    pub field: Option<Field>,
    pub groups: Vec<Def<GroupDef>>,
    pub algebras: Vec<Def<AlgebraDef>>,
    pub morphisms: Vec<Def<MorphismDef>>,
    pub bimodules: Vec<Def<BimoduleDef>>,
    pub triples: Vec<Def<TripleDef>>,
    pub cochains: Vec<Def<CochainDef>>,
    pub families: Vec<Def<FamilyDef>>,
    /// `task key=value …`.
    pub task: BTreeMap<String, String>,
}

pub const TASK_KEYS: [&str; 11] =
    ["triple", "family", "cochain", "other", "group", "algebra", "augmentation", "degree", "order", "nmax", "seed"];

fn err(line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse { line, message: message.into() }
}

fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || "_^'.".contains(c))
}

fn name(tok: Option<&&str>, line: usize, what: &str) -> Result<String, CliError> {
    match tok {
        Some(t) if is_name(t) => Ok(t.to_string()),
        Some(t) => Err(err(line, format!("`{t}` is not a valid {what}"))),
        None => Err(err(line, format!("missing {what}"))),
    }
}

fn number(tok: Option<&&str>, line: usize, what: &str) -> Result<usize, CliError> {
    let t = tok.ok_or_else(|| err(line, format!("missing {what}")))?;
    t.parse().map_err(|_| err(line, format!("`{t}` is not a valid {what}")))
}

fn literal(text: &str, line: usize) -> Result<Literal, CliError> {
    Field::Rationals.parse_scalar(text).map_err(|e| err(line, e.to_string()))?;
    Ok(Literal { text: text.to_string(), line })
}

fn expect_end(toks: &[&str], used: usize, line: usize) -> Result<(), CliError> {
    match toks.get(used) {
        None => Ok(()),
        Some(t) => Err(err(line, format!("unexpected `{t}`"))),
    }
}

/// `[sign] [coef *] label { (+|-) [coef *] label }`; `0` alone is the empty sum.
pub fn parse_combination(text: &str, line: usize) -> Result<Vec<Term>, CliError> {
    let text = text.trim();
    if text == "0" {
        return Ok(Vec::new());
    }
    let mut spaced = String::new();
    for (k, c) in text.char_indices() {
        let prev = text[..k].trim_end().chars().last();
        if (c == '+' || c == '-') && !matches!(prev, None | Some('*') | Some('+') | Some('-') | Some('/')) {
            spaced.push(' ');
            spaced.push(c);
            spaced.push(' ');
        } else {
            spaced.push(c);
        }
    }
    let mut terms = Vec::new();
    let mut sign = 1;
    let mut expect_term = true;
    for tok in spaced.split_whitespace() {
        match tok {
            "+" | "-" if !expect_term => {
                sign = if tok == "-" { -1 } else { 1 };
                expect_term = true;
            }
            _ if expect_term => {
                let (coef, label) = match tok.rsplit_once('*') {
                    Some((c, l)) => (c.to_string(), l),
                    None => match tok.strip_prefix('-') {
                        Some(l) => ("-1".to_string(), l),
                        None => ("1".to_string(), tok),
                    },
                };
                if !is_name(label) {
                    return Err(err(line, format!("`{label}` is not a basis label")));
                }
                let coef = if sign < 0 {
                    match coef.strip_prefix('-') {
                        Some(c) => c.to_string(),
                        None => format!("-{coef}"),
                    }
                } else {
                    coef
                };
                terms.push(Term { coefficient: literal(&coef, line)?, label: label.to_string() });
                sign = 1;
                expect_term = false;
            }
            _ => return Err(err(line, format!("unexpected `{tok}` in linear combination"))),
        }
    }
    if expect_term {
        return Err(err(line, "incomplete linear combination"));
    }
    Ok(terms)
}

/// `(i, j, k) = value`.
fn parse_triple_entry(text: &str, line: usize) -> Result<TripleEntry, CliError> {
    let (inside, value) = parenthesised(text, line)?;
    let idx: Vec<String> = inside.split(',').map(|s| s.trim().to_string()).collect();
    if idx.len() != 3 || idx.iter().any(|s| !is_name(s)) {
        return Err(err(line, "expected three indices `(i, j, k)`"));
    }
    let value = value.trim().strip_prefix('=').ok_or_else(|| err(line, "expected `= value`"))?.trim();
    Ok(TripleEntry { indices: [idx[0].clone(), idx[1].clone(), idx[2].clone()], value: literal(value, line)? })
}

fn parenthesised(text: &str, line: usize) -> Result<(&str, &str), CliError> {
    let rest = text.trim().strip_prefix('(').ok_or_else(|| err(line, "expected `(`"))?;
    rest.split_once(')').ok_or_else(|| err(line, "missing `)`"))
}

/// `(a_1, …, a_n ; b_1, …) -> m = value`.
fn parse_cochain_entry(text: &str, line: usize) -> Result<CochainEntry, CliError> {
    let (inside, rest) = parenthesised(text, line)?;
    let (a, b) = inside.split_once(';').unwrap_or((inside, ""));
    let list = |s: &str| -> Result<Vec<String>, CliError> {
        let items: Vec<String> = s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect();
        match items.iter().find(|x| !is_name(x)) {
            Some(x) => Err(err(line, format!("`{x}` is not a basis label"))),
            None => Ok(items),
        }
    };
    let rest = rest.trim().strip_prefix("->").ok_or_else(|| err(line, "expected `-> label = value`"))?;
    let (m, value) = rest.split_once('=').ok_or_else(|| err(line, "expected `= value`"))?;
    let m = m.trim();
    if !is_name(m) {
        return Err(err(line, format!("`{m}` is not a basis label")));
    }
    Ok(CochainEntry { a: list(a)?, b: list(b)?, m: m.to_string(), value: literal(value.trim(), line)? })
}

enum Block {
    Algebra { def: Def<()>, basis: Option<Vec<String>>, unit: Option<Vec<Term>>, commutative: bool, constants: Vec<TripleEntry> },
    Morphism { def: Def<()>, source: String, target: String, images: Vec<(String, Vec<Term>, usize)> },
    Bimodule { def: Def<()>, algebra: String, basis: Option<Vec<String>>, left: Vec<TripleEntry>, right: Vec<TripleEntry> },
    Cochain { def: Def<()>, triple: String, degree: usize, entries: Vec<CochainEntry> },
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<ProblemFile, CliError> {
        let mut p = ProblemFile::default();
        let mut block: Option<Block> = None;
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let toks: Vec<&str> = content.split_whitespace().collect();
            if let Some(b) = block.as_mut() {
                if toks == ["end"] {
                    p.close(block.take().expect("open block"))?;
                } else {
                    Self::block_line(b, content, &toks, line)?;
                }
                continue;
            }
            block = p.statement(content, &toks, line)?;
        }
        if let Some(b) = block {
            let line = match &b {
                Block::Algebra { def, .. }
                | Block::Morphism { def, .. }
                | Block::Bimodule { def, .. }
                | Block::Cochain { def, .. } => def.line,
            };
            return Err(err(line, "block is never closed with `end`"));
        }
        p.check_names()?;
        Ok(p)
    }

    fn statement(&mut self, content: &str, toks: &[&str], line: usize) -> Result<Option<Block>, CliError> {
        let def = |name: String| Def { name, line, body: () };
        match toks[0] {
            "field" => {
                if self.field.is_some() {
                    return Err(err(line, "field declared twice"));
                }
                let f = match toks.get(1..) {
                    Some(["rationals"]) => Field::Rationals,
                    Some(["prime", p]) => {
                        let p = p.parse::<u64>().map_err(|_| err(line, format!("`{p}` is not a prime")))?;
                        Field::prime(p).map_err(|e| err(line, e.to_string()))?
                    }
                    _ => return Err(err(line, "expected `field rationals` or `field prime P`")),
                };
                self.field = Some(f);
            }
            "group" => {
                let n = name(toks.get(1), line, "group name")?;
                let body = match toks.get(2).copied() {
                    Some("cyclic") if toks.len() > 3 => GroupDef::Cyclic(
                        toks[3..].iter().map(|t| number(Some(t), line, "group order")).collect::<Result<_, _>>()?,
                    ),
                    Some("symmetric") => {
                        expect_end(toks, 4, line)?;
                        GroupDef::Symmetric(number(toks.get(3), line, "degree")?)
                    }
                    _ => return Err(err(line, "expected `group NAME cyclic N…` or `group NAME symmetric N`")),
                };
                self.groups.push(Def { name: n, line, body });
            }
            "algebra" => {
                let n = name(toks.get(1), line, "algebra name")?;
                let body = match toks.get(2).copied() {
                    None => {
                        return Ok(Some(Block::Algebra {
                            def: def(n),
                            basis: None,
                            unit: None,
                            commutative: false,
                            constants: Vec::new(),
                        }))
                    }
                    Some("ground") => AlgebraDef::Ground,
                    Some("truncated") => AlgebraDef::Truncated(number(toks.get(3), line, "dimension")?),
                    Some("group") => AlgebraDef::Group(name(toks.get(3), line, "group name")?),
                    Some(t) => return Err(err(line, format!("unknown algebra form `{t}`"))),
                };
                expect_end(toks, if body == AlgebraDef::Ground { 3 } else { 4 }, line)?;
                self.algebras.push(Def { name: n, line, body });
            }
            "morphism" => {
                let n = name(toks.get(1), line, "morphism name")?;
                let source = name(toks.get(2), line, "source algebra")?;
                if toks.get(3) != Some(&"->") {
                    return Err(err(line, "expected `morphism NAME SOURCE -> TARGET`"));
                }
                let target = name(toks.get(4), line, "target algebra")?;
                let kind = match toks.get(5).copied() {
                    None => return Ok(Some(Block::Morphism { def: def(n), source, target, images: Vec::new() })),
                    Some("unit") => MorphismKind::Unit,
                    Some("identity") => MorphismKind::Identity,
                    Some(t) => return Err(err(line, format!("unknown morphism form `{t}`"))),
                };
                expect_end(toks, 6, line)?;
                self.morphisms.push(Def { name: n, line, body: MorphismDef { source, target, kind } });
            }
            "bimodule" => {
                let n = name(toks.get(1), line, "bimodule name")?;
                if toks.get(2) != Some(&"over") {
                    return Err(err(line, "expected `bimodule NAME over ALGEBRA`"));
                }
                let algebra = name(toks.get(3), line, "algebra name")?;
                match toks.get(4).copied() {
                    None => {
                        return Ok(Some(Block::Bimodule {
                            def: def(n),
                            algebra,
                            basis: None,
                            left: Vec::new(),
                            right: Vec::new(),
                        }))
                    }
                    Some("regular") => {
                        expect_end(toks, 5, line)?;
                        self.bimodules.push(Def { name: n, line, body: BimoduleDef { algebra, kind: BimoduleKind::Regular } });
                    }
                    Some(t) => return Err(err(line, format!("unknown bimodule form `{t}`"))),
                }
            }
            "triple" => {
                let n = name(toks.get(1), line, "triple name")?;
                let epsilon = name(toks.get(2), line, "morphism name")?;
                let module = match toks.get(3).copied() {
                    None => None,
                    Some("module") => {
                        expect_end(toks, 5, line)?;
                        Some(name(toks.get(4), line, "bimodule name")?)
                    }
                    Some(t) => return Err(err(line, format!("unexpected `{t}`"))),
                };
                self.triples.push(Def { name: n, line, body: TripleDef { epsilon, module } });
            }
            "cochain" => {
                let n = name(toks.get(1), line, "cochain name")?;
                if toks.get(2) != Some(&"on") || toks.get(4) != Some(&"degree") {
                    return Err(err(line, "expected `cochain NAME on TRIPLE degree N`"));
                }
                let triple = name(toks.get(3), line, "triple name")?;
                let degree = number(toks.get(5), line, "degree")?;
                expect_end(toks, 6, line)?;
                return Ok(Some(Block::Cochain { def: def(n), triple, degree, entries: Vec::new() }));
            }
            "family" => {
                let n = name(toks.get(1), line, "family name")?;
                if toks.get(2) != Some(&"on") {
                    return Err(err(line, "expected `family NAME on TRIPLE …`"));
                }
                let triple = name(toks.get(3), line, "triple name")?;
                let terms = match toks.get(4).copied() {
                    Some("order") => {
                        expect_end(toks, 6, line)?;
                        FamilyTerms::Zero(number(toks.get(5), line, "order")?)
                    }
                    Some("terms") if toks.len() > 5 => FamilyTerms::Terms(
                        toks[5..].iter().map(|t| name(Some(t), line, "cochain name")).collect::<Result<_, _>>()?,
                    ),
                    _ => return Err(err(line, "expected `order N` or `terms C1 C2 …`")),
                };
                self.families.push(Def { name: n, line, body: FamilyDef { triple, terms } });
            }
            "task" => {
                for kv in &toks[1..] {
                    let (k, v) = kv.split_once('=').ok_or_else(|| err(line, format!("expected key=value, got `{kv}`")))?;
                    if !TASK_KEYS.contains(&k) {
                        return Err(err(line, format!("unknown task key `{k}`")));
                    }
                    if self.task.insert(k.to_string(), v.to_string()).is_some() {
                        return Err(err(line, format!("task key `{k}` given twice")));
                    }
                }
            }
            _ => return Err(err(line, format!("unknown statement `{}`", content.split_whitespace().next().unwrap_or("")))),
        }
        Ok(None)
    }

    fn block_line(b: &mut Block, content: &str, toks: &[&str], line: usize) -> Result<(), CliError> {
        let labels = |toks: &[&str]| -> Result<Vec<String>, CliError> {
            if toks.is_empty() {
                return Err(err(line, "`basis` needs at least one label"));
            }
            toks.iter().map(|t| name(Some(t), line, "basis label")).collect()
        };
        let once = |slot: &Option<Vec<String>>| match slot {
            Some(_) => Err(err(line, "basis declared twice")),
            None => Ok(()),
        };
        match b {
            Block::Algebra { basis, unit, commutative, constants, .. } => match toks[0] {
                "basis" => {
                    once(basis)?;
                    *basis = Some(labels(&toks[1..])?);
                }
                "unit" => {
                    let rest = content["unit".len()..].trim();
                    let rest = rest.strip_prefix('=').ok_or_else(|| err(line, "expected `unit = combination`"))?;
                    *unit = Some(parse_combination(rest, line)?);
                }
                "commutative" => {
                    expect_end(toks, 1, line)?;
                    *commutative = true;
                }
                _ if content.starts_with('(') => constants.push(parse_triple_entry(content, line)?),
                t => return Err(err(line, format!("unexpected `{t}` in algebra block"))),
            },
            Block::Morphism { images, .. } => {
                let (label, image) = content.split_once("->").ok_or_else(|| err(line, "expected `label -> combination`"))?;
                let label = label.trim();
                if !is_name(label) {
                    return Err(err(line, format!("`{label}` is not a basis label")));
                }
                images.push((label.to_string(), parse_combination(image, line)?, line));
            }
            Block::Bimodule { basis, left, right, .. } => match toks[0] {
                "basis" => {
                    once(basis)?;
                    *basis = Some(labels(&toks[1..])?);
                }
                "left" => left.push(parse_triple_entry(&content[4..], line)?),
                "right" => right.push(parse_triple_entry(&content[5..], line)?),
                t => return Err(err(line, format!("unexpected `{t}` in bimodule block"))),
            },
            Block::Cochain { entries, .. } => entries.push(parse_cochain_entry(content, line)?),
        }
        Ok(())
    }

    fn close(&mut self, b: Block) -> Result<(), CliError> {
        match b {
            Block::Algebra { def, basis, unit, commutative, constants } => {
                let basis = basis.ok_or_else(|| err(def.line, format!("algebra `{}` has no basis", def.name)))?;
                let unit = unit.ok_or_else(|| err(def.line, format!("algebra `{}` has no unit", def.name)))?;
                self.algebras.push(Def {
                    name: def.name,
                    line: def.line,
                    body: AlgebraDef::Table { basis, unit, commutative, constants },
                });
            }
            Block::Morphism { def, source, target, images } => self.morphisms.push(Def {
                name: def.name,
                line: def.line,
                body: MorphismDef { source, target, kind: MorphismKind::Images(images) },
            }),
            Block::Bimodule { def, algebra, basis, left, right } => {
                let basis = basis.ok_or_else(|| err(def.line, format!("bimodule `{}` has no basis", def.name)))?;
                self.bimodules.push(Def {
                    name: def.name,
                    line: def.line,
                    body: BimoduleDef { algebra, kind: BimoduleKind::Table { basis, left, right } },
                });
            }
            Block::Cochain { def, triple, degree, entries } => self.cochains.push(Def {
                name: def.name,
                line: def.line,
                body: CochainDef { triple, degree, entries },
            }),
        }
        Ok(())
    }

    /// Rejects duplicate names within a kind and dangling references.
    fn check_names(&self) -> Result<(), CliError> {
        fn names<T>(defs: &[Def<T>], kind: &str) -> Result<BTreeMap<String, usize>, CliError> {
            let mut seen = BTreeMap::new();
            for d in defs {
                if seen.insert(d.name.clone(), d.line).is_some() {
                    return Err(err(d.line, format!("{kind} `{}` is defined twice", d.name)));
                }
            }
            Ok(seen)
        }
        let groups = names(&self.groups, "group")?;
        let algebras = names(&self.algebras, "algebra")?;
        let morphisms = names(&self.morphisms, "morphism")?;
        let bimodules = names(&self.bimodules, "bimodule")?;
        let triples = names(&self.triples, "triple")?;
        let cochains = names(&self.cochains, "cochain")?;
        let families = names(&self.families, "family")?;
        let need = |map: &BTreeMap<String, usize>, kind: &str, n: &str, line: usize| {
            if map.contains_key(n) {
                Ok(())
            } else {
                Err(err(line, format!("unknown {kind} `{n}`")))
            }
        };
        for a in &self.algebras {
            if let AlgebraDef::Group(g) = &a.body {
                need(&groups, "group", g, a.line)?;
            }
        }
        for m in &self.morphisms {
            need(&algebras, "algebra", &m.body.source, m.line)?;
            need(&algebras, "algebra", &m.body.target, m.line)?;
        }
        for b in &self.bimodules {
            need(&algebras, "algebra", &b.body.algebra, b.line)?;
        }
        for t in &self.triples {
            need(&morphisms, "morphism", &t.body.epsilon, t.line)?;
            if let Some(m) = &t.body.module {
                need(&bimodules, "bimodule", m, t.line)?;
            }
        }
        for c in &self.cochains {
            need(&triples, "triple", &c.body.triple, c.line)?;
        }
        for f in &self.families {
            need(&triples, "triple", &f.body.triple, f.line)?;
            if let FamilyTerms::Terms(ts) = &f.body.terms {
                for t in ts {
                    need(&cochains, "cochain", t, f.line)?;
                }
            }
        }
        let task_refs: [(&str, &BTreeMap<String, usize>); 7] = [
            ("triple", &triples),
            ("family", &families),
            ("cochain", &cochains),
            ("other", &cochains),
            ("group", &groups),
            ("algebra", &algebras),
            ("augmentation", &morphisms),
        ];
        for (key, map) in task_refs {
            if let Some(v) = self.task.get(key) {
                if !map.contains_key(v) {
                    return Err(CliError::Parse { line: 0, message: format!("task refers to unknown {key} `{v}`") });
                }
            }
        }
        Ok(())
    }
}
