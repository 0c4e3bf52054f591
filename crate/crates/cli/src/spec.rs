//! Problem-spec documents: parsing, reference resolution and schema errors.
//!
//! A document is a JSON object with the optional arrays `groups`, `subgroups`,
//! `measures`, `representations`, `cocycles`, `actions` and `tasks`, plus an
//! `options` object. Every declaration has a `name`; names are unique across
//! all declaration kinds. The format is described in `docs/schema.md`.

use std::collections::{BTreeMap, BTreeSet};

use cocyclelab::cohomology::{HomCochain, InhomCocycle};
use cocyclelab::group::{
    cyclic_table, dihedral_table, enumerate_finite, subgroup_as_group, symmetric3_table, FiniteSupportMeasure,
    FiniteTable, Group, Subgroup, Weight, Word, DEFAULT_ENUMERATION_CAP,
};
use cocyclelab::induction::{LpExponent, INDEX_CAP};
use cocyclelab::linalg::{Field, Matrix};
use cocyclelab::rep::{regular_representation, NormKind, Representation};
use cocyclelab::scalar::{parse_rational, Rational, Scalar, ScalarKind};
use cocyclelab::stationarity::{BlockAutomorphism, CMatrix, MatrixAlgebraAction};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::tasks::{Slot, TaskKind};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{path}: {message}")]
pub struct SchemaError {
    pub path: String,
    pub message: String,
}

impl SchemaError {
    fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        SchemaError { path: path.into(), message: message.into() }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarPreference {
    /// Rational unless some literal is a non-integer JSON number.
    #[default]
    Auto,
    Rational,
    Float,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Options {
    /// Cesàro convergence tolerance; also the tolerance for numeric expectations.
    pub tol: f64,
    pub max_iter: usize,
    pub scalar: ScalarPreference,
    pub index_cap: usize,
    pub enumeration_cap: usize,
    /// Witnesses with more scalars than this are elided from the report.
    pub elide_above: usize,
    /// Run product tasks even when a hypothesis gate fails.
    pub force: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            tol: 1e-10,
            max_iter: 62,
            scalar: ScalarPreference::Auto,
            index_cap: INDEX_CAP,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            elide_above: 10_000,
            force: false,
        }
    }
}

/// A representation over either coefficient field.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyRep {
    Rational(Representation<Rational>),
    Float(Representation<f64>),
}

impl AnyRep {
    pub fn group(&self) -> &Group {
        match self {
            AnyRep::Rational(r) => r.group(),
            AnyRep::Float(r) => r.group(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyRep::Rational(r) => r.dim(),
            AnyRep::Float(r) => r.dim(),
        }
    }

    pub fn kind(&self) -> ScalarKind {
        match self {
            AnyRep::Rational(_) => ScalarKind::Rational,
            AnyRep::Float(_) => ScalarKind::Float,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cochain<S> {
    /// Degree-1 cocycle by its values on generators.
    Inhom(InhomCocycle<S>),
    /// Homogeneous cochain on a finite group.
    Hom(HomCochain<S>),
}

impl<S> Cochain<S> {
    pub fn degree(&self) -> usize {
        match self {
            Cochain::Inhom(_) => 1,
            Cochain::Hom(f) => f.degree,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum AnyCochain {
    Rational(Cochain<Rational>),
    Float(Cochain<f64>),
}

/// Coefficient fields the runner dispatches over.
pub trait Coefficient: Field {
    fn from_literal(l: &Literal) -> Self;
    fn pick_rep(r: &AnyRep) -> Option<&Representation<Self>>;
    fn pick_cochain(c: &AnyCochain) -> Option<&Cochain<Self>>;
    fn wrap_rep(r: Representation<Self>) -> AnyRep;
    fn wrap_cochain(c: Cochain<Self>) -> AnyCochain;
}

impl Coefficient for Rational {
    fn from_literal(l: &Literal) -> Self {
        match l {
            Literal::Exact(q) => q.clone(),
            Literal::Float(x) => parse_rational(&x.to_string()).expect("finite float literal"),
        }
    }

    fn pick_rep(r: &AnyRep) -> Option<&Representation<Self>> {
        match r {
            AnyRep::Rational(r) => Some(r),
            AnyRep::Float(_) => None,
        }
    }

    fn pick_cochain(c: &AnyCochain) -> Option<&Cochain<Self>> {
        match c {
            AnyCochain::Rational(c) => Some(c),
            AnyCochain::Float(_) => None,
        }
    }

    fn wrap_rep(r: Representation<Self>) -> AnyRep {
        AnyRep::Rational(r)
    }

    fn wrap_cochain(c: Cochain<Self>) -> AnyCochain {
        AnyCochain::Rational(c)
    }
}

impl Coefficient for f64 {
    fn from_literal(l: &Literal) -> Self {
        match l {
            Literal::Exact(q) => Scalar::to_f64(q),
            Literal::Float(x) => *x,
        }
    }

    fn pick_rep(r: &AnyRep) -> Option<&Representation<Self>> {
        match r {
            AnyRep::Float(r) => Some(r),
            AnyRep::Rational(_) => None,
        }
    }

    fn pick_cochain(c: &AnyCochain) -> Option<&Cochain<Self>> {
        match c {
            AnyCochain::Float(c) => Some(c),
            AnyCochain::Rational(_) => None,
        }
    }

    fn wrap_rep(r: Representation<Self>) -> AnyRep {
        AnyRep::Float(r)
    }

    fn wrap_cochain(c: Cochain<Self>) -> AnyCochain {
        AnyCochain::Float(c)
    }
}

/// A scalar literal from the document.
#[derive(Clone, Debug, PartialEq)]
pub enum Literal {
    Exact(Rational),
    Float(f64),
}

/// Strings are exact rationals (`"1/3"`, `"-0.25"`), JSON integers are exact,
/// other JSON numbers are floats.
pub fn literal(v: &Value) -> Result<Literal, String> {
    match v {
        Value::String(s) => parse_rational(s).map(Literal::Exact).map_err(|e| e.to_string()),
        Value::Number(n) if n.is_i64() || n.is_u64() => {
            parse_rational(&n.to_string()).map(Literal::Exact).map_err(|e| e.to_string())
        }
        Value::Number(n) => n.as_f64().map(Literal::Float).ok_or_else(|| format!("`{n}` is not representable")),
        other => Err(format!("expected a number or a rational string, found `{other}`")),
    }
}

/// A resolved task.
#[derive(Clone, Debug, PartialEq)]
pub struct TaskSpec {
    pub id: String,
    pub kind: TaskKind,
    pub refs: BTreeMap<Slot, String>,
    pub degree: usize,
    pub element: Option<Word>,
    pub words: Option<Vec<Word>>,
    pub targets: Option<Vec<Vec<Literal>>>,
    pub epsilon: Option<f64>,
    pub p: LpExponent,
    pub expect: BTreeMap<String, Value>,
}

impl TaskSpec {
    /// Name bound to `slot`; resolution guarantees presence for required slots.
    pub fn name(&self, slot: Slot) -> &str {
        self.refs.get(&slot).map(String::as_str).unwrap_or_else(|| panic!("slot {slot:?} is unresolved"))
    }
}

/// A validated document with every reference resolved.
#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub options: Options,
    pub groups: BTreeMap<String, Group>,
    pub subgroups: BTreeMap<String, Subgroup>,
    pub measures: BTreeMap<String, FiniteSupportMeasure>,
    pub representations: BTreeMap<String, AnyRep>,
    pub cocycles: BTreeMap<String, AnyCochain>,
    pub actions: BTreeMap<String, MatrixAlgebraAction>,
    pub tasks: Vec<TaskSpec>,
}

impl ProblemSpec {
    pub fn group(&self, name: &str) -> &Group {
        &self.groups[name]
    }

    pub fn subgroup(&self, name: &str) -> &Subgroup {
        &self.subgroups[name]
    }

    pub fn measure(&self, name: &str) -> &FiniteSupportMeasure {
        &self.measures[name]
    }

    pub fn rep(&self, name: &str) -> &AnyRep {
        &self.representations[name]
    }

    pub fn cochain(&self, name: &str) -> &AnyCochain {
        &self.cocycles[name]
    }

    pub fn action(&self, name: &str) -> &MatrixAlgebraAction {
        &self.actions[name]
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    #[serde(default)]
    options: Options,
    #[serde(default)]
    groups: Vec<RawGroup>,
    #[serde(default)]
    subgroups: Vec<RawSubgroup>,
    #[serde(default)]
    measures: Vec<RawMeasure>,
    #[serde(default)]
    representations: Vec<RawRep>,
    #[serde(default)]
    cocycles: Vec<RawCocycle>,
    #[serde(default)]
    actions: Vec<RawAction>,
    #[serde(default)]
    tasks: Vec<RawTask>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    name: String,
    family: String,
    rank: Option<usize>,
    order: Option<usize>,
    n: Option<usize>,
    names: Option<Vec<String>>,
    relators: Option<Vec<String>>,
    #[serde(default)]
    enumerate: bool,
    factors: Option<Vec<String>>,
    elements: Option<Vec<String>>,
    table: Option<Vec<Vec<usize>>>,
    generators: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSubgroup {
    name: String,
    group: String,
    generators: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMeasure {
    name: String,
    group: String,
    atoms: Option<Vec<(String, Value)>>,
    uniform: Option<Vec<String>>,
    symmetric: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawImages {
    ByName(BTreeMap<String, Vec<Vec<Value>>>),
    Ordered(Vec<Vec<Vec<Value>>>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawNorm {
    Named(String),
    Form { form: Vec<Vec<Value>> },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRep {
    name: String,
    group: String,
    dim: Option<usize>,
    scalar: Option<ScalarPreference>,
    kind: Option<String>,
    images: Option<RawImages>,
    norm: Option<RawNorm>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawCocycleValues {
    ByName(BTreeMap<String, Vec<Value>>),
    Nested(Vec<Vec<Value>>),
    Flat(Vec<Value>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCocycle {
    name: String,
    rep: String,
    degree: Option<usize>,
    values: RawCocycleValues,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAutomorphism {
    permutation: Option<Vec<usize>>,
    conjugators: Option<Vec<Vec<Vec<Value>>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAction {
    name: String,
    group: String,
    blocks: Vec<usize>,
    generators: Vec<RawAutomorphism>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTask {
    id: String,
    task: String,
    group: Option<String>,
    rep: Option<String>,
    measure: Option<String>,
    first: Option<String>,
    second: Option<String>,
    cocycle: Option<String>,
    subgroup: Option<String>,
    centralizer: Option<String>,
    action: Option<String>,
    inner: Option<String>,
    outer: Option<String>,
    direct: Option<String>,
    degree: Option<usize>,
    element: Option<String>,
    words: Option<Vec<String>>,
    targets: Option<Vec<Vec<Value>>>,
    epsilon: Option<f64>,
    p: Option<String>,
    #[serde(default)]
    expect: BTreeMap<String, Value>,
}

impl RawTask {
    fn slot(&self, slot: Slot) -> Option<&String> {
        match slot {
            Slot::Group => self.group.as_ref(),
            Slot::Rep => self.rep.as_ref(),
            Slot::Measure => self.measure.as_ref(),
            Slot::First => self.first.as_ref(),
            Slot::Second => self.second.as_ref(),
            Slot::Cocycle => self.cocycle.as_ref(),
            Slot::Subgroup => self.subgroup.as_ref(),
            Slot::Centralizer => self.centralizer.as_ref(),
            Slot::Action => self.action.as_ref(),
            Slot::Inner => self.inner.as_ref(),
            Slot::Outer => self.outer.as_ref(),
            Slot::Direct => self.direct.as_ref(),
            Slot::Degree => None,
            Slot::Element => self.element.as_ref(),
            Slot::Words => None,
            Slot::Targets => None,
            Slot::Epsilon => None,
            Slot::P => self.p.as_ref(),
        }
    }

    fn has(&self, slot: Slot) -> bool {
        match slot {
            Slot::Degree => self.degree.is_some(),
            Slot::Words => self.words.is_some(),
            Slot::Targets => self.targets.is_some(),
            Slot::Epsilon => self.epsilon.is_some(),
            other => self.slot(other).is_some(),
        }
    }
}

/// Parses and resolves a document, collecting every schema error found.
pub fn parse_spec(document: &str) -> Result<ProblemSpec, Vec<SchemaError>> {
    let de = &mut serde_json::Deserializer::from_str(document);
    let raw: RawDocument = match serde_path_to_error::deserialize(de) {
        Ok(raw) => raw,
        Err(e) => {
            let path = e.path().to_string();
            let path = if path == "." { "$".to_string() } else { path };
            return Err(vec![SchemaError::new(path, e.into_inner().to_string())]);
        }
    };
    Resolver::new(raw).resolve()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum DeclKind {
    Group,
    Subgroup,
    Measure,
    Representation,
    Cocycle,
    Action,
}

impl DeclKind {
    fn noun(self) -> &'static str {
        match self {
            DeclKind::Group => "group",
            DeclKind::Subgroup => "subgroup",
            DeclKind::Measure => "measure",
            DeclKind::Representation => "representation",
            DeclKind::Cocycle => "cocycle",
            DeclKind::Action => "action",
        }
    }
}

struct Resolver {
    raw: RawDocument,
    errors: Vec<SchemaError>,
    /// Declaration kind and index by name.
    index: BTreeMap<String, (DeclKind, usize)>,
    groups: BTreeMap<String, Option<Group>>,
    subgroups: BTreeMap<String, Option<Subgroup>>,
    /// Groups and subgroups currently being resolved.
    visiting: BTreeSet<String>,
}

impl Resolver {
    fn new(raw: RawDocument) -> Self {
        Resolver {
            raw,
            errors: Vec::new(),
            index: BTreeMap::new(),
            groups: BTreeMap::new(),
            subgroups: BTreeMap::new(),
            visiting: BTreeSet::new(),
        }
    }

    fn error(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.errors.push(SchemaError::new(path, message));
    }

    fn resolve(mut self) -> Result<ProblemSpec, Vec<SchemaError>> {
        self.index_names();
        let (tol, max_iter) = (self.raw.options.tol, self.raw.options.max_iter);
        if !(tol.is_finite() && tol > 0.0) {
            self.error("options.tol", "must be a positive finite number");
        }
        if max_iter == 0 {
            self.error("options.max_iter", "must be at least 1");
        }

        let mut groups = BTreeMap::new();
        for i in 0..self.raw.groups.len() {
            let name = self.raw.groups[i].name.clone();
            if let Some(g) = self.group_decl(i) {
                groups.insert(name, g);
            }
        }
        let mut subgroups = BTreeMap::new();
        for i in 0..self.raw.subgroups.len() {
            let name = self.raw.subgroups[i].name.clone();
            if let Some(s) = self.subgroup_decl(i) {
                subgroups.insert(name, s);
            }
        }
        let measures = self.measures();
        let representations = self.representations();
        let cocycles = self.cocycles(&representations);
        let actions = self.actions();

        // Subgroups used as groups are registered on first use.
        let tasks = self.tasks(&measures, &representations, &cocycles, &actions);
        for (name, g) in &self.groups {
            if let Some(g) = g {
                groups.entry(name.clone()).or_insert_with(|| g.clone());
            }
        }

        if !self.errors.is_empty() {
            return Err(self.errors);
        }
        Ok(ProblemSpec {
            options: self.raw.options.clone(),
            groups,
            subgroups,
            measures,
            representations,
            cocycles,
            actions,
            tasks,
        })
    }

    fn index_names(&mut self) {
        let mut entries: Vec<(String, DeclKind, usize, String)> = Vec::new();
        let mut push = |kind: DeclKind, list: &str, names: Vec<&String>| {
            for (i, n) in names.into_iter().enumerate() {
                entries.push((n.clone(), kind, i, format!("{list}[{i}].name")));
            }
        };
        push(DeclKind::Group, "groups", self.raw.groups.iter().map(|d| &d.name).collect());
        push(DeclKind::Subgroup, "subgroups", self.raw.subgroups.iter().map(|d| &d.name).collect());
        push(DeclKind::Measure, "measures", self.raw.measures.iter().map(|d| &d.name).collect());
        push(DeclKind::Representation, "representations", self.raw.representations.iter().map(|d| &d.name).collect());
        push(DeclKind::Cocycle, "cocycles", self.raw.cocycles.iter().map(|d| &d.name).collect());
        push(DeclKind::Action, "actions", self.raw.actions.iter().map(|d| &d.name).collect());
        for (name, kind, i, path) in entries {
            if name.is_empty() {
                self.error(path, "names must be nonempty");
                continue;
            }
            if let Some((other, _)) = self.index.get(&name) {
                let msg = format!("duplicate name `{name}` (already declared as a {})", other.noun());
                self.error(path, msg);
                continue;
            }
            self.index.insert(name, (kind, i));
        }
    }

    fn lookup(&self, name: &str, kind: DeclKind) -> Option<usize> {
        match self.index.get(name) {
            Some((k, i)) if *k == kind => Some(*i),
            _ => None,
        }
    }

    /// A group by name: a declared group or a subgroup used as a group.
    fn group_ref(&mut self, name: &str, path: &str) -> Option<Group> {
        match self.index.get(name).copied() {
            Some((DeclKind::Group, i)) => self.group_decl(i),
            Some((DeclKind::Subgroup, i)) => {
                if let Some(g) = self.groups.get(name) {
                    return g.clone();
                }
                let sub = self.subgroup_decl(i)?;
                let g = match subgroup_as_group(&sub) {
                    Ok(p) => Some(p.group),
                    Err(e) => {
                        self.error(path.to_string(), format!("subgroup `{name}` cannot be used as a group: {e}"));
                        None
                    }
                };
                self.groups.insert(name.to_string(), g.clone());
                g
            }
            Some((other, _)) => {
                self.error(path.to_string(), format!("`{name}` is a {}, not a group", other.noun()));
                None
            }
            None => {
                self.error(path.to_string(), format!("unknown group `{name}`"));
                None
            }
        }
    }

    fn group_decl(&mut self, i: usize) -> Option<Group> {
        let name = self.raw.groups[i].name.clone();
        if let Some(g) = self.groups.get(&name) {
            return g.clone();
        }
        let path = format!("groups[{i}]");
        if !self.visiting.insert(name.clone()) {
            self.error(path, format!("cyclic definition through `{name}`"));
            self.groups.insert(name, None);
            return None;
        }
        let g = self.build_group(i, &path);
        self.visiting.remove(&name);
        self.groups.insert(name, g.clone());
        g
    }

    fn build_group(&mut self, i: usize, path: &str) -> Option<Group> {
        let family = self.raw.groups[i].family.clone();
        let need = |this: &mut Self, v: Option<usize>, field: &str| -> Option<usize> {
            if v.is_none() {
                this.error(format!("{path}.{field}"), format!("required for family `{family}`"));
            }
            v
        };
        let (rank, order, n) = (self.raw.groups[i].rank, self.raw.groups[i].order, self.raw.groups[i].n);
        let base = match family.as_str() {
            "free" => need(self, rank, "rank").map(Group::free),
            "free-abelian" => need(self, rank, "rank").map(Group::free_abelian),
            "heisenberg" => Some(Group::heisenberg()),
            "trivial" => Some(Group::trivial()),
            "cyclic" => match need(self, order, "order")? {
                0 => {
                    self.error(format!("{path}.order"), "must be at least 1");
                    None
                }
                k => Some(Group::finite(cyclic_table(k))),
            },
            "dihedral" => match need(self, n, "n")? {
                0 => {
                    self.error(format!("{path}.n"), "must be at least 1");
                    None
                }
                k => Some(Group::finite(dihedral_table(k))),
            },
            "symmetric3" => Some(Group::finite(symmetric3_table())),
            "table" => self.table_group(i, path),
            "presentation" => self.presented_group(i, path),
            "product" => self.product_group(i, path),
            other => {
                self.error(format!("{path}.family"), format!("unknown family `{other}`"));
                None
            }
        }?;
        let raw = &self.raw.groups[i];
        let g = match (&raw.names, family.as_str()) {
            (Some(_), "presentation") | (None, _) => base,
            (Some(names), _) => match base.with_names(names.clone()) {
                Ok(g) => g,
                Err(e) => {
                    self.error(format!("{path}.names"), e.to_string());
                    return None;
                }
            },
        };
        if raw.enumerate && family != "presentation" {
            self.error(format!("{path}.enumerate"), "only presentations are enumerated");
            return None;
        }
        Some(g)
    }

    fn table_group(&mut self, i: usize, path: &str) -> Option<Group> {
        let raw = &self.raw.groups[i];
        let (Some(elements), Some(table)) = (raw.elements.clone(), raw.table.clone()) else {
            self.error(path.to_string(), "family `table` needs `elements` and `table`");
            return None;
        };
        let gens = match &raw.generators {
            None => None,
            Some(names) => {
                let mut idx = Vec::new();
                for (j, n) in names.iter().enumerate() {
                    match elements.iter().position(|e| e == n) {
                        Some(k) => idx.push(k),
                        None => {
                            self.error(format!("{path}.generators[{j}]"), format!("unknown element `{n}`"));
                            return None;
                        }
                    }
                }
                Some(idx)
            }
        };
        match FiniteTable::new(elements, table, gens) {
            Ok(t) => Some(Group::finite(t)),
            Err(e) => {
                self.error(format!("{path}.table"), e.to_string());
                None
            }
        }
    }

    fn presented_group(&mut self, i: usize, path: &str) -> Option<Group> {
        let raw = &self.raw.groups[i];
        let names = match (&raw.names, raw.rank) {
            (Some(names), Some(k)) if names.len() != k => {
                self.error(format!("{path}.names"), format!("{} names for rank {k}", names.len()));
                return None;
            }
            (Some(names), _) => names.clone(),
            (None, Some(k)) => Group::free(k).names().to_vec(),
            (None, None) => {
                self.error(path.to_string(), "family `presentation` needs `names` or `rank`");
                return None;
            }
        };
        let relator_strings = raw.relators.clone().unwrap_or_default();
        let enumerate = raw.enumerate;
        let mut relators = Vec::new();
        for (j, r) in relator_strings.iter().enumerate() {
            match Word::parse(r, &names) {
                Ok(w) => relators.push(w),
                Err(e) => self.error(format!("{path}.relators[{j}]"), e.to_string()),
            }
        }
        if relators.len() != relator_strings.len() {
            return None;
        }
        let g = Group::presentation(names.len(), relators).and_then(|g| g.with_names(names));
        let g = match g {
            Ok(g) => g,
            Err(e) => {
                self.error(path.to_string(), e.to_string());
                return None;
            }
        };
        if !enumerate {
            return Some(g);
        }
        match enumerate_finite(&g, self.raw.options.enumeration_cap) {
            Ok(g) => Some(g),
            Err(e) => {
                self.error(format!("{path}.enumerate"), e.to_string());
                None
            }
        }
    }

    fn product_group(&mut self, i: usize, path: &str) -> Option<Group> {
        let Some(factors) = self.raw.groups[i].factors.clone() else {
            self.error(path.to_string(), "family `product` needs `factors`");
            return None;
        };
        if factors.len() < 2 {
            self.error(format!("{path}.factors"), "a product needs at least two factors");
            return None;
        }
        let mut resolved = Vec::new();
        for (j, f) in factors.iter().enumerate() {
            resolved.push(self.group_ref(f, &format!("{path}.factors[{j}]")));
        }
        let resolved: Option<Vec<Group>> = resolved.into_iter().collect();
        let mut it = resolved?.into_iter();
        let first = it.next()?;
        Some(it.fold(first, Group::product))
    }

    fn subgroup_decl(&mut self, i: usize) -> Option<Subgroup> {
        let name = self.raw.subgroups[i].name.clone();
        if let Some(s) = self.subgroups.get(&name) {
            return s.clone();
        }
        let path = format!("subgroups[{i}]");
        if !self.visiting.insert(name.clone()) {
            self.error(path, format!("cyclic definition through `{name}`"));
            self.subgroups.insert(name, None);
            return None;
        }
        let ambient_name = self.raw.subgroups[i].group.clone();
        let ambient = self.group_ref(&ambient_name, &format!("{path}.group"));
        self.visiting.remove(&name);
        let s = ambient.and_then(|g| {
            let gens = self.words(&g, &self.raw.subgroups[i].generators.clone(), &format!("{path}.generators"))?;
            match Subgroup::new(&g, gens, name.clone()) {
                Ok(s) => Some(s),
                Err(e) => {
                    self.error(format!("{path}.generators"), e.to_string());
                    None
                }
            }
        });
        self.subgroups.insert(name, s.clone());
        s
    }

    fn words(&mut self, g: &Group, strings: &[String], path: &str) -> Option<Vec<Word>> {
        let mut out = Vec::new();
        let mut ok = true;
        for (j, s) in strings.iter().enumerate() {
            match g.parse_word(s) {
                Ok(w) => out.push(w),
                Err(e) => {
                    self.error(format!("{path}[{j}]"), e.to_string());
                    ok = false;
                }
            }
        }
        ok.then_some(out)
    }

    fn measures(&mut self) -> BTreeMap<String, FiniteSupportMeasure> {
        let mut out = BTreeMap::new();
        for i in 0..self.raw.measures.len() {
            let path = format!("measures[{i}]");
            let group_name = self.raw.measures[i].group.clone();
            let Some(g) = self.group_ref(&group_name, &format!("{path}.group")) else {
                continue;
            };
            let raw = &self.raw.measures[i];
            let name = raw.name.clone();
            let given = [raw.atoms.is_some(), raw.uniform.is_some(), raw.symmetric.is_some()];
            if given.iter().filter(|&&b| b).count() != 1 {
                self.error(path, "give exactly one of `atoms`, `uniform`, `symmetric`");
                continue;
            }
            let (uniform, symmetric, atoms) = (raw.uniform.clone(), raw.symmetric.clone(), raw.atoms.clone());
            let built = if let Some(words) = uniform {
                let path = format!("{path}.uniform");
                self.words(&g, &words, &path).map(|w| (path, FiniteSupportMeasure::uniform(&g, w)))
            } else if let Some(words) = symmetric {
                let path = format!("{path}.symmetric");
                self.words(&g, &words, &path).map(|w| (path, FiniteSupportMeasure::symmetric_uniform(&g, &w)))
            } else {
                let path = format!("{path}.atoms");
                let atoms = atoms.unwrap_or_default();
                let mut parsed = Vec::new();
                for (j, (word, weight)) in atoms.iter().enumerate() {
                    let w = match g.parse_word(word) {
                        Ok(w) => w,
                        Err(e) => {
                            self.error(format!("{path}[{j}][0]"), e.to_string());
                            continue;
                        }
                    };
                    match literal(weight) {
                        Ok(Literal::Exact(q)) => parsed.push((w, Weight::Exact(q))),
                        Ok(Literal::Float(x)) => parsed.push((w, Weight::Float(x))),
                        Err(e) => self.error(format!("{path}[{j}][1]"), e),
                    }
                }
                (parsed.len() == atoms.len()).then(|| (path, FiniteSupportMeasure::new(&g, parsed)))
            };
            match built {
                Some((_, Ok(mu))) => {
                    out.insert(name, mu);
                }
                Some((path, Err(e))) => self.error(path, e.to_string()),
                None => {}
            }
        }
        out
    }

    fn representations(&mut self) -> BTreeMap<String, AnyRep> {
        let mut out = BTreeMap::new();
        for i in 0..self.raw.representations.len() {
            let path = format!("representations[{i}]");
            let group_name = self.raw.representations[i].group.clone();
            let Some(g) = self.group_ref(&group_name, &format!("{path}.group")) else {
                continue;
            };
            let name = self.raw.representations[i].name.clone();
            let pref = self.raw.representations[i].scalar.unwrap_or(self.raw.options.scalar);
            let float = match pref {
                ScalarPreference::Float => true,
                ScalarPreference::Rational => false,
                ScalarPreference::Auto => self.rep_has_float_literal(i),
            };
            let rep = if float { self.build_rep::<f64>(i, &g, &path) } else { self.build_rep::<Rational>(i, &g, &path) };
            if let Some(rep) = rep {
                out.insert(name, rep);
            }
        }
        out
    }

    fn rep_has_float_literal(&self, i: usize) -> bool {
        let raw = &self.raw.representations[i];
        let is_float = |v: &Value| matches!(v, Value::Number(n) if !(n.is_i64() || n.is_u64()));
        let in_images = match &raw.images {
            Some(RawImages::ByName(m)) => m.values().flatten().flatten().any(is_float),
            Some(RawImages::Ordered(v)) => v.iter().flatten().flatten().any(is_float),
            None => false,
        };
        let in_norm = matches!(&raw.norm, Some(RawNorm::Form { form }) if form.iter().flatten().any(is_float));
        in_images || in_norm
    }

    fn matrix<S: Coefficient>(&mut self, rows: &[Vec<Value>], dim: usize, path: &str) -> Option<Matrix<S>> {
        if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
            self.error(path.to_string(), format!("expected a {dim}×{dim} matrix"));
            return None;
        }
        let mut out = Vec::with_capacity(dim);
        for (r, row) in rows.iter().enumerate() {
            let mut parsed = Vec::with_capacity(dim);
            for (c, v) in row.iter().enumerate() {
                match literal(v) {
                    Ok(l) => parsed.push(S::from_literal(&l)),
                    Err(e) => {
                        self.error(format!("{path}[{r}][{c}]"), e);
                        return None;
                    }
                }
            }
            out.push(parsed);
        }
        Some(Matrix::from_rows(out))
    }

    fn build_rep<S: Coefficient>(&mut self, i: usize, g: &Group, path: &str) -> Option<AnyRep> {
        let raw = &self.raw.representations[i];
        let kind = raw.kind.clone();
        let dim = raw.dim;
        let images = match &raw.images {
            None => None,
            Some(RawImages::Ordered(v)) => Some(v.clone()),
            Some(RawImages::ByName(m)) => {
                let mut ordered = Vec::new();
                let names = g.names().to_vec();
                for key in m.keys() {
                    if !names.contains(key) {
                        self.error(format!("{path}.images.{key}"), format!("`{key}` is not a generator of the group"));
                        return None;
                    }
                }
                for n in &names {
                    match m.get(n) {
                        Some(x) => ordered.push(x.clone()),
                        None => {
                            self.error(format!("{path}.images"), format!("missing image of generator `{n}`"));
                            return None;
                        }
                    }
                }
                Some(ordered)
            }
        };
        let norm = match &raw.norm {
            None => None,
            Some(RawNorm::Named(s)) => Some(Err(s.clone())),
            Some(RawNorm::Form { form }) => Some(Ok(form.clone())),
        };
        let rep: Representation<S> = match (kind.as_deref(), images) {
            (Some("trivial"), None) => Representation::trivial(g, dim.unwrap_or(1)),
            (Some("regular"), None) => match regular_representation::<S>(g) {
                Ok(r) => r,
                Err(e) => {
                    self.error(format!("{path}.kind"), e.to_string());
                    return None;
                }
            },
            (Some(k @ ("trivial" | "regular")), Some(_)) => {
                self.error(format!("{path}.images"), format!("a `{k}` representation takes no images"));
                return None;
            }
            (Some(other), _) => {
                self.error(format!("{path}.kind"), format!("unknown kind `{other}` (expected `trivial` or `regular`)"));
                return None;
            }
            (None, None) => {
                self.error(path.to_string(), "give `images` or `kind`");
                return None;
            }
            (None, Some(images)) => {
                if images.len() != g.generator_count() {
                    self.error(
                        format!("{path}.images"),
                        format!("{} images for {} generators", images.len(), g.generator_count()),
                    );
                    return None;
                }
                let Some(d) = dim.or_else(|| images.first().map(Vec::len)) else {
                    self.error(format!("{path}.dim"), "required when the group has no generators");
                    return None;
                };
                let mut mats = Vec::new();
                for (j, m) in images.iter().enumerate() {
                    mats.push(self.matrix::<S>(m, d, &format!("{path}.images[{j}]"))?);
                }
                match Representation::new(g, d, mats) {
                    Ok(r) => r,
                    Err(e) => {
                        self.error(format!("{path}.images"), e.to_string());
                        return None;
                    }
                }
            }
        };
        if let Some(d) = dim {
            if d != rep.dim() {
                self.error(format!("{path}.dim"), format!("declared {d}, images have dimension {}", rep.dim()));
                return None;
            }
        }
        let rep = match norm {
            None => rep,
            Some(Err(name)) => match name.as_str() {
                "one" => rep.with_norm(NormKind::One),
                "two" => rep.with_norm(NormKind::Two),
                "infinity" => rep.with_norm(NormKind::Infinity),
                other => {
                    self.error(format!("{path}.norm"), format!("unknown norm `{other}`"));
                    return None;
                }
            },
            Some(Ok(form)) => {
                let p = self.matrix::<S>(&form, rep.dim(), &format!("{path}.norm.form"))?;
                if p != p.transpose() || !S::is_positive_definite(&p) {
                    self.error(format!("{path}.norm.form"), "the form must be symmetric positive definite");
                    return None;
                }
                rep.with_norm(NormKind::Form(p))
            }
        };
        Some(S::wrap_rep(rep))
    }

    fn cocycles(&mut self, reps: &BTreeMap<String, AnyRep>) -> BTreeMap<String, AnyCochain> {
        let mut out = BTreeMap::new();
        for i in 0..self.raw.cocycles.len() {
            let path = format!("cocycles[{i}]");
            let rep_name = self.raw.cocycles[i].rep.clone();
            let Some(rep) = self.reference(&rep_name, DeclKind::Representation, &format!("{path}.rep")) else {
                continue;
            };
            let Some(rep) = reps.get(&rep) else { continue };
            let name = self.raw.cocycles[i].name.clone();
            let c = match rep {
                AnyRep::Rational(r) => self.build_cochain(i, r, &path),
                AnyRep::Float(r) => self.build_cochain(i, r, &path),
            };
            if let Some(c) = c {
                out.insert(name, c);
            }
        }
        out
    }

    fn literals<S: Coefficient>(&mut self, values: &[Value], path: &str) -> Option<Vec<S>> {
        let mut out = Vec::with_capacity(values.len());
        for (j, v) in values.iter().enumerate() {
            match literal(v) {
                Ok(l) => out.push(S::from_literal(&l)),
                Err(e) => {
                    self.error(format!("{path}[{j}]"), e);
                    return None;
                }
            }
        }
        Some(out)
    }

    fn build_cochain<S: Coefficient>(&mut self, i: usize, rho: &Representation<S>, path: &str) -> Option<AnyCochain> {
        let raw = &self.raw.cocycles[i];
        let degree = raw.degree.unwrap_or(1);
        let d = rho.dim();
        let g = rho.group().clone();
        let vpath = format!("{path}.values");
        if degree == 0 {
            self.error(format!("{path}.degree"), "degree must be at least 1");
            return None;
        }
        if degree == 1 {
            let nested: Vec<Vec<Value>> = match &raw.values {
                RawCocycleValues::Nested(v) => v.clone(),
                RawCocycleValues::ByName(m) => {
                    let mut ordered = Vec::new();
                    for key in m.keys() {
                        if !g.names().contains(key) {
                            self.error(format!("{vpath}.{key}"), format!("`{key}` is not a generator of the group"));
                            return None;
                        }
                    }
                    for n in g.names() {
                        match m.get(n) {
                            Some(v) => ordered.push(v.clone()),
                            None => {
                                self.error(vpath.clone(), format!("missing value on generator `{n}`"));
                                return None;
                            }
                        }
                    }
                    ordered
                }
                RawCocycleValues::Flat(_) => {
                    self.error(vpath, "degree-1 values are given per generator");
                    return None;
                }
            };
            if nested.len() != g.generator_count() || nested.iter().any(|v| v.len() != d) {
                let msg = format!("expected {} vectors of length {d}", g.generator_count());
                self.error(vpath, msg);
                return None;
            }
            let mut values = Vec::new();
            for (j, v) in nested.iter().enumerate() {
                values.push(self.literals::<S>(v, &format!("{vpath}[{j}]"))?);
            }
            return match InhomCocycle::new(rho, values) {
                Ok(b) => Some(S::wrap_cochain(Cochain::Inhom(b))),
                Err(e) => {
                    self.error(vpath, e.to_string());
                    None
                }
            };
        }
        let RawCocycleValues::Flat(flat) = &raw.values else {
            self.error(vpath, "cochains of degree ≥ 2 are a flat coordinate list");
            return None;
        };
        let flat = flat.clone();
        let Some(t) = g.table() else {
            self.error(format!("{path}.degree"), "cochains of degree ≥ 2 need a finite group");
            return None;
        };
        let expected = t.order().pow(degree as u32) * d;
        if flat.len() != expected {
            self.error(vpath, format!("expected {expected} coordinates (|G|^{degree}·dim)"));
            return None;
        }
        let values = self.literals::<S>(&flat, &vpath)?;
        Some(S::wrap_cochain(Cochain::Hom(HomCochain { degree, values })))
    }

    fn actions(&mut self) -> BTreeMap<String, MatrixAlgebraAction> {
        let mut out = BTreeMap::new();
        for i in 0..self.raw.actions.len() {
            let path = format!("actions[{i}]");
            let group_name = self.raw.actions[i].group.clone();
            let Some(g) = self.group_ref(&group_name, &format!("{path}.group")) else {
                continue;
            };
            let raw = &self.raw.actions[i];
            let name = raw.name.clone();
            let blocks = raw.blocks.clone();
            let mut autos = Vec::new();
            let mut failed = None;
            for (j, a) in raw.generators.iter().enumerate() {
                let perm = a.permutation.clone().unwrap_or_else(|| (0..blocks.len()).collect());
                match &a.conjugators {
                    None => autos.push(BlockAutomorphism::permutation(&blocks, perm)),
                    Some(cs) => {
                        let mut mats = Vec::new();
                        for (k, m) in cs.iter().enumerate() {
                            match complex_matrix(m) {
                                Ok(c) => mats.push(c),
                                Err(e) => {
                                    failed = Some((format!("{path}.generators[{j}].conjugators[{k}]"), e));
                                    break;
                                }
                            }
                        }
                        autos.push(BlockAutomorphism { permutation: perm, conjugators: mats });
                    }
                }
            }
            if let Some((p, e)) = failed {
                self.error(p, e);
                continue;
            }
            match MatrixAlgebraAction::new(&g, blocks, autos) {
                Ok(a) => {
                    out.insert(name, a);
                }
                Err(e) => self.error(path, e.to_string()),
            }
        }
        out
    }

    /// Checks that `name` is declared with the given kind.
    fn reference(&mut self, name: &str, kind: DeclKind, path: &str) -> Option<String> {
        if self.lookup(name, kind).is_some() {
            return Some(name.to_string());
        }
        let msg = match self.index.get(name) {
            Some((other, _)) => format!("`{name}` is a {}, not a {}", other.noun(), kind.noun()),
            None => format!("unknown {} `{name}`", kind.noun()),
        };
        self.error(path.to_string(), msg);
        None
    }

    fn tasks(
        &mut self,
        measures: &BTreeMap<String, FiniteSupportMeasure>,
        reps: &BTreeMap<String, AnyRep>,
        cocycles: &BTreeMap<String, AnyCochain>,
        actions: &BTreeMap<String, MatrixAlgebraAction>,
    ) -> Vec<TaskSpec> {
        let mut out = Vec::new();
        let mut ids = BTreeSet::new();
        let raws = std::mem::take(&mut self.raw.tasks);
        for (i, raw) in raws.iter().enumerate() {
            let path = format!("tasks[{i}]");
            if !ids.insert(raw.id.clone()) {
                self.error(format!("{path}.id"), format!("duplicate task id `{}`", raw.id));
            }
            let Some(kind) = TaskKind::from_name(&raw.task) else {
                self.error(format!("{path}.task"), format!("unknown task `{}`", raw.task));
                continue;
            };
            if let Some(t) = self.task(kind, raw, &path, measures, reps, cocycles, actions) {
                out.push(t);
            }
        }
        self.raw.tasks = raws;
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn task(
        &mut self,
        kind: TaskKind,
        raw: &RawTask,
        path: &str,
        measures: &BTreeMap<String, FiniteSupportMeasure>,
        reps: &BTreeMap<String, AnyRep>,
        cocycles: &BTreeMap<String, AnyCochain>,
        actions: &BTreeMap<String, MatrixAlgebraAction>,
    ) -> Option<TaskSpec> {
        let before = self.errors.len();
        let (required, optional) = kind.slots();
        for &slot in Slot::ALL {
            let present = raw.has(slot);
            if required.contains(&slot) && !present {
                self.error(format!("{path}.{}", slot.key()), format!("required by task `{}`", kind.name()));
            } else if present && !required.contains(&slot) && !optional.contains(&slot) {
                self.error(format!("{path}.{}", slot.key()), format!("not used by task `{}`", kind.name()));
            }
        }
        if self.errors.len() > before {
            return None;
        }

        let mut refs = BTreeMap::new();
        for &slot in Slot::ALL {
            let Some(name) = raw.slot(slot) else { continue };
            let spath = format!("{path}.{}", slot.key());
            let ok = match slot {
                Slot::Group => self.group_ref(name, &spath).is_some(),
                Slot::Rep => self.reference(name, DeclKind::Representation, &spath).is_some(),
                Slot::Measure | Slot::First | Slot::Second => self.reference(name, DeclKind::Measure, &spath).is_some(),
                Slot::Cocycle => self.reference(name, DeclKind::Cocycle, &spath).is_some(),
                Slot::Subgroup | Slot::Centralizer | Slot::Inner | Slot::Outer | Slot::Direct => {
                    self.reference(name, DeclKind::Subgroup, &spath).is_some()
                }
                Slot::Action => self.reference(name, DeclKind::Action, &spath).is_some(),
                Slot::Element | Slot::P | Slot::Degree | Slot::Words | Slot::Targets | Slot::Epsilon => true,
            };
            if ok && slot.is_reference() {
                refs.insert(slot, name.clone());
            }
        }
        if self.errors.len() > before {
            return None;
        }

        // Declarations that failed to build have already been reported.
        let rep = refs.get(&Slot::Rep).map(|n| reps.get(n));
        if let Some(None) = rep {
            return None;
        }
        let rep = rep.flatten();
        for slot in [Slot::Measure, Slot::First, Slot::Second] {
            if refs.get(&slot).is_some_and(|n| !measures.contains_key(n)) {
                return None;
            }
        }
        if refs.get(&Slot::Cocycle).is_some_and(|n| !cocycles.contains_key(n)) {
            return None;
        }
        if refs.get(&Slot::Action).is_some_and(|n| !actions.contains_key(n)) {
            return None;
        }
        for slot in [Slot::Subgroup, Slot::Centralizer, Slot::Inner, Slot::Outer, Slot::Direct] {
            if refs.get(&slot).is_some_and(|n| self.subgroups.get(n).is_none_or(Option::is_none)) {
                return None;
            }
        }

        // The group every group-valued input must live on.
        let home: Option<Group> = if kind.rep_on_subgroup() {
            None
        } else if let Some(r) = rep {
            Some(r.group().clone())
        } else if let Some(a) = refs.get(&Slot::Action) {
            Some(actions[a].group().clone())
        } else {
            refs.get(&Slot::Group).and_then(|g| self.group_ref(g, path))
        };
        if let Some(home) = &home {
            for slot in [Slot::Measure, Slot::First, Slot::Second] {
                if let Some(n) = refs.get(&slot) {
                    if measures[n].ambient() != home {
                        self.error(format!("{path}.{}", slot.key()), format!("measure `{n}` lives on a different group"));
                    }
                }
            }
            for slot in [Slot::Subgroup, Slot::Centralizer] {
                if let Some(n) = refs.get(&slot) {
                    let sub = self.subgroups[n].clone().expect("checked above");
                    if sub.ambient() != home {
                        self.error(format!("{path}.{}", slot.key()), format!("subgroup `{n}` lives on a different group"));
                    }
                }
            }
        }
        if let Some(c) = refs.get(&Slot::Cocycle) {
            let declared = &self.raw.cocycles[self.lookup(c, DeclKind::Cocycle).expect("resolved")].rep;
            if Some(declared) != refs.get(&Slot::Rep) {
                self.error(format!("{path}.cocycle"), format!("cocycle `{c}` belongs to representation `{declared}`"));
            }
        }
        if kind.rep_on_subgroup() {
            self.check_induction_groups(kind, &refs, rep, path);
        }

        let element_group = rep.map(|r| r.group().clone());
        let element = match (&raw.element, &element_group) {
            (Some(s), Some(g)) => match g.parse_word(s) {
                Ok(w) => Some(w),
                Err(e) => {
                    self.error(format!("{path}.element"), e.to_string());
                    None
                }
            },
            _ => None,
        };
        let words = match (&raw.words, &element_group) {
            (Some(ws), Some(g)) => self.words(g, ws, &format!("{path}.words")),
            _ => None,
        };
        let mut targets = None;
        if let Some(ts) = &raw.targets {
            let d = rep.map_or(0, AnyRep::dim);
            let mut parsed = Vec::new();
            for (j, t) in ts.iter().enumerate() {
                if t.len() != d {
                    self.error(format!("{path}.targets[{j}]"), format!("expected a vector of length {d}"));
                    continue;
                }
                let mut v = Vec::new();
                for (k, x) in t.iter().enumerate() {
                    match literal(x) {
                        Ok(l) => v.push(l),
                        Err(e) => self.error(format!("{path}.targets[{j}][{k}]"), e),
                    }
                }
                parsed.push(v);
            }
            targets = Some(parsed);
        }
        if let Some(eps) = raw.epsilon {
            if !(eps.is_finite() && eps > 0.0) {
                self.error(format!("{path}.epsilon"), "must be a positive finite number");
            }
        }
        let p = match raw.p.as_deref() {
            None | Some("2") => LpExponent::Two,
            Some("1") => LpExponent::One,
            Some("inf" | "infinity") => LpExponent::Infinity,
            Some(other) => {
                self.error(format!("{path}.p"), format!("unknown exponent `{other}` (expected 1, 2 or inf)"));
                LpExponent::Two
            }
        };
        let degree = raw.degree.unwrap_or_else(|| raw.cocycle.as_ref().and_then(|c| cocycles.get(c)).map_or(1, |c| match c {
            AnyCochain::Rational(c) => c.degree(),
            AnyCochain::Float(c) => c.degree(),
        }));
        if degree == 0 {
            self.error(format!("{path}.degree"), "degree must be at least 1");
        }
        if let (Some(d), Some(c)) = (raw.degree, raw.cocycle.as_ref().and_then(|c| cocycles.get(c))) {
            let cd = match c {
                AnyCochain::Rational(c) => c.degree(),
                AnyCochain::Float(c) => c.degree(),
            };
            if cd != d {
                self.error(format!("{path}.degree"), format!("the cocycle has degree {cd}"));
            }
        }
        if self.errors.len() > before {
            return None;
        }
        Some(TaskSpec {
            id: raw.id.clone(),
            kind,
            refs,
            degree,
            element,
            words,
            targets,
            epsilon: raw.epsilon,
            p,
            expect: raw.expect.clone(),
        })
    }

    /// The base representation of an induction task lives on `Γ` as a group.
    fn check_induction_groups(&mut self, kind: TaskKind, refs: &BTreeMap<Slot, String>, rep: Option<&AnyRep>, path: &str) {
        let as_group = |this: &mut Self, slot: Slot| -> Option<(Subgroup, Group)> {
            let sub = this.subgroups[&refs[&slot]].clone()?;
            match subgroup_as_group(&sub) {
                Ok(p) => Some((sub, p.group)),
                Err(e) => {
                    this.error(format!("{path}.{}", slot.key()), e.to_string());
                    None
                }
            }
        };
        let gamma = if kind == TaskKind::InductionStages { Slot::Inner } else { Slot::Subgroup };
        let Some((_, gamma_group)) = as_group(self, gamma) else { return };
        if let Some(r) = rep {
            if r.group() != &gamma_group {
                self.error(
                    format!("{path}.rep"),
                    format!(
                        "representation must live on subgroup `{}` as a group (generators {})",
                        refs[&gamma],
                        gamma_group.names().join(", ")
                    ),
                );
            }
        }
        if kind != TaskKind::InductionStages {
            return;
        }
        let Some((inner, _)) = as_group(self, Slot::Inner) else { return };
        let Some((outer, lambda)) = as_group(self, Slot::Outer) else { return };
        let direct = self.subgroups[&refs[&Slot::Direct]].clone().expect("checked");
        if inner.ambient() != &lambda {
            self.error(format!("{path}.inner"), format!("must be a subgroup of `{}` as a group", refs[&Slot::Outer]));
        }
        if outer.ambient() != direct.ambient() {
            self.error(format!("{path}.direct"), "must be a subgroup of the same group as `outer`");
        }
    }
}

/// Entries are real literals or `[re, im]` pairs.
fn complex_matrix(rows: &[Vec<Value>]) -> Result<CMatrix, String> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err("expected a square matrix".into());
    }
    let real = |v: &Value| literal(v).map(|l| f64::from_literal(&l));
    let mut data = Vec::with_capacity(n * n);
    for v in rows.iter().flatten() {
        let z = match v {
            Value::Array(pair) if pair.len() == 2 => Complex64::new(real(&pair[0])?, real(&pair[1])?),
            other => Complex64::new(real(other)?, 0.0),
        };
        data.push(z);
    }
    Ok(CMatrix::from_row_slice(n, n, &data))
}
