//! Task kinds and their execution against a resolved [`ProblemSpec`].

use cocyclelab::cohomology::{
    coboundary_membership, harmonic_decomposition, hn, hom_to_inhom, h1, z1_space, CohomologySummary, HomCochain,
    InhomCocycle, Membership,
};
use cocyclelab::error::Error;
use cocyclelab::group::{support_subgroup, FiniteSupportMeasure, Group, Subgroup, Word};
use cocyclelab::induction::{
    coset_transversal, induce_cocycle, induce_representation, induction_h1_check, induction_in_stages, Transversal,
};
use cocyclelab::linalg::Matrix;
use cocyclelab::rep::{almost_invariant_margin, certify_isometric, laplacian, markov_operator, Representation};
use cocyclelab::scalar::{Rational, Scalar};
use cocyclelab::stationarity::{
    cesaro_projection, convex_approximation, gmu_invariance_check, harmonic_function_space, liouville_check,
    stationary_decomposition, stationary_states, unique_stationarity_equivalence, weak_unique_stationarity_check,
    CesaroOptions,
};
use cocyclelab::subspace::Subspace;
use cocyclelab::theorems::{
    center_quotient_h1, center_zn_decomposition, complemented_b1, emu_compress_cocycle, emu_compress_degree_two,
    factor_through_center, hc_homotopy, hc_homotopy_inhom, nilpotent_reduction, product_h1_embedding, product_h1_iso,
    CentralFactorization, HypothesisCheck,
};
use serde_json::{json, Map, Value};

use crate::report::{Hypothesis, Outcome};
use crate::spec::{AnyRep, Coefficient, Cochain, ProblemSpec, TaskSpec};

/// A named input of a task record.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Group,
    Rep,
    Measure,
    First,
    Second,
    Cocycle,
    Subgroup,
    Centralizer,
    Action,
    Inner,
    Outer,
    Direct,
    Degree,
    Element,
    Words,
    Targets,
    Epsilon,
    P,
}

impl Slot {
    pub const ALL: &'static [Slot] = &[
        Slot::Group,
        Slot::Rep,
        Slot::Measure,
        Slot::First,
        Slot::Second,
        Slot::Cocycle,
        Slot::Subgroup,
        Slot::Centralizer,
        Slot::Action,
        Slot::Inner,
        Slot::Outer,
        Slot::Direct,
        Slot::Degree,
        Slot::Element,
        Slot::Words,
        Slot::Targets,
        Slot::Epsilon,
        Slot::P,
    ];

    /// Field name in a task record.
    pub fn key(self) -> &'static str {
        match self {
            Slot::Group => "group",
            Slot::Rep => "rep",
            Slot::Measure => "measure",
            Slot::First => "first",
            Slot::Second => "second",
            Slot::Cocycle => "cocycle",
            Slot::Subgroup => "subgroup",
            Slot::Centralizer => "centralizer",
            Slot::Action => "action",
            Slot::Inner => "inner",
            Slot::Outer => "outer",
            Slot::Direct => "direct",
            Slot::Degree => "degree",
            Slot::Element => "element",
            Slot::Words => "words",
            Slot::Targets => "targets",
            Slot::Epsilon => "epsilon",
            Slot::P => "p",
        }
    }

    /// Whether the slot names a declaration.
    pub fn is_reference(self) -> bool {
        !matches!(self, Slot::Degree | Slot::Element | Slot::Words | Slot::Targets | Slot::Epsilon | Slot::P)
    }
}

macro_rules! task_kinds {
    ($($variant:ident => $name:literal,)*) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
        pub enum TaskKind {
            $($variant,)*
        }

        impl TaskKind {
            pub const ALL: &'static [TaskKind] = &[$(TaskKind::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(TaskKind::$variant => $name,)*
                }
            }

            pub fn from_name(s: &str) -> Option<Self> {
                match s {
                    $($name => Some(TaskKind::$variant),)*
                    _ => None,
                }
            }
        }
    };
}

task_kinds! {
    GroupInfo => "group-info",
    ValidateRep => "validate-rep",
    Certify => "certify",
    Margin => "margin",
    Cesaro => "cesaro",
    StationaryDecomposition => "stationary-decomposition",
    WeakStationarity => "weak-stationarity",
    HarmonicSpace => "harmonic-space",
    Liouville => "liouville",
    StationaryStates => "stationary-states",
    StationarityEquivalence => "stationarity-equivalence",
    GmuInvariance => "gmu-invariance",
    ConvexApproximation => "convex-approximation",
    H1 => "h1",
    Hn => "hn",
    Coboundary => "coboundary",
    HarmonicDecomposition => "harmonic-decomposition",
    Compress => "compress",
    Homotopy => "homotopy",
    ComplementB1 => "complement-b1",
    CenterDecompose => "center-decompose",
    CenterQuotient => "center-quotient",
    FactorCenter => "factor-center",
    NilpotentReduce => "nilpotent-reduce",
    ProductIso => "product-iso",
    ProductEmbed => "product-embed",
    Transversal => "transversal",
    InduceRep => "induce-rep",
    InduceCocycle => "induce-cocycle",
    InductionCheck => "induction-check",
    InductionStages => "induction-stages",
}

impl TaskKind {
    /// Required and optional inputs.
    pub fn slots(self) -> (&'static [Slot], &'static [Slot]) {
        use Slot::*;
        match self {
            TaskKind::GroupInfo => (&[Group], &[]),
            TaskKind::ValidateRep | TaskKind::Certify | TaskKind::H1 | TaskKind::NilpotentReduce => (&[Rep], &[]),
            TaskKind::Margin => (&[Rep], &[Words]),
            TaskKind::Cesaro
            | TaskKind::StationaryDecomposition
            | TaskKind::WeakStationarity
            | TaskKind::CenterQuotient => (&[Rep, Measure], &[]),
            TaskKind::HarmonicSpace | TaskKind::Liouville => (&[Group, Measure], &[]),
            TaskKind::StationaryStates | TaskKind::StationarityEquivalence => (&[Action, Measure], &[]),
            TaskKind::GmuInvariance => (&[Rep, Measure], &[Subgroup]),
            TaskKind::ConvexApproximation => (&[Rep, Measure, Targets, Epsilon], &[]),
            TaskKind::Hn => (&[Rep, Degree], &[]),
            TaskKind::Coboundary => (&[Rep, Cocycle], &[]),
            TaskKind::HarmonicDecomposition => (&[Rep, Measure], &[Cocycle]),
            TaskKind::Compress => (&[Rep, Subgroup, Centralizer, Measure], &[Cocycle, Degree]),
            TaskKind::Homotopy => (&[Rep, Subgroup, Element], &[Cocycle, Degree]),
            TaskKind::ComplementB1 => (&[Rep, Subgroup, Centralizer, Measure], &[]),
            TaskKind::CenterDecompose => (&[Rep, Measure], &[Degree]),
            TaskKind::FactorCenter => (&[Rep, Measure, Cocycle], &[]),
            TaskKind::ProductIso | TaskKind::ProductEmbed => (&[Rep, First, Second], &[]),
            TaskKind::Transversal => (&[Subgroup], &[]),
            TaskKind::InduceRep => (&[Rep, Subgroup], &[P]),
            TaskKind::InduceCocycle => (&[Rep, Subgroup, Cocycle], &[P]),
            TaskKind::InductionCheck => (&[Rep, Subgroup], &[]),
            TaskKind::InductionStages => (&[Rep, Inner, Outer, Direct], &[]),
        }
    }

    /// Induction tasks take a representation of the subgroup, not of the ambient group.
    pub fn rep_on_subgroup(self) -> bool {
        matches!(self, TaskKind::InduceRep | TaskKind::InduceCocycle | TaskKind::InductionCheck | TaskKind::InductionStages)
    }
}

/// Result of a task before expectations and elision are applied.
#[derive(Debug, Default)]
pub struct Payload {
    pub passed: bool,
    pub values: Map<String, Value>,
    pub witnesses: Map<String, Value>,
    pub hypotheses: Vec<Hypothesis>,
}

impl Payload {
    fn new() -> Self {
        Payload { passed: true, ..Default::default() }
    }

    fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.values.insert(key.to_string(), v.into());
    }

    fn num(&mut self, key: &str, x: f64) {
        self.values.insert(key.to_string(), num(x));
    }

    /// Records a boolean that the task's verdict depends on.
    fn check(&mut self, key: &str, ok: bool) {
        self.set(key, ok);
        self.passed &= ok;
    }

    fn witness(&mut self, key: &str, v: Value) {
        self.witnesses.insert(key.to_string(), v);
    }

    fn hypotheses(&mut self, checks: &[HypothesisCheck]) {
        self.hypotheses.extend(checks.iter().map(Hypothesis::from));
    }
}

/// JSON number, or a string for non-finite values so the report round-trips.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x.is_nan() {
        json!("nan")
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

fn vector<S: Scalar>(v: &[S]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.render())).collect())
}

fn matrix<S: Scalar>(m: &Matrix<S>) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vector(r)).collect())
}

fn basis<S: Scalar>(m: &Matrix<S>) -> Value {
    Value::Array(m.columns().iter().map(|c| vector(c)).collect())
}

fn subspace<S: Coefficient>(s: &Subspace<S>) -> Value {
    basis(s.basis())
}

fn cocycle<S: Scalar>(b: &InhomCocycle<S>, g: &Group) -> Value {
    let mut m = Map::new();
    for (name, v) in g.names().iter().zip(&b.values) {
        m.insert(name.clone(), vector(v));
    }
    Value::Object(m)
}

fn words(g: &Group, ws: &[Word]) -> Value {
    Value::Array(ws.iter().map(|w| Value::String(g.render(w))).collect())
}

fn dims<S: Coefficient>(p: &mut Payload, prefix: &str, s: &CohomologySummary<S>) {
    let (z, b, h) = s.dims();
    p.set(&format!("{prefix}z_dim"), z);
    p.set(&format!("{prefix}b_dim"), b);
    p.set(&format!("{prefix}h_dim"), h);
}

/// Equality of matrices: exact for rationals, relative `1e-8` for floats.
fn agree<S: Coefficient>(a: &Matrix<S>, b: &Matrix<S>) -> bool {
    if S::is_exact() {
        a == b
    } else {
        a.distance(b) <= 1e-8 * (1.0 + a.max_abs().max(b.max_abs()))
    }
}

/// Whether an error is a failed check (as opposed to a failed computation).
pub fn is_check_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::HypothesisFailed { .. }
            | Error::NormPreconditionFailed { .. }
            | Error::PreconditionFailed(_)
            | Error::NoPrimitive(_)
            | Error::NoCertificate
            | Error::NotDirect { .. }
    )
}

/// Variant name of a library error.
pub fn error_kind(e: &Error) -> String {
    let debug = format!("{e:?}");
    debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

pub fn outcome_of_error(e: &Error) -> Outcome {
    if is_check_failure(e) {
        Outcome::Fail
    } else {
        Outcome::Error
    }
}

type Run = Result<Payload, Error>;

/// Runs one task.
pub fn execute(spec: &ProblemSpec, task: &TaskSpec) -> Run {
    let opts = CesaroOptions { tol: spec.options.tol, max_iter: spec.options.max_iter };
    let cx = Context { spec, task, opts };
    match task.kind {
        TaskKind::GroupInfo => group_info(spec.group(task.name(Slot::Group))),
        TaskKind::HarmonicSpace => harmonic_space(spec.group(task.name(Slot::Group)), spec.measure(task.name(Slot::Measure))),
        TaskKind::Liouville => liouville(spec.group(task.name(Slot::Group)), spec.measure(task.name(Slot::Measure))),
        TaskKind::StationaryStates => {
            let s = stationary_states(spec.action(task.name(Slot::Action)), spec.measure(task.name(Slot::Measure)))?;
            let mut p = Payload::new();
            p.set("fixed_dim", s.fixed_dim);
            p.set("affine_dim", s.affine_dim);
            p.set("unique", s.unique);
            p.num("min_eigenvalue", s.min_eigenvalue);
            p.set("interior_point", s.interior_point.iter().map(|&x| num(x)).collect::<Vec<_>>());
            p.witness("directions", Value::Array(s.directions.iter().map(|d| d.iter().map(|&x| num(x)).collect()).collect()));
            Ok(p)
        }
        TaskKind::StationarityEquivalence => {
            let r = unique_stationarity_equivalence(spec.action(task.name(Slot::Action)), spec.measure(task.name(Slot::Measure)))?;
            let mut p = Payload::new();
            p.set("fixed_algebra_dim", r.fixed_algebra_dim);
            p.set("scalars_only", r.scalars_only);
            p.set("uniquely_stationary", r.uniquely_stationary);
            p.set("weakly_uniquely_stationary", r.weakly_uniquely_stationary);
            p.set("forward", r.forward);
            p.set("equivalence", r.equivalence);
            p.check("passed", r.passed);
            Ok(p)
        }
        TaskKind::Transversal => {
            let d = cx.transversal(Slot::Subgroup)?;
            let mut p = Payload::new();
            p.set("index", d.index());
            p.set("representatives", words(d.ambient(), d.representatives()));
            Ok(p)
        }
        _ => match spec.rep(task.name(Slot::Rep)) {
            AnyRep::Rational(rho) => cx.with_rep::<Rational>(rho),
            AnyRep::Float(rho) => cx.with_rep::<f64>(rho),
        },
    }
}

fn group_info(g: &Group) -> Run {
    let mut p = Payload::new();
    p.set("family", g.family_name());
    p.set("generators", g.names().to_vec());
    p.set("order", g.order());
    p.set("abelian", g.is_abelian());
    p.set("relators", words(g, &g.relators()));
    Ok(p)
}

fn coset_count(g: &Group, mu: &FiniteSupportMeasure) -> Result<Option<usize>, Error> {
    let Some(order) = g.order() else { return Ok(None) };
    let sub = support_subgroup(mu)?;
    Ok(Some(order / sub.elements()?.len()))
}

fn harmonic_space(g: &Group, mu: &FiniteSupportMeasure) -> Run {
    let dim = if mu.is_exact() {
        harmonic_function_space::<Rational>(g, mu)?.space.dim()
    } else {
        harmonic_function_space::<f64>(g, mu)?.space.dim()
    };
    let cosets = coset_count(g, mu)?;
    let mut p = Payload::new();
    p.set("dim", dim);
    p.set("coset_count", cosets);
    p.check("dim_matches_cosets", cosets == Some(dim));
    Ok(p)
}

fn liouville(g: &Group, mu: &FiniteSupportMeasure) -> Run {
    let holds = if mu.is_exact() { liouville_check::<Rational>(g, mu)? } else { liouville_check::<f64>(g, mu)? };
    let mut p = Payload::new();
    p.set("liouville", holds);
    Ok(p)
}

struct Context<'a> {
    spec: &'a ProblemSpec,
    task: &'a TaskSpec,
    opts: CesaroOptions,
}

impl Context<'_> {
    fn measure(&self, slot: Slot) -> &FiniteSupportMeasure {
        self.spec.measure(self.task.name(slot))
    }

    fn subgroup(&self, slot: Slot) -> &Subgroup {
        self.spec.subgroup(self.task.name(slot))
    }

    fn transversal(&self, slot: Slot) -> Result<Transversal, Error> {
        let sub = self.subgroup(slot);
        coset_transversal(sub.ambient(), sub, self.spec.options.index_cap)
    }

    fn cochain<S: Coefficient>(&self) -> Option<&Cochain<S>> {
        let name = self.task.refs.get(&Slot::Cocycle)?;
        Some(S::pick_cochain(self.spec.cochain(name)).expect("cocycle matches its representation"))
    }

    /// The task's degree-1 cocycle, or the sum of the canonical basis of `Z¹`.
    fn inhom<S: Coefficient>(&self, rho: &Representation<S>) -> Result<InhomCocycle<S>, Error> {
        match self.cochain::<S>() {
            Some(Cochain::Inhom(b)) => Ok(b.clone()),
            Some(Cochain::Hom(f)) => hom_to_inhom(rho, f),
            None => Ok(InhomCocycle::from_coordinates(rho, &column_sum(z1_space(rho)?.basis()))),
        }
    }

    /// The task's homogeneous cochain of the task degree, or the sum of the canonical basis of `Zⁿ`.
    fn hom<S: Coefficient>(&self, rho: &Representation<S>) -> Result<HomCochain<S>, Error> {
        match self.cochain::<S>() {
            Some(Cochain::Hom(f)) => Ok(f.clone()),
            Some(Cochain::Inhom(_)) => {
                Err(Error::PreconditionFailed("a degree-1 cocycle was given where a homogeneous cochain is needed".into()))
            }
            None => {
                let z = hn(rho, self.task.degree)?.z;
                Ok(HomCochain { degree: self.task.degree, values: column_sum(z.basis()) })
            }
        }
    }

    fn with_rep<S: Coefficient>(&self, rho: &Representation<S>) -> Run {
        let task = self.task;
        let mut p = Payload::new();
        let g = rho.group();
        match task.kind {
            TaskKind::ValidateRep => {
                let v = rho.validate()?;
                p.set("dim", rho.dim());
                p.set("relators_checked", v.relators_checked);
                p.num("max_residual", v.max_residual);
            }
            TaskKind::Certify => {
                let c = certify_isometric(rho)?;
                p.set("source", format!("{:?}", c.source));
                p.num("bound", c.bound);
                p.witness("form", matrix(&c.form));
            }
            TaskKind::Margin => {
                let ws = task.words.clone().unwrap_or_else(|| g.generators());
                let c = certify_isometric(rho)?;
                let kappa = almost_invariant_margin(rho, &ws, &c.form)?;
                p.set("words", words(g, &ws));
                p.num("kappa", kappa);
                p.check("no_almost_invariant_vectors", kappa > 0.0);
            }
            TaskKind::Cesaro => {
                let mu = self.measure(Slot::Measure);
                let e = cesaro_projection(rho, mu, self.opts)?;
                let m = markov_operator(rho, mu);
                let delta = laplacian(rho, mu);
                p.set("iterations", e.iterations);
                p.num("residual", e.residual);
                p.num("identity_residual", e.identity_residual);
                p.set("exact", e.exact);
                p.set("rank", Subspace::span(&e.e).dim());
                p.check("idempotent", agree(&e.e.mul(&e.e), &e.e));
                p.check("absorbs_markov", agree(&m.mul(&e.e), &e.e) && agree(&e.e.mul(&m), &e.e));
                p.check("image_is_kernel_of_laplacian", Subspace::span(&e.e).equals(&Subspace::kernel_of(&delta)));
                p.check("kernel_is_image_of_laplacian", Subspace::kernel_of(&e.e).equals(&Subspace::span(&delta)));
                p.witness("projection", matrix(&e.e));
            }
            TaskKind::StationaryDecomposition => {
                let d = stationary_decomposition(rho, self.measure(Slot::Measure))?;
                p.set("v0_dim", d.v0.dim());
                p.set("fixed_dim", d.v_mu.dim());
                p.num("residual", d.residual);
                p.check("direct", d.v0.is_complement_of(&d.v_mu));
                p.witness("v0", subspace(&d.v0));
                p.witness("fixed", subspace(&d.v_mu));
            }
            TaskKind::WeakStationarity => {
                let w = weak_unique_stationarity_check(rho, self.measure(Slot::Measure))?;
                p.set("fixed_dim", w.fixed_dim);
                p.set("dual_fixed_dim", w.dual_fixed_dim);
                p.set("pairing_rank", w.pairing_rank);
                p.check("holds", w.holds);
            }
            TaskKind::GmuInvariance => {
                let mu = self.measure(Slot::Measure);
                let on = match task.refs.get(&Slot::Subgroup) {
                    Some(n) => self.spec.subgroup(n).clone(),
                    None => support_subgroup(mu)?,
                };
                let r = gmu_invariance_check(rho, mu, &on, self.opts)?;
                p.set("subgroup", words(g, on.generators()));
                p.num("max_residual", r.max_residual);
                p.check("passed", r.passed);
            }
            TaskKind::ConvexApproximation => {
                let targets: Vec<Vec<S>> = task
                    .targets
                    .as_ref()
                    .expect("required")
                    .iter()
                    .map(|t| t.iter().map(S::from_literal).collect())
                    .collect();
                let eps = task.epsilon.expect("required");
                let c = convex_approximation(rho, self.measure(Slot::Measure), &targets, eps, self.opts)?;
                p.set("terms", c.terms);
                p.num("max_error", c.max_error);
                p.check("within_epsilon", c.max_error < eps);
                let atoms = c.measure.render().into_iter().map(|(w, x)| json!([w, x])).collect();
                p.witness("measure", Value::Array(atoms));
            }
            TaskKind::H1 => {
                let s = h1(rho)?;
                dims(&mut p, "", &s);
                p.witness("representatives", basis(&s.representatives));
            }
            TaskKind::Hn => {
                let s = hn(rho, task.degree)?;
                p.set("degree", task.degree);
                dims(&mut p, "", &s);
                p.witness("representatives", basis(&s.representatives));
            }
            TaskKind::Coboundary => {
                let b = self.inhom(rho)?;
                p.num("norm", b.norm());
                match coboundary_membership(rho, &b) {
                    Membership::Primitive(v) => {
                        p.set("status", "primitive");
                        p.set("coboundary", true);
                        p.witness("primitive", vector(&v));
                    }
                    Membership::NotCoboundary { residual } => {
                        p.set("status", "not-coboundary");
                        p.set("coboundary", false);
                        p.num("residual", residual);
                    }
                    Membership::Ambiguous { residual, candidate } => {
                        p.set("status", "ambiguous");
                        p.set("coboundary", Value::Null);
                        p.num("residual", residual);
                        p.witness("candidate", vector(&candidate));
                    }
                }
            }
            TaskKind::HarmonicDecomposition => {
                let h = harmonic_decomposition(rho, self.measure(Slot::Measure))?;
                p.num("markov_norm", h.markov_norm);
                p.set("z_dim", h.z.dim());
                p.set("b_dim", h.b.dim());
                p.set("harmonic_dim", h.harmonic.dim());
                p.check("dims_add", h.z.dim() == h.b.dim() + h.harmonic.dim());
                p.check("direct", h.b.sum(&h.harmonic).equals(&h.z));
                if task.refs.contains_key(&Slot::Cocycle) {
                    let b = self.inhom(rho)?;
                    p.witness("harmonic_part", cocycle(&h.harmonic_part(rho, &b), g));
                }
                p.witness("harmonic", subspace(&h.harmonic));
            }
            TaskKind::Compress => {
                let (n, c, mu) = (self.subgroup(Slot::Subgroup), self.subgroup(Slot::Centralizer), self.measure(Slot::Measure));
                p.set("degree", task.degree);
                if task.degree == 1 {
                    let b = self.inhom(rho)?;
                    let r = emu_compress_cocycle(rho, &b, n, c, mu, self.opts)?;
                    let relators_ok = InhomCocycle::new(&r.restricted_rep, r.compressed.values.clone()).is_ok();
                    let fixed = rho.mu_fixed_space(mu);
                    let in_fixed = r.compressed.values.iter().all(|v| fixed.contains(v));
                    let diff = r.restricted.sub(&r.compressed);
                    let gap = InhomCocycle::coboundary(&r.restricted_rep, &r.primitive).sub(&diff).norm();
                    let bound = if S::is_exact() { 0.0 } else { 1e-8 * (1.0 + b.norm()) };
                    p.num("residual", gap);
                    p.check("relators_hold", relators_ok);
                    p.check("values_fixed", in_fixed);
                    p.check("primitive_reproduces_difference", gap <= bound);
                    p.witness("compressed", cocycle(&r.compressed, r.restricted_rep.group()));
                    p.witness("primitive", vector(&r.primitive));
                } else {
                    let f = self.hom(rho)?;
                    let r = emu_compress_degree_two(rho, &f, n, c, mu, self.opts)?;
                    let bound = if S::is_exact() { 0.0 } else { 1e-8 * (1.0 + norm_of(&f.values)) };
                    p.num("residual", r.residual);
                    p.check("primitive_reproduces_difference", r.residual <= bound);
                    p.witness("compressed", vector(&r.compressed.values));
                    p.witness("primitive", vector(&r.primitive.values));
                }
            }
            TaskKind::Homotopy => {
                let c = task.element.as_ref().expect("required");
                let n = self.subgroup(Slot::Subgroup);
                let degree = task.degree;
                let r = match (degree, self.cochain::<S>()) {
                    (1, Some(Cochain::Inhom(_)) | None) => hc_homotopy_inhom(rho, &self.inhom(rho)?, c, n)?,
                    _ => hc_homotopy(rho, &self.hom(rho)?, c, n)?,
                };
                p.set("degree", r.degree);
                p.set("tuples_checked", r.tuples_checked);
                p.num("residual", r.residual);
                p.check("holds", r.holds);
                p.witness("h", vector(&r.h));
            }
            TaskKind::ComplementB1 => {
                let r = complemented_b1(
                    rho,
                    self.subgroup(Slot::Subgroup),
                    self.subgroup(Slot::Centralizer),
                    self.measure(Slot::Measure),
                    self.opts,
                )?;
                p.set("restricted_dim", r.restricted.dim());
                p.set("image_dim", r.image.dim());
                p.set("b1_v0_dim", r.b1_v0.dim());
                p.set("complement_dim", r.complement_dim);
                p.set("idempotent", r.idempotent);
                p.set("image_matches", r.image_matches);
                p.set("full_coboundaries", r.full_coboundaries);
                p.check("passed", r.passed);
                p.witness("projection", matrix(&r.projection));
            }
            TaskKind::CenterDecompose => {
                let r = center_zn_decomposition(rho, self.measure(Slot::Measure), task.degree, self.opts)?;
                p.set("degree", r.degree);
                p.set("z_dim", r.z.dim());
                p.set("b_v0_dim", r.b_v0.dim());
                p.set("z_fixed_dim", r.z_fixed.dim());
                p.set("h_dim", r.h_dim);
                p.set("h_fixed_dim", r.h_fixed_dim);
                p.set("direct", r.direct);
                p.set("projection_splits", r.projection_splits);
                p.check("passed", r.passed);
            }
            TaskKind::CenterQuotient => {
                let r = center_quotient_h1(rho, self.measure(Slot::Measure))?;
                p.set("quotient_family", r.quotient.group.family_name());
                p.set("fixed_dim", r.fixed.dim());
                p.set("fixed_equal", r.fixed_equal);
                p.set("z_quotient_dim", r.z_quotient_dim);
                p.set("z_fixed_dim", r.z_fixed_dim);
                p.set("inflation_injective", r.inflation_injective);
                p.set("inflation_onto", r.inflation_onto);
                p.set("constant_on_cosets", r.constant_on_cosets);
                p.set("h_dim", r.h_dim);
                p.set("h_quotient_dim", r.h_quotient_dim);
                p.check("passed", r.passed);
            }
            TaskKind::FactorCenter => {
                let b = self.inhom(rho)?;
                match factor_through_center(rho, self.measure(Slot::Measure), &b, self.opts)? {
                    CentralFactorization::Factors { quotient, fixed, cocycle: c, .. } => {
                        p.set("factors", true);
                        p.set("quotient_family", quotient.group.family_name());
                        p.set("fixed_dim", fixed.dim());
                        p.witness("cocycle", cocycle(&c, &quotient.group));
                    }
                    CentralFactorization::Counterexample { generator, value_norm, growth } => {
                        p.set("factors", false);
                        p.set("generator", generator);
                        p.num("value_norm", value_norm);
                        p.num("growth", growth);
                    }
                }
            }
            TaskKind::NilpotentReduce => {
                let r = nilpotent_reduction(rho)?;
                p.set("levels", r.levels);
                p.set("z_dim", r.z_dim);
                p.set("abelian_part_dim", r.abelian_part.len());
                p.set("w_dim", r.w_basis.len());
                p.set("commutator_fixed_dim", r.commutator_fixed.dim());
                p.set("h_dim", r.h_dim);
                p.set("h_abelian_dim", r.h_abelian_dim);
                p.set("direct", r.direct);
                p.set("w_coboundaries", r.w_coboundaries);
                p.set("fixed_matches", r.fixed_matches);
                p.set("w_is_b1", r.w_is_b1);
                p.set("restriction_vanishes", r.restriction_vanishes);
                p.check("passed", r.passed);
                let w: Vec<Value> = r.w_basis.iter().map(|b| cocycle(b, g)).collect();
                p.witness("w_basis", Value::Array(w));
            }
            TaskKind::ProductIso => {
                let r = product_h1_iso(rho, self.measure(Slot::First), self.measure(Slot::Second), self.spec.options.force)?;
                p.hypotheses(&r.hypotheses);
                p.num("markov_norm", r.markov_norm);
                dims(&mut p, "whole_", &r.whole);
                dims(&mut p, "first_", &r.first);
                dims(&mut p, "second_", &r.second);
                p.set("forward_then_inverse", r.forward_then_inverse);
                p.set("inverse_then_forward", r.inverse_then_forward);
                p.set("dims_add", r.dims_add);
                p.check("passed", r.passed);
                p.witness("forward", matrix(&r.forward));
                p.witness("inverse", matrix(&r.inverse));
            }
            TaskKind::ProductEmbed => {
                let r = product_h1_embedding(
                    rho,
                    self.measure(Slot::First),
                    self.measure(Slot::Second),
                    self.opts,
                    self.spec.options.force,
                )?;
                p.hypotheses(&r.hypotheses);
                p.num("margin", r.margin);
                p.set("source_dim", r.source_dim);
                p.set("target_dim", r.target_dim);
                p.set("image_dim", r.image_dim);
                p.set("injective", r.injective);
                p.set("surjective", r.surjective);
                p.check("passed", r.passed);
            }
            TaskKind::InduceRep | TaskKind::InduceCocycle => {
                let d = self.transversal(Slot::Subgroup)?;
                let ind = induce_representation(rho, &d, task.p)?;
                let v = ind.assembled.validate()?;
                p.set("index", ind.index);
                p.set("dim", ind.assembled.dim());
                p.set("relators_checked", v.relators_checked);
                p.num("max_residual", v.max_residual);
                if let Some(form) = &ind.block_form {
                    let preserved = ind.assembled.images().iter().all(|m| agree(&m.transpose().mul(form).mul(m), form));
                    p.check("block_form_preserved", preserved);
                }
                if task.kind == TaskKind::InduceCocycle {
                    let b = self.inhom(rho)?;
                    let bt = induce_cocycle(&ind, &d, &b)?;
                    let valid = InhomCocycle::new(&ind.assembled, bt.values.clone()).is_ok();
                    p.check("cocycle_valid", valid);
                    p.witness("cocycle", cocycle(&bt, ind.assembled.group()));
                } else {
                    let images: Vec<Value> = ind.assembled.images().iter().map(matrix).collect();
                    p.witness("images", Value::Array(images));
                }
            }
            TaskKind::InductionCheck => {
                let d = self.transversal(Slot::Subgroup)?;
                let r = induction_h1_check(rho, &d)?;
                p.set("index", r.index);
                p.set("base_h_dim", r.base_h_dim);
                p.set("induced_h_dim", r.induced_h_dim);
                p.set("images_independent", r.images_independent);
                p.check("passed", r.passed);
            }
            TaskKind::InductionStages => {
                let inner = self.transversal(Slot::Inner)?;
                let outer = self.transversal(Slot::Outer)?;
                let direct = self.transversal(Slot::Direct)?;
                let r = induction_in_stages(rho, &inner, &outer, &direct)?;
                p.set("index", direct.index());
                p.num("residual", r.residual);
                p.set("reindexing", r.reindexing.clone());
                p.check("equivalent", r.equivalent);
                p.witness("intertwiner", matrix(&r.intertwiner));
            }
            TaskKind::GroupInfo
            | TaskKind::HarmonicSpace
            | TaskKind::Liouville
            | TaskKind::StationaryStates
            | TaskKind::StationarityEquivalence
            | TaskKind::Transversal => unreachable!("dispatched without a representation"),
        }
        Ok(p)
    }
}

fn column_sum<S: Coefficient>(m: &Matrix<S>) -> Vec<S> {
    let mut out = vec![S::zero(); m.rows()];
    for c in m.columns() {
        for (o, x) in out.iter_mut().zip(c) {
            *o = o.clone() + x;
        }
    }
    out
}

fn norm_of<S: Scalar>(v: &[S]) -> f64 {
    v.iter().map(|x| x.to_f64().powi(2)).sum::<f64>().sqrt()
}
