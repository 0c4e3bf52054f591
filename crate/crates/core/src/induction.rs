//! Finite-index subgroups: transversals, the cocycle `χ_D`, and induction of
//! representations and 1-cocycles.
//!
//! Conventions. `D = {d_0 = e, d_1, …}` is a left transversal, `G = DΓ`
//! disjointly. `χ_D(g, x)` is the unique `γ ∈ Γ` with `g·x·γ ∈ D`, so
//! `χ_D(g, x) = x⁻¹g⁻¹d` for the representative `d` of `gxΓ`, and
//! `χ_D(gh, x) = χ_D(h, x)·χ_D(g, hxχ_D(h, x))`. A vector of the induced module
//! is the list of values `f(d_i)` of a function `f : G → V` with
//! `f(gγ) = ρ(γ)⁻¹f(g)`; `G` acts by `(g·f)(x) = f(g⁻¹x)`. Elements of `Γ` are
//! returned as words in the generators of `Γ`, so the base representation is a
//! representation of `Γ` presented as a group.
//!
//! At finite index over a discrete group the lattice is cocompact, so every
//! integrability condition on the cocycle is automatic.

use std::collections::HashMap;

use crate::cohomology::{coboundary_map, expand_word_cocycle, h1, InhomCocycle};
use crate::error::{Error, Result};
use crate::group::{subgroup_as_group, Family, Group, StallingsGraph, Subgroup, SubgroupGroup, Word};
use crate::linalg::{Field, Matrix};
use crate::rep::{certify_isometric, NormKind, Representation};
use crate::theorems::span_or_zero;

/// Default cap on the index.
pub const INDEX_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq)]
enum Oracle {
    /// Vertex of the Stallings graph reached by reading `d_i⁻¹`, per representative.
    Free { graph: StallingsGraph, vertex_of_rep: Vec<usize> },
    /// `Γ = kℤ`; `bezout` writes `a^k` in the given generators.
    Cyclic { k: i64, bezout: Vec<i64> },
    /// Coset index of each element and the local index of each element of `Γ`.
    Table { coset_of: Vec<usize>, local: HashMap<usize, usize>, rep_elements: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Transversal {
    ambient: Group,
    subgroup: Subgroup,
    presented: SubgroupGroup,
    representatives: Vec<Word>,
    oracle: Oracle,
}

fn extended_gcd(values: &[i64]) -> (i64, Vec<i64>) {
    let mut g = 0i64;
    let mut coeffs: Vec<i64> = vec![0; values.len()];
    for (i, &v) in values.iter().enumerate() {
        // g_new = s·g + t·v
        let (mut old_r, mut r) = (g, v);
        let (mut old_s, mut s) = (1i64, 0i64);
        let (mut old_t, mut t) = (0i64, 1i64);
        while r != 0 {
            let q = old_r.div_euclid(r);
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
            (old_t, t) = (t, old_t - q * t);
        }
        if old_r < 0 {
            (old_r, old_s, old_t) = (-old_r, -old_s, -old_t);
        }
        for c in coeffs.iter_mut().take(i) {
            *c *= old_s;
        }
        coeffs[i] = old_t;
        g = old_r;
    }
    (g, coeffs)
}

impl Transversal {
    pub fn ambient(&self) -> &Group {
        &self.ambient
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// `Γ` as a group in its own right.
    pub fn presented(&self) -> &SubgroupGroup {
        &self.presented
    }

    pub fn representatives(&self) -> &[Word] {
        &self.representatives
    }

    pub fn index(&self) -> usize {
        self.representatives.len()
    }

    /// `Γ`-word read back in the ambient group.
    pub fn to_ambient(&self, gamma: &Word) -> Word {
        gamma.substitute(&self.presented.inclusion)
    }

    /// `g = d_i·γ`: the representative index and `γ` as a word in the
    /// generators of `Γ`.
    pub fn locate(&self, g: &Word) -> Result<(usize, Word)> {
        self.ambient.check_word(g)?;
        match &self.oracle {
            Oracle::Free { graph, vertex_of_rep } => {
                let (v, _) = graph.read(0, &g.inverse()).ok_or(Error::NotFiniteIndex)?;
                let i = vertex_of_rep.iter().position(|&u| u == v).ok_or(Error::NotFiniteIndex)?;
                let gamma = graph
                    .rewrite(&self.representatives[i].inverse().mul(g))
                    .ok_or_else(|| Error::InvalidGroup("coset graph is inconsistent".into()))?;
                Ok((i, gamma))
            }
            Oracle::Cyclic { k, bezout } => {
                let n = g.exponent_sum(0);
                let i = n.rem_euclid(*k);
                let q = (n - i) / k;
                let letters = bezout.iter().enumerate().filter(|(_, &c)| c != 0).map(|(j, &c)| (j, c * q));
                Ok((i as usize, Word::from_letters(letters)))
            }
            Oracle::Table { coset_of, local, rep_elements } => {
                let t = self.ambient.table().expect("table oracle");
                let x = t.evaluate(g)?;
                let i = coset_of[x];
                let gamma = t.mul(t.inv(rep_elements[i]), x);
                let tn = self.presented.group.table().expect("subgroup table");
                Ok((i, tn.word_of(local[&gamma]).clone()))
            }
        }
    }
}

/// Left transversal with the identity first.
pub fn coset_transversal(g: &Group, gamma: &Subgroup, cap: usize) -> Result<Transversal> {
    let presented = subgroup_as_group(gamma)?;
    let (representatives, oracle) = match g.family() {
        Family::Free(k) => {
            let graph = StallingsGraph::build(*k, gamma.generators());
            let index = graph.index().ok_or(Error::NotFiniteIndex)?;
            if index > cap {
                return Err(Error::CapExceeded { cap });
            }
            // Breadth-first over left multiplication by generators.
            let mut reps = vec![Word::identity()];
            let mut vertices = vec![0usize];
            let mut next = 0;
            while next < reps.len() && reps.len() < index {
                let d = reps[next].clone();
                next += 1;
                for s in 0..*k {
                    for e in [1, -1] {
                        let cand = Word::power_of(s, e).mul(&d);
                        let (v, _) = graph.read(0, &cand.inverse()).ok_or(Error::NotFiniteIndex)?;
                        if !vertices.contains(&v) {
                            vertices.push(v);
                            reps.push(cand);
                        }
                    }
                }
            }
            (reps, Oracle::Free { graph, vertex_of_rep: vertices })
        }
        Family::FreeAbelian(1) => {
            let exps: Vec<i64> = gamma.generators().iter().map(|w| w.exponent_sum(0)).collect();
            let (k, bezout) = extended_gcd(&exps);
            if k == 0 {
                return Err(Error::NotFiniteIndex);
            }
            if k as usize > cap {
                return Err(Error::CapExceeded { cap });
            }
            ((0..k).map(|i| Word::power_of(0, i)).collect(), Oracle::Cyclic { k, bezout })
        }
        Family::FiniteTable(t) => {
            let members = gamma.elements()?;
            let n = t.order();
            if n / members.len() > cap {
                return Err(Error::CapExceeded { cap });
            }
            let mut coset_of = vec![usize::MAX; n];
            let mut rep_elements = Vec::new();
            let order = std::iter::once(t.identity()).chain((0..n).filter(|&x| x != t.identity()));
            for x in order {
                if coset_of[x] != usize::MAX {
                    continue;
                }
                let c = rep_elements.len();
                rep_elements.push(x);
                for &m in &members {
                    coset_of[t.mul(x, m)] = c;
                }
            }
            let tn = presented.group.table().ok_or_else(|| Error::UnsupportedFamily("subgroup without a table".into()))?;
            let mut local = HashMap::new();
            for i in 0..tn.order() {
                local.insert(t.evaluate(&tn.word_of(i).substitute(&presented.inclusion))?, i);
            }
            let reps = rep_elements.iter().map(|&x| t.word_of(x).clone()).collect();
            (reps, Oracle::Table { coset_of, local, rep_elements })
        }
        _ => return Err(Error::UnsupportedFamily(format!("coset transversal in {}", g.family_name()))),
    };
    Ok(Transversal { ambient: g.clone(), subgroup: gamma.clone(), presented, representatives, oracle })
}

/// `χ_D(g, x)` as a word in the generators of `Γ`, and the index of `g·x·χ_D(g, x)`.
pub fn chi_cocycle(d: &Transversal, g: &Word, x: usize) -> Result<(Word, usize)> {
    let (j, gamma) = d.locate(&g.mul(&d.representatives[x]))?;
    Ok((gamma.inverse(), j))
}

/// `p` of the `ℓ^p` combination of the slot norms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LpExponent {
    One,
    #[default]
    Two,
    Infinity,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InducedRep<S> {
    pub base: Representation<S>,
    pub index: usize,
    pub p: LpExponent,
    pub assembled: Representation<S>,
    /// Block-diagonal invariant form `P̃ = diag(P, …, P)` for `p = 2`.
    pub block_form: Option<Matrix<S>>,
}

/// Block `(i, j)` of `Ind(ρ)_g` is `ρ(χ_D(g⁻¹, x_i))` where `j` is the slot of
/// `g⁻¹x_iχ_D(g⁻¹, x_i)`.
fn induced_matrix<S: Field>(base: &Representation<S>, d: &Transversal, g: &Word) -> Result<Matrix<S>> {
    let m = d.index();
    let k = base.dim();
    let mut out = Matrix::zeros(m * k, m * k);
    let ginv = g.inverse();
    for i in 0..m {
        let (gamma, j) = chi_cocycle(d, &ginv, i)?;
        out.set_block(i * k, j * k, &base.image(&gamma));
    }
    Ok(out)
}

pub fn induce_representation<S: Field>(
    base: &Representation<S>,
    d: &Transversal,
    p: LpExponent,
) -> Result<InducedRep<S>> {
    if base.group().generator_count() != d.presented.group.generator_count() {
        return Err(Error::DimensionMismatch("base representation is not over the transversal's subgroup".into()));
    }
    let cert = certify_isometric(base).map_err(|_| Error::PreconditionFailed("base representation is not certified".into()))?;
    let g = &d.ambient;
    let images = g.generators().iter().map(|s| induced_matrix(base, d, s)).collect::<Result<Vec<_>>>()?;
    let m = d.index();
    let block_form = (p == LpExponent::Two).then(|| cert.form.block_diagonal(m));
    let norm = match p {
        LpExponent::One => NormKind::One,
        LpExponent::Two => NormKind::Form(cert.form.block_diagonal(m)),
        LpExponent::Infinity => NormKind::Infinity,
    };
    let assembled = Representation::new(g, m * base.dim(), images)?.with_norm(norm);
    Ok(InducedRep { base: base.clone(), index: m, p, assembled, block_form })
}

/// `β̃(s)` has slot `i` equal to `β(χ_D(s⁻¹, x_i))`.
pub fn induce_cocycle<S: Field>(
    induced: &InducedRep<S>,
    d: &Transversal,
    b: &InhomCocycle<S>,
) -> Result<InhomCocycle<S>> {
    let base = &induced.base;
    let values = d
        .ambient
        .generators()
        .iter()
        .map(|s| {
            let sinv = s.inverse();
            let mut v = Vec::with_capacity(induced.assembled.dim());
            for i in 0..d.index() {
                let (gamma, _) = chi_cocycle(d, &sinv, i)?;
                v.extend(expand_word_cocycle(base, b, &gamma));
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?;
    InhomCocycle::new(&induced.assembled, values)
}

#[derive(Clone, Debug, PartialEq)]
pub struct InductionReport {
    pub index: usize,
    pub base_h_dim: usize,
    pub induced_h_dim: usize,
    /// Induced images of the base representatives stay independent modulo `B¹(G)`.
    pub images_independent: bool,
    pub passed: bool,
}

/// `H¹(Γ, ρ) ≅ H¹(G, Ind ρ)`.
pub fn induction_h1_check<S: Field>(base: &Representation<S>, d: &Transversal) -> Result<InductionReport> {
    let induced = induce_representation(base, d, LpExponent::Two)?;
    let hb = h1(base)?;
    let hg = h1(&induced.assembled)?;
    let images = hb
        .representatives
        .columns()
        .iter()
        .map(|c| induce_cocycle(&induced, d, &InhomCocycle::from_coordinates(base, c)).map(|b| b.coordinates()))
        .collect::<Result<Vec<_>>>()?;
    let kd = induced.assembled.group().generator_count() * induced.assembled.dim();
    let b = span_or_zero(&coboundary_map(&induced.assembled));
    let combined = span_or_zero(&Matrix::from_columns(kd, &images)).sum(&b);
    let images_independent = combined.dim() == b.dim() + images.len();
    let passed = images_independent && hb.dim_h() == hg.dim_h();
    Ok(InductionReport { index: d.index(), base_h_dim: hb.dim_h(), induced_h_dim: hg.dim_h(), images_independent, passed })
}

#[derive(Clone, Debug, PartialEq)]
pub struct StagesReport<S> {
    /// `Q` with `Q·Ind_Γ^G(ρ)_g = Ind_Λ^G(Ind_Γ^Λ ρ)_g·Q`; block `((i, j), k)` is
    /// `ρ(γ)⁻¹` where `x_i·y_j = d_k·γ`.
    pub intertwiner: Matrix<S>,
    /// Slot `k` of the direct induction for each stage slot `(i, j)`.
    pub reindexing: Vec<usize>,
    pub residual: f64,
    pub equivalent: bool,
}

/// Compares inducing `Γ → Λ → G` with `Γ → G`. `inner` is `Γ` inside `Λ`
/// presented as a group, `outer` is `Λ ≤ G`, `direct` is `Γ ≤ G`; the
/// generators of `Γ` must correspond in `inner` and `direct`.
pub fn induction_in_stages<S: Field>(
    base: &Representation<S>,
    inner: &Transversal,
    outer: &Transversal,
    direct: &Transversal,
) -> Result<StagesReport<S>> {
    let g = &direct.ambient;
    let inner_gens = inner.presented.inclusion.iter().map(|w| outer.to_ambient(w));
    if inner.presented.inclusion.len() != direct.presented.inclusion.len()
        || !inner_gens.zip(&direct.presented.inclusion).all(|(u, v)| g.equal(&u, v).unwrap_or(false))
    {
        return Err(Error::PreconditionFailed("Γ is presented differently in the two chains".into()));
    }
    let base_inner = Representation::new(&inner.presented.group, base.dim(), base.images().to_vec())?;
    let stage1 = induce_representation(&base_inner, inner, LpExponent::Two)?;
    let stage2 = induce_representation(&stage1.assembled, outer, LpExponent::Two)?;
    let whole = induce_representation(base, direct, LpExponent::Two)?;
    let k = base.dim();
    let (mo, mi) = (outer.index(), inner.index());
    let mut q = Matrix::zeros(mo * mi * k, direct.index() * k);
    let mut reindexing = Vec::with_capacity(mo * mi);
    for i in 0..mo {
        for j in 0..mi {
            let elem = outer.representatives[i].mul(&outer.to_ambient(&inner.representatives[j]));
            let (slot, gamma) = direct.locate(&elem)?;
            q.set_block((i * mi + j) * k, slot * k, &base.image(&gamma.inverse()));
            reindexing.push(slot);
        }
    }
    let residual = g
        .generators()
        .iter()
        .enumerate()
        .map(|(s, _)| q.mul(&whole.assembled.images()[s]).distance(&stage2.assembled.images()[s].mul(&q)))
        .fold(0.0, f64::max);
    let mut sorted = reindexing.clone();
    sorted.sort_unstable();
    let bijective = sorted == (0..direct.index()).collect::<Vec<_>>();
    let equivalent = bijective && residual <= S::tolerance() * 100.0 && S::inverse(&q).is_some();
    Ok(StagesReport { intertwiner: q, reindexing, residual, equivalent })
}
