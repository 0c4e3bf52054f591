//! Finite-dimensional representations given by generator images.

mod certificate;
mod operators;

pub use certificate::{almost_invariant_margin, certify_isometric, IsometryCertificate};
pub use operators::{laplacian, markov_operator, operator_norm};

use crate::error::{Error, Result};
use crate::group::{Group, Quotient, SubgroupGroup, Subgroup, Word, WordMap};
use crate::linalg::{Field, Matrix};
use crate::subspace::Subspace;

/// Relator residual allowed for float representations (operator 2-norm).
pub const FLOAT_RELATOR_TOLERANCE: f64 = 1e-9;

/// Norm placed on the module.
#[derive(Clone, Debug, PartialEq)]
pub enum NormKind<S> {
    One,
    Two,
    Infinity,
    /// `‖v‖² = vᵀ P v` for a symmetric positive-definite `P`.
    Form(Matrix<S>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub relators_checked: usize,
    pub max_residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Representation<S> {
    group: Group,
    dim: usize,
    images: Vec<Matrix<S>>,
    inverses: Vec<Matrix<S>>,
    norm: NormKind<S>,
}

impl<S: Field> Representation<S> {
    /// Checks that there is one invertible `d×d` image per generator and that
    /// every relator of the group acts as the identity.
    pub fn new(group: &Group, dim: usize, images: Vec<Matrix<S>>) -> Result<Self> {
        let rep = Self::unchecked(group, dim, images)?;
        rep.validate()?;
        Ok(rep)
    }

    /// Checks shapes and invertibility only.
    pub fn unchecked(group: &Group, dim: usize, images: Vec<Matrix<S>>) -> Result<Self> {
        if images.len() != group.generator_count() {
            return Err(Error::InvalidRepresentation(format!(
                "{} generator images for {} generators",
                images.len(),
                group.generator_count()
            )));
        }
        let mut inverses = Vec::with_capacity(images.len());
        for (i, m) in images.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidRepresentation(format!(
                    "image of `{}` is {}×{}, expected {dim}×{dim}",
                    group.names()[i],
                    m.rows(),
                    m.cols()
                )));
            }
            let inv = S::inverse(m).ok_or_else(|| {
                Error::InvalidRepresentation(format!("image of `{}` is not invertible", group.names()[i]))
            })?;
            inverses.push(inv);
        }
        Ok(Representation { group: group.clone(), dim, images, inverses, norm: NormKind::Two })
    }

    pub fn trivial(group: &Group, dim: usize) -> Self {
        Self::unchecked(group, dim, vec![Matrix::identity(dim); group.generator_count()]).expect("identity images")
    }

    pub fn with_norm(mut self, norm: NormKind<S>) -> Self {
        self.norm = norm;
        self
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn images(&self) -> &[Matrix<S>] {
        &self.images
    }

    pub fn inverses(&self) -> &[Matrix<S>] {
        &self.inverses
    }

    pub fn norm(&self) -> &NormKind<S> {
        &self.norm
    }

    /// `ρ(w)`, multiplying generator images left to right.
    pub fn image(&self, w: &Word) -> Matrix<S> {
        let mut acc = Matrix::identity(self.dim);
        for l in w.letters() {
            let m = if l.exponent > 0 { &self.images[l.generator] } else { &self.inverses[l.generator] };
            for _ in 0..l.exponent.unsigned_abs() {
                acc = acc.mul(m);
            }
        }
        acc
    }

    pub fn act(&self, w: &Word, v: &[S]) -> Vec<S> {
        let mut out = v.to_vec();
        for l in w.letters().iter().rev() {
            let m = if l.exponent > 0 { &self.images[l.generator] } else { &self.inverses[l.generator] };
            for _ in 0..l.exponent.unsigned_abs() {
                out = m.mul_vec(&out);
            }
        }
        out
    }

    /// Largest deviation `‖ρ(r) − I‖` over the relators (2-norm for floats;
    /// exact checks report 0 or the max entry deviation).
    pub fn relator_residuals(&self) -> Vec<(Word, f64)> {
        let id = Matrix::identity(self.dim);
        self.group
            .relators()
            .into_iter()
            .map(|r| {
                let diff = self.image(&r).sub(&id);
                let res = if S::is_exact() { diff.max_abs() } else { diff.to_f64().spectral_norm() };
                (r, res)
            })
            .collect()
    }

    pub fn validate(&self) -> Result<ValidationReport> {
        let residuals = self.relator_residuals();
        let tol = if S::is_exact() { 0.0 } else { FLOAT_RELATOR_TOLERANCE };
        let mut max_residual: f64 = 0.0;
        for (r, res) in &residuals {
            if !(*res <= tol) {
                return Err(Error::RelatorViolation { relator: self.group.render(r), residual: *res });
            }
            max_residual = max_residual.max(*res);
        }
        Ok(ValidationReport { relators_checked: residuals.len(), max_residual })
    }

    /// The contragredient `s ↦ (ρ_s⁻¹)ᵀ`.
    pub fn dual(&self) -> Self {
        let norm = match &self.norm {
            NormKind::One => NormKind::Infinity,
            NormKind::Infinity => NormKind::One,
            NormKind::Two => NormKind::Two,
            NormKind::Form(p) => NormKind::Form(S::inverse(p).expect("positive-definite form is invertible")),
        };
        Representation {
            group: self.group.clone(),
            dim: self.dim,
            images: self.inverses.iter().map(Matrix::transpose).collect(),
            inverses: self.images.iter().map(Matrix::transpose).collect(),
            norm,
        }
    }

    /// Restriction to a subgroup presented as a group.
    pub fn restrict(&self, sub: &SubgroupGroup) -> Result<Self> {
        let images = sub.inclusion.iter().map(|w| self.image(w)).collect();
        Representation::new(&sub.group, self.dim, images).map(|r| r.with_norm(self.norm.clone()))
    }

    /// `ρ ∘ φ` for a homomorphism `φ` into this representation's group.
    pub fn pullback(&self, map: &WordMap) -> Result<Self> {
        let images = map.images.iter().map(|w| self.image(w)).collect();
        Representation::new(&map.source, self.dim, images).map(|r| r.with_norm(self.norm.clone()))
    }

    /// The representation of `G/N` through which this one factors (checked on
    /// the quotient's relators).
    pub fn descend(&self, q: &Quotient) -> Result<Self> {
        let images = q.lifts.iter().map(|w| self.image(w)).collect();
        Representation::new(&q.group, self.dim, images).map(|r| r.with_norm(self.norm.clone()))
    }

    /// The subrepresentation on an invariant subspace, in its stored basis.
    pub fn on_subspace(&self, w: &Subspace<S>) -> Result<Self> {
        let images = self
            .images
            .iter()
            .map(|m| w.restrict_operator(m).ok_or_else(|| Error::InvalidRepresentation("subspace is not invariant".into())))
            .collect::<Result<Vec<_>>>()?;
        let norm = match &self.norm {
            NormKind::Form(p) => NormKind::Form(w.basis().transpose().mul(p).mul(w.basis())),
            _ => NormKind::Two,
        };
        Ok(Representation::unchecked(&self.group, w.dim(), images)?.with_norm(norm))
    }

    pub fn to_f64(&self) -> Representation<f64> {
        Representation {
            group: self.group.clone(),
            dim: self.dim,
            images: self.images.iter().map(Matrix::to_f64).collect(),
            inverses: self.inverses.iter().map(Matrix::to_f64).collect(),
            norm: match &self.norm {
                NormKind::One => NormKind::One,
                NormKind::Two => NormKind::Two,
                NormKind::Infinity => NormKind::Infinity,
                NormKind::Form(p) => NormKind::Form(p.to_f64()),
            },
        }
    }

    /// `V^H = ⋂ ker(I − ρ(h))` over the generators of `H`.
    pub fn fixed_space(&self, h: &Subgroup) -> Subspace<S> {
        self.fixed_space_of_words(h.generators())
    }

    pub fn fixed_space_of_words(&self, words: &[Word]) -> Subspace<S> {
        if words.is_empty() {
            return Subspace::whole(self.dim);
        }
        let id = Matrix::identity(self.dim);
        let blocks: Vec<Matrix<S>> = words.iter().map(|w| id.sub(&self.image(w))).collect();
        Subspace::kernel_of(&Matrix::vstack_all(&blocks, self.dim))
    }

    /// `V^G`.
    pub fn invariants(&self) -> Subspace<S> {
        self.fixed_space_of_words(&self.group.generators())
    }
}

/// Left regular representation of a finite group: `ρ_g e_h = e_{gh}`.
pub fn regular_representation<S: Field>(g: &Group) -> Result<Representation<S>> {
    let t = g.table().ok_or_else(|| Error::UnsupportedFamily("regular representation of an infinite group".into()))?;
    let n = t.order();
    let images = t
        .generators()
        .iter()
        .map(|&s| Matrix::from_fn(n, n, |r, c| if t.mul(s, c) == r { S::one() } else { S::zero() }))
        .collect();
    Representation::new(g, n, images)
}
