use crate::cohomology::{b1_space, coboundary_map, expansion_matrix, z1_space, z1_system, InhomCocycle};
use crate::error::{Error, Result};
use crate::group::FiniteSupportMeasure;
use crate::linalg::{Field, Matrix};
use crate::rep::{certify_isometric, laplacian, markov_operator, operator_norm, NormKind, Representation};
use crate::subspace::Subspace;

/// `Z¹ = B¹ ⊕ H¹_μ` with the projection onto `B¹` along the μ-harmonic cocycles.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicDecomposition<S> {
    /// `P` on cocycle coordinates: `P(β)(s) = u − ρ_s u`, `u = Δ_μ⁻¹ Σ_h μ(h) β(h)`.
    pub projection: Matrix<S>,
    /// `β ↦ Σ_h μ(h) β(h)`.
    pub mean: Matrix<S>,
    pub z: Subspace<S>,
    pub b: Subspace<S>,
    /// `H¹_μ = {β ∈ Z¹ : Σ_h μ(h) β(h) = 0}`.
    pub harmonic: Subspace<S>,
    /// `‖ρ_μ‖` in the norm used for the precondition.
    pub markov_norm: f64,
}

impl<S: Field> HarmonicDecomposition<S> {
    pub fn project(&self, rho: &Representation<S>, b: &InhomCocycle<S>) -> InhomCocycle<S> {
        InhomCocycle::from_coordinates(rho, &self.projection.mul_vec(&b.coordinates()))
    }

    /// `b − P(b)`.
    pub fn harmonic_part(&self, rho: &Representation<S>, b: &InhomCocycle<S>) -> InhomCocycle<S> {
        b.sub(&self.project(rho, b))
    }
}

/// The norm used for contraction preconditions: the invariant form when one
/// is found, otherwise the representation's declared norm.
/// Norms within this distance of 1 do not count as contractions.
pub(crate) const CONTRACTION_MARGIN: f64 = 1e-9;

pub(crate) fn working_norm<S: Field>(rho: &Representation<S>) -> NormKind<S> {
    match certify_isometric(rho) {
        Ok(cert) => NormKind::Form(cert.form),
        Err(_) => rho.norm().clone(),
    }
}

pub fn harmonic_decomposition<S: Field>(
    rho: &Representation<S>,
    mu: &FiniteSupportMeasure,
) -> Result<HarmonicDecomposition<S>> {
    let d = rho.dim();
    let kd = rho.group().generator_count() * d;
    let markov_norm = operator_norm(&markov_operator(rho, mu), &working_norm(rho));
    if !(markov_norm < 1.0 - CONTRACTION_MARGIN) {
        return Err(Error::NormPreconditionFailed { norm: markov_norm });
    }
    let delta_inv = S::inverse(&laplacian(rho, mu)).ok_or(Error::NormPreconditionFailed { norm: markov_norm })?;
    let mut mean = Matrix::zeros(d, kd);
    for (w, x) in mu.weights::<S>() {
        mean = mean.add(&expansion_matrix(rho, &w).scale(&x));
    }
    let projection = coboundary_map(rho).mul(&delta_inv).mul(&mean);
    let z = z1_space(rho)?;
    let b = b1_space(rho);
    let harmonic = Subspace::kernel_of(&z1_system(rho).vstack(&mean));

    let tol = S::tolerance() * 100.0;
    let fail = |check: &str, detail: String| Err(Error::HypothesisFailed { check: check.into(), detail });
    let pz = projection.mul(z.basis());
    if !pz.columns().iter().all(|c| b.contains(c)) {
        return fail("P maps Z¹ into B¹", String::new());
    }
    if !projection.mul(&pz).sub(&pz).is_zero(tol) {
        return fail("P² = P on Z¹", String::new());
    }
    if !projection.mul(b.basis()).sub(b.basis()).is_zero(tol) {
        return fail("P = id on B¹", String::new());
    }
    if b.dim() + harmonic.dim() != z.dim() || b.intersection(&harmonic).dim() != 0 {
        return fail("Z¹ = B¹ ⊕ H¹_μ", format!("dims {} + {} vs {}", b.dim(), harmonic.dim(), z.dim()));
    }
    Ok(HarmonicDecomposition { projection, mean, z, b, harmonic, markov_norm })
}
