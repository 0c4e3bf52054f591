use crate::error::{Error, Result};
use crate::group::Word;
use crate::linalg::{generalized_symmetric_eigenvalues, Field, Matrix};
use crate::rep::{NormKind, Representation};

/// How the invariant form was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateSource {
    Identity,
    ProjectedIdentity,
    GroupAverage,
    ProjectedBallAverage(usize),
}

/// A positive-definite `P` with `ρ_sᵀ P ρ_s = P` for every generator, and the
/// resulting bound `sup_g ‖ρ_g‖ ≤ bound` in the representation's own norm.
#[derive(Clone, Debug, PartialEq)]
pub struct IsometryCertificate<S> {
    pub form: Matrix<S>,
    pub bound: f64,
    pub source: CertificateSource,
}

const BALL_RADII: [usize; 3] = [1, 2, 3];

fn symmetric_unit<S: Field>(d: usize, i: usize, j: usize) -> Matrix<S> {
    let mut e = Matrix::zeros(d, d);
    e[(i, j)] = S::one();
    e[(j, i)] = S::one();
    e
}

fn flatten<S: Field>(m: &Matrix<S>) -> Vec<S> {
    m.to_rows().into_iter().flatten().collect()
}

fn frobenius<S: Field>(a: &Matrix<S>, b: &Matrix<S>) -> S {
    let mut acc = S::zero();
    for (x, y) in flatten(a).iter().zip(flatten(b).iter()) {
        acc = acc + x.clone() * y.clone();
    }
    acc
}

fn is_invariant<S: Field>(rho: &Representation<S>, p: &Matrix<S>) -> bool {
    let scale = p.max_abs().max(1.0);
    rho.images()
        .iter()
        .all(|m| m.transpose().mul(p).mul(m).sub(p).is_zero(S::tolerance() * scale * 10.0))
}

/// Basis of the symmetric solutions of `ρ_sᵀ P ρ_s = P` for all generators.
fn invariant_forms<S: Field>(rho: &Representation<S>) -> Vec<Matrix<S>> {
    let d = rho.dim();
    let units: Vec<Matrix<S>> = (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).map(|(i, j)| symmetric_unit(d, i, j)).collect();
    if rho.images().is_empty() {
        return units;
    }
    let columns: Vec<Vec<S>> = units
        .iter()
        .map(|e| rho.images().iter().flat_map(|m| flatten(&m.transpose().mul(e).mul(m).sub(e))).collect())
        .collect();
    let system = Matrix::from_columns(d * d * rho.images().len(), &columns);
    let ker = S::kernel(&system);
    ker.columns()
        .into_iter()
        .map(|c| {
            let mut p = Matrix::zeros(d, d);
            for (coef, e) in c.iter().zip(&units) {
                p = p.add(&e.scale(coef));
            }
            p
        })
        .collect()
}

/// Frobenius-orthogonal projection of `target` onto the span of `forms`.
fn project<S: Field>(target: &Matrix<S>, forms: &[Matrix<S>]) -> Matrix<S> {
    let d = target.rows();
    let k = forms.len();
    let gram = Matrix::from_fn(k, k, |i, j| frobenius(&forms[i], &forms[j]));
    let rhs: Vec<S> = forms.iter().map(|f| frobenius(f, target)).collect();
    let (c, _) = S::least_squares(&gram, &rhs);
    let mut p = Matrix::zeros(d, d);
    for (coef, f) in c.iter().zip(forms) {
        p = p.add(&f.scale(coef));
    }
    p
}

fn ball_average<S: Field>(rho: &Representation<S>, radius: usize) -> Matrix<S> {
    let d = rho.dim();
    let mut frontier = vec![Matrix::<S>::identity(d)];
    let mut acc = Matrix::identity(d);
    let steps: Vec<&Matrix<S>> = rho.images().iter().chain(rho.inverses().iter()).collect();
    for _ in 0..radius {
        let mut next = Vec::with_capacity(frontier.len() * steps.len());
        for m in &frontier {
            for s in &steps {
                let g = s.mul(m);
                acc = acc.add(&g.transpose().mul(&g));
                next.push(g);
            }
        }
        frontier = next;
    }
    acc
}

fn bound_for<S: Field>(p: &Matrix<S>, norm: &NormKind<S>) -> f64 {
    let d = p.rows();
    let reference = match norm {
        NormKind::Form(q) => q.to_f64(),
        _ => Matrix::identity(d),
    };
    let Some(e) = generalized_symmetric_eigenvalues(&p.to_f64(), &reference) else {
        return f64::INFINITY;
    };
    let (lo, hi) = match (e.first(), e.last()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => return 1.0,
    };
    let cond = (hi / lo).sqrt();
    match norm {
        NormKind::One | NormKind::Infinity => cond * (d as f64).sqrt(),
        _ => cond,
    }
}

/// Searches for an invariant positive-definite form.
pub fn certify_isometric<S: Field>(rho: &Representation<S>) -> Result<IsometryCertificate<S>> {
    let d = rho.dim();
    let finish = |form: Matrix<S>, source| {
        let bound = bound_for(&form, rho.norm());
        Ok(IsometryCertificate { form, bound, source })
    };
    if d == 0 {
        return finish(Matrix::zeros(0, 0), CertificateSource::Identity);
    }
    let id = Matrix::identity(d);
    if is_invariant(rho, &id) {
        return finish(id, CertificateSource::Identity);
    }
    if let Some(t) = rho.group().table() {
        let mut acc = Matrix::zeros(d, d);
        for g in 0..t.order() {
            let m = rho.image(t.word_of(g));
            acc = acc.add(&m.transpose().mul(&m));
        }
        if S::is_positive_definite(&acc) && is_invariant(rho, &acc) {
            return finish(acc, CertificateSource::GroupAverage);
        }
    }
    let forms = invariant_forms(rho);
    if forms.is_empty() {
        return Err(Error::NoCertificate);
    }
    let candidate = project(&id, &forms);
    if S::is_positive_definite(&candidate) && is_invariant(rho, &candidate) {
        return finish(candidate, CertificateSource::ProjectedIdentity);
    }
    for r in BALL_RADII {
        let candidate = project(&ball_average(rho, r), &forms);
        if S::is_positive_definite(&candidate) && is_invariant(rho, &candidate) {
            return finish(candidate, CertificateSource::ProjectedBallAverage(r));
        }
    }
    Err(Error::NoCertificate)
}

/// `κ = sqrt(λ_min)` where `λ_min` is the least eigenvalue of
/// `Σ_s (I − ρ_s)ᵀ P (I − ρ_s)` relative to `P`.
pub fn almost_invariant_margin<S: Field>(rho: &Representation<S>, words: &[Word], form: &Matrix<S>) -> Result<f64> {
    let d = rho.dim();
    let p = form.to_f64();
    let id = Matrix::<f64>::identity(d);
    let mut acc = Matrix::<f64>::zeros(d, d);
    for w in words {
        let diff = id.sub(&rho.image(w).to_f64());
        acc = acc.add(&diff.transpose().mul(&p).mul(&diff));
    }
    let e = generalized_symmetric_eigenvalues(&acc, &p)
        .ok_or_else(|| Error::PreconditionFailed("margin form is not positive definite".into()))?;
    Ok(e.first().map_or(0.0, |l| l.max(0.0).sqrt()))
}
