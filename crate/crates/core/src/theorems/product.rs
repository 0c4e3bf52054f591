//! First cohomology of a direct product `G₁ × G₂` from the factors.

use crate::cohomology::{
    coboundary_membership, h1, harmonic_decomposition, working_norm, CohomologySummary, CONTRACTION_MARGIN, InhomCocycle,
};
use crate::error::{Error, Result};
use crate::group::{Family, FiniteSupportMeasure, Group, SubgroupGroup, Word};
use crate::linalg::{Field, Matrix};
use crate::rep::{almost_invariant_margin, certify_isometric, markov_operator, operator_norm, Representation};
use crate::stationarity::{cesaro_projection, CesaroOptions};
use crate::subspace::Subspace;
use crate::theorems::{gate, span_or_zero, HypothesisCheck};

struct Factors {
    first: SubgroupGroup,
    second: SubgroupGroup,
}

fn factors(g: &Group) -> Result<Factors> {
    let Family::Product(a, b) = g.family() else {
        return Err(Error::UnsupportedFamily(format!("product decomposition over {}", g.family_name())));
    };
    let k = a.generator_count();
    Ok(Factors {
        first: SubgroupGroup { group: a.clone(), inclusion: (0..k).map(Word::generator).collect() },
        second: SubgroupGroup { group: b.clone(), inclusion: (0..b.generator_count()).map(|i| Word::generator(k + i)).collect() },
    })
}

fn require_in_factor(g: &Group, mu: &FiniteSupportMeasure, first: bool) -> Result<()> {
    for w in mu.support() {
        let (u, v) = g.split_product_word(&w);
        let other = if first { v } else { u };
        if !other.is_identity() {
            return Err(Error::PreconditionFailed(format!(
                "μ{} charges {} outside its factor",
                if first { 1 } else { 2 },
                g.render(&w)
            )));
        }
    }
    Ok(())
}

/// `(BᵀB)⁻¹Bᵀ`: coordinates in the columns of `b` for vectors in their span.
fn left_inverse<S: Field>(b: &Matrix<S>) -> Matrix<S> {
    if b.cols() == 0 {
        return Matrix::zeros(0, b.rows());
    }
    let gram = b.transpose().mul(b);
    S::inverse(&gram).expect("basis columns are independent").mul(&b.transpose())
}

/// `A ⊕ B` inside the concatenated coordinates.
fn direct_sum<S: Field>(a: &Subspace<S>, b: &Subspace<S>) -> Subspace<S> {
    let (m, n) = (a.ambient_dim(), b.ambient_dim());
    let mut basis = Matrix::zeros(m + n, a.dim() + b.dim());
    basis.set_block(0, 0, a.basis());
    basis.set_block(m, a.dim(), b.basis());
    span_or_zero(&basis)
}

/// Rows of the cocycle coordinates belonging to one factor's generators.
fn factor_rows<S: Field>(rho: &Representation<S>, sub: &SubgroupGroup, offset: usize) -> Matrix<S> {
    let d = rho.dim();
    let kd = rho.group().generator_count() * d;
    let rows = sub.inclusion.len() * d;
    let mut out = Matrix::zeros(rows, kd);
    out.set_block(0, offset * d, &Matrix::identity(rows));
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProductDecomposition<S> {
    pub hypotheses: Vec<HypothesisCheck>,
    /// `‖ρ_{μ₁}ρ_{μ₂}‖` in the certified norm.
    pub markov_norm: f64,
    pub whole: CohomologySummary<S>,
    /// `H¹(G₁, V^{G₂})`.
    pub first: CohomologySummary<S>,
    /// `H¹(G₂, V^{G₁})`.
    pub second: CohomologySummary<S>,
    pub first_rep: Representation<S>,
    pub second_rep: Representation<S>,
    /// `V^{G₂}`.
    pub first_coefficients: Subspace<S>,
    /// `V^{G₁}`.
    pub second_coefficients: Subspace<S>,
    /// `β ↦ (Pβ|_{G₁}, Pβ|_{G₂})` in coefficient coordinates, `P` the harmonic part.
    pub forward: Matrix<S>,
    /// `(β₁, β₂) ↦ β` with `β(g) = β₁(g)`, `β(h) = β₂(h)`.
    pub inverse: Matrix<S>,
    pub forward_then_inverse: bool,
    pub inverse_then_forward: bool,
    pub dims_add: bool,
    pub passed: bool,
}

/// `H¹(G₁ × G₂, V) ≅ H¹(G₁, V^{G₂}) ⊕ H¹(G₂, V^{G₁})` under a contraction
/// hypothesis on `ρ_{μ₁}ρ_{μ₂}`.
pub fn product_h1_iso<S: Field>(
    rho: &Representation<S>,
    mu1: &FiniteSupportMeasure,
    mu2: &FiniteSupportMeasure,
    force: bool,
) -> Result<ProductDecomposition<S>> {
    let g = rho.group();
    let f = factors(g)?;
    require_in_factor(g, mu1, true)?;
    require_in_factor(g, mu2, false)?;
    let m12 = markov_operator(rho, mu1).mul(&markov_operator(rho, mu2));
    let markov_norm = operator_norm(&m12, &working_norm(rho));
    let fix1 = rho.fixed_space_of_words(&f.first.inclusion);
    let fix2 = rho.fixed_space_of_words(&f.second.inclusion);
    let hypotheses = vec![
        HypothesisCheck::new("‖ρ_μ1 ρ_μ2‖ < 1", markov_norm < 1.0 - CONTRACTION_MARGIN, format!("norm {markov_norm}")),
        HypothesisCheck::new("V^μ1 = V^G1", rho.mu_fixed_space(mu1).equals(&fix1), ""),
        HypothesisCheck::new("V^μ2 = V^G2", rho.mu_fixed_space(mu2).equals(&fix2), ""),
    ];
    gate(&hypotheses, force)?;

    let mu = mu1.convolve(mu2)?;
    let dec = harmonic_decomposition(rho, &mu)?;
    let whole = h1(rho)?;
    let first_rep = rho.restrict(&f.first)?.on_subspace(&fix2)?;
    let second_rep = rho.restrict(&f.second)?.on_subspace(&fix1)?;
    let (first, second) = (h1(&first_rep)?, h1(&second_rep)?);

    let d = rho.dim();
    let kd = g.generator_count() * d;
    let k1 = f.first.inclusion.len();
    let k2 = f.second.inclusion.len();
    let harmonic = Matrix::identity(kd).sub(&dec.projection);
    let rows1 = factor_rows(rho, &f.first, 0);
    let rows2 = factor_rows(rho, &f.second, k1);
    let forward = left_inverse(fix2.basis())
        .block_diagonal(k1)
        .mul(&rows1)
        .mul(&harmonic)
        .vstack(&left_inverse(fix1.basis()).block_diagonal(k2).mul(&rows2).mul(&harmonic));
    let (n1, n2) = (k1 * fix2.dim(), k2 * fix1.dim());
    let mut inverse = Matrix::zeros(kd, n1 + n2);
    inverse.set_block(0, 0, &fix2.basis().block_diagonal(k1));
    inverse.set_block(k1 * d, n1, &fix1.basis().block_diagonal(k2));

    // The harmonic parts must land in the fixed spaces for `forward` to be meaningful.
    let tol = S::tolerance() * 100.0;
    let lands = {
        let hz = harmonic.mul(dec.z.basis());
        inverse.mul(&forward.mul(dec.z.basis())).sub(&hz).is_zero(tol)
    };

    let forward_then_inverse = lands
        && whole.representatives.columns().iter().all(|r| {
            let back = inverse.mul_vec(&forward.mul_vec(r));
            let diff = InhomCocycle::from_coordinates(rho, &crate::linalg::vec_sub(&back, r));
            coboundary_membership(rho, &diff).is_coboundary()
        });

    let split = |y: &[S]| -> (InhomCocycle<S>, InhomCocycle<S>) {
        (
            InhomCocycle::from_coordinates(&first_rep, &y[..n1]),
            InhomCocycle::from_coordinates(&second_rep, &y[n1..]),
        )
    };
    let mut inputs: Vec<Vec<S>> = Vec::new();
    for r in first.representatives.columns() {
        let mut y = r.clone();
        y.extend(vec![S::zero(); n2]);
        inputs.push(y);
    }
    for r in second.representatives.columns() {
        let mut y = vec![S::zero(); n1];
        y.extend(r);
        inputs.push(y);
    }
    let inverse_then_forward = inputs.iter().all(|y| {
        let x = inverse.mul_vec(y);
        if InhomCocycle::new(rho, InhomCocycle::from_coordinates(rho, &x).values).is_err() {
            return false;
        }
        let back = forward.mul_vec(&x);
        let (a, b) = split(&crate::linalg::vec_sub(&back, y));
        coboundary_membership(&first_rep, &a).is_coboundary() && coboundary_membership(&second_rep, &b).is_coboundary()
    });
    let dims_add = whole.dim_h() == first.dim_h() + second.dim_h();
    let passed = hypotheses.iter().all(|h| h.holds) && forward_then_inverse && inverse_then_forward && dims_add;
    Ok(ProductDecomposition {
        hypotheses,
        markov_norm,
        whole,
        first,
        second,
        first_rep,
        second_rep,
        first_coefficients: fix2,
        second_coefficients: fix1,
        forward,
        inverse,
        forward_then_inverse,
        inverse_then_forward,
        dims_add,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingReport {
    pub hypotheses: Vec<HypothesisCheck>,
    /// `κ` of `ρ|_{G₁}` on the generators of `G₁`.
    pub margin: f64,
    pub source_dim: usize,
    pub target_dim: usize,
    /// Rank of the induced map on classes.
    pub image_dim: usize,
    pub injective: bool,
    /// Present when `V^{μᵢ} = V^{Gᵢ}` for both factors.
    pub surjective: Option<bool>,
    pub passed: bool,
}

/// `[b] ↦ [Ẽ_{μ₂}∘b|_{G₁}] ⊕ [Ẽ_{μ₁}∘b|_{G₂}]`, injective on classes when
/// `ρ|_{G₁}` has no almost invariant vectors.
pub fn product_h1_embedding<S: Field>(
    rho: &Representation<S>,
    mu1: &FiniteSupportMeasure,
    mu2: &FiniteSupportMeasure,
    opts: CesaroOptions,
    force: bool,
) -> Result<EmbeddingReport> {
    let g = rho.group();
    let f = factors(g)?;
    require_in_factor(g, mu1, true)?;
    require_in_factor(g, mu2, false)?;
    let rho1 = rho.restrict(&f.first)?;
    let form = certify_isometric(&rho1).map(|c| c.form).unwrap_or_else(|_| Matrix::identity(rho.dim()));
    let margin = almost_invariant_margin(&rho1, &f.first.group.generators(), &form)?;
    let hypotheses = vec![HypothesisCheck::new("κ(ρ|G1) > 0", margin > 1e-9, format!("κ = {margin}"))];
    gate(&hypotheses, force)?;

    let e1 = cesaro_projection(rho, mu1, opts)?.e;
    let e2 = cesaro_projection(rho, mu2, opts)?.e;
    let fix_mu1 = rho.mu_fixed_space(mu1);
    let fix_mu2 = rho.mu_fixed_space(mu2);
    let t1 = rho1.on_subspace(&fix_mu2)?;
    let t2 = rho.restrict(&f.second)?.on_subspace(&fix_mu1)?;
    let (s1, s2) = (h1(&t1)?, h1(&t2)?);
    let whole = h1(rho)?;

    let k1 = f.first.inclusion.len();
    let k2 = f.second.inclusion.len();
    let map = left_inverse(fix_mu2.basis())
        .mul(&e2)
        .block_diagonal(k1)
        .mul(&factor_rows(rho, &f.first, 0))
        .vstack(&left_inverse(fix_mu1.basis()).mul(&e1).block_diagonal(k2).mul(&factor_rows(rho, &f.second, k1)));
    let target_z = direct_sum(&s1.z, &s2.z);
    let target_b = direct_sum(&s1.b, &s2.b);
    let mz = map.mul(whole.z.basis());
    if !mz.columns().iter().all(|c| target_z.contains(c)) {
        return Err(Error::HypothesisFailed { check: "compressed restrictions are cocycles".into(), detail: String::new() });
    }
    let image_dim = span_or_zero(&mz).sum(&target_b).dim() - target_b.dim();
    // Cocycles whose image is a pair of coboundaries.
    let kernel = if whole.z.dim() == 0 {
        Matrix::zeros(0, 0)
    } else {
        let stacked = mz.hstack(&target_b.basis().neg());
        let k = S::kernel(&stacked);
        whole.z.basis().mul(&k.block(0, 0, whole.z.dim(), k.cols()))
    };
    let injective = kernel.columns().iter().all(|c| {
        coboundary_membership(rho, &InhomCocycle::from_coordinates(rho, c)).is_coboundary()
    });
    let source_dim = whole.dim_h();
    let target_dim = s1.dim_h() + s2.dim_h();
    let equalities = fix_mu1.equals(&rho.fixed_space_of_words(&f.first.inclusion))
        && fix_mu2.equals(&rho.fixed_space_of_words(&f.second.inclusion));
    let surjective = equalities.then_some(image_dim == target_dim);
    let passed = hypotheses.iter().all(|h| h.holds) && injective && image_dim == source_dim && surjective.unwrap_or(true);
    Ok(EmbeddingReport { hypotheses, margin, source_dim, target_dim, image_dim, injective, surjective, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic_table, Group};
    use crate::scalar::{rat, Rational};

    fn rotation() -> Matrix<f64> {
        let (s, c) = (2.0 * std::f64::consts::PI / 3.0).sin_cos();
        Matrix::from_rows(vec![vec![c, -s], vec![s, c]])
    }

    fn z_times_z() -> Group {
        Group::product(Group::free(1), Group::free(1))
    }

    #[test]
    fn rotation_times_trivial() {
        let g = z_times_z();
        let rho = Representation::new(&g, 2, vec![rotation(), Matrix::identity(2)]).unwrap();
        let mu1 = FiniteSupportMeasure::symmetric_uniform(&g, &[Word::generator(0)]).unwrap();
        let mu2 = FiniteSupportMeasure::dirac(&g, Word::generator(1)).unwrap();
        let p = product_h1_iso(&rho, &mu1, &mu2, false).unwrap();
        assert!((p.markov_norm - 0.5).abs() < 1e-9);
        assert_eq!((p.whole.dim_h(), p.first.dim_h(), p.second.dim_h()), (0, 0, 0));
        assert!(p.passed);

        let e = product_h1_embedding(&rho, &mu1, &mu2, CesaroOptions::default(), false).unwrap();
        assert!((e.margin - 3f64.sqrt()).abs() < 1e-9);
        assert!(e.injective && e.passed);
        assert_eq!(e.surjective, Some(true));
    }

    #[test]
    fn trivial_rep_fails_the_gates() {
        let g = z_times_z();
        let rho = Representation::<Rational>::trivial(&g, 1);
        let mu1 = FiniteSupportMeasure::symmetric_uniform(&g, &[Word::generator(0)]).unwrap();
        let mu2 = FiniteSupportMeasure::dirac(&g, Word::generator(1)).unwrap();
        assert!(matches!(product_h1_iso(&rho, &mu1, &mu2, false), Err(Error::HypothesisFailed { .. })));
        assert!(matches!(
            product_h1_embedding(&rho, &mu1, &mu2, CesaroOptions::default(), false),
            Err(Error::HypothesisFailed { .. })
        ));
    }

    fn one(x: i64) -> Matrix<Rational> {
        Matrix::from_rows(vec![vec![rat(x, 1)]])
    }

    #[test]
    fn free_times_finite() {
        let g = Group::product(Group::free(2), Group::finite(cyclic_table(2)));
        let rho = Representation::new(&g, 1, vec![one(-1), one(-1), one(-1)]).unwrap();
        let mu1 = FiniteSupportMeasure::uniform(&g, vec![Word::generator(0), Word::generator(1)]).unwrap();
        let mu2 = FiniteSupportMeasure::uniform(&g, vec![Word::identity(), Word::generator(2)]).unwrap();
        let p = product_h1_iso(&rho, &mu1, &mu2, false).unwrap();
        assert_eq!(p.whole.dim_h(), p.first.dim_h() + p.second.dim_h());
        assert!(p.passed);
    }

    #[test]
    fn free_times_free_signs() {
        let g = Group::product(Group::free(2), Group::free(2));
        let rho = Representation::new(&g, 1, vec![one(-1), one(-1), one(-1), one(1)]).unwrap();
        let mu1 = FiniteSupportMeasure::uniform(&g, vec![Word::generator(0), Word::generator(1)]).unwrap();
        let mu2 = FiniteSupportMeasure::uniform(&g, vec![Word::generator(2), Word::generator(3)]).unwrap();
        let e = product_h1_embedding(&rho, &mu1, &mu2, CesaroOptions::default(), false).unwrap();
        // Z¹ is spanned by β(a) = β(b) = β(a′) = 1, β(b′) = 0, which is the coboundary of ½.
        assert_eq!((e.source_dim, e.target_dim, e.image_dim), (0, 0, 0));
        assert_eq!(e.surjective, Some(true));
        assert!(e.passed);
    }

    #[test]
    fn forced_run_reports_failure() {
        let g = z_times_z();
        let rho = Representation::new(&g, 1, vec![one(-1), one(1)]).unwrap();
        let mu1 = FiniteSupportMeasure::dirac(&g, Word::generator(0)).unwrap();
        let mu2 = FiniteSupportMeasure::dirac(&g, Word::generator(1)).unwrap();
        // ρ_μ1 ρ_μ2 = −1 has norm 1.
        assert!(product_h1_iso(&rho, &mu1, &mu2, false).is_err());
        let forced = product_h1_iso(&rho, &mu1, &mu2, true);
        assert!(!matches!(forced, Ok(ref p) if p.passed));
    }
}
