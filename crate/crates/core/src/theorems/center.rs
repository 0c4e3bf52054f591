//! Central measures: splitting off `B(G, V₀)`, passing to `G/Z`, and the
//! lower-central recursion for nilpotent groups.

use crate::cohomology::{
    coboundary_map, coboundary_membership, expand_word_cocycle, expansion_matrix, h1, z1_space, InhomCocycle,
};
use crate::error::{Error, Result};
use crate::group::{
    center, lower_central_series, quotient, subgroup_as_group, support_subgroup, Family, FiniteSupportMeasure, Group,
    Quotient, Subgroup,
};
use crate::linalg::{norm2, Field, Matrix};
use crate::rep::{certify_isometric, laplacian, Representation};
use crate::stationarity::{cesaro_projection, CesaroOptions};
use crate::subspace::Subspace;
use crate::theorems::{span_or_zero, CochainModel};

fn require_central<S: Field>(rho: &Representation<S>, mu: &FiniteSupportMeasure) -> Result<()> {
    let g = rho.group();
    let z = center(g)?;
    for w in mu.support() {
        if !z.contains(&w)? {
            return Err(Error::PreconditionFailed(format!("μ charges the non-central element {}", g.render(&w))));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct CenterDecomposition<S> {
    pub degree: usize,
    pub z: Subspace<S>,
    /// `Bⁿ(G, V₀)` with `V₀ = im Δ_μ`.
    pub b_v0: Subspace<S>,
    /// `Zⁿ(G, V^μ)`.
    pub z_fixed: Subspace<S>,
    pub direct: bool,
    /// `b ↦ Ẽ_μ∘b` maps `Zⁿ` onto `Zⁿ(G, V^μ)` with kernel `Bⁿ(G, V₀)`.
    pub projection_splits: bool,
    pub h_dim: usize,
    pub h_fixed_dim: usize,
    pub passed: bool,
}

/// `Zⁿ(G, ρ) = Bⁿ(G, V₀) ⊕ Zⁿ(G, V^μ)` for a central measure; degree 1 for
/// every family, degree 2 on finite tables.
pub fn center_zn_decomposition<S: Field>(
    rho: &Representation<S>,
    mu: &FiniteSupportMeasure,
    degree: usize,
    opts: CesaroOptions,
) -> Result<CenterDecomposition<S>> {
    require_central(rho, mu)?;
    let model = CochainModel::new(rho, degree)?;
    let e = cesaro_projection(rho, mu, opts)?.e;
    let fixed = rho.mu_fixed_space(mu);
    let v0 = span_or_zero(&laplacian(rho, mu));
    let z_fixed = model.valued_in(&fixed);
    let b_v0 = model.coboundaries_in(&v0);
    let z = &model.z;
    let direct = z.contains_subspace(&b_v0)
        && b_v0.intersection(&z_fixed).dim() == 0
        && b_v0.dim() + z_fixed.dim() == z.dim();
    let pe = model.pointwise(&e);
    let kept = pe.mul(z.basis());
    let dropped = z.basis().sub(&kept);
    let projection_splits = kept.columns().iter().all(|c| z_fixed.contains(c))
        && dropped.columns().iter().all(|c| b_v0.contains(c))
        && span_or_zero(&kept).equals(&z_fixed);
    let h_dim = z.dim() - model.coboundaries_in(&Subspace::whole(rho.dim())).dim();
    let h_fixed_dim = z_fixed.dim() - model.coboundaries_in(&fixed).dim();
    let passed = direct && projection_splits && h_dim == h_fixed_dim;
    Ok(CenterDecomposition { degree, z: z.clone(), b_v0, z_fixed, direct, projection_splits, h_dim, h_fixed_dim, passed })
}

/// Matrix taking cocycle coordinates over `G/N` to coordinates over `G`, with
/// values pushed through `basis` (the coefficient subspace inside `V`).
fn inflation_matrix<S: Field>(rho_q: &Representation<S>, q: &Quotient, basis: &Matrix<S>) -> Matrix<S> {
    let blocks: Vec<Matrix<S>> = q.projection.images.iter().map(|w| basis.mul(&expansion_matrix(rho_q, w))).collect();
    Matrix::vstack_all(&blocks, rho_q.group().generator_count() * rho_q.dim())
}

#[derive(Clone, Debug, PartialEq)]
pub struct CenterQuotientReport<S> {
    pub quotient: Quotient,
    /// `G/Z` acting on `V^Z` (in the basis of `fixed`).
    pub quotient_rep: Representation<S>,
    pub fixed: Subspace<S>,
    /// `V^μ = V^Z`.
    pub fixed_equal: bool,
    pub z_quotient_dim: usize,
    pub z_fixed_dim: usize,
    pub inflation_injective: bool,
    pub inflation_onto: bool,
    /// Every cocycle with values in `V^Z` vanishes on `Z`.
    pub constant_on_cosets: bool,
    pub h_dim: usize,
    pub h_quotient_dim: usize,
    pub passed: bool,
}

/// `H̄¹(G, ρ) ≅ H̄¹(G/Z, V^Z)` for `Z` generated by the support of a central `μ`
/// and `V^G = 0`.
pub fn center_quotient_h1<S: Field>(
    rho: &Representation<S>,
    mu: &FiniteSupportMeasure,
) -> Result<CenterQuotientReport<S>> {
    require_central(rho, mu)?;
    if rho.invariants().dim() != 0 {
        return Err(Error::PreconditionFailed("V^G is nonzero".into()));
    }
    // Measurability of Z × Z → Z is automatic for discrete groups.
    let g = rho.group();
    let zsub = support_subgroup(mu)?;
    let fixed = rho.fixed_space(&zsub);
    let fixed_equal = fixed.equals(&rho.mu_fixed_space(mu));
    let q = quotient(g, &zsub)?;
    let rho_fixed = rho.on_subspace(&fixed)?;
    let quotient_rep = rho_fixed.descend(&q)?;
    let zq = z1_space(&quotient_rep)?;
    let zg = z1_space(&rho_fixed)?;
    let infl = inflation_matrix(&quotient_rep, &q, &Matrix::identity(fixed.dim()));
    let image = span_or_zero(&infl.mul(zq.basis()));
    let inflation_injective = image.dim() == zq.dim();
    let inflation_onto = image.equals(&zg);
    let tol = S::tolerance() * 100.0;
    let constant_on_cosets = zg.basis_vectors().iter().all(|col| {
        let b = InhomCocycle::from_coordinates(&rho_fixed, col);
        zsub.generators().iter().all(|w| norm2(&expand_word_cocycle(&rho_fixed, &b, w)) <= tol * (1.0 + b.norm()))
    });
    let h_dim = h1(rho)?.dim_h();
    let h_quotient_dim = h1(&quotient_rep)?.dim_h();
    let passed = fixed_equal && inflation_injective && inflation_onto && constant_on_cosets && h_dim == h_quotient_dim;
    Ok(CenterQuotientReport {
        quotient: q,
        quotient_rep,
        fixed,
        fixed_equal,
        z_quotient_dim: zq.dim(),
        z_fixed_dim: zg.dim(),
        inflation_injective,
        inflation_onto,
        constant_on_cosets,
        h_dim,
        h_quotient_dim,
        passed,
    })
}

/// Power used to sample `n⁻¹‖β′(zⁿ)‖`.
const GROWTH_POWER: i64 = 1024;

#[derive(Clone, Debug, PartialEq)]
pub enum CentralFactorization<S> {
    /// `Ẽ_μ∘b` re-indexed over `G/Z` with values in `V^μ` (basis of `fixed`).
    Factors {
        quotient: Quotient,
        rep: Representation<S>,
        fixed: Subspace<S>,
        cocycle: InhomCocycle<S>,
    },
    /// A generator of `Z` on which `Ẽ_μ∘b` does not vanish.
    Counterexample { generator: String, value_norm: f64, growth: f64 },
}

pub fn factor_through_center<S: Field>(
    rho: &Representation<S>,
    mu: &FiniteSupportMeasure,
    b: &InhomCocycle<S>,
    opts: CesaroOptions,
) -> Result<CentralFactorization<S>> {
    require_central(rho, mu)?;
    let g = rho.group();
    let zsub = support_subgroup(mu)?;
    let e = cesaro_projection(rho, mu, opts)?.e;
    let compressed = InhomCocycle::unchecked(rho, b.values.iter().map(|v| e.mul_vec(v)).collect())?;
    let tol = S::tolerance() * 100.0 * (1.0 + b.norm());
    for w in zsub.generators() {
        let value_norm = norm2(&expand_word_cocycle(rho, &compressed, w));
        if value_norm > tol {
            let growth = norm2(&expand_word_cocycle(rho, &compressed, &w.pow(GROWTH_POWER))) / GROWTH_POWER as f64;
            return Ok(CentralFactorization::Counterexample { generator: g.render(w), value_norm, growth });
        }
    }
    let fixed = rho.mu_fixed_space(mu);
    let q = quotient(g, &zsub)?;
    let rep = rho.on_subspace(&fixed)?.descend(&q)?;
    let values = q
        .lifts
        .iter()
        .map(|w| {
            fixed
                .coordinates(&expand_word_cocycle(rho, &compressed, w))
                .ok_or_else(|| Error::HypothesisFailed { check: "Ẽ_μ∘b takes values in V^μ".into(), detail: String::new() })
        })
        .collect::<Result<Vec<_>>>()?;
    let cocycle = InhomCocycle::new(&rep, values)?;
    Ok(CentralFactorization::Factors { quotient: q, rep, fixed, cocycle })
}

#[derive(Clone, Debug, PartialEq)]
pub struct NilpotentReduction<S> {
    /// Number of central quotients taken.
    pub levels: usize,
    pub abelianization: Group,
    /// `G^{ab}` acting on `V^{[G,G]}` (in the basis of `commutator_fixed`).
    pub abelian_rep: Representation<S>,
    pub commutator_fixed: Subspace<S>,
    /// Inflation of a basis of `Z¹(G^{ab}, V^{[G,G]})`.
    pub abelian_part: Vec<InhomCocycle<S>>,
    pub w_basis: Vec<InhomCocycle<S>>,
    pub z_dim: usize,
    pub h_dim: usize,
    pub h_abelian_dim: usize,
    pub direct: bool,
    pub w_coboundaries: bool,
    /// The recursion's coefficient space equals `V^{[G,G]}` computed directly.
    pub fixed_matches: bool,
    /// When `V^{[G,G]} = V^G`: whether `W = B¹(G, ρ)`.
    pub w_is_b1: Option<bool>,
    /// Two-step case: every cocycle restricts to a coboundary on the last
    /// nontrivial lower-central term.
    pub restriction_vanishes: Option<bool>,
    pub passed: bool,
}

struct Level<S> {
    abelianization: Group,
    abelian_rep: Representation<S>,
    /// `V^{[G,G]}` in the coordinates of this level's `V`.
    fixed: Subspace<S>,
    abelian_part: Vec<InhomCocycle<S>>,
    w: Vec<InhomCocycle<S>>,
    levels: usize,
}

fn inflate<S: Field>(
    q: &Quotient,
    basis: &Matrix<S>,
    rho_q: &Representation<S>,
    b: &InhomCocycle<S>,
) -> InhomCocycle<S> {
    InhomCocycle { values: q.projection.images.iter().map(|w| basis.mul_vec(&expand_word_cocycle(rho_q, b, w))).collect() }
}

fn reduce<S: Field>(rho: &Representation<S>) -> Result<Level<S>> {
    let g = rho.group();
    let series = lower_central_series(g)?;
    if !series.nilpotent {
        return Err(Error::PreconditionFailed(format!("{} is not nilpotent", g.family_name())));
    }
    if series.terms.len() <= 2 {
        let z = z1_space(rho)?;
        return Ok(Level {
            abelianization: g.clone(),
            abelian_rep: rho.clone(),
            fixed: Subspace::whole(rho.dim()),
            abelian_part: z.basis_vectors().iter().map(|c| InhomCocycle::from_coordinates(rho, c)).collect(),
            w: vec![],
            levels: 0,
        });
    }
    let n = &series.terms[series.terms.len() - 2];
    let mu = FiniteSupportMeasure::symmetric_uniform(g, n.generators())?;
    let fixed = rho.fixed_space(n);
    if !fixed.equals(&rho.mu_fixed_space(&mu)) {
        return Err(Error::HypothesisFailed { check: "V^μ = V^N".into(), detail: n.render() });
    }
    let v0 = span_or_zero(&laplacian(rho, &mu));
    let b0 = span_or_zero(&coboundary_map(rho).mul(v0.basis()));
    let q = quotient(g, n)?;
    let rho_q = rho.on_subspace(&fixed)?.descend(&q)?;
    let inner = reduce(&rho_q)?;
    let basis = fixed.basis();
    let lift = |b: &InhomCocycle<S>| inflate(&q, basis, &rho_q, b);
    let mut w: Vec<InhomCocycle<S>> = b0.basis_vectors().iter().map(|c| InhomCocycle::from_coordinates(rho, c)).collect();
    w.extend(inner.w.iter().map(lift));
    Ok(Level {
        abelianization: inner.abelianization,
        abelian_rep: inner.abelian_rep,
        fixed: span_or_zero(&basis.mul(inner.fixed.basis())),
        abelian_part: inner.abelian_part.iter().map(lift).collect(),
        w,
        levels: inner.levels + 1,
    })
}

/// `Z¹(G, ρ) ≅ Z¹(G^{ab}, V^{[G,G]}) ⊕ W` with `W` made of coboundaries,
/// following the lower central series one central quotient at a time.
pub fn nilpotent_reduction<S: Field>(rho: &Representation<S>) -> Result<NilpotentReduction<S>> {
    let g = rho.group();
    match g.family() {
        Family::FreeAbelian(_) | Family::Heisenberg3 | Family::FiniteTable(_) => {}
        Family::Free(k) if *k <= 1 => {}
        _ => return Err(Error::UnsupportedFamily(format!("nilpotent reduction over {}", g.family_name()))),
    }
    certify_isometric(rho).map_err(|_| Error::PreconditionFailed("no invariant form certifies ρ".into()))?;
    let level = reduce(rho)?;
    let summary = h1(rho)?;
    let kd = g.generator_count() * rho.dim();
    let cols: Vec<Vec<S>> = level.abelian_part.iter().chain(&level.w).map(InhomCocycle::coordinates).collect();
    let all = span_or_zero(&Matrix::from_columns(kd, &cols));
    let direct = all.dim() == cols.len() && all.equals(&summary.z);
    let w_coboundaries = level.w.iter().all(|b| coboundary_membership(rho, b).is_coboundary());
    let series = lower_central_series(g)?;
    let derived = series.terms.get(1).cloned().unwrap_or_else(|| Subgroup::trivial(g));
    let direct_fixed = rho.fixed_space(&derived);
    let fixed_matches = direct_fixed.equals(&level.fixed);
    let w_span = span_or_zero(&Matrix::from_columns(kd, &level.w.iter().map(InhomCocycle::coordinates).collect::<Vec<_>>()));
    let w_is_b1 = direct_fixed.equals(&rho.invariants()).then(|| w_span.equals(&summary.b));
    let h_abelian_dim = h1(&level.abelian_rep)?.dim_h();
    let restriction_vanishes = if series.terms.len() == 3 {
        let sub = subgroup_as_group(&series.terms[1])?;
        let rho_n = rho.restrict(&sub)?;
        let r = crate::theorems::restriction_matrix(rho, &sub.inclusion);
        Some(summary.z.basis_vectors().iter().all(|col| {
            let b = InhomCocycle::from_coordinates(&rho_n, &r.mul_vec(col));
            coboundary_membership(&rho_n, &b).is_coboundary()
        }))
    } else {
        None
    };
    let h_dim = summary.dim_h();
    let passed = direct && w_coboundaries && fixed_matches && h_dim == h_abelian_dim && w_is_b1.unwrap_or(true);
    Ok(NilpotentReduction {
        levels: level.levels,
        abelianization: level.abelianization,
        abelian_rep: level.abelian_rep,
        commutator_fixed: level.fixed,
        abelian_part: level.abelian_part,
        w_basis: level.w,
        z_dim: summary.dim_z(),
        h_dim,
        h_abelian_dim,
        direct,
        w_coboundaries,
        fixed_matches,
        w_is_b1,
        restriction_vanishes,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic_table, dihedral_table, Word};
    use crate::scalar::{rat, Rational};

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect())
    }

    fn heisenberg_rep() -> Representation<Rational> {
        let h = Group::heisenberg();
        let x = q(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        let y = q(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]]);
        let z = q(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]);
        Representation::new(&h, 3, vec![x, y, z]).unwrap()
    }

    fn z_measure(g: &Group) -> FiniteSupportMeasure {
        FiniteSupportMeasure::symmetric_uniform(g, &[Word::generator(2)]).unwrap()
    }

    #[test]
    fn integers_with_a_sign() {
        let z = Group::free(1);
        let rho = Representation::new(&z, 2, vec![q(&[&[1, 0], &[0, -1]])]).unwrap();
        let mu = FiniteSupportMeasure::symmetric_uniform(&z, &[Word::generator(0)]).unwrap();
        let dec = center_zn_decomposition(&rho, &mu, 1, CesaroOptions::default()).unwrap();
        assert_eq!((dec.z.dim(), dec.b_v0.dim(), dec.z_fixed.dim()), (2, 1, 1));
        assert_eq!(dec.z_fixed.basis_vectors(), vec![vec![rat(1, 1), rat(0, 1)]]);
        assert!(dec.passed);

        let triv = Representation::<Rational>::trivial(&z, 2);
        let dec = center_zn_decomposition(&triv, &mu, 1, CesaroOptions::default()).unwrap();
        assert_eq!(dec.b_v0.dim(), 0);
        assert!(dec.z_fixed.equals(&dec.z) && dec.passed);
    }

    #[test]
    fn cyclic_degree_two() {
        let c4 = Group::finite(cyclic_table(4));
        let rho = Representation::new(&c4, 1, vec![q(&[&[-1]])]).unwrap();
        let mu = FiniteSupportMeasure::symmetric_uniform(&c4, &[Word::generator(0)]).unwrap();
        for degree in 1..=2 {
            let dec = center_zn_decomposition(&rho, &mu, degree, CesaroOptions::default()).unwrap();
            assert_eq!(dec.z.dim(), dec.b_v0.dim() + dec.z_fixed.dim());
            assert_eq!((dec.h_dim, dec.h_fixed_dim), (0, 0));
            assert!(dec.passed);
        }
    }

    #[test]
    fn noncentral_measure_is_rejected() {
        let rho = heisenberg_rep();
        let mu = FiniteSupportMeasure::dirac(rho.group(), Word::generator(0)).unwrap();
        assert!(matches!(
            center_zn_decomposition(&rho, &mu, 1, CesaroOptions::default()),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn heisenberg_modulo_center() {
        let h = Group::heisenberg();
        let m = q(&[&[-1, 0], &[0, -1]]);
        let rho = Representation::new(&h, 2, vec![m.clone(), m, Matrix::identity(2)]).unwrap();
        let r = center_quotient_h1(&rho, &z_measure(&h)).unwrap();
        assert_eq!(r.quotient.group.family_name(), Group::free_abelian(2).family_name());
        // Over ℤ² with both generators acting by −I: β(x) = β(y) and every such cocycle is a coboundary.
        assert_eq!((r.z_quotient_dim, r.h_quotient_dim), (2, 0));
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn abelian_center_quotient() {
        let z = Group::free(1);
        let rho = Representation::new(&z, 1, vec![q(&[&[-1]])]).unwrap();
        let mu = FiniteSupportMeasure::symmetric_uniform(&z, &[Word::generator(0)]).unwrap();
        let r = center_quotient_h1(&rho, &mu).unwrap();
        assert_eq!(r.quotient.group.generator_count(), 0);
        assert_eq!((r.h_dim, r.h_quotient_dim), (0, 0));
        assert!(r.passed);
        let triv = Representation::<Rational>::trivial(&z, 1);
        assert!(matches!(center_quotient_h1(&triv, &mu), Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn factoring_through_the_center() {
        let rho = heisenberg_rep();
        let h = rho.group().clone();
        for col in z1_space(&rho).unwrap().basis_vectors() {
            let b = InhomCocycle::from_coordinates(&rho, &col);
            match factor_through_center(&rho, &z_measure(&h), &b, CesaroOptions::default()).unwrap() {
                CentralFactorization::Factors { quotient, cocycle, .. } => {
                    assert_eq!(quotient.group.generator_count(), 2);
                    assert_eq!(cocycle.values.len(), 2);
                }
                other => panic!("unexpected {other:?}"),
            }
        }

        let z = Group::free(1);
        let triv = Representation::<Rational>::trivial(&z, 1);
        let b = InhomCocycle::new(&triv, vec![vec![rat(3, 1)]]).unwrap();
        let mu = FiniteSupportMeasure::dirac(&z, Word::generator(0)).unwrap();
        match factor_through_center(&triv, &mu, &b, CesaroOptions::default()).unwrap() {
            CentralFactorization::Counterexample { value_norm, growth, .. } => {
                assert_eq!(value_norm, 3.0);
                assert!((growth - 3.0).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }

        let already = InhomCocycle::zero(&triv);
        assert!(matches!(
            factor_through_center(&triv, &mu, &already, CesaroOptions::default()).unwrap(),
            CentralFactorization::Factors { .. }
        ));
    }

    #[test]
    fn abelian_reduction_is_the_identity() {
        let z2 = Group::free_abelian(2);
        let rho = Representation::new(&z2, 2, vec![q(&[&[0, -1], &[1, 0]]), Matrix::identity(2)]).unwrap();
        let r = nilpotent_reduction(&rho).unwrap();
        assert_eq!(r.levels, 0);
        assert!(r.w_basis.is_empty() && r.passed);
    }

    #[test]
    fn heisenberg_through_the_plane() {
        let h = Group::heisenberg();
        let rho = Representation::new(&h, 2, vec![q(&[&[-1, 0], &[0, -1]]), q(&[&[0, -1], &[1, 0]]), Matrix::identity(2)]).unwrap();
        let r = nilpotent_reduction(&rho).unwrap();
        assert_eq!(r.levels, 1);
        assert_eq!(r.h_dim, r.h_abelian_dim);
        assert_eq!(r.commutator_fixed.dim(), 2);
        assert!(r.passed && r.restriction_vanishes == Some(true));
    }

    #[test]
    fn heisenberg_with_nontrivial_center_action() {
        let rho = heisenberg_rep();
        let r = nilpotent_reduction(&rho).unwrap();
        assert_eq!(r.commutator_fixed.basis_vectors(), vec![vec![rat(1, 1), rat(0, 1), rat(0, 1)]]);
        // ℤ² acting trivially on a line: Z¹ = H¹ = ℚ².
        assert_eq!((r.abelian_part.len(), r.h_abelian_dim), (2, 2));
        assert_eq!(r.z_dim, r.abelian_part.len() + r.w_basis.len());
        assert!(r.passed && r.w_coboundaries);
        // V^{[G,G]} = V^G = span e₁ here, so W is all of B¹.
        assert_eq!(r.w_is_b1, Some(true));
    }

    #[test]
    fn dihedral_reduction() {
        let d4 = Group::finite(dihedral_table(4));
        // r ↦ quarter turn, s ↦ reflection.
        let rho = Representation::new(&d4, 2, vec![q(&[&[0, -1], &[1, 0]]), q(&[&[1, 0], &[0, -1]])]).unwrap();
        let r = nilpotent_reduction(&rho).unwrap();
        assert!(r.levels >= 1);
        assert_eq!(r.h_dim, 0);
        assert!(r.passed, "{r:?}");
    }
}
