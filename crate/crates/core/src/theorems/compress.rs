//! Compression of cocycles along a commuting subgroup.

use crate::cohomology::{
    bar_complex, coboundary_map, coboundary_membership, expand_word_cocycle, expansion_matrix, z1_space, HomCochain,
    InhomCocycle, Membership,
};
use crate::error::{Error, Result};
use crate::group::{centralizer_contains, subgroup_as_group, FiniteSupportMeasure, FiniteTable, Subgroup, SubgroupGroup, Word};
use crate::linalg::{norm2, vec_sub, Field, Matrix};
use crate::rep::{certify_isometric, laplacian, Representation};
use crate::stationarity::{cesaro_projection, CesaroOptions};
use crate::subspace::Subspace;
use crate::theorems::span_or_zero;

/// Stacked expansion matrices of `words`: cocycle coordinates over `G` to
/// values on `words`.
pub fn restriction_matrix<S: Field>(rho: &Representation<S>, words: &[Word]) -> Matrix<S> {
    let blocks: Vec<Matrix<S>> = words.iter().map(|w| expansion_matrix(rho, w)).collect();
    Matrix::vstack_all(&blocks, rho.group().generator_count() * rho.dim())
}

/// `β_N(t) = β(t)` for each generator `t` of the subgroup.
pub fn restrict_cocycle<S: Field>(
    rho: &Representation<S>,
    b: &InhomCocycle<S>,
    sub: &SubgroupGroup,
) -> Result<(Representation<S>, InhomCocycle<S>)> {
    let rho_n = rho.restrict(sub)?;
    let values = sub.inclusion.iter().map(|w| expand_word_cocycle(rho, b, w)).collect();
    let b_n = InhomCocycle::unchecked(&rho_n, values)?;
    Ok((rho_n, b_n))
}

fn check_commuting_pair<S: Field>(
    rho: &Representation<S>,
    n: &Subgroup,
    c: &Subgroup,
    mu: &FiniteSupportMeasure,
) -> Result<()> {
    let g = rho.group();
    if !centralizer_contains(g, c, n)? {
        return Err(Error::PreconditionFailed(format!("{} does not centralize {}", c.render(), n.render())));
    }
    for w in mu.support() {
        if !c.contains(&w)? {
            return Err(Error::PreconditionFailed(format!("μ charges {} outside {}", g.render(&w), c.render())));
        }
    }
    certify_isometric(rho).map_err(|_| Error::PreconditionFailed("no invariant form certifies ρ".into()))?;
    Ok(())
}

fn membership_tolerance<S: Field>(scale: f64) -> f64 {
    if S::is_exact() {
        0.0
    } else {
        1e-8 * (1.0 + scale)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompressionResult<S> {
    /// `ρ|_N` on the subgroup presented as a group.
    pub restricted_rep: Representation<S>,
    pub restricted: InhomCocycle<S>,
    /// `Ẽ_μ ∘ b|_N`, a cocycle over `N` with values in `V^μ`.
    pub compressed: InhomCocycle<S>,
    /// `v` with `b|_N − compressed = v − ρ_t v`.
    pub primitive: Vec<S>,
    pub residual: f64,
    pub projection: Matrix<S>,
}

/// Degree-one compression: works for every family with a presentation of `N`.
pub fn emu_compress_cocycle<S: Field>(
    rho: &Representation<S>,
    b: &InhomCocycle<S>,
    n: &Subgroup,
    c: &Subgroup,
    mu: &FiniteSupportMeasure,
    opts: CesaroOptions,
) -> Result<CompressionResult<S>> {
    check_commuting_pair(rho, n, c, mu)?;
    let e = cesaro_projection(rho, mu, opts)?.e;
    let sub = subgroup_as_group(n)?;
    let (rho_n, restricted) = restrict_cocycle(rho, b, &sub)?;
    let values = restricted.values.iter().map(|v| e.mul_vec(v)).collect();
    let compressed = InhomCocycle::new(&rho_n, values).map_err(|err| Error::HypothesisFailed {
        check: "compressed cocycle satisfies the relators of N".into(),
        detail: err.to_string(),
    })?;
    let fixed = rho.mu_fixed_space(mu);
    if !compressed.values.iter().all(|v| fixed.contains(v)) {
        return Err(Error::HypothesisFailed { check: "compressed values lie in V^μ".into(), detail: String::new() });
    }
    let diff = restricted.sub(&compressed);
    let primitive = match coboundary_membership(&rho_n, &diff) {
        Membership::Primitive(v) => v,
        Membership::Ambiguous { residual, .. } => {
            return Err(Error::NoPrimitive(format!("float residual {residual:e} is between the accept and reject thresholds")))
        }
        Membership::NotCoboundary { residual } => {
            return Err(Error::HypothesisFailed {
                check: "b|_N − Ẽ_μ∘b|_N is a coboundary".into(),
                detail: format!("residual {residual:e}"),
            })
        }
    };
    let residual = diff.sub(&InhomCocycle::coboundary(&rho_n, &primitive)).norm();
    if residual > membership_tolerance::<S>(b.norm()) {
        return Err(Error::NoPrimitive(format!("primitive leaves residual {residual:e}")));
    }
    Ok(CompressionResult { restricted_rep: rho_n, restricted, compressed, primitive, residual, projection: e })
}

fn table_of<S: Field>(rho: &Representation<S>) -> Result<&FiniteTable> {
    rho.group()
        .table()
        .ok_or_else(|| Error::UnsupportedFamily(format!("degree two over {}", rho.group().family_name())))
}

/// Ambient index of each element of the subgroup table.
fn ambient_elements(t: &FiniteTable, sub: &SubgroupGroup) -> Result<Vec<usize>> {
    let tn = sub.group.table().ok_or_else(|| Error::UnsupportedFamily("subgroup without a table".into()))?;
    (0..tn.order()).map(|i| t.evaluate(&tn.word_of(i).substitute(&sub.inclusion))).collect()
}

/// `f|_N` in the tuple coordinates of the subgroup's own bar complex.
fn restrict_hom<S: Field>(
    rho: &Representation<S>,
    f: &HomCochain<S>,
    amb: &[usize],
) -> Result<Vec<S>> {
    let t = table_of(rho)?;
    let m = amb.len();
    let len = f.degree;
    let mut out = Vec::with_capacity(m.pow(len as u32) * rho.dim());
    for idx in 0..m.pow(len as u32) {
        let mut tuple = vec![t.identity()];
        let mut rest = idx;
        let mut tail = vec![0; len];
        for slot in tail.iter_mut().rev() {
            *slot = amb[rest % m];
            rest /= m;
        }
        tuple.extend(tail);
        out.extend(f.evaluate(rho, &tuple)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegreeTwoCompression<S> {
    pub restricted_rep: Representation<S>,
    pub restricted: HomCochain<S>,
    pub compressed: HomCochain<S>,
    /// A degree-one cochain over `N` whose coboundary is the difference.
    pub primitive: HomCochain<S>,
    pub residual: f64,
}

/// Degree-two compression on a finite group through the bar complex.
pub fn emu_compress_degree_two<S: Field>(
    rho: &Representation<S>,
    f: &HomCochain<S>,
    n: &Subgroup,
    c: &Subgroup,
    mu: &FiniteSupportMeasure,
    opts: CesaroOptions,
) -> Result<DegreeTwoCompression<S>> {
    if f.degree != 2 {
        return Err(Error::PreconditionFailed("expected a degree-two cochain".into()));
    }
    let t = table_of(rho)?;
    check_commuting_pair(rho, n, c, mu)?;
    let tol = S::tolerance() * 100.0;
    let whole = bar_complex(rho, 2)?;
    if !whole.outgoing.mul(&Matrix::from_columns(f.values.len(), std::slice::from_ref(&f.values))).is_zero(tol) {
        return Err(Error::PreconditionFailed("input is not a 2-cocycle".into()));
    }
    let e = cesaro_projection(rho, mu, opts)?.e;
    let sub = subgroup_as_group(n)?;
    let rho_n = rho.restrict(&sub)?;
    let amb = ambient_elements(t, &sub)?;
    let restricted = restrict_hom(rho, f, &amb)?;
    let m = amb.len();
    let compressed = e.block_diagonal(m * m).mul_vec(&restricted);
    let local = bar_complex(&rho_n, 2)?;
    let col = |v: &Vec<S>| Matrix::from_columns(v.len(), std::slice::from_ref(v));
    if !local.outgoing.mul(&col(&compressed)).is_zero(tol) {
        return Err(Error::HypothesisFailed { check: "compressed cochain is a 2-cocycle over N".into(), detail: String::new() });
    }
    let diff = vec_sub(&restricted, &compressed);
    let (primitive, residual) = S::least_squares(&local.incoming, &diff);
    if residual > membership_tolerance::<S>(norm2(&f.values)) {
        return Err(Error::NoPrimitive(format!("degree-two primitive leaves residual {residual:e}")));
    }
    Ok(DegreeTwoCompression {
        restricted_rep: rho_n,
        restricted: HomCochain { degree: 2, values: restricted },
        compressed: HomCochain { degree: 2, values: compressed },
        primitive: HomCochain { degree: 1, values: primitive },
        residual,
    })
}

/// Result of the homotopy identity `(1 − ρ_c)∘f|_N = −∂ⁿ(h_c f)|_N`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomotopyReport<S> {
    pub degree: usize,
    /// `h_c(f)` in tuple coordinates (degree one inhomogeneous: the vector `β(c)`).
    pub h: Vec<S>,
    pub tuples_checked: usize,
    pub residual: f64,
    pub holds: bool,
}

fn check_centralizes<S: Field>(rho: &Representation<S>, c: &Word, n: &Subgroup) -> Result<()> {
    let g = rho.group();
    for t in n.generators() {
        if !g.commute(c, t)? {
            return Err(Error::PreconditionFailed(format!("{} does not commute with {}", g.render(c), g.render(t))));
        }
    }
    Ok(())
}

/// Degree one for any family: `h_c(b)(g) = b(g, gc) = ρ_g β(c)`.
pub fn hc_homotopy_inhom<S: Field>(
    rho: &Representation<S>,
    b: &InhomCocycle<S>,
    c: &Word,
    n: &Subgroup,
) -> Result<HomotopyReport<S>> {
    check_centralizes(rho, c, n)?;
    let h = expand_word_cocycle(rho, b, c);
    let rc = Matrix::identity(rho.dim()).sub(&rho.image(c));
    let mut residual: f64 = 0.0;
    for t in n.generators() {
        let lhs = rc.mul_vec(&expand_word_cocycle(rho, b, t));
        // (∂¹h)(e, t) = h(t) − h(e) = ρ_t β(c) − β(c)
        let dh = vec_sub(&rho.act(t, &h), &h);
        residual = residual.max(norm2(&crate::linalg::vec_add(&lhs, &dh)));
    }
    let holds = residual <= S::tolerance() * 100.0 * (1.0 + b.norm());
    Ok(HomotopyReport { degree: 1, h, tuples_checked: n.generators().len(), residual, holds })
}

/// `h_c(f)(g_1, …, g_n) = Σ_i (−1)^{i+1} f(g_1, …, g_i, g_i c, …, g_n c)` on a
/// finite group, checked on every tuple of `N`.
pub fn hc_homotopy<S: Field>(
    rho: &Representation<S>,
    f: &HomCochain<S>,
    c: &Word,
    n: &Subgroup,
) -> Result<HomotopyReport<S>> {
    let deg = f.degree;
    if !(1..=2).contains(&deg) {
        return Err(Error::PreconditionFailed(format!("homotopy degree {deg} is outside 1..=2")));
    }
    let t = table_of(rho)?;
    check_centralizes(rho, c, n)?;
    let ce = t.evaluate(c)?;
    let order = t.order();
    let d = rho.dim();
    let mut h = Vec::with_capacity(order.pow(deg as u32 - 1) * d);
    for idx in 0..order.pow(deg as u32 - 1) {
        let mut args = vec![t.identity()];
        let mut rest = idx;
        let mut tail = vec![0; deg - 1];
        for slot in tail.iter_mut().rev() {
            *slot = rest % order;
            rest /= order;
        }
        args.extend(tail);
        let mut acc = vec![S::zero(); d];
        for i in 0..deg {
            let mut tuple: Vec<usize> = args[..=i].to_vec();
            tuple.extend(args[i..].iter().map(|&g| t.mul(g, ce)));
            let v = f.evaluate(rho, &tuple)?;
            acc = if i % 2 == 0 { crate::linalg::vec_add(&acc, &v) } else { vec_sub(&acc, &v) };
        }
        h.extend(acc);
    }
    let dh = bar_complex(rho, deg - 1)?.outgoing.mul_vec(&h);
    let members = n.elements()?;
    let rc = Matrix::identity(d).sub(&rho.image(c));
    let mut residual: f64 = 0.0;
    let mut checked = 0;
    for idx in 0..members.len().pow(deg as u32) {
        let mut rest = idx;
        let mut tail = vec![0; deg];
        for slot in tail.iter_mut().rev() {
            *slot = members[rest % members.len()];
            rest /= members.len();
        }
        let mut tuple = vec![t.identity()];
        tuple.extend(&tail);
        let lhs = rc.mul_vec(&f.evaluate(rho, &tuple)?);
        let pos = tail.iter().fold(0, |acc, &g| acc * order + g);
        let rhs = &dh[pos * d..(pos + 1) * d];
        residual = residual.max(norm2(&crate::linalg::vec_add(&lhs, rhs)));
        checked += 1;
    }
    let holds = residual <= S::tolerance() * 100.0 * (1.0 + norm2(&f.values));
    Ok(HomotopyReport { degree: deg, h, tuples_checked: checked, residual, holds })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplementReport<S> {
    /// `Res(Z¹(G, ρ)) ⊆ Z¹(N, ρ|_N)`.
    pub restricted: Subspace<S>,
    /// `P = (1 − Ẽ_μ)∘(·)` on restricted cocycle coordinates.
    pub projection: Matrix<S>,
    pub image: Subspace<S>,
    /// `B¹(N, V₀)` with `V₀ = im Δ_μ`.
    pub b1_v0: Subspace<S>,
    pub complement_dim: usize,
    pub idempotent: bool,
    pub image_matches: bool,
    /// Present when `V^μ ⊆ V^N`: whether `im P = B¹(N, ρ|_N)`.
    pub full_coboundaries: Option<bool>,
    pub passed: bool,
}

pub fn complemented_b1<S: Field>(
    rho: &Representation<S>,
    n: &Subgroup,
    c: &Subgroup,
    mu: &FiniteSupportMeasure,
    opts: CesaroOptions,
) -> Result<ComplementReport<S>> {
    check_commuting_pair(rho, n, c, mu)?;
    let d = rho.dim();
    let e = cesaro_projection(rho, mu, opts)?.e;
    let sub = subgroup_as_group(n)?;
    let rho_n = rho.restrict(&sub)?;
    let kn = sub.inclusion.len();
    let r = restriction_matrix(rho, &sub.inclusion);
    let z = z1_space(rho)?;
    let restricted = span_or_zero(&r.mul(z.basis()));
    let projection = Matrix::identity(d).sub(&e).block_diagonal(kn);
    let tol = S::tolerance() * 100.0;
    let image = span_or_zero(&projection.mul(restricted.basis()));
    let idempotent = projection.mul(&projection).sub(&projection).is_zero(tol) && restricted.contains_subspace(&image);
    let v0 = span_or_zero(&laplacian(rho, mu));
    let b1_v0 = span_or_zero(&coboundary_map(&rho_n).mul(v0.basis()));
    let image_matches = image.equals(&b1_v0);
    let full_coboundaries = rho
        .fixed_space(n)
        .contains_subspace(&rho.mu_fixed_space(mu))
        .then(|| b1_v0.equals(&span_or_zero(&coboundary_map(&rho_n))));
    let passed = idempotent && image_matches && full_coboundaries.unwrap_or(true);
    Ok(ComplementReport {
        complement_dim: restricted.dim() - image.dim(),
        restricted,
        projection,
        image,
        b1_v0,
        idempotent,
        image_matches,
        full_coboundaries,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{hn, inhom_to_hom};
    use crate::group::{cyclic_table, product_table, Group};
    use crate::scalar::{rat, Rational};

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect())
    }

    fn rotation() -> Matrix<f64> {
        let (s, c) = (2.0 * std::f64::consts::PI / 3.0).sin_cos();
        Matrix::from_rows(vec![vec![c, -s], vec![s, c]])
    }

    /// ℤ/4 acting on ℚ² by the quarter turn: exact analogue of a rotation.
    fn quarter() -> Matrix<Rational> {
        q(&[&[0, -1], &[1, 0]])
    }

    /// Heisenberg acting on ℚ³ = trivial ⊕ (x ↦ swap, y ↦ diag(1,−1)), so ρ_z = diag(1,−1,−1).
    fn heisenberg_rep() -> Representation<Rational> {
        let h = Group::heisenberg();
        let x = q(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        let y = q(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]]);
        let z = q(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]);
        Representation::new(&h, 3, vec![x, y, z]).unwrap()
    }

    #[test]
    fn restriction_examples() {
        let z2 = Group::free_abelian(2);
        let rho = Representation::new(&z2, 2, vec![quarter(), Matrix::identity(2)]).unwrap();
        let b = InhomCocycle::new(&rho, vec![vec![rat(0, 1), rat(0, 1)], vec![rat(0, 1), rat(0, 1)]]).unwrap();
        let whole = subgroup_as_group(&Subgroup::whole(&z2)).unwrap();
        assert_eq!(restrict_cocycle(&rho, &b, &whole).unwrap().1, b);

        let rho = heisenberg_rep();
        let z = z1_space(&rho).unwrap();
        let cand = z.basis_vectors();
        let b = cand
            .iter()
            .map(|c| InhomCocycle::from_coordinates(&rho, c))
            .find(|c| c.values[0] != vec![rat(0, 1); 3])
            .unwrap();
        let sub = subgroup_as_group(&Subgroup::new(rho.group(), vec![Word::generator(2)], "Z").unwrap()).unwrap();
        let (_, bz) = restrict_cocycle(&rho, &b, &sub).unwrap();
        // Four-step expansion of x⁻¹y⁻¹xy by hand.
        let (rx, ry) = (rho.image(&Word::generator(0)), rho.image(&Word::generator(1)));
        let (bx, by) = (b.values[0].clone(), b.values[1].clone());
        let rxi = crate::linalg::Field::inverse(&rx).unwrap();
        let ryi = crate::linalg::Field::inverse(&ry).unwrap();
        let step1 = rxi.mul_vec(&bx).iter().map(|x| -x.clone()).collect::<Vec<_>>();
        let step2 = crate::linalg::vec_sub(&step1, &rxi.mul(&ryi).mul_vec(&by));
        let step3 = crate::linalg::vec_add(&step2, &rxi.mul(&ryi).mul_vec(&bx));
        let step4 = crate::linalg::vec_add(&step3, &rxi.mul(&ryi).mul(&rx).mul_vec(&by));
        assert_eq!(bz.values[0], step4);
    }

    #[test]
    fn trivial_measure_compresses_to_itself() {
        let z2 = Group::free_abelian(2);
        let rho = Representation::new(&z2, 2, vec![quarter(), quarter()]).unwrap();
        let z = z1_space(&rho).unwrap();
        let b = InhomCocycle::from_coordinates(&rho, &z.basis().column(0));
        let n = Subgroup::new(&z2, vec![Word::generator(0)], "N").unwrap();
        let mu = FiniteSupportMeasure::dirac(&z2, Word::identity()).unwrap();
        let r = emu_compress_cocycle(&rho, &b, &n, &Subgroup::trivial(&z2), &mu, CesaroOptions::default()).unwrap();
        assert_eq!(r.compressed, r.restricted);
        assert!(r.primitive.iter().all(|x| *x == rat(0, 1)));
    }

    #[test]
    fn rotation_compression_is_a_coboundary() {
        let z2 = Group::free_abelian(2);
        let rho = Representation::new(&z2, 2, vec![rotation(), rotation()]).unwrap();
        let w = vec![0.7, -1.3];
        let b = InhomCocycle::new(&rho, vec![w.clone(), w.clone()]).unwrap();
        let n = Subgroup::new(&z2, vec![Word::generator(0)], "N").unwrap();
        let c = Subgroup::new(&z2, vec![Word::generator(1)], "C").unwrap();
        let mu = FiniteSupportMeasure::symmetric_uniform(&z2, &[Word::generator(1)]).unwrap();
        let r = emu_compress_cocycle(&rho, &b, &n, &c, &mu, CesaroOptions::default()).unwrap();
        assert!(r.projection.is_zero(1e-9));
        assert!(r.compressed.values[0].iter().all(|x| x.abs() < 1e-9));
        // v − Rv = w solved independently
        let a = Matrix::identity(2).sub(&rotation());
        let det = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)];
        let v = [(a[(1, 1)] * w[0] - a[(0, 1)] * w[1]) / det, (a[(0, 0)] * w[1] - a[(1, 0)] * w[0]) / det];
        assert!((r.primitive[0] - v[0]).abs() < 1e-9 && (r.primitive[1] - v[1]).abs() < 1e-9);
        assert!(r.residual < 1e-8);
    }

    #[test]
    fn heisenberg_center_compression() {
        let rho = heisenberg_rep();
        let h = rho.group().clone();
        let zs = Subgroup::new(&h, vec![Word::generator(2)], "Z").unwrap();
        let mu = FiniteSupportMeasure::symmetric_uniform(&h, &[Word::generator(2)]).unwrap();
        for col in z1_space(&rho).unwrap().basis_vectors() {
            let b = InhomCocycle::from_coordinates(&rho, &col);
            let r = emu_compress_cocycle(&rho, &b, &zs, &zs, &mu, CesaroOptions::default()).unwrap();
            assert_eq!(r.projection, q(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]));
            let val = &r.compressed.values[0];
            assert_eq!(&val[1..], &[rat(0, 1), rat(0, 1)]);
            // primitive solves v − ρ_z v = (0, β₂, β₃): v = (0, β₂/2, β₃/2)
            let bz = &r.restricted.values[0];
            assert_eq!(r.primitive[1..].to_vec(), vec![bz[1].clone() / rat(2, 1), bz[2].clone() / rat(2, 1)]);
            assert_eq!(r.residual, 0.0);
        }
    }

    #[test]
    fn noncommuting_pair_is_rejected() {
        let rho = heisenberg_rep();
        let h = rho.group().clone();
        let n = Subgroup::new(&h, vec![Word::generator(0)], "N").unwrap();
        let c = Subgroup::new(&h, vec![Word::generator(1)], "C").unwrap();
        let mu = FiniteSupportMeasure::dirac(&h, Word::generator(1)).unwrap();
        let b = InhomCocycle::zero(&rho);
        assert!(matches!(
            emu_compress_cocycle(&rho, &b, &n, &c, &mu, CesaroOptions::default()),
            Err(Error::PreconditionFailed(_))
        ));
    }

    fn klein_rep() -> Representation<Rational> {
        let v4 = Group::finite(product_table(&cyclic_table(2), &cyclic_table(2)));
        Representation::new(&v4, 2, vec![q(&[&[-1, 0], &[0, 1]]), q(&[&[1, 0], &[0, -1]])]).unwrap()
    }

    #[test]
    fn homotopy_identity_degree_one_and_two() {
        let rho = klein_rep();
        let g = rho.group().clone();
        let whole = Subgroup::whole(&g);
        for deg in 1..=2 {
            let bc = hn(&rho, deg).unwrap();
            for col in bc.z.basis_vectors() {
                let f = HomCochain { degree: deg, values: col };
                for c in g.elements().unwrap() {
                    let rep = hc_homotopy(&rho, &f, &c, &whole).unwrap();
                    assert!(rep.holds, "degree {deg}, residual {}", rep.residual);
                }
            }
        }
    }

    #[test]
    fn homotopy_identity_at_identity_is_trivial() {
        let rho = klein_rep();
        let g = rho.group().clone();
        let f = HomCochain { degree: 2, values: hn(&rho, 2).unwrap().z.basis().column(0) };
        let rep = hc_homotopy(&rho, &f, &Word::identity(), &Subgroup::whole(&g)).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.tuples_checked, 16);
    }

    #[test]
    fn homotopy_inhomogeneous_matches_bar_version() {
        let rho = klein_rep();
        let g = rho.group().clone();
        let whole = Subgroup::whole(&g);
        for col in z1_space(&rho).unwrap().basis_vectors() {
            let b = InhomCocycle::from_coordinates(&rho, &col);
            let c = Word::generator(1);
            let inh = hc_homotopy_inhom(&rho, &b, &c, &whole).unwrap();
            let hom = hc_homotopy(&rho, &inhom_to_hom(&rho, &b).unwrap(), &c, &whole).unwrap();
            assert!(inh.holds && hom.holds);
            assert_eq!(inh.h, hom.h[..2].to_vec());
        }
    }

    #[test]
    fn degree_two_compression_on_klein_group() {
        let rho = klein_rep();
        let g = rho.group().clone();
        let n = Subgroup::new(&g, vec![Word::generator(0)], "N").unwrap();
        let c = Subgroup::new(&g, vec![Word::generator(1)], "C").unwrap();
        let mu = FiniteSupportMeasure::uniform(&g, vec![Word::identity(), Word::generator(1)]).unwrap();
        for col in hn(&rho, 2).unwrap().z.basis_vectors() {
            let f = HomCochain { degree: 2, values: col };
            let r = emu_compress_degree_two(&rho, &f, &n, &c, &mu, CesaroOptions::default()).unwrap();
            assert_eq!(r.residual, 0.0);
        }
    }

    #[test]
    fn complement_examples() {
        let z2 = Group::free_abelian(2);
        let n = Subgroup::new(&z2, vec![Word::generator(0)], "N").unwrap();
        let c = Subgroup::new(&z2, vec![Word::generator(1)], "C").unwrap();
        let rho = Representation::new(&z2, 2, vec![quarter(), quarter()]).unwrap();
        let delta = FiniteSupportMeasure::dirac(&z2, Word::identity()).unwrap();
        let r = complemented_b1(&rho, &n, &Subgroup::trivial(&z2), &delta, CesaroOptions::default()).unwrap();
        assert!(r.projection.is_zero(0.0) && r.passed);
        assert_eq!(r.complement_dim, r.restricted.dim());

        let mu = FiniteSupportMeasure::symmetric_uniform(&z2, &[Word::generator(1)]).unwrap();
        let r = complemented_b1(&rho, &n, &c, &mu, CesaroOptions::default()).unwrap();
        assert!(r.idempotent && r.image_matches && r.passed);
        // V₀ = ℚ², so B¹(N, V₀) = image of I − ρ_a, which has rank 2.
        assert_eq!(r.b1_v0.dim(), 2);
        assert_eq!(r.image.dim(), 2);

        let rho = heisenberg_rep();
        let h = rho.group().clone();
        let zs = Subgroup::new(&h, vec![Word::generator(2)], "Z").unwrap();
        let mu = FiniteSupportMeasure::symmetric_uniform(&h, &[Word::generator(2)]).unwrap();
        let r = complemented_b1(&rho, &zs, &zs, &mu, CesaroOptions::default()).unwrap();
        assert_eq!(r.full_coboundaries, Some(true));
        assert!(r.passed);
        assert_eq!(r.b1_v0.dim(), 2);
    }

    #[test]
    fn cyclic_table_compression() {
        let c4 = Group::finite(cyclic_table(4));
        let rho = Representation::new(&c4, 2, vec![quarter()]).unwrap();
        let whole = Subgroup::whole(&c4);
        let mu = FiniteSupportMeasure::uniform(&c4, vec![Word::identity(), Word::generator(0)]).unwrap();
        let b = InhomCocycle::coboundary(&rho, &[rat(1, 1), rat(2, 1)]);
        let r = emu_compress_cocycle(&rho, &b, &whole, &whole, &mu, CesaroOptions::default()).unwrap();
        assert_eq!(r.residual, 0.0);
    }
}
