//! First cohomology through relator expansion, higher degrees through the
//! homogeneous bar complex of a finite group.
//!
//! Conventions: an inhomogeneous cocycle is `β(g) = f(e, g)` for the
//! homogeneous cocycle `f`, so `β(gh) = β(g) + ρ_g β(h)`. Coboundaries are
//! `β(g) = v − ρ_g v`. Cocycle coordinates stack the generator values
//! `β(s_1), …, β(s_k)` into one vector of length `k·d`.

mod bar;
mod harmonic;

pub use bar::{bar_complex, hn, hom_to_inhom, inhom_to_hom, BarComplex, HomCochain, BAR_BUDGET, MAX_BAR_DEGREE};
pub use harmonic::{harmonic_decomposition, HarmonicDecomposition};
pub(crate) use harmonic::{working_norm, CONTRACTION_MARGIN};

use crate::error::{Error, Result};
use crate::group::Word;
use crate::linalg::{norm2, Field, Matrix};
use crate::rep::{Representation, FLOAT_RELATOR_TOLERANCE};
use crate::scalar::ScalarKind;
use crate::subspace::Subspace;

/// Values on the generators of a 1-cocycle.
#[derive(Clone, Debug, PartialEq)]
pub struct InhomCocycle<S> {
    pub values: Vec<Vec<S>>,
}

impl<S: Field> InhomCocycle<S> {
    /// Checks that every relator expands to zero.
    pub fn new(rho: &Representation<S>, values: Vec<Vec<S>>) -> Result<Self> {
        let b = Self::unchecked(rho, values)?;
        let tol = if S::is_exact() { 0.0 } else { FLOAT_RELATOR_TOLERANCE * (1.0 + b.norm()) };
        for r in rho.group().relators() {
            let residual = norm2(&expand_word_cocycle(rho, &b, &r));
            if !(residual <= tol) {
                return Err(Error::RelatorViolation { relator: rho.group().render(&r), residual });
            }
        }
        Ok(b)
    }

    pub fn unchecked(rho: &Representation<S>, values: Vec<Vec<S>>) -> Result<Self> {
        if values.len() != rho.group().generator_count() || values.iter().any(|v| v.len() != rho.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "cocycle needs {} vectors of length {}",
                rho.group().generator_count(),
                rho.dim()
            )));
        }
        Ok(InhomCocycle { values })
    }

    pub fn zero(rho: &Representation<S>) -> Self {
        InhomCocycle { values: vec![vec![S::zero(); rho.dim()]; rho.group().generator_count()] }
    }

    /// The coboundary `s ↦ v − ρ_s v`.
    pub fn coboundary(rho: &Representation<S>, v: &[S]) -> Self {
        let id = Matrix::identity(rho.dim());
        InhomCocycle { values: rho.images().iter().map(|m| id.sub(m).mul_vec(v)).collect() }
    }

    pub fn from_coordinates(rho: &Representation<S>, x: &[S]) -> Self {
        let d = rho.dim();
        InhomCocycle { values: (0..rho.group().generator_count()).map(|i| x[i * d..(i + 1) * d].to_vec()).collect() }
    }

    pub fn coordinates(&self) -> Vec<S> {
        self.values.iter().flatten().cloned().collect()
    }

    pub fn norm(&self) -> f64 {
        norm2(&self.coordinates())
    }

    pub fn add(&self, other: &Self) -> Self {
        InhomCocycle { values: self.values.iter().zip(&other.values).map(|(a, b)| crate::linalg::vec_add(a, b)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        InhomCocycle { values: self.values.iter().zip(&other.values).map(|(a, b)| crate::linalg::vec_sub(a, b)).collect() }
    }

    pub fn scale(&self, s: &S) -> Self {
        InhomCocycle { values: self.values.iter().map(|a| crate::linalg::vec_scale(a, s)).collect() }
    }

    pub fn to_f64(&self) -> InhomCocycle<f64> {
        InhomCocycle { values: self.values.iter().map(|v| v.iter().map(|x| x.to_f64()).collect()).collect() }
    }
}

/// The `d × k·d` matrix `M_w` with `β(w) = M_w · coords(β)` (Fox derivative of `w`).
pub fn expansion_matrix<S: Field>(rho: &Representation<S>, w: &Word) -> Matrix<S> {
    let d = rho.dim();
    let k = rho.group().generator_count();
    let mut out = Matrix::zeros(d, k * d);
    let mut prefix = Matrix::<S>::identity(d);
    for (g, sign) in w.unit_letters() {
        let block = out.block(0, g * d, d, d);
        if sign > 0 {
            out.set_block(0, g * d, &block.add(&prefix));
            prefix = prefix.mul(&rho.images()[g]);
        } else {
            prefix = prefix.mul(&rho.inverses()[g]);
            out.set_block(0, g * d, &block.sub(&prefix));
        }
    }
    out
}

/// `β(w)`, expanding left to right with `β(s⁻¹) = −ρ(s⁻¹)β(s)`.
pub fn expand_word_cocycle<S: Field>(rho: &Representation<S>, b: &InhomCocycle<S>, w: &Word) -> Vec<S> {
    let mut acc = vec![S::zero(); rho.dim()];
    let mut prefix = Matrix::<S>::identity(rho.dim());
    for (g, sign) in w.unit_letters() {
        if sign > 0 {
            acc = crate::linalg::vec_add(&acc, &prefix.mul_vec(&b.values[g]));
            prefix = prefix.mul(&rho.images()[g]);
        } else {
            prefix = prefix.mul(&rho.inverses()[g]);
            acc = crate::linalg::vec_sub(&acc, &prefix.mul_vec(&b.values[g]));
        }
    }
    acc
}

/// Stacked relator expansions; `Z¹` is its kernel.
pub fn z1_system<S: Field>(rho: &Representation<S>) -> Matrix<S> {
    let k = rho.group().generator_count();
    let blocks: Vec<Matrix<S>> = rho.group().relators().iter().map(|r| expansion_matrix(rho, r)).collect();
    Matrix::vstack_all(&blocks, k * rho.dim())
}

pub fn z1_space<S: Field>(rho: &Representation<S>) -> Result<Subspace<S>> {
    let k = rho.group().generator_count();
    if k == 0 {
        return Ok(Subspace::zero(0));
    }
    Ok(Subspace::kernel_of(&z1_system(rho)))
}

/// `v ↦ (v − ρ_s v)_s`, a `k·d × d` matrix.
pub fn coboundary_map<S: Field>(rho: &Representation<S>) -> Matrix<S> {
    let id = Matrix::identity(rho.dim());
    let blocks: Vec<Matrix<S>> = rho.images().iter().map(|m| id.sub(m)).collect();
    Matrix::vstack_all(&blocks, rho.dim())
}

pub fn b1_space<S: Field>(rho: &Representation<S>) -> Subspace<S> {
    Subspace::span(&coboundary_map(rho))
}

/// Greedy complement of `b` inside `z`, scanning `z`'s reduced basis in order.
pub fn complement_basis<S: Field>(z: &Subspace<S>, b: &Subspace<S>) -> Matrix<S> {
    let mut current = b.basis().clone();
    let mut rank = b.dim();
    let mut chosen = Vec::new();
    for v in z.basis_vectors() {
        let trial = current.hstack(&Matrix::from_columns(z.ambient_dim(), std::slice::from_ref(&v)));
        let r = S::rank(&trial);
        if r > rank {
            rank = r;
            current = trial;
            chosen.push(v);
        }
    }
    Matrix::from_columns(z.ambient_dim(), &chosen)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CohomologySummary<S> {
    pub degree: usize,
    pub z: Subspace<S>,
    pub b: Subspace<S>,
    /// Columns spanning a complement of `B` in `Z`.
    pub representatives: Matrix<S>,
    pub scalar_kind: ScalarKind,
    pub tolerance: f64,
}

impl<S: Field> CohomologySummary<S> {
    pub fn from_spaces(degree: usize, z: Subspace<S>, b: Subspace<S>) -> Result<Self> {
        if !z.contains_subspace(&b) {
            return Err(Error::HypothesisFailed {
                check: "coboundaries are cocycles".into(),
                detail: format!("degree {degree}: B (dim {}) not contained in Z (dim {})", b.dim(), z.dim()),
            });
        }
        let representatives = complement_basis(&z, &b);
        Ok(CohomologySummary { degree, z, b, representatives, scalar_kind: S::KIND, tolerance: S::tolerance() })
    }

    pub fn dim_z(&self) -> usize {
        self.z.dim()
    }

    pub fn dim_b(&self) -> usize {
        self.b.dim()
    }

    pub fn dim_h(&self) -> usize {
        self.z.dim() - self.b.dim()
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.dim_z(), self.dim_b(), self.dim_h())
    }
}

/// `H¹(G, ρ)` by the relator method.
pub fn h1<S: Field>(rho: &Representation<S>) -> Result<CohomologySummary<S>> {
    let z = z1_space(rho)?;
    let b = if rho.group().generator_count() == 0 { Subspace::zero(0) } else { b1_space(rho) };
    CohomologySummary::from_spaces(1, z, b)
}

/// Outcome of solving `β(s) = v − ρ_s v`.
#[derive(Clone, Debug, PartialEq)]
pub enum Membership<S> {
    /// Minimal-norm primitive.
    Primitive(Vec<S>),
    NotCoboundary { residual: f64 },
    /// Float residual between the accept and reject thresholds.
    Ambiguous { residual: f64, candidate: Vec<S> },
}

impl<S> Membership<S> {
    pub fn primitive(&self) -> Option<&Vec<S>> {
        match self {
            Membership::Primitive(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_coboundary(&self) -> bool {
        matches!(self, Membership::Primitive(_))
    }
}

pub const MEMBERSHIP_ACCEPT: f64 = 1e-9;
pub const MEMBERSHIP_REJECT: f64 = 1e-6;

pub fn coboundary_membership<S: Field>(rho: &Representation<S>, b: &InhomCocycle<S>) -> Membership<S> {
    if rho.dim() == 0 || rho.group().generator_count() == 0 {
        return Membership::Primitive(vec![S::zero(); rho.dim()]);
    }
    let (v, residual) = S::least_squares(&coboundary_map(rho), &b.coordinates());
    if S::is_exact() {
        return if residual == 0.0 { Membership::Primitive(v) } else { Membership::NotCoboundary { residual } };
    }
    let scale = 1.0 + b.norm();
    if residual <= MEMBERSHIP_ACCEPT * scale {
        Membership::Primitive(v)
    } else if residual > MEMBERSHIP_REJECT * scale {
        Membership::NotCoboundary { residual }
    } else {
        Membership::Ambiguous { residual, candidate: v }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic_table, Group};
    use crate::scalar::{rat, Rational};

    fn one(x: i64) -> Matrix<Rational> {
        Matrix::from_rows(vec![vec![rat(x, 1)]])
    }

    #[test]
    fn expansion_examples() {
        let z = Group::free(1);
        let m = Matrix::from_rows(vec![vec![rat(2, 1), rat(0, 1)], vec![rat(0, 1), rat(1, 1)]]);
        let rho = Representation::new(&z, 2, vec![m.clone()]).unwrap();
        let b = InhomCocycle::new(&rho, vec![vec![rat(1, 1), rat(3, 1)]]).unwrap();
        assert_eq!(expand_word_cocycle(&rho, &b, &Word::identity()), vec![rat(0, 1), rat(0, 1)]);
        let s2 = expand_word_cocycle(&rho, &b, &Word::power_of(0, 2));
        assert_eq!(s2, crate::linalg::vec_add(&b.values[0], &m.mul_vec(&b.values[0])));
        let inv = expand_word_cocycle(&rho, &b, &Word::power_of(0, -1));
        assert_eq!(inv, vec![rat(-1, 2), rat(-3, 1)]);
        let lin = expansion_matrix(&rho, &Word::power_of(0, -2)).mul_vec(&b.coordinates());
        assert_eq!(lin, expand_word_cocycle(&rho, &b, &Word::power_of(0, -2)));

        let triv = Representation::<Rational>::trivial(&z, 1);
        let c = InhomCocycle::new(&triv, vec![vec![rat(5, 1)]]).unwrap();
        assert_eq!(expand_word_cocycle(&triv, &c, &Word::power_of(0, 7)), vec![rat(35, 1)]);
    }

    #[test]
    fn z1_examples() {
        let f2 = Group::free(2);
        let rho = Representation::<Rational>::trivial(&f2, 3);
        assert_eq!(z1_space(&rho).unwrap().dim(), 6);
        assert_eq!(h1(&rho).unwrap().dims(), (6, 0, 6));

        let c5 = Group::finite(cyclic_table(5));
        assert_eq!(z1_space(&Representation::<Rational>::trivial(&c5, 1)).unwrap().dim(), 0);

        let z2 = Group::free_abelian(2);
        let t = 2.0 * std::f64::consts::PI / 3.0;
        let r = Matrix::from_rows(vec![vec![t.cos(), -t.sin()], vec![t.sin(), t.cos()]]);
        let rho = Representation::new(&z2, 2, vec![r, Matrix::identity(2)]).unwrap();
        let s = h1(&rho).unwrap();
        assert_eq!(s.dims(), (2, 2, 0));

        let z = Group::free(1);
        assert_eq!(h1(&Representation::<Rational>::trivial(&z, 1)).unwrap().dims(), (1, 0, 1));
    }

    #[test]
    fn b1_and_membership() {
        let c2 = Group::finite(cyclic_table(2));
        let sign = Representation::new(&c2, 1, vec![one(-1)]).unwrap();
        assert_eq!(b1_space(&sign).dim(), 1);
        let b = InhomCocycle::new(&sign, vec![vec![rat(2, 1)]]).unwrap();
        assert_eq!(coboundary_membership(&sign, &b), Membership::Primitive(vec![rat(1, 1)]));
        assert_eq!(coboundary_membership(&sign, &InhomCocycle::zero(&sign)), Membership::Primitive(vec![rat(0, 1)]));

        let z = Group::free(1);
        let triv = Representation::<Rational>::trivial(&z, 1);
        assert_eq!(b1_space(&triv).dim(), 0);
        let c = InhomCocycle::new(&triv, vec![vec![rat(1, 1)]]).unwrap();
        assert!(matches!(coboundary_membership(&triv, &c), Membership::NotCoboundary { .. }));
        let trivf = Representation::<f64>::trivial(&z, 1);
        let cf = InhomCocycle::new(&trivf, vec![vec![1.0]]).unwrap();
        assert!(matches!(coboundary_membership(&trivf, &cf), Membership::NotCoboundary { .. }));
        let small = InhomCocycle::new(&trivf, vec![vec![1e-7]]).unwrap();
        assert!(matches!(coboundary_membership(&trivf, &small), Membership::Ambiguous { .. }));
    }

    #[test]
    fn cocycle_validation() {
        let c2 = Group::finite(cyclic_table(2));
        let triv = Representation::<Rational>::trivial(&c2, 1);
        assert!(matches!(InhomCocycle::new(&triv, vec![vec![rat(1, 1)]]), Err(Error::RelatorViolation { .. })));
        assert!(InhomCocycle::new(&triv, vec![vec![rat(1, 1), rat(0, 1)]]).is_err());
    }
}
