//! Linear subspaces of `S^d` stored by a canonical basis.

use serde::{Deserialize, Serialize};

use crate::linalg::{norm2, Field, Matrix};

#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<S> {
    ambient: usize,
    basis: Matrix<S>,
}

/// Serializable summary of a subspace (dimension plus rendered basis columns).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubspaceSummary {
    pub ambient: usize,
    pub dim: usize,
    pub basis: Vec<Vec<String>>,
}

impl<S: Field> Subspace<S> {
    /// Span of the columns of `m` (which need not be independent).
    pub fn span(m: &Matrix<S>) -> Self {
        Subspace { ambient: m.rows(), basis: S::image(m) }
    }

    pub fn from_vectors(ambient: usize, vectors: &[Vec<S>]) -> Self {
        Self::span(&Matrix::from_columns(ambient, vectors))
    }

    pub fn kernel_of(m: &Matrix<S>) -> Self {
        Subspace { ambient: m.cols(), basis: S::kernel(m) }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(ambient, 0) }
    }

    pub fn whole(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient) }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &Matrix<S> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<S>> {
        self.basis.columns()
    }

    pub fn contains(&self, v: &[S]) -> bool {
        if self.dim() == 0 {
            return v.iter().all(|x| x.is_negligible(S::tolerance() * (1.0 + norm2(v))));
        }
        let aug = self.basis.hstack(&Matrix::from_columns(self.ambient, &[v.to_vec()]));
        S::rank(&aug) == self.dim()
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        if other.dim() == 0 {
            return true;
        }
        S::rank(&self.basis.hstack(&other.basis)) == self.dim()
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }

    pub fn sum(&self, other: &Self) -> Self {
        Self::span(&self.basis.hstack(&other.basis))
    }

    pub fn intersection(&self, other: &Self) -> Self {
        if self.dim() == 0 || other.dim() == 0 {
            return Self::zero(self.ambient);
        }
        let k = S::kernel(&self.basis.hstack(&other.basis.neg()));
        let top = k.block(0, 0, self.dim(), k.cols());
        Self::span(&self.basis.mul(&top))
    }

    /// `self ⊕ other = S^d` as an internal direct sum.
    pub fn is_complement_of(&self, other: &Self) -> bool {
        self.dim() + other.dim() == self.ambient
            && S::rank(&self.basis.hstack(&other.basis)) == self.ambient
    }

    /// Coordinates of `v` in the basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[S]) -> Option<Vec<S>> {
        if !self.contains(v) {
            return None;
        }
        Some(S::least_squares(&self.basis, v).0)
    }

    /// Matrix of `m` restricted to this subspace (in the stored basis), if invariant.
    pub fn restrict_operator(&self, m: &Matrix<S>) -> Option<Matrix<S>> {
        let image = m.mul(&self.basis);
        let cols: Option<Vec<Vec<S>>> = image.columns().iter().map(|c| self.coordinates(c)).collect();
        cols.map(|c| Matrix::from_columns(self.dim(), &c))
    }

    pub fn is_invariant_under(&self, m: &Matrix<S>) -> bool {
        self.restrict_operator(m).is_some()
    }

    pub fn summary(&self) -> SubspaceSummary {
        SubspaceSummary {
            ambient: self.ambient,
            dim: self.dim(),
            basis: self.basis.columns().iter().map(|c| c.iter().map(|x| x.render()).collect()).collect(),
        }
    }
}
