//! Dense matrices over a [`Field`] and the handful of decompositions the
//! cohomology code needs: kernels, images, ranks, minimal-norm solves.
//!
//! Rational matrices are reduced exactly (Gauss–Jordan). Float matrices go
//! through an SVD with singular values below `1e-9 · max(σ_max, 1)` treated as
//! zero. Bases returned by [`Field::kernel`] and [`Field::image`] are in reduced
//! column echelon form, so equal subspaces yield equal bases up to rounding.

use std::fmt;
use std::ops::{Index, IndexMut};

use nalgebra::DMatrix;

use crate::scalar::{Rational, Scalar, FLOAT_RANK_CUTOFF};

#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (r, c): (usize, usize)) -> &S {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows; panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == m), "ragged rows");
        Matrix { rows: n, cols: m, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_columns(nrows: usize, columns: &[Vec<S>]) -> Self {
        assert!(columns.iter().all(|c| c.len() == nrows), "ragged columns");
        Self::from_fn(nrows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn from_diagonal(diag: &[S]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn scalar(n: usize, s: S) -> Self {
        Self::from_diagonal(&vec![s; n])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> Vec<S> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<S>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_negligible(0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.clone() * other[(k, j)].clone();
                    let cur = std::mem::replace(&mut out[(i, j)], S::zero());
                    out[(i, j)] = cur + prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = S::zero();
                for (c, x) in v.iter().enumerate() {
                    let a = &self[(r, c)];
                    if !a.is_negligible(0.0) {
                        acc = acc + a.clone() * x.clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * s.clone()).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a.clone()).collect() }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn vstack_all(blocks: &[Self], cols: usize) -> Self {
        let mut out = Matrix { rows: 0, cols, data: Vec::new() };
        for b in blocks {
            out = out.vstack(b);
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(r0 + r, c0 + c)] = block[(r, c)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.rows, idx.len(), |r, c| self[(r, idx[c])].clone())
    }

    /// Block-diagonal `I_k ⊗ self`.
    pub fn block_diagonal(&self, k: usize) -> Self {
        let mut out = Self::zeros(self.rows * k, self.cols * k);
        for i in 0..k {
            out.set_block(i * self.rows, i * self.cols, self);
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.abs_f64()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.data.iter().all(|x| x.is_negligible(tol))
    }

    /// Entrywise distance in max-norm.
    pub fn distance(&self, other: &Self) -> f64 {
        self.sub(other).max_abs()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(|x| x.to_f64())
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn to_nalgebra(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)].to_f64())
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + self[(i, i)].clone())
    }
}

impl Matrix<f64> {
    pub fn from_nalgebra(m: &DMatrix<f64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |r, c| m[(r, c)])
    }

    /// Spectral norm `σ_max`.
    pub fn spectral_norm(&self) -> f64 {
        if self.rows == 0 || self.cols == 0 {
            return 0.0;
        }
        thin_svd(&self.to_nalgebra()).1.into_iter().fold(0.0, f64::max)
    }
}

// ---------------------------------------------------------------------------
// vector helpers

pub fn vec_add<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn vec_sub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn vec_scale<S: Scalar>(a: &[S], s: &S) -> Vec<S> {
    a.iter().map(|x| x.clone() * s.clone()).collect()
}

pub fn vec_neg<S: Scalar>(a: &[S]) -> Vec<S> {
    a.iter().map(|x| -x.clone()).collect()
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn norm2<S: Scalar>(a: &[S]) -> f64 {
    a.iter().map(|x| x.to_f64().powi(2)).sum::<f64>().sqrt()
}

pub fn vec_is_zero<S: Scalar>(a: &[S], tol: f64) -> bool {
    a.iter().all(|x| x.is_negligible(tol))
}

pub fn unit_vector<S: Scalar>(n: usize, i: usize) -> Vec<S> {
    (0..n).map(|k| if k == i { S::one() } else { S::zero() }).collect()
}

// ---------------------------------------------------------------------------
// elimination

/// Reduced row echelon form. Returns the reduced matrix and pivot columns.
///
/// Entries with `|x| <= tol` are treated as zero (exactly zero for rationals).
/// Float pivots use partial pivoting; rational pivots take the first nonzero.
pub fn rref<S: Scalar>(m: &Matrix<S>, tol: f64) -> (Matrix<S>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let candidate = if S::is_exact() {
            (row..a.rows).find(|&r| !a[(r, col)].is_negligible(tol))
        } else {
            (row..a.rows)
                .filter(|&r| !a[(r, col)].is_negligible(tol))
                .max_by(|&x, &y| a[(x, col)].abs_f64().total_cmp(&a[(y, col)].abs_f64()))
        };
        let Some(p) = candidate else {
            for r in row..a.rows {
                a[(r, col)] = S::zero();
            }
            continue;
        };
        if p != row {
            for c in 0..a.cols {
                a.data.swap(p * a.cols + c, row * a.cols + c);
            }
        }
        let inv = S::one() / a[(row, col)].clone();
        for c in col..a.cols {
            let v = a[(row, c)].clone() * inv.clone();
            a[(row, c)] = v;
        }
        a[(row, col)] = S::one();
        for r in 0..a.rows {
            if r == row || a[(r, col)].is_negligible(0.0) {
                continue;
            }
            let f = a[(r, col)].clone();
            for c in col..a.cols {
                let sub = f.clone() * a[(row, c)].clone();
                let cur = a[(r, c)].clone();
                a[(r, c)] = cur - sub;
            }
            a[(r, col)] = S::zero();
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

/// Kernel basis read off a reduced row echelon form.
fn kernel_from_rref<S: Scalar>(r: &Matrix<S>, pivots: &[usize]) -> Matrix<S> {
    let n = r.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let cols: Vec<Vec<S>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![S::zero(); n];
            v[f] = S::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[(i, f)].clone();
            }
            v
        })
        .collect();
    Matrix::from_columns(n, &cols)
}

/// Reduced column echelon basis of the span of the given (independent) columns.
pub fn column_echelon<S: Scalar>(basis: &Matrix<S>, tol: f64) -> Matrix<S> {
    let (r, pivots) = rref(&basis.transpose(), tol);
    r.block(0, 0, pivots.len(), r.cols()).transpose()
}

fn float_cutoff(sv: &[f64]) -> f64 {
    FLOAT_RANK_CUTOFF * sv.iter().cloned().fold(1.0, f64::max)
}

/// Linear algebra that depends on the field: exact elimination or SVD.
pub trait Field: Scalar {
    /// Basis (columns) of `ker m`, reduced column echelon.
    fn kernel(m: &Matrix<Self>) -> Matrix<Self>;
    /// Basis (columns) of `im m`, reduced column echelon.
    fn image(m: &Matrix<Self>) -> Matrix<Self>;
    fn rank(m: &Matrix<Self>) -> usize;
    /// Minimal-norm least-squares solution of `a x = b` and the residual `‖a x − b‖₂`.
    fn least_squares(a: &Matrix<Self>, b: &[Self]) -> (Vec<Self>, f64);
    fn inverse(m: &Matrix<Self>) -> Option<Matrix<Self>>;
    /// Positive definiteness of a symmetric matrix.
    fn is_positive_definite(m: &Matrix<Self>) -> bool;
    /// Tolerance for entrywise comparisons: 0 for exact, small for floats.
    fn tolerance() -> f64;
}

impl Field for Rational {
    fn kernel(m: &Matrix<Self>) -> Matrix<Self> {
        let (r, p) = rref(m, 0.0);
        kernel_from_rref(&r, &p)
    }

    fn image(m: &Matrix<Self>) -> Matrix<Self> {
        column_echelon(m, 0.0)
    }

    fn rank(m: &Matrix<Self>) -> usize {
        rref(m, 0.0).1.len()
    }

    fn least_squares(a: &Matrix<Self>, b: &[Self]) -> (Vec<Self>, f64) {
        let n = a.cols();
        let solve_consistent = |lhs: &Matrix<Self>, rhs: &[Self]| -> Option<Vec<Self>> {
            let aug = lhs.hstack(&Matrix::from_columns(lhs.rows(), &[rhs.to_vec()]));
            let (r, pivots) = rref(&aug, 0.0);
            if pivots.last() == Some(&n) {
                return None;
            }
            let mut x = vec![Self::zero(); n];
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = r[(i, n)].clone();
            }
            Some(x)
        };
        let x = match solve_consistent(a, b) {
            Some(x) => x,
            None => {
                let at = a.transpose();
                solve_consistent(&at.mul(a), &at.mul_vec(b)).expect("normal equations are consistent")
            }
        };
        let x = minimal_norm(a, x);
        let residual = norm2(&vec_sub(&a.mul_vec(&x), b));
        (x, residual)
    }

    fn inverse(m: &Matrix<Self>) -> Option<Matrix<Self>> {
        if !m.is_square() {
            return None;
        }
        let n = m.rows();
        if n == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let (r, pivots) = rref(&m.hstack(&Matrix::identity(n)), 0.0);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    fn is_positive_definite(m: &Matrix<Self>) -> bool {
        // Sylvester: all pivots of symmetric elimination without swaps are positive.
        let n = m.rows();
        let mut a = m.clone();
        for k in 0..n {
            let p = a[(k, k)].clone();
            if p <= Self::zero() {
                return false;
            }
            for i in k + 1..n {
                let f = a[(i, k)].clone() / p.clone();
                for j in k..n {
                    let v = a[(i, j)].clone() - f.clone() * a[(k, j)].clone();
                    a[(i, j)] = v;
                }
            }
        }
        true
    }

    fn tolerance() -> f64 {
        0.0
    }
}

/// Removes the kernel component of `x` so the solution has minimal Euclidean norm.
fn minimal_norm<S: Field>(a: &Matrix<S>, x: Vec<S>) -> Vec<S> {
    let k = S::kernel(a);
    if k.cols() == 0 {
        return x;
    }
    let kt = k.transpose();
    let gram = kt.mul(&k);
    let Some(gi) = S::inverse(&gram) else { return x };
    let coeff = gi.mul_vec(&kt.mul_vec(&x));
    vec_sub(&x, &k.mul_vec(&coeff))
}

/// Thin SVD `(U, σ, Vᵀ)`. nalgebra's result is checked by recomposition and
/// replaced by one-sided Jacobi when it is off (it can be for some
/// rank-deficient inputs).
fn thin_svd(a: &DMatrix<f64>) -> (DMatrix<f64>, Vec<f64>, DMatrix<f64>) {
    let svd = a.clone().svd(true, true);
    let (u, vt) = (svd.u.expect("u requested"), svd.v_t.expect("v_t requested"));
    let sv: Vec<f64> = svd.singular_values.iter().cloned().collect();
    let recomposed = &u * DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&sv)) * &vt;
    let scale = a.norm().max(1.0);
    if sv.iter().all(|s| s.is_finite()) && (recomposed - a).norm() <= 1e-11 * scale {
        return (u, sv, vt);
    }
    if a.nrows() >= a.ncols() {
        jacobi_svd(a)
    } else {
        let (u, sv, vt) = jacobi_svd(&a.transpose());
        (vt.transpose(), sv, u.transpose())
    }
}

/// One-sided (Hestenes) Jacobi SVD of a matrix with at least as many rows as columns.
fn jacobi_svd(a: &DMatrix<f64>) -> (DMatrix<f64>, Vec<f64>, DMatrix<f64>) {
    let (m, n) = (a.nrows(), a.ncols());
    let mut u = a.clone();
    let mut v = DMatrix::<f64>::identity(n, n);
    for _ in 0..100 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (alpha, beta, gamma) = (u.column(p).norm_squared(), u.column(q).norm_squared(), u.column(p).dot(&u.column(q)));
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for (mat, rows) in [(&mut u, m), (&mut v, n)] {
                    for i in 0..rows {
                        let (x, y) = (mat[(i, p)], mat[(i, q)]);
                        mat[(i, p)] = c * x - s * y;
                        mat[(i, q)] = s * x + c * y;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let sv: Vec<f64> = (0..n).map(|j| u.column(j).norm()).collect();
    for (j, &s) in sv.iter().enumerate() {
        if s > 0.0 {
            u.column_mut(j).scale_mut(1.0 / s);
        }
    }
    (u, sv, v.transpose())
}

impl Field for f64 {
    fn kernel(m: &Matrix<Self>) -> Matrix<Self> {
        let n = m.cols();
        if n == 0 {
            return Matrix::zeros(0, 0);
        }
        let rows = m.rows().max(n);
        let padded = DMatrix::from_fn(rows, n, |r, c| if r < m.rows() { m[(r, c)] } else { 0.0 });
        let (_, sv, vt) = thin_svd(&padded);
        let cut = float_cutoff(&sv);
        let null: Vec<Vec<f64>> = sv
            .iter()
            .enumerate()
            .filter(|(_, s)| **s <= cut)
            .map(|(i, _)| (0..n).map(|c| vt[(i, c)]).collect())
            .collect();
        if null.is_empty() {
            return Matrix::zeros(n, 0);
        }
        column_echelon(&Matrix::from_columns(n, &null), FLOAT_RANK_CUTOFF)
    }

    fn image(m: &Matrix<Self>) -> Matrix<Self> {
        if m.rows() == 0 || m.cols() == 0 {
            return Matrix::zeros(m.rows(), 0);
        }
        let (u, sv, _) = thin_svd(&m.to_nalgebra());
        let cut = float_cutoff(&sv);
        let cols: Vec<Vec<f64>> = sv
            .iter()
            .enumerate()
            .filter(|(_, s)| **s > cut)
            .map(|(i, _)| (0..m.rows()).map(|r| u[(r, i)]).collect())
            .collect();
        if cols.is_empty() {
            return Matrix::zeros(m.rows(), 0);
        }
        column_echelon(&Matrix::from_columns(m.rows(), &cols), FLOAT_RANK_CUTOFF)
    }

    fn rank(m: &Matrix<Self>) -> usize {
        if m.rows() == 0 || m.cols() == 0 {
            return 0;
        }
        let (_, sv, _) = thin_svd(&m.to_nalgebra());
        let cut = float_cutoff(&sv);
        sv.iter().filter(|s| **s > cut).count()
    }

    fn least_squares(a: &Matrix<Self>, b: &[Self]) -> (Vec<Self>, f64) {
        let n = a.cols();
        if a.rows() == 0 || n == 0 {
            return (vec![0.0; n], norm2(b));
        }
        let (u, sv, vt) = thin_svd(&a.to_nalgebra());
        let cut = float_cutoff(&sv);
        let mut x = vec![0.0; n];
        for (i, s) in sv.iter().enumerate() {
            if *s <= cut {
                continue;
            }
            let coeff: f64 = (0..a.rows()).map(|r| u[(r, i)] * b[r]).sum::<f64>() / s;
            for (c, xc) in x.iter_mut().enumerate() {
                *xc += coeff * vt[(i, c)];
            }
        }
        let residual = norm2(&vec_sub(&a.mul_vec(&x), b));
        (x, residual)
    }

    fn inverse(m: &Matrix<Self>) -> Option<Matrix<Self>> {
        if !m.is_square() {
            return None;
        }
        if m.rows() == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        if Self::rank(m) < m.rows() {
            return None;
        }
        m.to_nalgebra().try_inverse().map(|inv| Matrix::from_nalgebra(&inv))
    }

    fn is_positive_definite(m: &Matrix<Self>) -> bool {
        if m.rows() == 0 {
            return true;
        }
        let eig = symmetric_eigenvalues(m);
        let max = eig.iter().cloned().fold(0.0, f64::max);
        eig.iter().all(|&l| l > FLOAT_RANK_CUTOFF * max.max(1.0))
    }

    fn tolerance() -> f64 {
        1e-9
    }
}

/// Eigenvalues of a symmetric float matrix, ascending.
pub fn symmetric_eigenvalues(m: &Matrix<f64>) -> Vec<f64> {
    let a = m.to_nalgebra();
    let sym = (&a + a.transpose()) * 0.5;
    let mut e: Vec<f64> = sym.symmetric_eigen().eigenvalues.iter().cloned().collect();
    e.sort_by(f64::total_cmp);
    e
}

/// Eigenvalues of `a` relative to the positive-definite form `p`
/// (roots of `det(a − λ p) = 0`), ascending. `None` if `p` is not positive definite.
pub fn generalized_symmetric_eigenvalues(a: &Matrix<f64>, p: &Matrix<f64>) -> Option<Vec<f64>> {
    let pn = p.to_nalgebra();
    let pn = (&pn + pn.transpose()) * 0.5;
    let chol = pn.cholesky()?;
    let l = chol.l();
    let linv = l.clone().try_inverse()?;
    let an = a.to_nalgebra();
    let c = &linv * an * linv.transpose();
    let c = (&c + c.transpose()) * 0.5;
    let mut e: Vec<f64> = c.symmetric_eigen().eigenvalues.iter().cloned().collect();
    e.sort_by(f64::total_cmp);
    Some(e)
}

/// Rank of the horizontal concatenation of two bases.
pub fn joint_rank<S: Field>(a: &Matrix<S>, b: &Matrix<S>) -> usize {
    S::rank(&a.hstack(b))
}
