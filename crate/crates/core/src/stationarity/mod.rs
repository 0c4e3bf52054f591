//! Ergodic projections of Markov operators and stationarity checks.
//!
//! Every finite-dimensional module with a power-bounded Markov operator is
//! weakly uniquely stationary, so the checks here mostly confirm that the
//! numerics agree with that collapse.

mod algebra;
mod harmonic;

pub use algebra::{
    stationary_states, unique_stationarity_equivalence, BlockAutomorphism, ConnectionReport, MatrixAlgebraAction,
    StationaryStates, CMatrix,
};
pub use harmonic::{harmonic_function_space, liouville_check, HarmonicFunctionSpace};

use crate::error::{Error, Result};
use crate::group::{FiniteSupportMeasure, Subgroup};
use crate::linalg::{norm2, Field, Matrix};
use crate::rep::{markov_operator, Representation};
use crate::subspace::Subspace;

/// Cap on the number of terms tried by [`convex_approximation`].
pub const CONVEX_TERM_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CesaroOptions {
    pub tol: f64,
    /// Number of doubling rounds `A_n → A_{2n}`.
    pub max_iter: usize,
}

impl Default for CesaroOptions {
    fn default() -> Self {
        CesaroOptions { tol: 1e-10, max_iter: 62 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ErgodicProjection<S> {
    pub e: Matrix<S>,
    pub iterations: usize,
    /// `‖A_{2n} − A_n‖` at the last round.
    pub residual: f64,
    /// Largest deviation in `E² = E`, `ρ_μ E = E`, `E ρ_μ = E`.
    pub identity_residual: f64,
    /// `E` came from the exact kernel/image splitting.
    pub exact: bool,
}

/// Projection onto `ker(I − m)` along `im(I − m)`, if those are complementary.
pub fn splitting_projection<S: Field>(m: &Matrix<S>) -> Option<Matrix<S>> {
    splitting(m).map(|(e, _)| e)
}

/// The splitting projection `E` together with `R = (I − m)|_{V0}⁻¹ (I − E)`,
/// `V0 = im(I − m)`.
fn splitting<S: Field>(m: &Matrix<S>) -> Option<(Matrix<S>, Matrix<S>)> {
    let d = m.rows();
    let delta = Matrix::identity(d).sub(m);
    let image = S::image(&delta);
    let kernel = S::kernel(&delta);
    let r = image.cols();
    if r + kernel.cols() != d {
        return None;
    }
    let b = image.hstack(&kernel);
    let binv = S::inverse(&b)?;
    let diag: Vec<S> = (0..d).map(|i| if i < r { S::zero() } else { S::one() }).collect();
    let e = b.mul(&Matrix::from_diagonal(&diag)).mul(&binv);
    if r == 0 {
        return Some((e, Matrix::zeros(d, d)));
    }
    // Δ B0 = B0 D with D the top block of B⁻¹ Δ B0.
    let dmat = binv.mul(&delta).mul(&image).block(0, 0, r, r);
    let dinv = S::inverse(&dmat)?;
    let coords = binv.block(0, 0, r, d);
    Some((e, image.mul(&dinv).mul(&coords)))
}

fn doubling(m: &Matrix<f64>, opts: CesaroOptions) -> Result<(Matrix<f64>, usize, f64)> {
    let d = m.rows();
    let id = Matrix::<f64>::identity(d);
    let mut a = id.clone();
    let mut power = m.clone();
    let mut residual = f64::INFINITY;
    for round in 1..=opts.max_iter {
        let next = a.mul(&id.add(&power)).scale(&0.5);
        residual = next.distance(&a);
        if !residual.is_finite() {
            return Err(Error::NoConvergence { iterations: round, residual });
        }
        a = next;
        if residual <= opts.tol {
            return Ok((a, round, residual));
        }
        power = power.mul(&power);
    }
    Err(Error::NoConvergence { iterations: opts.max_iter, residual })
}

fn identity_residual<S: Field>(m: &Matrix<S>, e: &Matrix<S>) -> f64 {
    let e2 = e.mul(e).distance(e);
    let left = m.mul(e).distance(e);
    let right = e.mul(m).distance(e);
    e2.max(left).max(right)
}

/// Doubling on `A_n = E + (1/n) R (I − mⁿ)`, which follows from
/// `(I − m) A_n = (1/n)(I − mⁿ)`. Rounding in `mⁿ` is divided by `n` here,
/// whereas the plain recursion accumulates it.
fn split_doubling(m: &Matrix<f64>, r: &Matrix<f64>, opts: CesaroOptions) -> Result<(usize, f64)> {
    let d = m.rows();
    let id = Matrix::<f64>::identity(d);
    let tail = |power: &Matrix<f64>, n: f64| r.mul(&id.sub(power)).scale(&(1.0 / n));
    let mut power = m.clone();
    let mut n = 1.0;
    let mut residual = f64::INFINITY;
    for round in 1..=opts.max_iter {
        let next = power.mul(&power);
        residual = tail(&next, 2.0 * n).distance(&tail(&power, n));
        if !residual.is_finite() {
            return Err(Error::NoConvergence { iterations: round, residual });
        }
        if residual <= opts.tol {
            return Ok((round, residual));
        }
        power = next;
        n *= 2.0;
    }
    Err(Error::NoConvergence { iterations: opts.max_iter, residual })
}

/// Cesàro limit of `ρ_μ^i`, with `max_iter` doubling rounds `A_n → A_{2n}`.
/// When `ker Δ_μ ⊕ im Δ_μ = V` the averages are tracked through the splitting
/// (exact `E` for rationals); otherwise the plain recursion runs, and fails on
/// unbounded inputs.
pub fn cesaro_projection<S: Field>(
    rho: &Representation<S>,
    mu: &FiniteSupportMeasure,
    opts: CesaroOptions,
) -> Result<ErgodicProjection<S>> {
    let m = markov_operator(rho, mu);
    cesaro_of_operator(&m, opts)
}

pub fn cesaro_of_operator<S: Field>(m: &Matrix<S>, opts: CesaroOptions) -> Result<ErgodicProjection<S>> {
    let (e, iterations, residual, exact) = match splitting(m) {
        Some((e, r)) => {
            let (iterations, residual) = split_doubling(&m.to_f64(), &r.to_f64(), opts)?;
            (e, iterations, residual, S::is_exact())
        }
        None => {
            let (a, iterations, residual) = doubling(&m.to_f64(), opts)?;
            (a.map(|x| S::from_f64(*x).expect("finite Cesàro average")), iterations, residual, false)
        }
    };
    let identity_residual = identity_residual(m, &e);
    Ok(ErgodicProjection { e, iterations, residual, identity_residual, exact })
}

#[derive(Clone, Debug, PartialEq)]
pub struct StationaryDecomposition<S> {
    /// `im Δ_μ`.
    pub v0: Subspace<S>,
    /// `V^μ = ker Δ_μ`.
    pub v_mu: Subspace<S>,
    /// `[basis(V0) | basis(V^μ)]`, invertible.
    pub change_of_basis: Matrix<S>,
    pub residual: f64,
}

/// `V = im Δ_μ ⊕ V^μ`, or [`Error::NotDirect`].
pub fn stationary_decomposition<S: Field>(
    rho: &Representation<S>,
    mu: &FiniteSupportMeasure,
) -> Result<StationaryDecomposition<S>> {
    let m = markov_operator(rho, mu);
    decompose_operator(&m)
}

pub fn decompose_operator<S: Field>(m: &Matrix<S>) -> Result<StationaryDecomposition<S>> {
    let d = m.rows();
    let delta = Matrix::identity(d).sub(m);
    let v0 = Subspace::span(&delta);
    let v_mu = Subspace::kernel_of(&delta);
    let overlap = v0.intersection(&v_mu);
    if overlap.dim() > 0 || v0.dim() + v_mu.dim() != d {
        let witness_norm = overlap.basis_vectors().first().map_or(0.0, |v| norm2(v));
        return Err(Error::NotDirect { witness_norm });
    }
    let change_of_basis = v0.basis().hstack(v_mu.basis());
    let inv = S::inverse(&change_of_basis).ok_or(Error::NotDirect { witness_norm: 0.0 })?;
    let residual = change_of_basis.mul(&inv).distance(&Matrix::identity(d));
    Ok(StationaryDecomposition { v0, v_mu, change_of_basis, residual })
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeakStationarityReport {
    pub fixed_dim: usize,
    pub dual_fixed_dim: usize,
    pub pairing_rank: usize,
    /// Every nonzero `μ̌`-invariant functional is nonzero on `V^μ`.
    pub holds: bool,
}

/// Pairs `(V*)^{μ̌}` (fixed space of the dual Markov operator) against `V^μ`.
pub fn weak_unique_stationarity_check<S: Field>(
    rho: &Representation<S>,
    mu: &FiniteSupportMeasure,
) -> Result<WeakStationarityReport> {
    let fixed = rho.mu_fixed_space(mu);
    let dual_fixed = rho.dual().mu_fixed_space(&mu.symmetric_opposite()?);
    let pairing = dual_fixed.basis().transpose().mul(fixed.basis());
    let pairing_rank = if pairing.rows() == 0 || pairing.cols() == 0 { 0 } else { S::rank(&pairing) };
    Ok(WeakStationarityReport {
        fixed_dim: fixed.dim(),
        dual_fixed_dim: dual_fixed.dim(),
        pairing_rank,
        holds: pairing_rank == dual_fixed.dim(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvexApproximation {
    /// `N` in `(1/N) Σ_{l=1}^{N} μ^{*l}`.
    pub terms: usize,
    pub measure: FiniteSupportMeasure,
    /// `max_{v∈T} ‖Σ_w ν(w) ρ(w) v − E v‖₂` for the returned measure `ν`.
    pub max_error: f64,
}

/// Finds `N` with the Cesàro measure `ν_N` moving every `v ∈ T` to within
/// `ε` of `E_μ v`, then expands `ν_N` on the group.
pub fn convex_approximation<S: Field>(
    rho: &Representation<S>,
    mu: &FiniteSupportMeasure,
    targets: &[Vec<S>],
    epsilon: f64,
    opts: CesaroOptions,
) -> Result<ConvexApproximation> {
    if !(epsilon > 0.0) {
        return Err(Error::PreconditionFailed(format!("ε must be positive, got {epsilon}")));
    }
    if !rho.group().has_normal_form() {
        return Err(Error::UnsupportedFamily(format!("convolution powers in {}", rho.group().family_name())));
    }
    let proj = cesaro_projection(rho, mu, opts)?.e.to_f64();
    let m = markov_operator(rho, mu).to_f64();
    let vs: Vec<Vec<f64>> = targets.iter().map(|v| v.iter().map(|x| x.to_f64()).collect()).collect();
    let limits: Vec<Vec<f64>> = vs.iter().map(|v| proj.mul_vec(v)).collect();
    let error_of = |avg: &Matrix<f64>| {
        vs.iter()
            .zip(&limits)
            .map(|(v, l)| norm2(&crate::linalg::vec_sub(&avg.mul_vec(v), l)))
            .fold(0.0, f64::max)
    };
    let d = rho.dim();
    let mut sum = Matrix::<f64>::zeros(d, d);
    let mut power = m.clone();
    let mut found = None;
    for n in 1..=CONVEX_TERM_CAP {
        sum = sum.add(&power);
        if error_of(&sum.scale(&(1.0 / n as f64))) < epsilon {
            found = Some(n);
            break;
        }
        power = power.mul(&m);
    }
    let terms = found.ok_or(Error::NoConvergence { iterations: CONVEX_TERM_CAP, residual: error_of(&sum.scale(&(1.0 / CONVEX_TERM_CAP as f64))) })?;
    let measure = mu.cesaro_average(terms)?.convolve(mu)?;
    let max_error = error_of(&markov_operator(&rho.to_f64(), &measure));
    Ok(ConvexApproximation { terms, measure, max_error })
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvarianceReport {
    pub max_residual: f64,
    pub passed: bool,
}

/// Checks `E_μ ∘ ρ_h = E_μ` on the generators of `on`.
pub fn gmu_invariance_check<S: Field>(
    rho: &Representation<S>,
    mu: &FiniteSupportMeasure,
    on: &Subgroup,
    opts: CesaroOptions,
) -> Result<InvarianceReport> {
    let e = cesaro_projection(rho, mu, opts)?.e;
    let max_residual = on
        .generators()
        .iter()
        .map(|h| e.mul(&rho.image(h)).distance(&e))
        .fold(0.0, f64::max);
    let tol = if S::is_exact() { 0.0 } else { 1e-8 };
    Ok(InvarianceReport { max_residual, passed: max_residual <= tol })
}
