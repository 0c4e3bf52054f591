use crate::group::FiniteSupportMeasure;
use crate::linalg::{generalized_symmetric_eigenvalues, Field, Matrix};
use crate::rep::{NormKind, Representation};
use crate::subspace::Subspace;

/// `ρ_μ = Σ_w μ(w) ρ(w)`.
pub fn markov_operator<S: Field>(rho: &Representation<S>, mu: &FiniteSupportMeasure) -> Matrix<S> {
    let mut acc = Matrix::zeros(rho.dim(), rho.dim());
    for (w, weight) in mu.weights::<S>() {
        acc = acc.add(&rho.image(&w).scale(&weight));
    }
    acc
}

/// `Δ_μ = I − ρ_μ`.
pub fn laplacian<S: Field>(rho: &Representation<S>, mu: &FiniteSupportMeasure) -> Matrix<S> {
    Matrix::identity(rho.dim()).sub(&markov_operator(rho, mu))
}

impl<S: Field> Representation<S> {
    /// `V^μ = ker Δ_μ`.
    pub fn mu_fixed_space(&self, mu: &FiniteSupportMeasure) -> Subspace<S> {
        Subspace::kernel_of(&laplacian(self, mu))
    }
}

/// Operator norm of `t` for the given module norm.
pub fn operator_norm<S: Field>(t: &Matrix<S>, norm: &NormKind<S>) -> f64 {
    if t.rows() == 0 || t.cols() == 0 {
        return 0.0;
    }
    let abs_sum = |xs: Vec<S>| xs.iter().map(|x| x.abs_f64()).sum::<f64>();
    match norm {
        NormKind::One => t.columns().into_iter().map(abs_sum).fold(0.0, f64::max),
        NormKind::Infinity => t.to_rows().into_iter().map(abs_sum).fold(0.0, f64::max),
        NormKind::Two => t.to_f64().spectral_norm(),
        NormKind::Form(p) => {
            let tf = t.to_f64();
            let pf = p.to_f64();
            let a = tf.transpose().mul(&pf).mul(&tf);
            generalized_symmetric_eigenvalues(&a, &pf)
                .and_then(|e| e.last().copied())
                .map(|l| l.max(0.0).sqrt())
                .unwrap_or(f64::NAN)
        }
    }
}
