use crate::error::{Error, Result};
use crate::group::{FiniteSupportMeasure, FiniteTable, Group};
use crate::linalg::{Field, Matrix};
use crate::subspace::Subspace;

/// μ-harmonic functions on a finite group, as vectors indexed by element.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicFunctionSpace<S> {
    pub group: Group,
    pub space: Subspace<S>,
}

fn table_of(g: &Group) -> Result<&FiniteTable> {
    g.table().ok_or_else(|| Error::UnsupportedFamily(format!("harmonic functions on {}", g.family_name())))
}

/// `ker(I − Φ_μ)` with `Φ_μ f(g) = Σ_h μ(h) f(gh)`.
pub fn harmonic_function_space<S: Field>(g: &Group, mu: &FiniteSupportMeasure) -> Result<HarmonicFunctionSpace<S>> {
    let t = table_of(g)?;
    let n = t.order();
    let mut phi = Matrix::<S>::zeros(n, n);
    for (w, weight) in mu.weights::<S>() {
        let h = t.evaluate(&w)?;
        for x in 0..n {
            let c = t.mul(x, h);
            phi[(x, c)] = phi[(x, c)].clone() + weight.clone();
        }
    }
    let space = Subspace::kernel_of(&Matrix::identity(n).sub(&phi));
    Ok(HarmonicFunctionSpace { group: g.clone(), space })
}

/// Every harmonic `f` has `f(gh) = f(g)` for all `g` and all `h` in the support.
pub fn liouville_check<S: Field>(g: &Group, mu: &FiniteSupportMeasure) -> Result<bool> {
    let t = table_of(g)?;
    let harmonic = harmonic_function_space::<S>(g, mu)?;
    let support = mu.support().iter().map(|w| t.evaluate(w)).collect::<Result<Vec<_>>>()?;
    let tol = S::tolerance().max(0.0) * 10.0;
    for f in harmonic.space.basis_vectors() {
        for x in 0..t.order() {
            for &h in &support {
                if !(f[t.mul(x, h)].clone() - f[x].clone()).is_negligible(tol) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic_table, symmetric3_table, Word};
    use crate::scalar::{rat, Rational};

    #[test]
    fn harmonic_examples() {
        let c6 = Group::finite(cyclic_table(6));
        let e = FiniteSupportMeasure::dirac(&c6, Word::identity()).unwrap();
        assert_eq!(harmonic_function_space::<Rational>(&c6, &e).unwrap().space.dim(), 6);
        let g2 = FiniteSupportMeasure::dirac(&c6, c6.parse_word("g^2").unwrap()).unwrap();
        let h = harmonic_function_space::<Rational>(&c6, &g2).unwrap();
        assert_eq!(h.space.dim(), 2);
        let one = rat(1, 1);
        let zero = rat(0, 1);
        assert!(h.space.contains(&[one.clone(), zero.clone(), one.clone(), zero.clone(), one, zero]));
        let all = FiniteSupportMeasure::uniform(&c6, c6.elements().unwrap()).unwrap();
        assert_eq!(harmonic_function_space::<Rational>(&c6, &all).unwrap().space.dim(), 1);
        assert!(liouville_check::<Rational>(&c6, &g2).unwrap());

        let s3 = Group::finite(symmetric3_table());
        let mu = FiniteSupportMeasure::uniform(&s3, s3.generators()).unwrap();
        assert!(liouville_check::<Rational>(&s3, &mu).unwrap());
        assert_eq!(harmonic_function_space::<f64>(&s3, &mu).unwrap().space.dim(), 1);
    }
}
