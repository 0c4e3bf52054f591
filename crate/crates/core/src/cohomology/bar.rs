use crate::cohomology::{expand_word_cocycle, CohomologySummary, InhomCocycle};
use crate::error::{Error, Result};
use crate::group::FiniteTable;
use crate::linalg::{Field, Matrix};
use crate::rep::Representation;
use crate::subspace::Subspace;

pub const MAX_BAR_DEGREE: usize = 3;
/// Entry budget for the dense differential `∂^{n+1}`.
pub const BAR_BUDGET: usize = 2_000_000;

/// An equivariant cochain with `degree + 1` arguments, stored by its values on
/// tuples `(e, g_2, …, g_{degree+1})` in base-`|G|` order.
#[derive(Clone, Debug, PartialEq)]
pub struct HomCochain<S> {
    pub degree: usize,
    pub values: Vec<S>,
}

fn table_of<S: Field>(rho: &Representation<S>) -> Result<&FiniteTable> {
    rho.group()
        .table()
        .ok_or_else(|| Error::UnsupportedFamily(format!("bar complex over {}", rho.group().family_name())))
}

fn element_images<S: Field>(rho: &Representation<S>, t: &FiniteTable) -> Vec<Matrix<S>> {
    (0..t.order()).map(|g| rho.image(t.word_of(g))).collect()
}

fn tuple_index(tuple: &[usize], n: usize) -> usize {
    tuple.iter().fold(0, |acc, &g| acc * n + g)
}

fn tuple_of(mut index: usize, len: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
    out
}

/// Coordinate count of `C^k(G,V)^G` (functions of `k` arguments).
fn cochain_dim(order: usize, k: usize, d: usize) -> usize {
    if k == 0 {
        0
    } else {
        order.pow(k as u32 - 1) * d
    }
}

/// `∂^k : C^k(G,V)^G → C^{k+1}(G,V)^G` in tuple coordinates.
fn differential<S: Field>(t: &FiniteTable, images: &[Matrix<S>], d: usize, k: usize) -> Matrix<S> {
    let n = t.order();
    let rows = cochain_dim(n, k + 1, d);
    let cols = cochain_dim(n, k, d);
    let mut out = Matrix::zeros(rows, cols);
    if cols == 0 {
        return out;
    }
    let id = Matrix::<S>::identity(d);
    for r in 0..n.pow(k as u32) {
        // full tuple (e, h_2, …, h_{k+1})
        let mut full = vec![t.identity()];
        full.extend(tuple_of(r, k, n));
        for i in 0..=k {
            let mut rest: Vec<usize> = full.clone();
            rest.remove(i);
            let first = rest[0];
            let inv = t.inv(first);
            let col_tuple: Vec<usize> = rest[1..].iter().map(|&h| t.mul(inv, h)).collect();
            let c = tuple_index(&col_tuple, n);
            let m = if first == t.identity() { &id } else { &images[first] };
            let block = out.block(r * d, c * d, d, d);
            let updated = if i % 2 == 0 { block.add(m) } else { block.sub(m) };
            out.set_block(r * d, c * d, &updated);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct BarComplex<S> {
    pub degree: usize,
    /// `∂ⁿ : Cⁿ → C^{n+1}`.
    pub incoming: Matrix<S>,
    /// `∂^{n+1} : C^{n+1} → C^{n+2}`.
    pub outgoing: Matrix<S>,
}

/// The two differentials around degree `n` (cocycles live in `C^{n+1}`).
pub fn bar_complex<S: Field>(rho: &Representation<S>, n: usize) -> Result<BarComplex<S>> {
    if n > MAX_BAR_DEGREE {
        return Err(Error::PreconditionFailed(format!("bar complex degree {n} exceeds {MAX_BAR_DEGREE}")));
    }
    let t = table_of(rho)?;
    let d = rho.dim();
    let order = t.order();
    let needed = cochain_dim(order, n + 2, d).saturating_mul(cochain_dim(order, n + 1, d));
    if needed > BAR_BUDGET {
        return Err(Error::BudgetExceeded { needed, budget: BAR_BUDGET });
    }
    let images = element_images(rho, t);
    let incoming = differential(t, &images, d, n);
    let outgoing = differential(t, &images, d, n + 1);
    if incoming.cols() > 0 && !outgoing.mul(&incoming).is_zero(S::tolerance() * 10.0) {
        return Err(Error::HypothesisFailed { check: "∂∂ = 0".into(), detail: format!("degree {n}") });
    }
    Ok(BarComplex { degree: n, incoming, outgoing })
}

/// `Hⁿ = ker ∂^{n+1} / im ∂ⁿ`.
pub fn hn<S: Field>(rho: &Representation<S>, n: usize) -> Result<CohomologySummary<S>> {
    let bc = bar_complex(rho, n)?;
    let z = Subspace::kernel_of(&bc.outgoing);
    let b = if bc.incoming.cols() == 0 { Subspace::zero(bc.incoming.rows()) } else { Subspace::span(&bc.incoming) };
    CohomologySummary::from_spaces(n, z, b)
}

impl<S: Field> HomCochain<S> {
    /// Value on an arbitrary tuple through equivariance.
    pub fn evaluate(&self, rho: &Representation<S>, tuple: &[usize]) -> Result<Vec<S>> {
        let t = table_of(rho)?;
        let d = rho.dim();
        if tuple.len() != self.degree + 1 {
            return Err(Error::DimensionMismatch(format!("expected {} arguments", self.degree + 1)));
        }
        let inv = t.inv(tuple[0]);
        let rest: Vec<usize> = tuple[1..].iter().map(|&h| t.mul(inv, h)).collect();
        let i = tuple_index(&rest, t.order());
        let v = self.values[i * d..(i + 1) * d].to_vec();
        Ok(rho.image(t.word_of(tuple[0])).mul_vec(&v))
    }
}

/// `β(s) = f(e, s)` on the generators.
pub fn hom_to_inhom<S: Field>(rho: &Representation<S>, f: &HomCochain<S>) -> Result<InhomCocycle<S>> {
    if f.degree != 1 {
        return Err(Error::PreconditionFailed("only degree 1 has an inhomogeneous form here".into()));
    }
    let t = table_of(rho)?;
    let d = rho.dim();
    let values = t.generators().iter().map(|&s| f.values[s * d..(s + 1) * d].to_vec()).collect();
    InhomCocycle::unchecked(rho, values)
}

/// `f(e, g) = β(g)`, so `f(g, h) = ρ_g β(g⁻¹h)`.
pub fn inhom_to_hom<S: Field>(rho: &Representation<S>, b: &InhomCocycle<S>) -> Result<HomCochain<S>> {
    let t = table_of(rho)?;
    let values = (0..t.order()).flat_map(|g| expand_word_cocycle(rho, b, t.word_of(g))).collect();
    Ok(HomCochain { degree: 1, values })
}
