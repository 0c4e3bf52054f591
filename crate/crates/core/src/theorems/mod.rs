//! Complementation and decomposition results for cocycles, run on concrete
//! data: compression along a commuting subgroup, central and nilpotent
//! reductions, and product decompositions.
//!
//! In finite dimension every representation of the supported families is
//! weakly almost periodic, so the wap hypotheses collapse to the isometry
//! certificate and no separate machinery is needed.

mod center;
mod compress;
mod product;

pub use center::{
    center_quotient_h1, center_zn_decomposition, factor_through_center, nilpotent_reduction, CenterDecomposition,
    CenterQuotientReport, CentralFactorization, NilpotentReduction,
};
pub use compress::{
    complemented_b1, emu_compress_cocycle, emu_compress_degree_two, hc_homotopy, hc_homotopy_inhom, restrict_cocycle,
    restriction_matrix, ComplementReport, CompressionResult, DegreeTwoCompression, HomotopyReport,
};
pub use product::{product_h1_embedding, product_h1_iso, EmbeddingReport, ProductDecomposition};

use serde::Serialize;

use crate::cohomology::{bar_complex, coboundary_map, z1_space};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::rep::Representation;
use crate::subspace::Subspace;

/// A named hypothesis and its outcome.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl HypothesisCheck {
    pub fn new(name: impl Into<String>, holds: bool, detail: impl Into<String>) -> Self {
        HypothesisCheck { name: name.into(), holds, detail: detail.into() }
    }
}

/// Fails on the first violated hypothesis unless `force` is set.
pub(crate) fn gate(checks: &[HypothesisCheck], force: bool) -> Result<()> {
    if force {
        return Ok(());
    }
    match checks.iter().find(|c| !c.holds) {
        Some(c) => Err(Error::HypothesisFailed { check: c.name.clone(), detail: c.detail.clone() }),
        None => Ok(()),
    }
}

/// Cocycles of one degree in block coordinates (one `d`-block per tuple or
/// generator), together with the differential from the degree below.
pub(crate) struct CochainModel<S> {
    pub d: usize,
    pub blocks: usize,
    pub lower_blocks: usize,
    pub z: Subspace<S>,
    pub differential: Matrix<S>,
}

impl<S: Field> CochainModel<S> {
    /// Degree 1 uses the relator system; degree 2 needs a finite table.
    pub fn new(rho: &Representation<S>, degree: usize) -> Result<Self> {
        let d = rho.dim();
        match degree {
            1 => Ok(CochainModel {
                d,
                blocks: rho.group().generator_count(),
                lower_blocks: 1,
                z: z1_space(rho)?,
                differential: coboundary_map(rho),
            }),
            2 => {
                let bc = bar_complex(rho, 2)?;
                let order = rho.group().order().expect("bar complex implies a finite group");
                Ok(CochainModel {
                    d,
                    blocks: order * order,
                    lower_blocks: order,
                    z: Subspace::kernel_of(&bc.outgoing),
                    differential: bc.incoming,
                })
            }
            _ => Err(Error::PreconditionFailed(format!("degree {degree} is outside 1..=2"))),
        }
    }

    pub fn ambient(&self) -> usize {
        self.blocks * self.d
    }

    /// `m` applied to every value.
    pub fn pointwise(&self, m: &Matrix<S>) -> Matrix<S> {
        m.block_diagonal(self.blocks)
    }

    /// Cocycles with all values in `w`.
    pub fn valued_in(&self, w: &Subspace<S>) -> Subspace<S> {
        let values = span_or_zero(&w.basis().block_diagonal(self.blocks));
        self.z.intersection(&values)
    }

    /// Coboundaries of cochains with values in `w`.
    pub fn coboundaries_in(&self, w: &Subspace<S>) -> Subspace<S> {
        if w.dim() == 0 || self.differential.cols() == 0 {
            return Subspace::zero(self.ambient());
        }
        Subspace::span(&self.differential.mul(&w.basis().block_diagonal(self.lower_blocks)))
    }
}

/// Span of the columns of `m`, or the zero subspace when `m` has none.
pub(crate) fn span_or_zero<S: Field>(m: &Matrix<S>) -> Subspace<S> {
    if m.cols() == 0 {
        Subspace::zero(m.rows())
    } else {
        Subspace::span(m)
    }
}
