//! One Peter–Weyl block: an irrep `V_λ` with its Hom spaces, on which the
//! symbolic operators of [`super::op`] become finite matrices.

use std::collections::BTreeMap;

use super::bundles::{fibers, Bundle};
use super::hom::{all_homs, HomSpace};
use super::irrep::{CCsr, Irrep, IrrepData};
use super::lie::CMatrix;
use super::op::{CMat, Op};
use super::weights::Weight;
use crate::error::{Error, Result};

pub struct Block {
    pub weight: Weight,
    pub irrep: Irrep,
    /// `ρ_λ(mᵢ)`.
    pub rho_m: Vec<CCsr>,
    pub homs: BTreeMap<Bundle, HomSpace>,
}

impl Block {
    pub fn new(weight: Weight) -> Result<Self> {
        Self::from_data(&IrrepData::build(weight)?)
    }

    pub fn from_data(data: &IrrepData) -> Result<Self> {
        let irrep = Irrep::from_data(data)?;
        let rho_m = fibers().model.m_basis.iter().map(|m| irrep.rho_real(m)).collect();
        let homs = all_homs(&irrep)?;
        Ok(Block { weight: data.weight, irrep, rho_m, homs })
    }

    pub fn hom(&self, b: Bundle) -> &HomSpace {
        &self.homs[&b]
    }

    pub fn dim(&self, b: Bundle) -> usize {
        self.homs[&b].dim()
    }

    /// `Op(A)` for every basis element `A` of `Hom(V_λ, src)`.
    pub fn images(&self, op: &Op, src: Bundle) -> Vec<CMat> {
        assert_eq!(op.cols(), src.fiber_dim(), "operator source does not match {src}");
        self.hom(src).basis.iter().map(|a| op.apply(a, &self.rho_m)).collect()
    }

    /// Coordinates of fibrewise-stacked images in the Hom bases of the
    /// target segments; fails if an image leaves the span.
    pub fn coords(&self, images: &[CMat], segments: &[Bundle]) -> Result<CMatrix> {
        self.coords_inner(images, segments, true)
    }

    fn coords_inner(&self, images: &[CMat], segments: &[Bundle], strict: bool) -> Result<CMatrix> {
        let rows: usize = segments.iter().map(|b| self.dim(*b)).sum();
        let mut m = CMatrix::zeros(rows, images.len());
        for (l, img) in images.iter().enumerate() {
            let mut offset = 0;
            let mut fibre_offset = 0;
            let mut captured = 0.0;
            for &seg in segments {
                let n = seg.fiber_dim();
                let part = CMat {
                    re: img.re.rows(fibre_offset, n).into_owned(),
                    im: img.im.rows(fibre_offset, n).into_owned(),
                };
                for (k, b) in self.hom(seg).basis.iter().enumerate() {
                    let c = b.inner(&part);
                    captured += c.norm_sqr();
                    m[(offset + k, l)] = c;
                }
                offset += self.dim(seg);
                fibre_offset += n;
            }
            if fibre_offset != img.nrows() {
                return Err(Error::Construction("target segments do not cover the operator's range".into()));
            }
            let total = img.norm().powi(2);
            if strict && total - captured > 1e-12 * total.max(1.0) {
                return Err(Error::Construction(format!(
                    "{}: image leaves the target Hom space (lost {:.2e})",
                    self.weight,
                    total - captured
                )));
            }
        }
        Ok(m)
    }

    /// Matrix of `op : src → segments` in the Hom bases.
    pub fn matrix(&self, op: &Op, src: Bundle, segments: &[Bundle]) -> Result<CMatrix> {
        self.coords(&self.images(op, src), segments)
    }

    /// Square matrix of `op` on `b`.
    pub fn square(&self, op: &Op, b: Bundle) -> Result<CMatrix> {
        self.matrix(op, b, &[b])
    }

    /// `P ∘ op` restricted to `b`, with `P` the orthogonal projection onto `b`.
    pub fn compressed(&self, op: &Op, b: Bundle) -> CMatrix {
        self.coords_inner(&self.images(op, b), &[b], false).expect("segments cover the fibre")
    }

    /// `max_l ‖Op(A_l)‖` over the orthonormal Hom basis (Hilbert–Schmidt
    /// norm); zero iff the operator vanishes on the block, and `|c|` for
    /// `op = c·Id`.
    pub fn residual(&self, op: &Op, src: Bundle) -> f64 {
        self.images(op, src).iter().map(CMat::norm).fold(0.0, f64::max)
    }
}
