//! Kernels, eigenspaces, and the two main theorems, block by block.
//!
//! Every dimension is a count of singular values below
//! `tol · max(σ_max, 1)`; a singular value in the guard band
//! `(τ, 10τ]` aborts with [`Error::IndeterminateRank`]. Counts are complex
//! dimensions of kernels in `Hom_{G₂}(V_λ, W)`; the space of sections they
//! describe has dimension `count · dim V_λ`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::block::Block;
use super::bundles::{fibers, Bundle, RMat};
use super::identities::{identities, rarita_schwinger};
use super::lie::{CMatrix, C64};
use super::op::Op;
use super::operators::*;
use super::weights::{casimir_pinned, casimir_raw};
use crate::error::{Error, Result};
use crate::exterior::DIM;
use crate::linalg::{herm_eigen, svd};
use crate::report::CheckReport;
use crate::scalar::Rational;

/// Relative singular-value threshold for kernels.
pub const KERNEL_TOL: f64 = 1e-6;

const LC: Conn = Conn::LeviCivita;
const CAN: Conn = Conn::Canonical;
const ST: Bundle = Bundle::SpinorValued1Forms;
const T27: Bundle = Bundle::ThreeForms27;

/// Orthonormal kernel basis (columns).
pub fn kernel(m: &CMatrix, tol: f64) -> Result<CMatrix> {
    let n = m.ncols();
    if n == 0 || m.nrows() == 0 {
        return Ok(CMatrix::identity(n, n));
    }
    let (s, v) = svd(m);
    let tau = tol * s[0].max(1.0);
    if let Some(&x) = s.iter().find(|&&x| x > tau && x <= 10.0 * tau) {
        return Err(Error::IndeterminateRank { value: x, lo: tau, hi: 10.0 * tau });
    }
    let keep: Vec<usize> = (0..n).filter(|&k| s[k] <= tau).collect();
    Ok(CMatrix::from_fn(n, keep.len(), |r, c| v[(r, keep[c])]))
}

/// `dim ker(m − shift·Id)` for a square `m`.
pub fn kernel_dim(m: &CMatrix, shift: f64, tol: f64) -> Result<usize> {
    assert_eq!(m.nrows(), m.ncols(), "kernel_dim needs a square operator");
    let shifted = m - CMatrix::identity(m.nrows(), m.ncols()) * C64::new(shift, 0.0);
    Ok(kernel(&shifted, tol)?.ncols())
}

fn vstack(parts: &[&CMatrix]) -> CMatrix {
    let cols = parts[0].ncols();
    let rows = parts.iter().map(|p| p.nrows()).sum();
    let mut out = CMatrix::zeros(rows, cols);
    let mut offset = 0;
    for p in parts {
        out.view_mut((offset, 0), (p.nrows(), cols)).copy_from(p);
        offset += p.nrows();
    }
    out
}

/// Largest column norm of `m · k`: how far a kernel basis is from
/// satisfying `m = 0`.
fn inclusion_residual(m: &CMatrix, k: &CMatrix) -> f64 {
    if k.ncols() == 0 {
        return 0.0;
    }
    let p = m * k;
    (0..p.ncols()).map(|c| p.column(c).norm()).fold(0.0, f64::max)
}

/// An eigenvalue and its multiplicity inside a Hom block.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Eigen {
    pub value: f64,
    pub multiplicity: usize,
}

/// Clusters a Hermitian spectrum.
pub fn eigenvalues(m: &CMatrix) -> Vec<Eigen> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let h = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let (mut w, _) = herm_eigen(&h);
    w.reverse();
    let mut out: Vec<Eigen> = Vec::new();
    for x in w {
        match out.last_mut() {
            Some(e) if (x - e.value).abs() <= 1e-6 * e.value.abs().max(1.0) => e.multiplicity += 1,
            _ => out.push(Eigen { value: x, multiplicity: 1 }),
        }
    }
    for e in &mut out {
        // snap to a short decimal so reports are stable across platforms
        e.value = (e.value * 1e9).round() / 1e9;
    }
    out
}

fn multiplicity_of(spec: &[Eigen], value: f64) -> usize {
    spec.iter().filter(|e| (e.value - value).abs() < 1e-6).map(|e| e.multiplicity).sum()
}

/// `f ↦ ∇f + f⌟φ` as a map `Λ¹ → T⊗T`, `(∇f)(eₐ, e_b) = (∇ₐf)(e_b)`.
pub fn d1_operator() -> Op {
    let f = fibers();
    let syms: Vec<RMat> =
        (0..DIM).map(|a| RMat::from_fn(DIM * DIM, DIM, |r, b| if r == a * DIM + b { 1.0 } else { 0.0 })).collect();
    &first_order(Bundle::OneForms, &syms, LC) + &Op::pointwise(&f.l2_to_tt * &f.xphi)
}

/// `v ↦ Σ vⱼ κ₀ ⊗ eⱼ`, `Λ¹ → S⊗T`.
fn kappa_column() -> RMat {
    RMat::from_fn(56, DIM, |r, j| if r == 8 * j { 1.0 } else { 0.0 })
}

/// `Λ¹`-component `α₀⁽ⁱ⁾eᵢ` of `α⁽ⁱ⁾⊗eᵢ` in the `(α₀ + α₁)·κ₀` model.
fn one_form_component() -> RMat {
    kappa_column().transpose()
}

/// The `H`-part of the linearized Killing-spinor operator:
/// `cH(X)·κ₀ − ½ Σ eᵢ·(∇ᵢH)(X)·κ₀ + ½ g(δH, X) κ₀` with `c = ½`.
pub fn linearized_killing_metric_part() -> Op {
    let f = fibers();
    let syms: Vec<RMat> = (0..DIM).map(|i| f.gamma_st(i) * &f.psi_map * -0.5).collect();
    let grad = first_order(Bundle::Tensors2, &syms, LC);
    let div = delta_tt(LC).then(&(kappa_column() * 0.5));
    &(&Op::pointwise(&f.psi_map * 0.5) + &grad) + &div
}

/// Every dimension and residual the theorems need, for one block.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockSpectra {
    pub weight: [u32; 3],
    pub dim_v: usize,
    pub casimir_raw: String,
    pub casimir_pinned: String,
    pub hom: BTreeMap<Bundle, usize>,
    /// `ker(∇ − ½ ·)` on spinors.
    pub killing: usize,
    /// `ker(D + 7/2)` on spinors.
    pub dirac_killing: usize,
    /// `{f : ∇f = −f⌟φ}`.
    pub d1: usize,
    /// `{γ ∈ Ω³₂₇ : ∗dγ = −4γ, (δγ)₇ = 0}`.
    pub d3: usize,
    /// `{γ ∈ Ω³₂₇ : ∗dγ = −½γ, (δγ)₇ = 0}`.
    pub r_gamma: usize,
    /// `{γ ∈ Ω³₂₇ : ∗dγ = −3/2 γ, (δγ)₇ = 0}`.
    pub star_d_minus_three_halves: usize,
    /// `{γ ∈ Ω³₂₇ : dδγ = −¾γ}`.
    pub d_delta_piece: usize,
    /// `{4dδγ + 6∗dγ + 3γ = 0, (δγ)₇ = 0}`.
    pub rs_space: usize,
    /// `{4Δγ + 8∗dγ + 3γ = 0, (δγ)₇ = 0}`.
    pub rs_space_large: usize,
    /// `ker Q` on `S₃/₂`.
    pub ker_q: usize,
    /// `ker D_TM ∩ S₃/₂`.
    pub rs_fields: usize,
    /// Largest `Λ¹`-component over `ker D_TM ∩ S₃/₂`.
    pub rs_one_form_residual: f64,
    /// `{H ∈ Sym₀ : 3A_{eᵢ⋆}∇̄ᵢH = −H, δH = 0}`.
    pub r_h: usize,
    /// `{H ∈ Sym₀ : D_TM Ψ^{(H,κ₀)} = 7/2 Ψ^{(H,κ₀)}, δH = 0}`.
    pub deformation_h: usize,
    /// Kernel of the full linearized Killing-spinor operator on
    /// `(H, κ̇)` with `δH = 0`.
    pub linearized_kernel: usize,
    /// `R_γ ⊆ ker(Δ − ¼)`, `R_γ ⊆ ker(Δ̄ + 1/12)`, `R_H ⊆ ker(Δ − 13/4)`.
    pub r_gamma_laplacian_residual: f64,
    pub r_gamma_g2_laplacian_residual: f64,
    pub r_h_laplacian_residual: f64,
    /// `i Δ i⁻¹` identity on `Λ³₂₇`.
    pub transfer_lemma_residual: f64,
    /// `dim ker(Δ̄ + 1/12)` on `Λ³₂₇`.
    pub g2_laplacian_minus_twelfth: usize,
    /// `∗d` on `{γ ∈ Ω³₂₇ : (δγ)₇ = 0}`, which it preserves.
    pub star_d_spectrum: Vec<Eigen>,
    pub star_d_invariance_residual: f64,
}

/// All spectral data of one block.
pub fn block_spectra(block: &Block, tol: f64) -> Result<BlockSpectra> {
    let f = fibers();
    let mat = |op: &Op, src: Bundle, segs: &[Bundle]| block.matrix(op, src, segs);

    // constrained Ω³₂₇
    let delta7 = mat(&delta(3, LC).then(&f.p2_7), T27, &[Bundle::TwoForms7])?;
    let constrained = |op: &Op| -> Result<CMatrix> {
        let m = mat(op, T27, &[Bundle::ThreeForms])?;
        kernel(&vstack(&[&m, &delta7]), tol)
    };
    let shifted_star_d = |s: f64| &star_d() + &scalar(Bundle::ThreeForms, s);
    let d3 = constrained(&shifted_star_d(4.0))?.ncols();
    let r_gamma_basis = constrained(&shifted_star_d(0.5))?;
    let r_gamma = r_gamma_basis.ncols();
    let star_d_minus_three_halves = constrained(&shifted_star_d(1.5))?.ncols();
    let d_delta = d(2, LC).compose(&delta(3, LC));
    let d_delta_piece = kernel(&mat(&(&d_delta + &scalar(Bundle::ThreeForms, 0.75)), T27, &[Bundle::ThreeForms])?, tol)?.ncols();
    let rs_space =
        constrained(&(&(&(&d_delta * 4.0) + &(star_d() * 6.0)) + &scalar(Bundle::ThreeForms, 3.0)))?.ncols();
    let lap3 = laplacian(Bundle::ThreeForms, LC);
    let rs_space_large =
        constrained(&(&(&(&lap3 * 4.0) + &(star_d() * 8.0)) + &scalar(Bundle::ThreeForms, 3.0)))?.ncols();

    let lap_quarter = mat(&(&lap3 - &scalar(Bundle::ThreeForms, 0.25)), T27, &[Bundle::ThreeForms])?;
    let lap3_bar = laplacian(Bundle::ThreeForms, CAN);
    let bar_twelfth = mat(&(&lap3_bar + &scalar(Bundle::ThreeForms, 1.0 / 12.0)), T27, &[Bundle::ThreeForms])?;
    let r_gamma_laplacian_residual = inclusion_residual(&lap_quarter, &r_gamma_basis);
    let r_gamma_g2_laplacian_residual = inclusion_residual(&bar_twelfth, &r_gamma_basis);
    let g2_laplacian_minus_twelfth = kernel(&bar_twelfth, tol)?.ncols();

    let c = kernel(&delta7, tol)?;
    let sd27 = block.compressed(&star_d().then(&f.p3_27), T27);
    let star_d_spectrum = eigenvalues(&(c.adjoint() * &sd27 * &c));
    let off27 = RMat::identity(35, 35) - &f.p3_27;
    let star_d_invariance_residual =
        inclusion_residual(&mat(&star_d().then(&off27), T27, &[Bundle::ThreeForms])?, &c);

    // spinors
    let killing_m = mat(&killing(), Bundle::Spinors, &[ST])?;
    let killing_dim = kernel(&killing_m, tol)?.ncols();
    let dirac_killing = kernel_dim(&block.square(&dirac(LC), Bundle::Spinors)?, -3.5, tol)?;
    let d1 = kernel(&mat(&d1_operator(), Bundle::OneForms, &[Bundle::Tensors2])?, tol)?.ncols();

    // spinor-valued 1-forms
    let ker_q = kernel(&block.square(&rarita_schwinger(), Bundle::S32)?, tol)?.ncols();
    let rs_basis = kernel(&mat(&dirac_tm(LC), Bundle::S32, &[ST])?, tol)?;
    let comp = mat(&Op::pointwise(one_form_component()), Bundle::S32, &[Bundle::OneForms])?;
    let rs_one_form_residual = inclusion_residual(&comp, &rs_basis);

    // symmetric tensors
    let div = mat(&delta_tt(LC), Bundle::Sym0, &[Bundle::OneForms])?;
    let tstar: Vec<RMat> = (0..DIM).map(|i| f.tt_star(i).clone()).collect();
    let cross = &(first_order(Bundle::Tensors2, &tstar, CAN) * 3.0) + &scalar(Bundle::Tensors2, 1.0);
    let r_h_basis = kernel(&vstack(&[&mat(&cross, Bundle::Sym0, &[Bundle::Tensors2])?, &div]), tol)?;
    let lap_tt = mat(&(&laplacian(Bundle::Tensors2, LC) - &scalar(Bundle::Tensors2, 3.25)), Bundle::Sym0, &[Bundle::Tensors2])?;
    let r_h_laplacian_residual = inclusion_residual(&lap_tt, &r_h_basis);

    let deform = (&dirac_tm(LC) - &scalar(ST, 3.5)).after(&f.psi_map);
    let deformation_h = kernel(&vstack(&[&mat(&deform, Bundle::Sym0, &[ST])?, &div]), tol)?.ncols();

    let mh = mat(&linearized_killing_metric_part(), Bundle::Sym0, &[ST])?;
    let (nh, nk) = (mh.ncols(), killing_m.ncols());
    let mut full = CMatrix::zeros(mh.nrows() + div.nrows(), nh + nk);
    full.view_mut((0, 0), (mh.nrows(), nh)).copy_from(&mh);
    full.view_mut((0, nh), (killing_m.nrows(), nk)).copy_from(&killing_m);
    full.view_mut((mh.nrows(), 0), (div.nrows(), nh)).copy_from(&div);
    let linearized_kernel = kernel(&full, tol)?.ncols();

    let lemma = identities().iter().find(|i| i.name == "sym0-laplacian-transfer").expect("lemma is registered");
    let transfer_lemma_residual = if block.dim(T27) == 0 { 0.0 } else { block.residual(&lemma.op, lemma.src) };

    Ok(BlockSpectra {
        weight: block.weight.labels(),
        dim_v: block.irrep.dim,
        casimir_raw: casimir_raw(block.weight).to_string(),
        casimir_pinned: casimir_pinned(block.weight).to_string(),
        hom: block.homs.iter().map(|(b, h)| (*b, h.dim())).collect(),
        killing: killing_dim,
        dirac_killing,
        d1,
        d3,
        r_gamma,
        star_d_minus_three_halves,
        d_delta_piece,
        rs_space,
        rs_space_large,
        ker_q,
        rs_fields: rs_basis.ncols(),
        rs_one_form_residual,
        r_h: r_h_basis.ncols(),
        deformation_h,
        linearized_kernel,
        r_gamma_laplacian_residual,
        r_gamma_g2_laplacian_residual,
        r_h_laplacian_residual,
        transfer_lemma_residual,
        g2_laplacian_minus_twelfth,
        star_d_spectrum,
        star_d_invariance_residual,
    })
}

/// Section-space dimensions summed over blocks.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Totals {
    pub killing: usize,
    pub dirac_killing: usize,
    pub d1: usize,
    pub d3: usize,
    pub r_gamma: usize,
    pub ker_q: usize,
    pub rs_fields: usize,
    pub r_h: usize,
    pub deformations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub max_level: u32,
    pub tolerance: f64,
    pub blocks: Vec<BlockSpectra>,
    pub totals: Totals,
}

impl SpectralReport {
    pub fn block(&self, weight: [u32; 3]) -> Option<&BlockSpectra> {
        self.blocks.iter().find(|b| b.weight == weight)
    }
}

/// Spectral data for every block (in parallel), sorted by weight.
pub fn spectral_report(blocks: &[Block], max_level: u32, tol: f64) -> Result<SpectralReport> {
    let mut out: Vec<BlockSpectra> = blocks
        .par_iter()
        .filter(|b| b.weight.level() <= max_level)
        .map(|b| block_spectra(b, tol))
        .collect::<Result<_>>()?;
    out.sort_by_key(|b| b.weight);
    let mut t = Totals::default();
    for b in &out {
        let n = b.dim_v;
        t.killing += n * b.killing;
        t.dirac_killing += n * b.dirac_killing;
        t.d1 += n * b.d1;
        t.d3 += n * b.d3;
        t.r_gamma += n * b.r_gamma;
        t.ker_q += n * b.ker_q;
        t.rs_fields += n * b.rs_fields;
        t.r_h += n * b.r_h;
        t.deformations += n * (b.deformation_h + b.killing);
    }
    Ok(SpectralReport { max_level, tolerance: tol, blocks: out, totals: t })
}

/// Spectrum of one invariant operator over all blocks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorSpectrum {
    pub bundle: Bundle,
    pub operator: String,
    /// `(eigenvalue, total multiplicity, weights)`, multiplicities counted
    /// in sections (`× dim V_λ`).
    pub eigenvalues: Vec<SpectrumLine>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumLine {
    pub value: f64,
    pub multiplicity: usize,
    pub weights: Vec<[u32; 3]>,
}

/// The natural operator on a bundle: `Δ` on ambient tensor bundles, `Δ̄`
/// on `G₂`-sub-bundles (it preserves them), `D`, `D_TM`, `Q` on the spinor
/// bundles.
pub fn natural_operator(b: Bundle) -> (&'static str, Op) {
    match b {
        Bundle::Spinors => ("dirac", dirac(LC)),
        Bundle::SpinorValued1Forms => ("twisted-dirac", dirac_tm(LC)),
        Bundle::S32 => ("rarita-schwinger", rarita_schwinger()),
        b if b.is_ambient() => ("laplacian", laplacian(b, LC)),
        b => ("g2-laplacian", laplacian(b, CAN)),
    }
}

pub fn bundle_spectrum(blocks: &[Block], bundle: Bundle, max_level: u32) -> Result<OperatorSpectrum> {
    let (name, op) = natural_operator(bundle);
    let per_block: Vec<(usize, [u32; 3], Vec<Eigen>)> = blocks
        .par_iter()
        .filter(|b| b.weight.level() <= max_level && b.dim(bundle) > 0)
        .map(|b| Ok((b.irrep.dim, b.weight.labels(), eigenvalues(&b.square(&op, bundle)?))))
        .collect::<Result<_>>()?;
    let mut lines: Vec<SpectrumLine> = Vec::new();
    for (dim_v, w, spec) in per_block {
        for e in spec {
            match lines.iter_mut().find(|l| (l.value - e.value).abs() < 1e-6) {
                Some(l) => {
                    l.multiplicity += dim_v * e.multiplicity;
                    l.weights.push(w);
                }
                None => lines.push(SpectrumLine { value: e.value, multiplicity: dim_v * e.multiplicity, weights: vec![w] }),
            }
        }
    }
    lines.sort_by(|a, b| a.value.total_cmp(&b.value));
    for l in &mut lines {
        l.weights.sort();
    }
    Ok(OperatorSpectrum { bundle, operator: name.into(), eigenvalues: lines })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    A,
    B,
}

fn counts(ok: bool, report: &mut CheckReport, name: &str, anchor: &str, w: [u32; 3], details: String) {
    report.verdict(name, anchor, ok, details).at(w);
}

/// Per-block dimension equalities of the chosen theorem, plus totals.
pub fn theorem_check(which: Theorem, spectra: &SpectralReport) -> CheckReport {
    let mut r = CheckReport::new();
    let t = &spectra.totals;
    match which {
        Theorem::A => {
            for b in &spectra.blocks {
                let w = b.weight;
                counts(
                    b.deformation_h == b.d3,
                    &mut r,
                    "theorem-a-deformations",
                    "infinitesimal Killing spinor deformations = D3 + K+",
                    w,
                    format!("deformations {} + {} vs D3 {} + K+ {}", b.deformation_h, b.killing, b.d3, b.killing),
                );
                counts(
                    b.linearized_kernel == b.killing + b.deformation_h,
                    &mut r,
                    "linearized-killing-equation",
                    "dL(H, k) = 0 with tr H = delta H = 0 iff k Killing and D_TM Psi = 7/2 Psi",
                    w,
                    format!("kernel {} vs {} + {}", b.linearized_kernel, b.killing, b.deformation_h),
                );
                counts(
                    b.killing == b.dirac_killing,
                    &mut r,
                    "killing-spinors-dirac",
                    "Killing spinors with c = 1/2 span the -7/2 eigenspace of D",
                    w,
                    format!("Killing {} vs ker(D + 7/2) {}", b.killing, b.dirac_killing),
                );
            }
            r.verdict(
                "d1-killing-complement",
                "D1 is isomorphic to the orthogonal complement of kappa_0 in K+",
                t.killing >= 1 && t.d1 == t.killing - 1,
                format!("dim D1 {} vs dim K+ - 1 = {}", t.d1, t.killing as i64 - 1),
            );
            r.verdict(
                "killing-spinor-total",
                "Killing spinors on the round sphere",
                t.killing == 8 && t.dirac_killing == 8,
                format!("Killing {}, ker(D + 7/2) {}", t.killing, t.dirac_killing),
            );
        }
        Theorem::B => {
            for b in &spectra.blocks {
                let w = b.weight;
                counts(
                    b.ker_q == b.r_gamma,
                    &mut r,
                    "theorem-b-rarita-schwinger",
                    "ker Q on S_3/2 = R_gamma",
                    w,
                    format!("ker Q {} vs R_gamma {}", b.ker_q, b.r_gamma),
                );
                counts(
                    b.rs_fields == b.r_gamma,
                    &mut r,
                    "rarita-schwinger-fields",
                    "ker D_TM on S_3/2 = R_gamma",
                    w,
                    format!("ker D_TM|S32 {} vs R_gamma {}", b.rs_fields, b.r_gamma),
                );
                r.residual(
                    "rarita-schwinger-one-form-part",
                    "Lambda^1 component of a Rarita-Schwinger field vanishes",
                    b.rs_one_form_residual,
                    spectra.tolerance,
                    format!("{} fields", b.rs_fields),
                )
                .at(w);
                counts(
                    b.rs_space_large == b.star_d_minus_three_halves + b.r_gamma + b.d_delta_piece,
                    &mut r,
                    "rs-space-eigen-decomposition",
                    "4 Delta + 8 *d + 3 kernel = (*d = -3/2) + (*d = -1/2) + (d delta = -3/4)",
                    w,
                    format!(
                        "{} vs {} + {} + {}",
                        b.rs_space_large, b.star_d_minus_three_halves, b.r_gamma, b.d_delta_piece
                    ),
                );
                counts(
                    b.rs_space == b.r_gamma + b.d_delta_piece,
                    &mut r,
                    "rs-space-exact",
                    "4 d delta + 6 *d + 3 kernel = (*d = -1/2) + (d delta = -3/4)",
                    w,
                    format!("{} vs {} + {}", b.rs_space, b.r_gamma, b.d_delta_piece),
                );
                counts(
                    b.d_delta_piece == 0,
                    &mut r,
                    "d-delta-piece-empty",
                    "d delta gamma = -3/4 gamma has no solutions since Delta >= 0",
                    w,
                    format!("dim {}", b.d_delta_piece),
                );
                counts(
                    multiplicity_of(&b.star_d_spectrum, -0.5) == b.r_gamma
                        && multiplicity_of(&b.star_d_spectrum, -4.0) == b.d3
                        && multiplicity_of(&b.star_d_spectrum, -1.5) == b.star_d_minus_three_halves,
                    &mut r,
                    "star-d-eigen-consistency",
                    "*d eigenspaces on coclosed-type Omega^3_27 match kernel counts",
                    w,
                    format!("{} eigenvalues", b.star_d_spectrum.len()),
                );
                r.residual("star-d-preserves-constraint", "(delta gamma)_7 = 0 implies *d gamma in Lambda^3_27", b.star_d_invariance_residual, spectra.tolerance, "")
                    .at(w);
                r.residual(
                    "r-gamma-laplacian",
                    "R_gamma lies in the 1/4-eigenspace of Delta",
                    b.r_gamma_laplacian_residual,
                    spectra.tolerance,
                    format!("dim R_gamma {}", b.r_gamma),
                )
                .at(w);
                r.residual(
                    "r-gamma-g2-laplacian",
                    "R_gamma lies in the -1/12-eigenspace of Delta-bar",
                    b.r_gamma_g2_laplacian_residual,
                    spectra.tolerance,
                    format!("dim R_gamma {}", b.r_gamma),
                )
                .at(w);
                counts(
                    b.g2_laplacian_minus_twelfth == 0,
                    &mut r,
                    "g2-laplacian-minus-twelfth-empty",
                    "no -1/12-eigenforms of Delta-bar on Omega^3_27 of a normal homogeneous space",
                    w,
                    format!("dim {}, pinned Casimir {}", b.g2_laplacian_minus_twelfth, b.casimir_pinned),
                );
            }
            r.verdict(
                "rarita-schwinger-total",
                "no Rarita-Schwinger fields on the round sphere",
                t.ker_q == 0 && t.rs_fields == 0 && t.r_gamma == 0,
                format!("ker Q {}, ker D_TM|S32 {}, R_gamma {}", t.ker_q, t.rs_fields, t.r_gamma),
            );
        }
    }
    r.sort();
    r
}

/// `13/4 − 2E` with `E = 6`.
pub fn instability_constant() -> Rational {
    Rational::new(13, 4) - Rational::from_integer(2 * 6)
}

/// Blockwise `R_H ⊆ ker(Δ − 13/4)`, the transfer lemma, and the
/// instability witness.
pub fn instability_certificate(spectra: &SpectralReport) -> CheckReport {
    let mut r = CheckReport::new();
    let tol = spectra.tolerance;
    for b in &spectra.blocks {
        let w = b.weight;
        r.residual("r-h-laplacian", "Delta H = 13/4 H on R_H", b.r_h_laplacian_residual, tol, format!("dim R_H {}", b.r_h))
            .at(w);
        r.residual(
            "laplacian-transfer-lemma",
            "i Delta i^{-1} gamma = Delta gamma - 2*(d gamma)_7 + 2*(d gamma)_27 + 4 gamma",
            b.transfer_lemma_residual,
            tol,
            format!("three-forms27 block dim {}", b.hom.get(&T27).copied().unwrap_or(0)),
        )
        .at(w);
        counts(
            b.r_h == b.r_gamma,
            &mut r,
            "r-h-isomorphic-r-gamma",
            "i^{-1} maps R_gamma onto R_H",
            w,
            format!("R_H {} vs R_gamma {}", b.r_h, b.r_gamma),
        );
    }
    let c = instability_constant();
    r.verdict(
        "instability-constant",
        "<(Delta - 2E)H, H> = (13/4 - 12)|H|^2 with E = 6",
        c == Rational::new(-35, 4) && c < Rational::from_integer(0),
        format!("13/4 - 2*6 = {c}"),
    );
    let witnesses: Vec<String> =
        spectra.blocks.iter().filter(|b| b.r_h > 0).map(|b| format!("({},{},{})", b.weight[0], b.weight[1], b.weight[2])).collect();
    let details = if witnesses.is_empty() {
        "no witness (R_H = 0)".to_string()
    } else {
        format!("witness: R_H nonzero at {}; linearly unstable", witnesses.join(" "))
    };
    r.verdict("instability-witness", "nonzero R_H witnesses linear instability", true, details);
    r.sort();
    r
}

/// Operator identities on every block, in parallel.
pub fn operator_identity_suite(blocks: &[Block], max_level: u32, tol: f64) -> CheckReport {
    let parts: Vec<CheckReport> = blocks
        .par_iter()
        .filter(|b| b.weight.level() <= max_level)
        .map(|b| super::identities::identity_suite_block(b, tol))
        .collect();
    let mut r = CheckReport::new();
    for p in parts {
        r.extend(p);
    }
    r.sort();
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::peterweyl::Weight;

    #[test]
    fn kernel_guard_band() {
        let m = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            C64::new(1.0, 0.0),
            C64::new(1e-9, 0.0),
            C64::new(5e-6, 0.0),
        ]));
        assert!(matches!(kernel(&m, 1e-6), Err(Error::IndeterminateRank { .. })));
        assert_eq!(kernel(&m, 1e-7).unwrap().ncols(), 1);
        let id = CMatrix::identity(4, 4);
        assert_eq!(kernel_dim(&id, 1.0, KERNEL_TOL).unwrap(), 4);
        assert_eq!(kernel_dim(&id, 0.0, KERNEL_TOL).unwrap(), 0);
    }

    #[test]
    fn function_laplacian_kernel_on_spin_block() {
        let b = Block::new(Weight::new(0, 0, 1)).unwrap();
        let m = b.square(&laplacian(Bundle::Functions, LC), Bundle::Functions).unwrap();
        assert_eq!(kernel_dim(&m, 7.0, KERNEL_TOL).unwrap(), b.dim(Bundle::Functions));
    }
}
