//! Blockwise operator identities: each entry is an operator that must vanish
//! on its source bundle, evaluated on every Hom basis element of a block.

use std::sync::OnceLock;

use super::block::Block;
use super::bundles::{fibers, Bundle, RMat};
use super::lie::CMatrix;
use super::op::{sum, Op};
use super::operators::*;
use crate::clifford::clifford_form_matrix;
use crate::exterior::{interior, Vector, DIM};
use crate::report::CheckReport;

/// An operator identity `op = 0` on sections of `src`.
pub struct OpIdentity {
    pub name: &'static str,
    pub anchor: &'static str,
    pub src: Bundle,
    pub op: Op,
}

const ST: Bundle = Bundle::SpinorValued1Forms;
const CAN: Conn = Conn::Canonical;
const LC: Conn = Conn::LeviCivita;

fn pw(m: RMat) -> Op {
    Op::pointwise(m)
}

/// `ψ·⊗Id` on `S⊗T`.
pub fn psi_st() -> RMat {
    fibers().spinor_factor(&fibers().cliff_psi)
}

/// `Σ ((eⱼ⌟φ)·⊗Id) ∇̄ⱼ`.
pub fn grad_phi() -> Op {
    let f = fibers();
    let syms: Vec<RMat> = f.cliff_xphi.iter().map(|m| f.spinor_factor(m)).collect();
    first_order(ST, &syms, CAN)
}

/// `Σ (Id⊗A_{eⱼ}) ∇̄ⱼ`.
pub fn grad_a() -> Op {
    let f = fibers();
    let syms: Vec<RMat> = (0..DIM).map(|j| f.a_on_vector_index(j)).collect();
    first_order(ST, &syms, CAN)
}

/// `Σ (eⱼ⌟φ)·⊗A_{eⱼ}`.
pub fn xphi_a() -> RMat {
    let f = fibers();
    (0..DIM).fold(RMat::zeros(56, 56), |acc, j| acc + f.spinor_factor(&f.cliff_xphi[j]) * f.a_on_vector_index(j))
}

/// `α⁽ⁱ⁾⊗eᵢ ↦ (5/9 (eᵢ⌟eⱼ⌟ψ)· − 2/9 eⱼeᵢ·) α⁽ⁱ⁾ ⊗ eⱼ`.
pub fn local_term() -> RMat {
    let f = fibers();
    let g = &f.structure;
    let mut out = RMat::zeros(56, 56);
    for i in 0..DIM {
        for j in 0..DIM {
            let two = interior(&Vector::e(i + 1), &interior(&Vector::e(j + 1), &g.psi));
            let m = clifford_form_matrix(g, &two).to_f64() * (5.0 / 9.0) - &f.gamma[j] * &f.gamma[i] * (2.0 / 9.0);
            let mut e = RMat::zeros(DIM, DIM);
            e[(j, i)] = 1.0;
            out += e.kronecker(&m);
        }
    }
    out
}

fn star_p4(p: &RMat) -> Op {
    d(3, LC).then(p).then(&fibers().hodge[4])
}

fn build() -> Vec<OpIdentity> {
    let f = fibers();
    let id = |b: Bundle, s: f64| scalar(b, s);
    let psi = psi_st();
    let phi_st = f.spinor_factor(&f.cliff_phi);
    let d_lc = dirac_tm(LC);
    let d_bar = dirac_tm(CAN);
    let d2 = d_lc.compose(&d_lc);
    let dbar2 = d_bar.compose(&d_bar);
    let rough = rough_laplacian(ST, LC);
    let rough_bar = rough_laplacian(ST, CAN);
    let gphi = grad_phi();
    let ga = grad_a();
    let xa = xphi_a();
    let rt_diff = &f.rt_canonical - &f.rt_levi_civita;

    let a3: Vec<RMat> = (0..DIM).map(|i| f.rep_a(Bundle::ThreeForms, i).clone()).collect();
    let a2: Vec<RMat> = (0..DIM).map(|i| f.rep_a(Bundle::TwoForms, i).clone()).collect();
    let a1: Vec<RMat> = (0..DIM).map(|i| f.rep_a(Bundle::OneForms, i).clone()).collect();
    let tstar: Vec<RMat> = (0..DIM).map(|i| f.tt_star(i).clone()).collect();
    let ttil: Vec<RMat> = (0..DIM).map(|i| f.tt_tilde(i)).collect();
    let star_dbar = d(3, CAN).then(&f.hodge[4]);

    let cross3 = first_order(Bundle::ThreeForms, &a3, CAN);
    let cross2 = first_order(Bundle::TwoForms, &a2, CAN);
    let cross_tt = first_order(Bundle::Tensors2, &tstar, CAN);
    let tilde_tt = first_order(Bundle::Tensors2, &ttil, CAN);
    let div_h = delta_tt(CAN);

    let mut v = Vec::new();
    let mut push = |name, anchor, src, op: Op| v.push(OpIdentity { name, anchor, src, op });

    // Σ A_{eᵢ⋆}∇̄ᵢγ on Λ³₂₇.
    push(
        "cross-action-three-forms",
        "A_{e_i*} nabla-bar_{e_i} gamma = 3 delta H _| psi + (*d gamma)_27 + 2/3 gamma",
        Bundle::ThreeForms27,
        &cross3
            - &(&(&(div_h.after(&f.ipinv).then(&f.xpsi) * 3.0) + &star_d().then(&f.p3_27))
                + &id(Bundle::ThreeForms, 2.0 / 3.0)),
    );
    push(
        "cross-action-three-forms-canonical",
        "A_{e_i*} nabla-bar_{e_i} gamma = -3 (*d-bar gamma)_7 + (*d-bar gamma)_27",
        Bundle::ThreeForms27,
        &cross3 - &(&(star_dbar.then(&f.p3_7) * -3.0) + &star_dbar.then(&f.p3_27)),
    );
    push(
        "cross-action-two-forms14",
        "A_{e_i*} nabla-bar_{e_i} w = delta w _| phi",
        Bundle::TwoForms14,
        &cross2 - &delta(2, LC).then(&f.xphi),
    );
    push(
        "cross-action-sym0",
        "i(A_{e_i*} nabla-bar_{e_i} H) = -2 (*d gamma)_27 - 4/3 gamma",
        Bundle::Sym0,
        &(&cross_tt.then(&f.imat) + &(star_d().after(&f.imat).then(&f.p3_27) * 2.0)) + &pw(&f.imat * (4.0 / 3.0)),
    );
    push(
        "cross-action-sym0-canonical",
        "i(A_{e_i*} nabla-bar_{e_i} H) = -2 (*d-bar gamma)_27",
        Bundle::Sym0,
        &cross_tt.then(&f.imat) + &(star_dbar.after(&f.imat).then(&f.p3_27) * 2.0),
    );
    push(
        "twisted-cross-action-sym0",
        "tilde-A_{e_i*} nabla-bar_{e_i} H = 1/2 delta-bar gamma - delta H _| phi",
        Bundle::Sym0,
        &tilde_tt.then(&f.tt_to_l2) - &(&(delta(3, CAN).after(&f.imat) * 0.5) - &div_h.then(&f.xphi)),
    );
    push(
        "twisted-cross-action-sym0-split",
        "tilde-A_{e_i*} nabla-bar_{e_i} H = -1/3 delta H _| phi + 1/2 (delta gamma)_14",
        Bundle::Sym0,
        &tilde_tt.then(&f.tt_to_l2)
            - &(&(div_h.then(&f.xphi) * (-1.0 / 3.0)) + &(delta(3, LC).after(&f.imat).then(&f.p2_14) * 0.5)),
    );
    push(
        "twisted-cross-action-two-forms14",
        "i(tilde-A_{e_i*} nabla-bar_{e_i} w) = 8 dw - 2 delta w _| psi",
        Bundle::TwoForms14,
        &tilde_tt.after(&f.l2_to_tt).then(&f.imat) - &(&(d(2, LC) * 8.0) - &(delta(2, LC).then(&f.xpsi) * 2.0)),
    );
    push(
        "sym0-laplacian-transfer",
        "i Delta i^{-1} gamma = Delta gamma - 2*(d gamma)_7 + 2*(d gamma)_27 + 4 gamma",
        Bundle::ThreeForms27,
        &laplacian(Bundle::Tensors2, LC).after(&f.ipinv).then(&f.imat)
            - &(&(&(&laplacian(Bundle::ThreeForms, LC) - &(star_p4(&f.p4_7) * 2.0)) + &(star_p4(&f.p4_27) * 2.0))
                + &id(Bundle::ThreeForms, 4.0)),
    );
    push(
        "g2-laplacian-difference-three-forms27",
        "Delta-bar gamma = Delta gamma - 2*(d gamma)_7 + 2/3*(d gamma)_27",
        Bundle::ThreeForms27,
        &laplacian(Bundle::ThreeForms, CAN)
            - &(&(&laplacian(Bundle::ThreeForms, LC) - &(star_p4(&f.p4_7) * 2.0)) + &(star_p4(&f.p4_27) * (2.0 / 3.0))),
    );
    push(
        "g2-laplacian-difference-one-forms",
        "Delta-bar - Delta = 2/3 A_{e_j} nabla-bar_{e_j} - 4/3 on one-forms",
        Bundle::OneForms,
        &(&laplacian(Bundle::OneForms, CAN) - &laplacian(Bundle::OneForms, LC))
            - &(&(first_order(Bundle::OneForms, &a1, CAN) * (2.0 / 3.0)) - &id(Bundle::OneForms, 4.0 / 3.0)),
    );

    // Comparison of the two twisted Dirac operators and their squares.
    let sum_gamma_a = (0..DIM).fold(RMat::zeros(56, 56), |acc, i| acc + f.gamma_st(i) * f.a_on_vector_index(i));
    push(
        "twisted-dirac-difference",
        "D-bar_TM = D_TM - 1/2 phi. (x) Id - 1/3 e_i. (x) A_{e_i}",
        ST,
        &(&d_bar - &d_lc) + &pw(&phi_st * 0.5 + &sum_gamma_a * (1.0 / 3.0)),
    );
    push(
        "twisted-dirac-square-g2-laplacian",
        "D-bar_TM^2 = Delta-bar - 2/3 - 2/3 psi. (x) Id + 2/3 grad-phi",
        ST,
        &dbar2
            - &(&(&laplacian(ST, CAN) + &pw(RMat::identity(56, 56) * (-2.0 / 3.0) - &psi * (2.0 / 3.0)))
                + &(&gphi * (2.0 / 3.0))),
    );
    push(
        "twisted-dirac-square-rough-laplacian",
        "D-bar_TM^2 = nabla-bar* nabla-bar + 28/3 - 4/3 psi. (x) Id + 2/3 grad-phi + 1/2 e_j e_k. (x) R-bar(e_j,e_k)",
        ST,
        &dbar2
            - &(&(&rough_bar + &pw(RMat::identity(56, 56) * (28.0 / 3.0) - &psi * (4.0 / 3.0) + &f.rt_canonical))
                + &(&gphi * (2.0 / 3.0))),
    );
    push(
        "rough-laplacian-difference-spin-tensors",
        "nabla-bar* nabla-bar = nabla* nabla - 5/4 - 1/6 psi. + 1/9 (e_i _| phi). (x) A_{e_i} + 2/3 grad-A + 1/3 grad-phi",
        ST,
        &rough_bar
            - &(&(&(&rough + &pw(RMat::identity(56, 56) * (-1.25) - &psi * (1.0 / 6.0) + &xa * (1.0 / 9.0)))
                + &(&ga * (2.0 / 3.0)))
                + &(&gphi * (1.0 / 3.0))),
    );
    push(
        "lichnerowicz-twisted",
        "D_TM^2 = nabla* nabla + scal/4 + 1/2 e_j e_k. (x) R(e_j,e_k), scal/4 = 21/2",
        ST,
        &d2 - &(&rough + &pw(RMat::identity(56, 56) * 10.5 + &f.rt_levi_civita)),
    );
    push(
        "lichnerowicz-twisted-as-printed",
        "D_TM^2 = nabla* nabla + 15/2 + 1/2 e_j e_k. (x) R(e_j,e_k)",
        ST,
        &d2 - &(&rough + &pw(RMat::identity(56, 56) * 7.5 + &f.rt_levi_civita)),
    );
    let square_difference = |c: f64| {
        let zeroth = RMat::identity(56, 56) * c - &psi * 1.5 + &xa * (1.0 / 9.0) + &rt_diff;
        &dbar2 - &(&(&(&d2 + &pw(zeroth)) + &(&ga * (2.0 / 3.0))) + &gphi)
    };
    let local_difference = |c: f64| {
        let zeroth = RMat::identity(56, 56) * c - &psi * 1.5 + local_term();
        &dbar2 - &(&(&(&d2 + &pw(zeroth)) + &(&ga * (2.0 / 3.0))) + &gphi)
    };
    push(
        "twisted-dirac-square-difference",
        "D-bar_TM^2 = D_TM^2 + 7/12 - 3/2 psi. + 1/9 (e_j _| phi). (x) A_{e_j} + 2/3 grad-A + grad-phi + 1/2 e_j e_k. (x) (R-bar - R)",
        ST,
        square_difference(7.0 / 12.0),
    );
    push(
        "twisted-dirac-square-difference-corrected",
        "same with constant 7/12 - 3 = -29/12 (Lichnerowicz constant scal/4)",
        ST,
        square_difference(-29.0 / 12.0),
    );
    push(
        "twisted-dirac-square-difference-local",
        "local form: 13/36 - 3/2 psi. + 5/9 (e_i _| e_j _| psi). - 2/9 e_j e_i. + 2/3 grad-A + grad-phi",
        ST,
        local_difference(13.0 / 36.0),
    );
    push(
        "twisted-dirac-square-difference-local-corrected",
        "local form with constant 13/36 - 3 = -95/36",
        ST,
        local_difference(-95.0 / 36.0),
    );
    push(
        "bochner-hodge-three-forms",
        "Delta = d delta + delta d = nabla* nabla + q(R) on 3-forms",
        Bundle::ThreeForms,
        &hodge_laplacian(3) - &laplacian(Bundle::ThreeForms, LC),
    );
    push(
        "bochner-hodge-two-forms",
        "Delta = d delta + delta d = nabla* nabla + q(R) on 2-forms",
        Bundle::TwoForms,
        &hodge_laplacian(2) - &laplacian(Bundle::TwoForms, LC),
    );

    // Corners of D_TM in S ⊕ S₃/₂.
    let sum_j: Op = sum((0..DIM).map(|j| nabla(Bundle::Spinors, j, LC).then(&f.spinor_column[j]))).expect("seven terms");
    push(
        "twisted-dirac-spinor-corner",
        "2x2 form of D_TM: spinor corner (2-n)/n D = -5/7 D",
        Bundle::Spinors,
        &d_lc.after(&f.iota).then(&f.contraction) + &(dirac(LC) * (5.0 / 7.0)),
    );
    push(
        "twisted-dirac-penrose-corner",
        "2x2 form of D_TM: lower-left corner 2/n P",
        Bundle::Spinors,
        &d_lc.after(&f.iota).then(&f.p_s32) - &(sum_j.then(&f.p_s32) * (2.0 / 7.0)),
    );
    v
}

/// All blockwise identities, built once.
pub fn identities() -> &'static [OpIdentity] {
    static I: OnceLock<Vec<OpIdentity>> = OnceLock::new();
    I.get_or_init(build)
}

/// Penrose operator `P = pr_{S₃/₂} ∇`.
pub fn penrose() -> Op {
    let f = fibers();
    sum((0..DIM).map(|j| nabla(Bundle::Spinors, j, LC).then(&f.spinor_column[j])))
        .expect("seven terms")
        .then(&f.p_s32)
}

/// Rarita–Schwinger operator `Q = pr_{S₃/₂} D_TM` on `S₃/₂`.
pub fn rarita_schwinger() -> Op {
    dirac_tm(LC).then(&fibers().p_s32)
}

fn hermitian_defect(m: &CMatrix) -> f64 {
    (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Non-identity structural checks on one block: adjointness and symmetry.
fn structural(block: &Block, tol: f64, report: &mut CheckReport) {
    let f = fibers();
    let w = block.weight.labels();
    let rec = |name: &str, anchor: &str, r: crate::Result<f64>, report: &mut CheckReport| match r {
        Ok(r) => {
            report.residual(name, anchor, r, tol, "").at(w);
        }
        Err(e) => {
            report.error(name, anchor, e.to_string()).at(w);
        }
    };
    let forms = [Bundle::Functions, Bundle::OneForms, Bundle::TwoForms, Bundle::ThreeForms, Bundle::FourForms];
    let adj = (0..4).try_fold(0.0f64, |acc, p| {
        let dm = block.matrix(&d(p, LC), forms[p], &[forms[p + 1]])?;
        let dl = block.matrix(&delta(p + 1, LC), forms[p + 1], &[forms[p]])?;
        Ok(acc.max((dm.adjoint() - dl).iter().map(|z| z.norm()).fold(0.0, f64::max)))
    });
    rec("d-delta-adjoint", "delta is the formal adjoint of d", adj, report);

    let sym = [
        (Bundle::SpinorValued1Forms, dirac_tm(LC)),
        (Bundle::Spinors, dirac(LC)),
        (Bundle::ThreeForms27, star_d().then(&f.p3_27)),
        (Bundle::OneForms, laplacian(Bundle::OneForms, CAN)),
        (Bundle::ThreeForms27, laplacian(Bundle::ThreeForms, CAN).then(&f.p3_27)),
    ];
    let herm = sym.iter().try_fold(0.0f64, |acc, (b, op)| {
        Ok::<f64, crate::Error>(acc.max(hermitian_defect(&block.compressed(op, *b))))
    });
    rec("operators-self-adjoint", "D, D_TM, *d, Delta-bar are formally self-adjoint", herm, report);

    let q = block.square(&rarita_schwinger(), Bundle::S32).map(|m| hermitian_defect(&m));
    rec("rarita-schwinger-self-adjoint", "Q is formally self-adjoint", q, report);

    let corner = (|| {
        let top = block.matrix(&dirac_tm(LC).then(&f.contraction), Bundle::S32, &[Bundle::Spinors])?;
        let p = block.matrix(&penrose(), Bundle::Spinors, &[Bundle::S32])?;
        Ok((top - p.adjoint() * C2).iter().map(|z| z.norm()).fold(0.0, f64::max))
    })();
    rec("twisted-dirac-adjoint-corner", "2x2 form of D_TM: upper-right corner 2 P*", corner, report);
}

const C2: num_complex::Complex<f64> = num_complex::Complex { re: 2.0, im: 0.0 };

/// Runs every identity on one block.
pub fn identity_suite_block(block: &Block, tol: f64) -> CheckReport {
    let mut report = CheckReport::new();
    let w = block.weight.labels();
    for ident in identities() {
        let n = block.dim(ident.src);
        let r = if n == 0 { 0.0 } else { block.residual(&ident.op, ident.src) };
        report.residual(ident.name, ident.anchor, r, tol, format!("{} block dim {n}", ident.src)).at(w);
    }
    structural(block, tol, &mut report);
    report
}

/// Largest eigenvalue deviation for the signature of a failing identity:
/// the matrix of `op` on `src`, compressed to `src`.
pub fn identity_matrix(block: &Block, name: &str) -> Option<CMatrix> {
    let ident = identities().iter().find(|i| i.name == name)?;
    Some(block.compressed(&ident.op, ident.src))
}
