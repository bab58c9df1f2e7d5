//! The invariant operators of the deformation theory, built once from the
//! fibre data and valid on every block.
//!
//! `Conn::Canonical` uses `∇̄` (the connection with skew torsion preserving
//! `φ`), `Conn::LeviCivita` uses `∇ = ∇̄ + ⅓ A_⋆`.

use super::bundles::{fibers, Bundle, RMat};
use super::op::{sum, Op};
use crate::exterior::DIM;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conn {
    Canonical,
    LeviCivita,
}

fn eye(n: usize) -> RMat {
    RMat::identity(n, n)
}

/// `∇ᵢ` on the ambient fibre of `b`.
pub fn nabla(b: Bundle, i: usize, conn: Conn) -> Op {
    let n = b.fiber_dim();
    let bar = Op::nabla_bar(n, i);
    match conn {
        Conn::Canonical => bar,
        Conn::LeviCivita => &bar + &Op::pointwise(fibers().rep_a(b, i) / 3.0),
    }
}

/// `Σᵢ σᵢ ∘ ∇ᵢ`.
pub fn first_order(b: Bundle, symbols: &[RMat], conn: Conn) -> Op {
    sum((0..DIM).map(|i| nabla(b, i, conn).then(&symbols[i]))).expect("seven terms")
}

fn form_bundle(p: usize) -> Bundle {
    [Bundle::Functions, Bundle::OneForms, Bundle::TwoForms, Bundle::ThreeForms, Bundle::FourForms][p]
}

/// `d = Σ eᵢ∧∇ᵢ` on `Λᵖ`, `p ≤ 3`.
pub fn d(p: usize, conn: Conn) -> Op {
    first_order(form_bundle(p), &fibers().wedge[p], conn)
}

/// `δ = −Σ eᵢ⌟∇ᵢ` on `Λᵖ`, `1 ≤ p ≤ 4`.
pub fn delta(p: usize, conn: Conn) -> Op {
    let syms: Vec<RMat> = fibers().interior[p].iter().map(|m| -m).collect();
    first_order(form_bundle(p), &syms, conn)
}

/// `∗d` on `Λ³`.
pub fn star_d() -> Op {
    d(3, Conn::LeviCivita).then(&fibers().hodge[4])
}

/// `dδ + δd` on `Λᵖ`.
pub fn hodge_laplacian(p: usize) -> Op {
    let lc = Conn::LeviCivita;
    let dd = delta(p + 1, lc).compose(&d(p, lc));
    if p == 0 {
        dd
    } else {
        &d(p - 1, lc).compose(&delta(p, lc)) + &dd
    }
}

/// `∇*∇ = −Σ ∇ᵢ∇ᵢ` (the frame is geodesic at the origin for both
/// connections, since `∇̄_{eᵢ}eᵢ = 0` and the torsion is skew).
pub fn rough_laplacian(b: Bundle, conn: Conn) -> Op {
    let terms = (0..DIM).map(|i| {
        let n = nabla(b, i, conn);
        -&n.compose(&n)
    });
    sum(terms).expect("seven terms")
}

/// `Δ = ∇*∇ + q(R)`, or `Δ̄ = ∇̄*∇̄ + q(R̄)`.
pub fn laplacian(b: Bundle, conn: Conn) -> Op {
    let q = fibers().q(b, conn == Conn::Canonical).clone();
    &rough_laplacian(b, conn) + &Op::pointwise(q)
}

/// Dirac operator `Σ eᵢ·∇ᵢ` on spinors.
pub fn dirac(conn: Conn) -> Op {
    first_order(Bundle::Spinors, &fibers().gamma, conn)
}

/// `D_TM = Σ (eᵢ·⊗Id)∇ᵢ` on spinor-valued 1-forms.
pub fn dirac_tm(conn: Conn) -> Op {
    let f = fibers();
    let g: Vec<RMat> = (0..DIM).map(|i| f.gamma_st(i)).collect();
    first_order(Bundle::SpinorValued1Forms, &g, conn)
}

/// Killing operator `κ ↦ Σⱼ (∇ⱼκ − ½eⱼ·κ) ⊗ eⱼ`, `S → S⊗T`.
pub fn killing() -> Op {
    let f = fibers();
    let terms = (0..DIM).map(|j| {
        let inner = &nabla(Bundle::Spinors, j, Conn::LeviCivita) - &Op::pointwise(&f.gamma[j] * 0.5);
        inner.then(&f.spinor_column[j])
    });
    sum(terms).expect("seven terms")
}

/// `(δt)_a = −Σᵢ (∇ᵢt)(eₐ, eᵢ)`, `T⊗T → Λ¹`.
pub fn delta_tt(conn: Conn) -> Op {
    let syms: Vec<RMat> = fibers().tt_column.iter().map(|m| -m).collect();
    first_order(Bundle::Tensors2, &syms, conn)
}

/// Scalar multiple of the identity on `b`.
pub fn scalar(b: Bundle, s: f64) -> Op {
    Op::pointwise(eye(b.fiber_dim()) * s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::herm_eigen;
    use crate::peterweyl::{Block, Weight};

    #[test]
    fn function_laplacian_on_spin_block_is_seven() {
        let b = Block::new(Weight::new(0, 0, 1)).unwrap();
        let m = b.square(&laplacian(Bundle::Functions, Conn::LeviCivita), Bundle::Functions).unwrap();
        assert_eq!(m.nrows(), 1);
        assert!((m[(0, 0)].re - 7.0).abs() < 1e-10 && m[(0, 0)].im.abs() < 1e-10);
    }

    #[test]
    fn hodge_and_bochner_laplacians_agree() {
        let b = Block::new(Weight::new(0, 1, 0)).unwrap();
        for p in 0..=3 {
            let src = [Bundle::Functions, Bundle::OneForms, Bundle::TwoForms, Bundle::ThreeForms][p];
            let diff = &hodge_laplacian(p) - &laplacian(src, Conn::LeviCivita);
            assert!(b.residual(&diff, src) < 1e-9, "degree {p}");
        }
    }

    #[test]
    fn laplacian_is_hermitian_and_nonnegative() {
        let b = Block::new(Weight::new(1, 0, 1)).unwrap();
        let m = b.compressed(&laplacian(Bundle::ThreeForms27, Conn::LeviCivita), Bundle::ThreeForms27);
        assert!((&m - m.adjoint()).iter().all(|z| z.norm() < 1e-9));
        let (w, _) = herm_eigen(&m);
        assert!(w.iter().all(|&x| x > -1e-9));
    }
}
