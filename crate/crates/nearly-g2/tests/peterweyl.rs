//! Block-level checks over every weight with `a + b + c ≤ 3`.

use std::sync::OnceLock;

use nearly_g2::linalg::herm_eigen;
use nearly_g2::peterweyl::*;

fn blocks() -> &'static [Block] {
    static B: OnceLock<Vec<Block>> = OnceLock::new();
    B.get_or_init(|| build_blocks(3, None).expect("level-3 blocks build"))
}

fn hermitian_defect(m: &CMatrix) -> f64 {
    (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

const LC: Conn = Conn::LeviCivita;
const CAN: Conn = Conn::Canonical;

#[test]
fn irreps_are_representations_with_scalar_casimir() {
    for b in blocks() {
        assert!(b.irrep.homomorphism_residual() < 1e-8, "{}", b.weight);
        assert!(b.irrep.casimir_residual() < 1e-8, "{}", b.weight);
        assert_eq!(b.irrep.dim, weyl_dimension(b.weight));
    }
}

#[test]
fn hom_spaces_intertwine() {
    for b in blocks() {
        for (&bundle, h) in &b.homs {
            if bundle.is_ambient() {
                let r = intertwining_residual(&b.irrep, bundle, &h.basis);
                assert!(r < 1e-9, "{} {bundle}: {r:e}", b.weight);
            }
        }
    }
}

#[test]
fn function_spectrum_is_spherical_harmonics() {
    // eigenvalue k(k + 6) on harmonic polynomials of degree k, dimension
    // C(k+7, 7) − C(k+5, 7)
    let spec = bundle_spectrum(blocks(), Bundle::Functions, 3).unwrap();
    let binom = |n: usize, k: usize| (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
    let expected: Vec<(f64, usize)> =
        (0..=3).map(|k| ((k * (k + 6)) as f64, binom(k + 7, 7) - if k >= 2 { binom(k + 5, 7) } else { 0 })).collect();
    let got: Vec<(f64, usize)> = spec.eigenvalues.iter().map(|l| (l.value, l.multiplicity)).collect();
    assert_eq!(got.len(), expected.len());
    for ((v, m), (ev, em)) in got.iter().zip(&expected) {
        assert!((v - ev).abs() < 1e-8, "{v} vs {ev}");
        assert_eq!(m, em);
    }
    let total: usize = blocks().iter().map(|b| b.irrep.dim * b.dim(Bundle::Functions)).sum();
    assert_eq!(total, 1 + 8 + 35 + 112);
}

#[test]
fn codifferential_is_adjoint_to_d() {
    let forms = [Bundle::Functions, Bundle::OneForms, Bundle::TwoForms, Bundle::ThreeForms, Bundle::FourForms];
    for b in blocks() {
        for p in 0..4 {
            let dm = b.matrix(&d(p, LC), forms[p], &[forms[p + 1]]).unwrap();
            let dl = b.matrix(&delta(p + 1, LC), forms[p + 1], &[forms[p]]).unwrap();
            let defect = (&dl - dm.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(defect < 1e-9, "{} degree {p}: {defect:e}", b.weight);
        }
    }
}

#[test]
fn operators_are_symmetric() {
    let lap = [Bundle::Functions, Bundle::OneForms, Bundle::ThreeForms27, Bundle::Sym0, Bundle::S32];
    for b in blocks() {
        let mut mats = vec![
            b.square(&dirac_tm(LC), Bundle::SpinorValued1Forms).unwrap(),
            b.square(&dirac(LC), Bundle::Spinors).unwrap(),
            b.square(&rarita_schwinger(), Bundle::S32).unwrap(),
        ];
        for &bundle in &lap {
            mats.push(b.compressed(&laplacian(bundle.ambient(), LC), bundle));
            mats.push(b.compressed(&laplacian(bundle.ambient(), CAN), bundle));
        }
        for m in &mats {
            assert!(hermitian_defect(m) < 1e-9, "{}", b.weight);
        }
        for &bundle in &lap[..3] {
            let (w, _) = herm_eigen(&b.compressed(&laplacian(bundle.ambient(), LC), bundle));
            assert!(w.iter().all(|&x| x > -1e-9), "{} {bundle}", b.weight);
        }
    }
}

#[test]
fn canonical_laplacian_preserves_g2_bundles() {
    for b in blocks() {
        for bundle in [Bundle::TwoForms7, Bundle::TwoForms14, Bundle::ThreeForms27, Bundle::Sym0] {
            if b.dim(bundle) > 0 {
                b.square(&laplacian(bundle.ambient(), CAN), bundle).unwrap();
            }
        }
    }
}

#[test]
fn theorems_hold_blockwise() {
    let s = spectral_report(blocks(), 3, KERNEL_TOL).unwrap();
    for b in &s.blocks {
        assert_eq!(b.ker_q, b.r_gamma, "{:?}", b.weight);
        assert_eq!(b.rs_fields, b.r_gamma, "{:?}", b.weight);
        assert_eq!(b.deformation_h, b.d3, "{:?}", b.weight);
        assert_eq!(b.linearized_kernel, b.killing + b.deformation_h, "{:?}", b.weight);
        assert_eq!(b.killing, b.dirac_killing, "{:?}", b.weight);
        assert_eq!(b.d_delta_piece, 0);
    }
    assert_eq!(s.totals.killing, 8);
    assert_eq!(s.totals.d1, 7);
    assert!(theorem_check(Theorem::A, &s).all_pass());
    assert!(theorem_check(Theorem::B, &s).all_pass());
    let cert = instability_certificate(&s);
    assert!(cert.all_pass());
    assert_eq!(cert.get("instability-witness").unwrap().details, "no witness (R_H = 0)");
}

#[test]
fn star_d_spectrum_on_constrained_three_forms() {
    // ∗d on {γ ∈ Ω³₂₇ : (δγ)₇ = 0} is self-adjoint; on S⁷ none of −4, −3/2,
    // −1/2 occur up to level 3
    let s = spectral_report(blocks(), 3, KERNEL_TOL).unwrap();
    let mut seen = Vec::new();
    for b in &s.blocks {
        for e in &b.star_d_spectrum {
            for bad in [-4.0, -1.5, -0.5] {
                assert!((e.value - bad).abs() > 1e-6, "{:?}", b.weight);
            }
            seen.push(e.value);
        }
    }
    assert!(!seen.is_empty());
}

#[test]
fn cached_blocks_match_fresh_ones() {
    let dir = tempfile::tempdir().unwrap();
    let first = build_blocks(1, Some(dir.path())).unwrap();
    let second = build_blocks(1, Some(dir.path())).unwrap();
    assert_eq!(first.len(), second.len());
    for (a, b) in first.iter().zip(&second) {
        assert_eq!(a.weight, b.weight);
        for bundle in Bundle::ALL {
            assert_eq!(a.dim(bundle), b.dim(bundle));
        }
        let ma = a.compressed(&laplacian(Bundle::OneForms, LC), Bundle::OneForms);
        let mb = b.compressed(&laplacian(Bundle::OneForms, LC), Bundle::OneForms);
        assert!((ma - mb).iter().all(|z| z.norm() < 1e-12));
    }
}
