//! Fibres of the homogeneous bundles over `Spin(7)/G₂` and the pointwise
//! linear maps between them, as real matrices.
//!
//! Each bundle is either an ambient `so(7)`-module (forms, spinors, `S⊗T`,
//! `T⊗T`) or the image of a `G₂`-invariant projector inside one.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::clifford::{clifford_form_matrix, gamma_matrix, spin_lift};
use crate::exterior::{
    endo_matrix, form_operator, hodge_matrix, interior, interior_e_matrix, wedge_e_matrix, Endo,
    Vector, DIM,
};
use crate::g2algebra::G2Structure;
use crate::homogeneous::{reductive_model, CurvatureTensor, ReductiveModel};

pub type RMat = DMatrix<f64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bundle {
    Functions,
    OneForms,
    TwoForms,
    TwoForms7,
    TwoForms14,
    ThreeForms,
    ThreeForms27,
    FourForms,
    Spinors,
    SpinorValued1Forms,
    S32,
    Tensors2,
    Sym0,
}

impl Bundle {
    pub const ALL: [Bundle; 13] = [
        Bundle::Functions,
        Bundle::OneForms,
        Bundle::TwoForms,
        Bundle::TwoForms7,
        Bundle::TwoForms14,
        Bundle::ThreeForms,
        Bundle::ThreeForms27,
        Bundle::FourForms,
        Bundle::Spinors,
        Bundle::SpinorValued1Forms,
        Bundle::S32,
        Bundle::Tensors2,
        Bundle::Sym0,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Bundle::Functions => "functions",
            Bundle::OneForms => "one-forms",
            Bundle::TwoForms => "two-forms",
            Bundle::TwoForms7 => "two-forms7",
            Bundle::TwoForms14 => "two-forms14",
            Bundle::ThreeForms => "three-forms",
            Bundle::ThreeForms27 => "three-forms27",
            Bundle::FourForms => "four-forms",
            Bundle::Spinors => "spinors",
            Bundle::SpinorValued1Forms => "spinor-valued1-forms",
            Bundle::S32 => "s32",
            Bundle::Tensors2 => "tensors2",
            Bundle::Sym0 => "sym0",
        }
    }

    /// The `so(7)`-module this bundle sits in.
    pub fn ambient(self) -> Bundle {
        match self {
            Bundle::TwoForms7 | Bundle::TwoForms14 => Bundle::TwoForms,
            Bundle::ThreeForms27 => Bundle::ThreeForms,
            Bundle::S32 => Bundle::SpinorValued1Forms,
            Bundle::Sym0 => Bundle::Tensors2,
            b => b,
        }
    }

    pub fn is_ambient(self) -> bool {
        self.ambient() == self
    }

    /// Dimension of the ambient fibre.
    pub fn fiber_dim(self) -> usize {
        match self.ambient() {
            Bundle::Functions => 1,
            Bundle::OneForms => 7,
            Bundle::TwoForms => 21,
            Bundle::ThreeForms | Bundle::FourForms => 35,
            Bundle::Spinors => 8,
            Bundle::SpinorValued1Forms => 56,
            Bundle::Tensors2 => 49,
            _ => unreachable!("ambient bundles only"),
        }
    }

    /// Rank of the bundle itself.
    pub fn rank(self) -> usize {
        match self {
            Bundle::TwoForms7 => 7,
            Bundle::TwoForms14 => 14,
            Bundle::ThreeForms27 | Bundle::Sym0 => 27,
            Bundle::S32 => 48,
            b => b.fiber_dim(),
        }
    }

    /// Form degree for the exterior bundles.
    pub fn degree(self) -> Option<usize> {
        match self.ambient() {
            Bundle::Functions => Some(0),
            Bundle::OneForms => Some(1),
            Bundle::TwoForms => Some(2),
            Bundle::ThreeForms => Some(3),
            Bundle::FourForms => Some(4),
            _ => None,
        }
    }
}

impl fmt::Display for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Bundle {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Bundle::ALL.into_iter().find(|b| b.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Bundle::ALL.iter().map(|b| b.name()).collect();
            format!("unknown bundle `{s}` (expected one of {})", names.join(", "))
        })
    }
}

/// Matrix of a real skew endomorphism.
pub fn endo_rmat(z: &Endo<f64>) -> RMat {
    RMat::from_fn(DIM, DIM, |r, c| z.m[r][c])
}

fn kron(a: &RMat, b: &RMat) -> RMat {
    a.kronecker(b)
}

/// Pointwise data shared by every Peter–Weyl block.
pub struct Fibers {
    pub structure: G2Structure<f64>,
    pub model: ReductiveModel<f64>,
    /// `A_{eᵢ}`.
    pub a: Vec<Endo<f64>>,
    pub canonical: CurvatureTensor<f64>,
    pub levi_civita: CurvatureTensor<f64>,
    /// `eᵢ·` on spinors.
    pub gamma: Vec<RMat>,
    /// `wedge[p][i] : Λᵖ → Λᵖ⁺¹`, `p ≤ 3`.
    pub wedge: Vec<Vec<RMat>>,
    /// `interior[p][i] : Λᵖ → Λᵖ⁻¹`, `1 ≤ p ≤ 4` (index 0 unused).
    pub interior: Vec<Vec<RMat>>,
    /// `hodge[p] : Λᵖ → Λ⁷⁻ᵖ`.
    pub hodge: Vec<RMat>,
    /// Orthogonal projectors onto sub-bundles, in ambient coordinates.
    pub p2_7: RMat,
    pub p2_14: RMat,
    pub p3_1: RMat,
    pub p3_7: RMat,
    pub p3_27: RMat,
    pub p4_7: RMat,
    pub p4_27: RMat,
    pub p_sym0: RMat,
    pub p_s32: RMat,
    /// `X ↦ X⌟φ`, `Λ¹ → Λ²`.
    pub xphi: RMat,
    /// `X ↦ X⌟ψ`, `Λ¹ → Λ³`.
    pub xpsi: RMat,
    /// `φ·` and `ψ·` on spinors.
    pub cliff_phi: RMat,
    pub cliff_psi: RMat,
    /// `(eⱼ⌟φ)·` on spinors.
    pub cliff_xphi: Vec<RMat>,
    /// Clifford contraction `S⊗T → S`.
    pub contraction: RMat,
    /// `ζ ↦ ⅐ Cᵀζ`, a right inverse of the contraction.
    pub iota: RMat,
    /// `H ↦ H(·)·κ₀`, `T⊗T → S⊗T`.
    pub psi_map: RMat,
    /// `i(H) = −2H⋆φ`, `T⊗T → Λ³`.
    pub imat: RMat,
    /// Inverse of `i` on `Sym₀`, extended by zero off `Λ³₂₇`.
    pub ipinv: RMat,
    pub tt_to_l2: RMat,
    pub l2_to_tt: RMat,
    /// `J_j : S → S⊗T`, `ζ ↦ ζ⊗eⱼ`.
    pub spinor_column: Vec<RMat>,
    /// `t ↦ t(·, eᵢ)`, `T⊗T → Λ¹`.
    pub tt_column: Vec<RMat>,
    /// `Σ ½ R̄(eⱼ,e_k)⊗eⱼ·e_k·` on `S⊗T`.
    pub rt_canonical: RMat,
    pub rt_levi_civita: RMat,
    rep_a: HashMap<Bundle, Vec<RMat>>,
    q_canonical: HashMap<Bundle, RMat>,
    q_levi_civita: HashMap<Bundle, RMat>,
}

const AMBIENT: [Bundle; 8] = [
    Bundle::Functions,
    Bundle::OneForms,
    Bundle::TwoForms,
    Bundle::ThreeForms,
    Bundle::FourForms,
    Bundle::Spinors,
    Bundle::SpinorValued1Forms,
    Bundle::Tensors2,
];

impl Fibers {
    fn new() -> Self {
        let model = reductive_model::<f64>().expect("round model builds");
        let structure = model.structure.clone();
        let g = &structure;
        let a: Vec<Endo<f64>> = (0..DIM).map(|i| g.frame_cross_endo(i).clone()).collect();
        let canonical = model.canonical_curvature();
        let levi_civita = model.levi_civita_curvature();
        let gamma: Vec<RMat> = (0..DIM).map(|i| gamma_matrix(g, i).to_f64()).collect();
        let wedge_m = (0..=3).map(|p| (0..DIM).map(|i| wedge_e_matrix::<f64>(i, p).to_f64()).collect()).collect();
        let interior_m = (0..=4)
            .map(|p| if p == 0 { Vec::new() } else { (0..DIM).map(|i| interior_e_matrix::<f64>(i, p).to_f64()).collect() })
            .collect();
        let hodge: Vec<RMat> = (0..=DIM).map(|p| hodge_matrix::<f64>(p).to_f64()).collect();

        let p2_7 = form_operator(2, 2, |b| g.project2(b).0).to_f64();
        let p2_14 = form_operator(2, 2, |b| g.project2(b).1).to_f64();
        let p3_1 = form_operator(3, 3, |b| g.project3(b).0).to_f64();
        let p3_7 = form_operator(3, 3, |b| g.project3(b).1).to_f64();
        let p3_27 = form_operator(3, 3, |b| g.project3(b).2).to_f64();
        let h4 = &hodge[3];
        let p4_7 = h4 * &p3_7 * h4.transpose();
        let p4_27 = h4 * &p3_27 * h4.transpose();

        let n2 = DIM * DIM;
        let p_sym0 = RMat::from_fn(n2, n2, |r, c| {
            let (a, b) = (r / DIM, r % DIM);
            let (x, y) = (c / DIM, c % DIM);
            let mut v = 0.0;
            if a == x && b == y {
                v += 0.5;
            }
            if a == y && b == x {
                v += 0.5;
            }
            if a == b && x == y {
                v -= 1.0 / 7.0;
            }
            v
        });
        let contraction = RMat::from_fn(8, 56, |s, c| gamma[c / 8][(s, c % 8)]);
        let iota = contraction.transpose() / 7.0;
        let p_s32 = RMat::identity(56, 56) - &iota * &contraction;

        let xphi = RMat::from_fn(21, 7, |r, c| interior(&Vector::e(c + 1), &g.phi).coeffs()[r]);
        let xpsi = RMat::from_fn(35, 7, |r, c| interior(&Vector::e(c + 1), &g.psi).coeffs()[r]);
        let cliff_phi = clifford_form_matrix(g, &g.phi).to_f64();
        let cliff_psi = clifford_form_matrix(g, &g.psi).to_f64();
        let cliff_xphi = (0..DIM).map(|j| clifford_form_matrix(g, &interior(&Vector::e(j + 1), &g.phi)).to_f64()).collect();

        let psi_map = RMat::from_fn(56, n2, |r, c| {
            let (i, s) = (r / 8, r % 8);
            let (a, b) = (c / DIM, c % DIM);
            if s >= 1 && s - 1 == a && b == i {
                1.0
            } else {
                0.0
            }
        });
        let imat = RMat::from_fn(35, n2, |r, c| {
            let t = Endo::from_fn(|x, y| if x * DIM + y == c { 1.0 } else { 0.0 });
            -2.0 * crate::exterior::endo_extend(&t, &g.phi).coeffs()[r]
        });
        let ipinv = (&imat * &p_sym0).pseudo_inverse(1e-12).expect("svd converges") * &p3_27;
        let tt_to_l2 = RMat::from_fn(21, n2, |r, c| {
            let idx = crate::exterior::monomial_indices(2, r);
            let (a, b) = (c / DIM, c % DIM);
            if a == idx[0] && b == idx[1] {
                0.5
            } else if a == idx[1] && b == idx[0] {
                -0.5
            } else {
                0.0
            }
        });
        let l2_to_tt = RMat::from_fn(n2, 21, |r, c| {
            let idx = crate::exterior::monomial_indices(2, c);
            let (a, b) = (r / DIM, r % DIM);
            if a == idx[0] && b == idx[1] {
                1.0
            } else if a == idx[1] && b == idx[0] {
                -1.0
            } else {
                0.0
            }
        });
        let spinor_column =
            (0..DIM).map(|j| RMat::from_fn(56, 8, |r, s| if r == 8 * j + s { 1.0 } else { 0.0 })).collect();
        let tt_column =
            (0..DIM).map(|i| RMat::from_fn(DIM, n2, |a, c| if c == a * DIM + i { 1.0 } else { 0.0 })).collect();

        let rt = |r: &CurvatureTensor<f64>| {
            let mut out = RMat::zeros(56, 56);
            for j in 0..DIM {
                for k in 0..DIM {
                    out += kron(&endo_rmat(&r.op(j, k)), &(&gamma[j] * &gamma[k])) * 0.5;
                }
            }
            out
        };
        let rt_canonical = rt(&canonical);
        let rt_levi_civita = rt(&levi_civita);

        let mut f = Fibers {
            structure,
            model,
            a,
            canonical,
            levi_civita,
            gamma,
            wedge: wedge_m,
            interior: interior_m,
            hodge,
            p2_7,
            p2_14,
            p3_1,
            p3_7,
            p3_27,
            p4_7,
            p4_27,
            p_sym0,
            p_s32,
            xphi,
            xpsi,
            cliff_phi,
            cliff_psi,
            cliff_xphi,
            contraction,
            iota,
            psi_map,
            imat,
            ipinv,
            tt_to_l2,
            l2_to_tt,
            spinor_column,
            tt_column,
            rt_canonical,
            rt_levi_civita,
            rep_a: HashMap::new(),
            q_canonical: HashMap::new(),
            q_levi_civita: HashMap::new(),
        };
        for b in AMBIENT {
            let reps = f.a.iter().map(|z| f.rep(b, z)).collect();
            f.rep_a.insert(b, reps);
            let qc = f.canonical.q_operator(|z| crate::dense::Mat::from_fn(b.fiber_dim(), b.fiber_dim(), {
                let m = f.rep(b, z);
                move |r, c| m[(r, c)]
            }));
            let ql = f.levi_civita.q_operator(|z| crate::dense::Mat::from_fn(b.fiber_dim(), b.fiber_dim(), {
                let m = f.rep(b, z);
                move |r, c| m[(r, c)]
            }));
            f.q_canonical.insert(b, qc.to_f64());
            f.q_levi_civita.insert(b, ql.to_f64());
        }
        f
    }

    /// `ρ_W(Z)` on the ambient fibre of `b` for a real skew `Z`.
    pub fn rep(&self, b: Bundle, z: &Endo<f64>) -> RMat {
        let zm = endo_rmat(z);
        match b.ambient() {
            Bundle::Spinors => spin_lift(&self.structure, z).to_f64(),
            Bundle::SpinorValued1Forms => {
                kron(&zm, &RMat::identity(8, 8)) + kron(&RMat::identity(7, 7), &spin_lift(&self.structure, z).to_f64())
            }
            Bundle::Tensors2 => kron(&zm, &RMat::identity(7, 7)) + kron(&RMat::identity(7, 7), &zm),
            other => {
                let p = other.degree().expect("exterior bundle");
                if p == 0 {
                    RMat::zeros(1, 1)
                } else {
                    endo_matrix(z, p).to_f64()
                }
            }
        }
    }

    /// `ρ_W(A_{eᵢ})` on the ambient fibre.
    pub fn rep_a(&self, b: Bundle, i: usize) -> &RMat {
        &self.rep_a[&b.ambient()][i]
    }

    /// `q(R̄)` (canonical) or `q(R)` (Levi-Civita) on the ambient fibre.
    pub fn q(&self, b: Bundle, canonical: bool) -> &RMat {
        let map = if canonical { &self.q_canonical } else { &self.q_levi_civita };
        &map[&b.ambient()]
    }

    /// Orthogonal projector onto `b` inside its ambient fibre.
    pub fn projector(&self, b: Bundle) -> Option<&RMat> {
        match b {
            Bundle::TwoForms7 => Some(&self.p2_7),
            Bundle::TwoForms14 => Some(&self.p2_14),
            Bundle::ThreeForms27 => Some(&self.p3_27),
            Bundle::Sym0 => Some(&self.p_sym0),
            Bundle::S32 => Some(&self.p_s32),
            _ => None,
        }
    }

    /// `Aᵢ⊗Id` on `S⊗T`.
    pub fn a_on_vector_index(&self, i: usize) -> RMat {
        kron(&endo_rmat(&self.a[i]), &RMat::identity(8, 8))
    }

    /// `X ↦ eᵢ·` acting on the spinor factor of `S⊗T`.
    pub fn gamma_st(&self, i: usize) -> RMat {
        kron(&RMat::identity(7, 7), &self.gamma[i])
    }

    /// Lifts a spinor endomorphism to `S⊗T`.
    pub fn spinor_factor(&self, m: &RMat) -> RMat {
        kron(&RMat::identity(7, 7), m)
    }

    /// `Tᵢ* = ρ_{T⊗T}(Aᵢ)` and `T̃ᵢ = Aᵢ⊗1 − 1⊗Aᵢ` on `T⊗T`.
    pub fn tt_star(&self, i: usize) -> &RMat {
        self.rep_a(Bundle::Tensors2, i)
    }

    pub fn tt_tilde(&self, i: usize) -> RMat {
        let am = endo_rmat(&self.a[i]);
        kron(&am, &RMat::identity(7, 7)) - kron(&RMat::identity(7, 7), &am)
    }
}

pub fn fibers() -> &'static Fibers {
    static F: OnceLock<Fibers> = OnceLock::new();
    F.get_or_init(Fibers::new)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_projector(p: &RMat, rank: usize) -> bool {
        (p * p - p).amax() < 1e-12 && (p - p.transpose()).amax() < 1e-12 && (p.trace() - rank as f64).abs() < 1e-9
    }

    #[test]
    fn projectors_have_expected_ranks() {
        let f = fibers();
        for b in Bundle::ALL {
            if let Some(p) = f.projector(b) {
                assert!(is_projector(p, b.rank()), "{b}");
            }
        }
        assert!(is_projector(&f.p3_1, 1));
        assert!(is_projector(&f.p3_7, 7));
        assert!(is_projector(&f.p4_7, 7));
        assert!(is_projector(&f.p4_27, 27));
    }

    #[test]
    fn projectors_commute_with_g2() {
        let f = fibers();
        for h in &f.model.h_basis {
            for b in Bundle::ALL {
                if let Some(p) = f.projector(b) {
                    let r = f.rep(b, h);
                    assert!((p * &r - &r * p).amax() < 1e-12, "{b}");
                }
            }
        }
    }

    #[test]
    fn reps_are_homomorphisms() {
        let f = fibers();
        let (x, y) = (&f.a[0], &f.a[1]);
        let br = x.commutator(y);
        for b in AMBIENT {
            let (rx, ry) = (f.rep(b, x), f.rep(b, y));
            assert!((f.rep(b, &br) - (&rx * &ry - &ry * &rx)).amax() < 1e-12, "{b}");
        }
    }

    #[test]
    fn imat_inverts_on_sym0() {
        let f = fibers();
        let round = &f.ipinv * &f.imat * &f.p_sym0;
        assert!((round - &f.p_sym0).amax() < 1e-12);
        assert!((&f.imat * &f.ipinv - &f.p3_27).amax() < 1e-12);
    }

    #[test]
    fn psym_and_s32_agree_with_library_maps() {
        let f = fibers();
        let g = &f.structure;
        let s32 = crate::clifford::spin_tensor_operator(|t| crate::clifford::s32_project(g, t)).to_f64();
        assert!((s32 - &f.p_s32).amax() < 1e-12);
        assert!((&f.contraction * &f.iota - RMat::identity(8, 8)).amax() < 1e-12);
    }

    #[test]
    fn names_round_trip() {
        for b in Bundle::ALL {
            assert_eq!(b.name().parse::<Bundle>().unwrap(), b);
        }
        assert!("nope".parse::<Bundle>().is_err());
    }
}
