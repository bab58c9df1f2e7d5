//! Real spinors of ℝ⁷ modelled on Λ⁰ ⊕ Λ¹ via `σ ↦ σ·κ₀`.
//!
//! A spinor `(f, α)` is acted on by vectors through
//! `Y·(f, α) = (−g(Y, α), fY + A_Y α)`. Forms act by composing this action
//! over the indices of each monomial. Spinor-valued 1-forms store their
//! coefficient of `⊗ eᵢ` as column `i`.

use std::ops::{Add, Neg, Sub};

use crate::dense::Mat;
use crate::exterior::{endo_split, Endo, Form, Vector, DIM};
use crate::g2algebra::{random_form, random_vector, standard_structure, trial_rng};
use crate::report::CheckReport;
use crate::g2algebra::{G2Structure, Tensor2};
use crate::scalar::Scalar;

pub const SPIN_DIM: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct Spinor<S> {
    pub f: S,
    pub alpha: Vector<S>,
}

impl<S: Scalar> Spinor<S> {
    pub fn zero() -> Self {
        Spinor { f: S::zero(), alpha: Vector::zero() }
    }

    /// The defining spinor κ₀ = (1, 0).
    pub fn kappa0() -> Self {
        Spinor { f: S::one(), alpha: Vector::zero() }
    }

    pub fn new(f: S, alpha: Vector<S>) -> Self {
        Spinor { f, alpha }
    }

    /// Components `[f, α₁, …, α₇]`.
    pub fn to_vec(&self) -> Vec<S> {
        std::iter::once(self.f.clone()).chain(self.alpha.0.iter().cloned()).collect()
    }

    pub fn from_slice(v: &[S]) -> Self {
        assert_eq!(v.len(), SPIN_DIM);
        Spinor { f: v[0].clone(), alpha: Vector::from_fn(|i| v[i + 1].clone()) }
    }

    pub fn scale(&self, s: &S) -> Self {
        Spinor { f: self.f.clone() * s.clone(), alpha: self.alpha.scale(s) }
    }

    pub fn is_zero(&self) -> bool {
        self.f.negligible() && self.alpha.is_zero()
    }

    pub fn max_abs(&self) -> f64 {
        self.f.magnitude().max(self.alpha.max_abs())
    }
}

impl<S: Scalar> Add for Spinor<S> {
    type Output = Spinor<S>;
    fn add(self, rhs: Self) -> Self {
        Spinor { f: self.f + rhs.f, alpha: self.alpha + rhs.alpha }
    }
}

impl<S: Scalar> Sub for Spinor<S> {
    type Output = Spinor<S>;
    fn sub(self, rhs: Self) -> Self {
        Spinor { f: self.f - rhs.f, alpha: self.alpha - rhs.alpha }
    }
}

impl<S: Scalar> Neg for Spinor<S> {
    type Output = Spinor<S>;
    fn neg(self) -> Self {
        Spinor { f: -self.f, alpha: -self.alpha }
    }
}

/// Spinor-valued 1-form `Σᵢ α⁽ⁱ⁾ ⊗ eᵢ`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinTensor<S> {
    pub columns: [Spinor<S>; DIM],
}

impl<S: Scalar> SpinTensor<S> {
    pub fn zero() -> Self {
        SpinTensor { columns: std::array::from_fn(|_| Spinor::zero()) }
    }

    pub fn from_fn(f: impl FnMut(usize) -> Spinor<S>) -> Self {
        SpinTensor { columns: std::array::from_fn(f) }
    }

    /// Flat layout: entry `8·i + s` is component `s` of column `i`.
    pub fn to_vec(&self) -> Vec<S> {
        self.columns.iter().flat_map(|c| c.to_vec()).collect()
    }

    pub fn from_slice(v: &[S]) -> Self {
        assert_eq!(v.len(), SPIN_DIM * DIM);
        Self::from_fn(|i| Spinor::from_slice(&v[SPIN_DIM * i..SPIN_DIM * (i + 1)]))
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    pub fn max_abs(&self) -> f64 {
        self.columns.iter().map(|c| c.max_abs()).fold(0.0, f64::max)
    }
}

impl<S: Scalar> Add for SpinTensor<S> {
    type Output = SpinTensor<S>;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for (a, b) in out.columns.iter_mut().zip(rhs.columns) {
            *a = a.clone() + b;
        }
        out
    }
}

impl<S: Scalar> Sub for SpinTensor<S> {
    type Output = SpinTensor<S>;
    fn sub(self, rhs: Self) -> Self {
        let mut out = self;
        for (a, b) in out.columns.iter_mut().zip(rhs.columns) {
            *a = a.clone() - b;
        }
        out
    }
}

/// `Y·(f, α) = (−g(Y, α), fY + A_Y α)`.
pub fn clifford_vector<S: Scalar>(g: &G2Structure<S>, y: &Vector<S>, s: &Spinor<S>) -> Spinor<S> {
    Spinor {
        f: -y.dot(&s.alpha),
        alpha: y.scale(&s.f) + g.cross(y, &s.alpha),
    }
}

/// Clifford action of a form: `e^{i₁…i_p}` acts as `e_{i₁}·(…(e_{i_p}·s))`.
pub fn clifford_form<S: Scalar>(g: &G2Structure<S>, u: &Form<S>, s: &Spinor<S>) -> Spinor<S> {
    let mut out = Spinor::zero();
    for (indices, c) in u.terms() {
        let mut t = s.clone();
        for &i in indices.iter().rev() {
            t = clifford_vector(g, &Vector::e(i), &t);
        }
        out = out + t.scale(&c);
    }
    out
}

/// 8×8 matrix of `e_i·` (0-based `i`).
pub fn gamma_matrix<S: Scalar>(g: &G2Structure<S>, i: usize) -> Mat<S> {
    spinor_operator(|s| clifford_vector(g, &Vector::e(i + 1), s))
}

/// 8×8 matrix of `u·`.
pub fn clifford_form_matrix<S: Scalar>(g: &G2Structure<S>, u: &Form<S>) -> Mat<S> {
    spinor_operator(|s| clifford_form(g, u, s))
}

/// Matrix of a linear map on spinors.
pub fn spinor_operator<S: Scalar>(f: impl Fn(&Spinor<S>) -> Spinor<S>) -> Mat<S> {
    let cols: Vec<Vec<S>> = (0..SPIN_DIM)
        .map(|k| {
            let mut e = vec![S::zero(); SPIN_DIM];
            e[k] = S::one();
            f(&Spinor::from_slice(&e)).to_vec()
        })
        .collect();
    Mat::from_columns(SPIN_DIM, &cols)
}

/// Lift of a skew endomorphism to spinors: `Z ↦ −½ Σ_{a<b} Z_ab e_a·e_b·`.
pub fn spin_lift<S: Scalar>(g: &G2Structure<S>, z: &Endo<S>) -> Mat<S> {
    let gam: Vec<Mat<S>> = (0..DIM).map(|i| gamma_matrix(g, i)).collect();
    let mut out = Mat::zeros(SPIN_DIM, SPIN_DIM);
    let minus_half = S::from_frac(-1, 2);
    for a in 0..DIM {
        for b in a + 1..DIM {
            if z.m[a][b].negligible() {
                continue;
            }
            out = out.add(&gam[a].mul(&gam[b]).scale(&(z.m[a][b].clone() * minus_half.clone())));
        }
    }
    out
}

/// Components of a spinor-valued 1-form under
/// `S ⊗ T ≅ Λ¹ ⊕ Λ²₇ ⊕ Λ²₁₄ ⊕ Sym₀ ⊕ ℝ`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinTensorParts<S> {
    pub lambda1: Vector<S>,
    pub w7: Form<S>,
    pub w14: Form<S>,
    pub h: Endo<S>,
    pub trace: S,
}

/// The 2-tensor `Σᵢ α₁⁽ⁱ⁾ ⊗ eᵢ`, i.e. `t[a][i] = (α₁⁽ⁱ⁾)_a`.
pub fn vector_block<S: Scalar>(t: &SpinTensor<S>) -> Tensor2<S> {
    Endo::from_fn(|a, i| t.columns[i].alpha.0[a].clone())
}

pub fn decompose_spin_tensor<S: Scalar>(g: &G2Structure<S>, t: &SpinTensor<S>) -> SpinTensorParts<S> {
    let lambda1 = Vector::from_fn(|i| t.columns[i].f.clone());
    let (h, skew, trace) = endo_split(&vector_block(t));
    let (w7, w14) = g.project2(&skew.to_two_form());
    SpinTensorParts { lambda1, w7, w14, h, trace }
}

pub fn recompose_spin_tensor<S: Scalar>(parts: &SpinTensorParts<S>) -> SpinTensor<S> {
    let skew = Endo::from_two_form(&(parts.w7.clone() + parts.w14.clone()));
    let block = parts.h.clone() + skew + Endo::identity().scale(&(parts.trace.clone() / S::from_int(7)));
    SpinTensor::from_fn(|i| Spinor { f: parts.lambda1.0[i].clone(), alpha: block.column(i) })
}

/// Clifford contraction `Σᵢ eᵢ·α⁽ⁱ⁾`.
pub fn clifford_contraction<S: Scalar>(g: &G2Structure<S>, t: &SpinTensor<S>) -> Spinor<S> {
    let mut out = Spinor::zero();
    for i in 0..DIM {
        out = out + clifford_vector(g, &Vector::e(i + 1), &t.columns[i]);
    }
    out
}

/// Embedding `ζ ↦ −⅐ Σᵢ eᵢ·ζ ⊗ eᵢ`, a right inverse of the contraction.
pub fn spinor_embedding<S: Scalar>(g: &G2Structure<S>, z: &Spinor<S>) -> SpinTensor<S> {
    let c = S::from_frac(-1, 7);
    SpinTensor::from_fn(|i| clifford_vector(g, &Vector::e(i + 1), z).scale(&c))
}

/// Orthogonal projection onto the kernel of Clifford contraction.
pub fn s32_project<S: Scalar>(g: &G2Structure<S>, t: &SpinTensor<S>) -> SpinTensor<S> {
    t.clone() - spinor_embedding(g, &clifford_contraction(g, t))
}

/// `Ψ(X) = H(X)·base`.
pub fn psi_from_endo<S: Scalar>(g: &G2Structure<S>, h: &Endo<S>, base: &Spinor<S>) -> SpinTensor<S> {
    SpinTensor::from_fn(|i| clifford_vector(g, &h.column(i), base))
}

/// Matrix of a linear map on spinor-valued 1-forms in the flat layout.
pub fn spin_tensor_operator<S: Scalar>(f: impl Fn(&SpinTensor<S>) -> SpinTensor<S>) -> Mat<S> {
    let n = SPIN_DIM * DIM;
    let cols: Vec<Vec<S>> = (0..n)
        .map(|k| {
            let mut e = vec![S::zero(); n];
            e[k] = S::one();
            f(&SpinTensor::from_slice(&e)).to_vec()
        })
        .collect();
    Mat::from_columns(n, &cols)
}

/// Sign by which `vol` acts on spinors.
pub const VOLUME_SIGN: i64 = -1;

/// The Clifford relation and centrality of `vol`, on seeded random inputs.
pub fn clifford_suite<S: Scalar>(seed: u64, trials: usize, tol: f64) -> CheckReport {
    let g = standard_structure::<S>();
    let tol = if S::EXACT { 0.0 } else { tol };
    let mut relation = 0.0f64;
    let mut central = 0.0f64;
    for t in 0..trials as u64 {
        let mut rng = trial_rng(seed.wrapping_add(17), t);
        let x = random_vector::<S>(&mut rng);
        let y = random_vector::<S>(&mut rng);
        let s = Spinor::from_slice(&random_form::<S>(&mut rng, 1).coeffs().iter().cloned().chain([S::one()]).collect::<Vec<_>>());
        let lhs = clifford_vector(&g, &x, &clifford_vector(&g, &y, &s)) + clifford_vector(&g, &y, &clifford_vector(&g, &x, &s));
        relation = relation.max((lhs + s.scale(&(x.dot(&y) * S::from_int(2)))).max_abs());
        central = central.max((clifford_form(&g, &Form::vol(), &s) - s.scale(&S::from_int(VOLUME_SIGN))).max_abs());
    }
    let mut report = CheckReport::new();
    report.residual("clifford.relation", "clifford/relation", relation, tol, format!("X·Y·s + Y·X·s = −2g(X,Y)s, {trials} inputs"));
    report.residual("clifford.volume-central", "clifford/volume", central, tol, format!("vol acts as {VOLUME_SIGN}"));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::interior;
    use crate::g2algebra::standard_structure;
    use crate::scalar::Rational;

    type Q = Rational;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    #[test]
    fn vector_action_examples() {
        let g = standard_structure::<Q>();
        let k0 = Spinor::<Q>::kappa0();
        let e1 = Vector::e(1);
        assert_eq!(clifford_vector(&g, &e1, &k0), Spinor::new(q(0), e1.clone()));
        assert_eq!(clifford_vector(&g, &e1, &Spinor::new(q(0), e1.clone())), Spinor::new(q(-1), Vector::zero()));
        assert_eq!(clifford_vector(&g, &e1, &Spinor::new(q(0), Vector::e(2))), Spinor::new(q(0), Vector::e(3)));
    }

    #[test]
    fn form_action_example() {
        let g = standard_structure::<Q>();
        let e12 = Form::monomial(q(1), &[1, 2]);
        let out = clifford_form(&g, &e12, &Spinor::kappa0());
        assert_eq!(out, Spinor::new(q(0), Vector::e(3)));
    }

    #[test]
    fn phi_and_psi_eigenvalues() {
        let g = standard_structure::<Q>();
        let k0 = Spinor::<Q>::kappa0();
        assert_eq!(clifford_form(&g, &g.psi, &k0), k0.scale(&q(7)));
        assert_eq!(clifford_form(&g, &g.phi, &k0), k0.scale(&q(-7)));
        for i in 1..=7 {
            let s = Spinor::new(q(0), Vector::e(i));
            assert_eq!(clifford_form(&g, &g.phi, &s), s);
            assert_eq!(clifford_form(&g, &g.psi, &s), -s.clone());
        }
    }

    #[test]
    fn volume_acts_as_minus_one() {
        let g = standard_structure::<Q>();
        let vol = clifford_form_matrix(&g, &Form::vol());
        assert_eq!(vol, Mat::identity(8).scale(&q(-1)));
    }

    #[test]
    fn decomposition_examples() {
        let g = standard_structure::<Q>();
        let mut t = SpinTensor::<Q>::zero();
        t.columns[0].f = q(1);
        let p = decompose_spin_tensor(&g, &t);
        assert_eq!(p.lambda1, Vector::e(1));
        assert!(p.w7.is_zero() && p.w14.is_zero() && p.h.is_zero());

        let t = SpinTensor::from_fn(|i| Spinor::new(q(0), Vector::e(i + 1)));
        let p = decompose_spin_tensor(&g, &t);
        assert_eq!(p.trace, q(7));
        assert!(p.h.is_zero());
        assert_eq!(recompose_spin_tensor(&p), t);
    }

    #[test]
    fn psi_examples() {
        let g = standard_structure::<Q>();
        let t = psi_from_endo(&g, &Endo::identity(), &Spinor::kappa0());
        for i in 0..7 {
            assert_eq!(t.columns[i], Spinor::new(q(0), Vector::e(i + 1)));
        }
        assert!(psi_from_endo(&g, &Endo::zero(), &Spinor::kappa0()).is_zero());
    }

    #[test]
    fn s32_rank_and_embedding() {
        let g = standard_structure::<Q>();
        let p = spin_tensor_operator(|t| s32_project(&g, t));
        assert_eq!(p.mul(&p), p);
        assert_eq!(p.transpose(), p);
        assert_eq!(p.rank(), 48);
        let z = Spinor::new(q(2), Vector::e(5));
        assert_eq!(clifford_contraction(&g, &spinor_embedding(&g, &z)), z);
    }

    #[test]
    fn lift_of_cross_endo_is_half_phi_contraction() {
        let g = standard_structure::<Q>();
        for i in 0..7 {
            let lift = spin_lift(&g, g.frame_cross_endo(i));
            let x = interior(&Vector::e(i + 1), &g.phi);
            assert_eq!(lift, clifford_form_matrix(&g, &x).scale(&Q::new(1, 2)));
        }
    }
}
