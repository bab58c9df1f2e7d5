//! The homogeneous model `S⁷ = Spin(7)/G₂`.
//!
//! `spin(7) ≅ so(7)` is realized as skew 7×7 matrices. `g₂` is the stabilizer
//! of φ, and `m` is its orthogonal complement, spanned by the matrices of the
//! 2-forms `eᵢ⌟φ`. The identification `eᵢ ↦ mᵢ` is scaled so that the
//! canonical torsion `−[X,Y]_m` equals `−⅔ A(X,Y)`, which is the τ₀ = 4
//! normalization (scal = 42).

use rayon::prelude::*;

use crate::clifford::{clifford_form_matrix, gamma_matrix, spin_lift};
use crate::dense::Mat;
use crate::error::{Error, Result};
use crate::exterior::{endo_matrix, form_dim, interior, Endo, Vector, DIM};
use crate::g2algebra::{standard_structure, G2Structure};
use crate::report::CheckReport;
use crate::scalar::Scalar;

/// `E_ab` with `E[a][b] = 1`, `E[b][a] = −1` (0-based, `a < b`).
pub fn so7_generator<S: Scalar>(a: usize, b: usize) -> Endo<S> {
    let mut e = Endo::zero();
    e.m[a][b] = S::one();
    e.m[b][a] = -S::one();
    e
}

/// Pairs `(a, b)`, `a < b`, in lexicographic order.
pub fn so7_pairs() -> Vec<(usize, usize)> {
    (0..DIM).flat_map(|a| (a + 1..DIM).map(move |b| (a, b))).collect()
}

/// Coordinates of a skew matrix in the `E_ab` basis.
pub fn so7_coords<S: Scalar>(z: &Endo<S>) -> Vec<S> {
    so7_pairs().into_iter().map(|(a, b)| z.m[a][b].clone()).collect()
}

pub fn so7_from_coords<S: Scalar>(c: &[S]) -> Endo<S> {
    let mut z = Endo::zero();
    for ((a, b), v) in so7_pairs().into_iter().zip(c) {
        z.m[a][b] = v.clone();
        z.m[b][a] = -v.clone();
    }
    z
}

/// Invariant inner product `−½ tr(XY)` on `so(7)`.
pub fn killing_inner<S: Scalar>(x: &Endo<S>, y: &Endo<S>) -> S {
    -(x.clone() * y.clone()).trace() * S::from_frac(1, 2)
}

#[derive(Clone, Debug)]
pub struct ReductiveModel<S> {
    pub structure: G2Structure<S>,
    pub g_basis: Vec<Endo<S>>,
    pub h_basis: Vec<Endo<S>>,
    /// `mᵢ`, the image of `eᵢ`.
    pub m_basis: Vec<Endo<S>>,
    /// Factor relating `−½ tr` on `m` to the frame metric.
    pub metric_scale: S,
    /// Raw basis of `m` before calibration: the matrices of `eᵢ⌟φ`.
    raw_m: Vec<Endo<S>>,
    /// `⟨mᵢ, mᵢ⟩` for the `−½ tr` form.
    m_norm: S,
}

/// Builds `so(7) = g₂ ⊕ m` and calibrates it.
pub fn reductive_model<S: Scalar>() -> Result<ReductiveModel<S>> {
    let structure = standard_structure::<S>();
    let g_basis: Vec<Endo<S>> = so7_pairs().into_iter().map(|(a, b)| so7_generator(a, b)).collect();

    // Z ↦ Z⋆φ as a 35×21 matrix
    let cols: Vec<Vec<S>> = g_basis
        .iter()
        .map(|z| crate::exterior::endo_extend(z, &structure.phi).coeffs().to_vec())
        .collect();
    let stab = Mat::from_columns(form_dim(3), &cols);
    let h_basis: Vec<Endo<S>> = stab.nullspace().iter().map(|c| combine(&g_basis, c)).collect();
    if h_basis.len() != 14 {
        return Err(Error::Construction(format!("stabilizer of φ has dimension {}", h_basis.len())));
    }

    let raw_m: Vec<Endo<S>> =
        (0..DIM).map(|i| Endo::from_two_form(&interior(&Vector::e(i + 1), &structure.phi))).collect();
    for m in &raw_m {
        for h in &h_basis {
            if !killing_inner(m, h).negligible() {
                return Err(Error::Construction("eᵢ⌟φ is not orthogonal to g₂".into()));
            }
        }
    }
    let model = ReductiveModel {
        structure,
        g_basis,
        h_basis,
        m_basis: raw_m.clone(),
        metric_scale: S::one(),
        m_norm: killing_inner(&raw_m[0], &raw_m[0]),
        raw_m,
    };
    calibrate(model)
}

fn combine<S: Scalar>(basis: &[Endo<S>], coeffs: &[S]) -> Endo<S> {
    let mut out = Endo::zero();
    for (b, c) in basis.iter().zip(coeffs) {
        if !c.negligible() {
            out = out + b.scale(c);
        }
    }
    out
}

/// Rescales `mᵢ = c·Mᵢ` so that `[m₁, m₂]_m = ⅔ m_{A(e₁,e₂)}`.
pub fn calibrate<S: Scalar>(mut model: ReductiveModel<S>) -> Result<ReductiveModel<S>> {
    model.m_basis = model.raw_m.clone();
    model.m_norm = killing_inner(&model.raw_m[0], &model.raw_m[0]);
    let br = model.raw_m[0].commutator(&model.raw_m[1]);
    let target = model.structure.cross(&Vector::e(1), &Vector::e(2));
    let (xm, _) = model.split(&br);
    // [M₁, M₂]_m = k·M_{A(e₁,e₂)}
    let k = xm.dot(&target);
    if k.negligible() {
        return Err(Error::Construction("m-bracket vanishes; cannot calibrate".into()));
    }
    let c = S::from_frac(2, 3) / k;
    if c.to_f64() <= 0.0 {
        return Err(Error::Construction("calibration requires a negative scale".into()));
    }
    model.m_basis = model.raw_m.iter().map(|m| m.scale(&c)).collect();
    model.m_norm = killing_inner(&model.m_basis[0], &model.m_basis[0]);
    model.metric_scale = S::one() / model.m_norm.clone();
    Ok(model)
}

impl<S: Scalar> ReductiveModel<S> {
    /// `m(X) = Σ Xᵢ mᵢ`.
    pub fn embed(&self, x: &Vector<S>) -> Endo<S> {
        combine(&self.m_basis, &x.0)
    }

    /// Splits `Z ∈ so(7)` as `(X, Z_h)` with `Z = m(X) + Z_h`.
    pub fn split(&self, z: &Endo<S>) -> (Vector<S>, Endo<S>) {
        let x = Vector::from_fn(|i| killing_inner(z, &self.m_basis[i]) / self.m_norm.clone());
        let zh = z.clone() - self.embed(&x);
        (x, zh)
    }

    /// `[m(X), m(Y)]` split into its `m`-vector and `h`-part.
    pub fn bracket(&self, x: &Vector<S>, y: &Vector<S>) -> (Vector<S>, Endo<S>) {
        self.split(&self.embed(x).commutator(&self.embed(y)))
    }

    /// Canonical torsion `T(X,Y) = −[X,Y]_m`.
    pub fn torsion(&self, x: &Vector<S>, y: &Vector<S>) -> Vector<S> {
        -self.bracket(x, y).0
    }

    /// Coordinates of an element of `h` in `h_basis`, if it lies there.
    pub fn h_coords(&self, z: &Endo<S>) -> Option<Vec<S>> {
        let cols: Vec<Vec<S>> = self.h_basis.iter().map(so7_coords).collect();
        Mat::from_columns(21, &cols).solve(&so7_coords(z))
    }

    /// Canonical curvature `R̄(X,Y)Z = −[[X,Y]_h, Z]`.
    pub fn canonical_curvature(&self) -> CurvatureTensor<S> {
        CurvatureTensor::from_fn(Flavor::Canonical, |i, j, k| {
            let (_, h) = self.bracket(&Vector::e(i + 1), &Vector::e(j + 1));
            -self.split(&h.commutator(&self.m_basis[k])).0
        })
    }

    /// Levi-Civita curvature of the normal metric:
    /// `R(X,Y)Z = −[[X,Y]_h,Z] − ½[[X,Y]_m,Z]_m − ¼[[Y,Z]_m,X]_m − ¼[[Z,X]_m,Y]_m`.
    pub fn levi_civita_curvature(&self) -> CurvatureTensor<S> {
        let half = S::from_frac(1, 2);
        let quarter = S::from_frac(1, 4);
        let mb = |a: &Vector<S>, b: &Vector<S>| self.bracket(a, b).0;
        CurvatureTensor::from_fn(Flavor::LeviCivita, |i, j, k| {
            let (x, y, z) = (Vector::e(i + 1), Vector::e(j + 1), Vector::e(k + 1));
            let (xy_m, xy_h) = self.bracket(&x, &y);
            let t1 = -self.split(&xy_h.commutator(&self.m_basis[k])).0;
            let t2 = mb(&xy_m, &z).scale(&half);
            let t3 = mb(&mb(&y, &z), &x).scale(&quarter);
            let t4 = mb(&mb(&z, &x), &y).scale(&quarter);
            t1 - t2 - t3 - t4
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    LeviCivita,
    Canonical,
}

/// `R(eᵢ, eⱼ)e_k` for all frame indices.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureTensor<S> {
    pub flavor: Flavor,
    data: Vec<Vector<S>>,
}

impl<S: Scalar> CurvatureTensor<S> {
    pub fn from_fn(flavor: Flavor, mut f: impl FnMut(usize, usize, usize) -> Vector<S>) -> Self {
        let mut data = Vec::with_capacity(DIM * DIM * DIM);
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    data.push(f(i, j, k));
                }
            }
        }
        CurvatureTensor { flavor, data }
    }

    /// `R(eᵢ, eⱼ)e_k` (0-based).
    pub fn apply(&self, i: usize, j: usize, k: usize) -> &Vector<S> {
        &self.data[(i * DIM + j) * DIM + k]
    }

    /// `R_ijkl = g(R(eᵢ,eⱼ)e_k, e_l)`.
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> S {
        self.apply(i, j, k).0[l].clone()
    }

    /// `R(eᵢ, eⱼ)` as an endomorphism.
    pub fn op(&self, i: usize, j: usize) -> Endo<S> {
        Endo::from_fn(|r, c| self.get(i, j, c, r))
    }

    /// `R(X, Y)` for arbitrary vectors.
    pub fn op_vectors(&self, x: &Vector<S>, y: &Vector<S>) -> Endo<S> {
        let mut out = Endo::zero();
        for i in 0..DIM {
            for j in 0..DIM {
                let c = x.0[i].clone() * y.0[j].clone();
                if !c.negligible() {
                    out = out + self.op(i, j).scale(&c);
                }
            }
        }
        out
    }

    /// The 2-form `R(eᵢ∧eⱼ) = ½ R_ijkl e_k∧e_l` as a skew matrix `[k][l] = R_ijkl`.
    pub fn form(&self, i: usize, j: usize) -> Endo<S> {
        Endo::from_fn(|k, l| self.get(i, j, k, l))
    }

    /// `Ric(eₐ, e_b) = Σⱼ R(eⱼ, eₐ, e_b, eⱼ)`.
    pub fn ricci(&self) -> Endo<S> {
        Endo::from_fn(|a, b| {
            let mut s = S::zero();
            for j in 0..DIM {
                s += self.get(j, a, b, j);
            }
            s
        })
    }

    pub fn scal(&self) -> S {
        self.ricci().trace()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.max_abs()).fold(0.0, f64::max)
    }

    /// `q(R) = ½ Σ_{ij} ρ(eᵢ∧eⱼ) ρ(R(eᵢ∧eⱼ))` for a representation `ρ` of
    /// `so(7)` given on skew matrices.
    pub fn q_operator(&self, rho: impl Fn(&Endo<S>) -> Mat<S>) -> Mat<S> {
        let mut acc: Option<Mat<S>> = None;
        for (a, b) in so7_pairs() {
            let term = rho(&so7_generator(a, b)).mul(&rho(&self.form(a, b)));
            acc = Some(match acc {
                None => term,
                Some(m) => m.add(&term),
            });
        }
        acc.expect("so(7) is nonempty")
    }

    pub fn sub(&self, other: &Self) -> Self {
        CurvatureTensor {
            flavor: self.flavor,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

/// Constant curvature one: `R(X,Y)Z = g(Y,Z)X − g(X,Z)Y`.
pub fn round_curvature<S: Scalar>() -> CurvatureTensor<S> {
    CurvatureTensor::from_fn(Flavor::LeviCivita, |i, j, k| {
        let mut v = Vector::zero();
        if j == k {
            v.0[i] += S::one();
        }
        if i == k {
            v.0[j] += -S::one();
        }
        v
    })
}

/// Curvature checks on the calibrated model. All residuals are exact zeros
/// on the rational backend.
pub fn curvature_suite<S: Scalar>(tol: f64) -> CheckReport {
    let tol = if S::EXACT { 0.0 } else { tol };
    let mut report = CheckReport::new();
    let model = match reductive_model::<S>() {
        Ok(m) => m,
        Err(e) => {
            report.error("curvature.model", "homogeneous/reductive-split", e.to_string());
            return report;
        }
    };
    let g = &model.structure;
    let rbar = model.canonical_curvature();
    let rlc = model.levi_civita_curvature();
    let frame: Vec<Vector<S>> = (0..DIM).map(|i| Vector::e(i + 1)).collect();

    // reductivity
    let mut worst: f64 = 0.0;
    for h1 in &model.h_basis {
        for h2 in &model.h_basis {
            let (x, _) = model.split(&h1.commutator(h2));
            worst = worst.max(x.max_abs());
        }
        for m in &model.m_basis {
            let (_, zh) = model.split(&h1.commutator(m));
            worst = worst.max(zh.max_abs());
        }
    }
    report.residual(
        "curvature.reductive",
        "homogeneous/reductive-split",
        worst,
        tol,
        format!("dim h = {}, dim m = {}", model.h_basis.len(), model.m_basis.len()),
    );

    let mut worst: f64 = 0.0;
    for x in &frame {
        for y in &frame {
            worst = worst.max((model.torsion(x, y) + g.cross(x, y).scale(&S::from_frac(2, 3))).max_abs());
        }
    }
    report.residual("curvature.torsion", "homogeneous/canonical-torsion", worst, tol, "T = −⅔A");

    report.residual(
        "curvature.levi-civita-round",
        "homogeneous/round-sphere",
        rlc.sub(&round_curvature()).max_abs(),
        tol,
        "sectional curvature 1",
    );
    let scal = rlc.scal();
    report.residual(
        "curvature.scal",
        "homogeneous/normalized-scalar-curvature",
        (scal.to_f64() - 42.0).abs(),
        tol,
        format!("scal = {}", scal.to_f64()),
    );
    report.residual(
        "curvature.einstein",
        "curvature/einstein-constant",
        (rlc.ricci() - Endo::identity().scale(&S::from_int(6))).max_abs(),
        tol,
        "Ric = 6g",
    );
    report.residual(
        "curvature.canonical-ricci",
        "curvature/canonical-ricci",
        (rbar.ricci() - Endo::identity().scale(&S::from_frac(16, 3))).max_abs(),
        tol,
        "R̄ic = 16/3 g",
    );

    // (a) difference lemma
    let diff = rbar.sub(&rlc);
    let ninth = S::from_frac(1, 9);
    let mut worst_a: f64 = 0.0;
    let mut worst_a2: f64 = 0.0;
    let mut worst_b: f64 = 0.0;
    for w in &frame {
        for x in &frame {
            for y in &frame {
                let iw = w.0.iter().position(|c| !c.negligible()).unwrap();
                let ix = x.0.iter().position(|c| !c.negligible()).unwrap();
                let iy = y.0.iter().position(|c| !c.negligible()).unwrap();
                let lhs = diff.apply(iw, ix, iy).clone();
                let first = (g.cross(&g.cross(w, x), y).scale(&S::from_int(2))
                    + g.cross(&g.cross(x, y), w)
                    + g.cross(&g.cross(y, w), x))
                .scale(&ninth);
                let second = (g.cross(&g.cross(w, x), y).scale(&S::from_int(4)) - x.scale(&(w.dot(y) * S::from_int(3)))
                    + w.scale(&(x.dot(y) * S::from_int(3))))
                .scale(&ninth);
                worst_a = worst_a.max((lhs.clone() - first).max_abs());
                worst_a2 = worst_a2.max((lhs - second).max_abs());
                let cyc = rbar.apply(iw, ix, iy).clone() + rbar.apply(ix, iy, iw).clone() + rbar.apply(iy, iw, ix).clone();
                worst_b = worst_b.max((cyc - g.chi(w, x, y).scale(&S::from_frac(2, 3))).max_abs());
            }
        }
    }
    report.residual("curvature.difference", "curvature/difference-lemma", worst_a.max(worst_a2), tol, "both displayed forms");
    report.residual("curvature.bianchi", "curvature/first-bianchi-g2", worst_b, tol, "cyclic sum = ⅔χ");

    // (c) symmetries
    let mut worst: f64 = 0.0;
    for r in [&rbar, &rlc] {
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    for l in 0..DIM {
                        let v = r.get(i, j, k, l);
                        worst = worst
                            .max((v.clone() + r.get(j, i, k, l)).magnitude())
                            .max((v.clone() + r.get(i, j, l, k)).magnitude())
                            .max((v - r.get(k, l, i, j)).magnitude());
                    }
                }
            }
        }
    }
    report.residual("curvature.symmetries", "curvature/pair-symmetry", worst, tol, "both flavors");

    let mut worst: f64 = 0.0;
    for i in 0..DIM {
        for j in 0..DIM {
            let e = crate::exterior::endo_extend(&rbar.op(i, j), &g.phi);
            worst = worst.max(e.max_abs());
        }
    }
    report.residual("curvature.holonomy-g2", "homogeneous/phi-parallel", worst, tol, "R̄(X,Y)⋆φ = 0");

    // (d) q on T
    let rho_t = |z: &Endo<S>| z.to_mat();
    let qt = rlc.q_operator(rho_t);
    let qtbar = rbar.q_operator(rho_t);
    report.residual(
        "curvature.q-tangent",
        "curvature/q-on-tangent",
        qt.sub(&Mat::identity(DIM).scale(&S::from_int(6)))
            .max_abs()
            .max(qtbar.sub(&Mat::identity(DIM).scale(&S::from_frac(16, 3))).max_abs()),
        tol,
        "q(R) = 6, q(R̄) = 16/3",
    );

    // (e) q_S(R̄)
    let rho_s = |z: &Endo<S>| spin_lift(g, z);
    let qs = rbar.q_operator(rho_s);
    let psi_s = clifford_form_matrix(g, &g.psi);
    let expected = Mat::identity(8).scale(&S::from_frac(14, 3)).sub(&psi_s.scale(&S::from_frac(2, 3)));
    report.residual("curvature.q-spinor", "curvature/q-on-spinors", qs.sub(&expected).max_abs(), tol, "14/3 − ⅔ψ·");
    let qs_lc = rlc.q_operator(rho_s);
    report.residual(
        "curvature.q-spinor-round",
        "curvature/q-on-spinors",
        qs_lc.sub(&Mat::identity(8).scale(&S::from_frac(21, 4))).max_abs(),
        tol,
        "q_S(R) = scal/8",
    );

    // (f) Lichnerowicz-type displays on spinors
    let gam: Vec<Mat<S>> = (0..DIM).map(|i| gamma_matrix(g, i)).collect();
    let rs: Vec<Vec<Mat<S>>> =
        (0..DIM).map(|i| (0..DIM).map(|j| spin_lift(g, &rbar.op(i, j))).collect()).collect();
    let ricbar = rbar.ricci();
    let mut worst: f64 = 0.0;
    for x in 0..DIM {
        let mut lhs = Mat::zeros(8, 8);
        for j in 0..DIM {
            lhs = lhs.add(&gam[j].mul(&rs[x][j]));
        }
        let ric_x = ricbar.column(x);
        let mut ric_gamma = Mat::zeros(8, 8);
        for (k, gk) in gam.iter().enumerate() {
            ric_gamma = ric_gamma.add(&gk.scale(&ric_x.0[k]));
        }
        let xpsi = clifford_form_matrix(g, &interior(&frame[x], &g.psi));
        let rhs = ric_gamma.scale(&S::from_frac(-1, 2)).sub(&xpsi.scale(&S::from_frac(2, 3)));
        worst = worst.max(lhs.sub(&rhs).max_abs());
    }
    report.residual("curvature.lichnerowicz-vector", "operators/lichnerowicz-lemma", worst, tol, "e_j·R̄_S(X,e_j)");
    let mut total = Mat::zeros(8, 8);
    for i in 0..DIM {
        for j in 0..DIM {
            total = total.add(&gam[i].mul(&gam[j]).mul(&rs[i][j]));
        }
    }
    let expected = Mat::identity(8).scale(&S::from_frac(56, 3)).sub(&psi_s.scale(&S::from_frac(8, 3)));
    report.residual("curvature.lichnerowicz-scalar", "operators/lichnerowicz-scalar", total.sub(&expected).max_abs(), tol, "56/3 − 8/3ψ·");

    // (g) q(R̄) preserves the G₂ splittings of Λ² and Λ³
    let worst = [2usize, 3]
        .par_iter()
        .map(|&p| {
            let q = rbar.q_operator(|z| endo_matrix(z, p));
            let projectors: Vec<Mat<S>> = if p == 2 {
                vec![crate::exterior::form_operator(2, 2, |b| g.project2(b).0)]
            } else {
                vec![
                    crate::exterior::form_operator(3, 3, |b| g.project3(b).0),
                    crate::exterior::form_operator(3, 3, |b| g.project3(b).1),
                ]
            };
            projectors.iter().map(|pr| q.mul(pr).sub(&pr.mul(&q)).max_abs()).fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    report.residual("curvature.q-preserves-splitting", "curvature/q-g2-equivariant", worst, tol, "Λ² and Λ³ projectors");

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Rational;

    #[test]
    fn dimensions_and_scale() {
        let m = reductive_model::<Q>().unwrap();
        assert_eq!(m.h_basis.len(), 14);
        assert_eq!(m.m_basis.len(), 7);
        assert_eq!(m.metric_scale, Q::new(3, 4));
        assert_eq!(m.m_basis[0], m.raw_m[0].scale(&Q::new(2, 3)));
    }

    #[test]
    fn calibrated_bracket() {
        let m = reductive_model::<Q>().unwrap();
        let (x, _) = m.bracket(&Vector::e(1), &Vector::e(2));
        assert_eq!(x, Vector::e(3).scale(&Q::new(2, 3)));
    }

    #[test]
    fn h_closes() {
        let m = reductive_model::<Q>().unwrap();
        for a in &m.h_basis {
            for b in &m.h_basis {
                assert!(m.h_coords(&a.commutator(b)).is_some());
            }
        }
    }

    #[test]
    fn round_examples() {
        let m = reductive_model::<Q>().unwrap();
        let r = m.levi_civita_curvature();
        assert_eq!(r.apply(0, 1, 1), &Vector::e(1));
        assert_eq!(r.scal(), Q::from_int(42));
    }

    #[test]
    fn exact_suite_passes() {
        let r = curvature_suite::<Q>(0.0);
        assert!(r.all_pass(), "{:#?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn float_suite_passes() {
        let r = curvature_suite::<f64>(1e-10);
        assert!(r.all_pass(), "{:#?}", r.failures().collect::<Vec<_>>());
    }
}
