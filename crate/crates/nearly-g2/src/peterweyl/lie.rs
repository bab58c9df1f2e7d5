//! Chevalley data of `so(7, ℂ)` in its defining representation, and the
//! raising operators of the stabilizer `g₂ ⊗ ℂ`.
//!
//! The Cartan subalgebra rotates the planes `(e₂,e₃)`, `(e₇,e₆)`,
//! `(e₄,e₅)`; with `u(p,q) = (e_p − i e_q)/√2` the simple root vectors are
//! `T(u₁,ū₂)`, `T(u₂,ū₃)`, `√2 T(u₃,e₁)` where `T(x,y) = xyᵀ − yxᵀ`. In this
//! frame `g₂` shares the first two simple coroots, so the `G₂`-weight of a
//! `Spin(7)`-weight vector with Dynkin labels `m` is `(m₀, m₁)`.

use std::sync::OnceLock;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::exterior::{endo_matrix, Endo};
use crate::g2algebra::standard_structure;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;

/// Simple roots in Dynkin coordinates (rows of the `B₃` Cartan matrix).
pub const ALPHA: [[i32; 3]; 3] = [[2, -1, 0], [-1, 2, -2], [0, -1, 2]];

/// A root vector is built as `[E_i, parent]`, or is the simple `E_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootWord {
    pub parent: Option<usize>,
    pub letter: usize,
}

pub struct LieData {
    pub e: [CMatrix; 3],
    pub f: [CMatrix; 3],
    pub h: [CMatrix; 3],
    /// Recipes for the nine positive root vectors.
    pub words: Vec<RootWord>,
    /// `9 E` root vectors, `9 F` root vectors, `3 H`: a basis of `so(7, ℂ)`.
    pub basis: Vec<CMatrix>,
    pinv: CMatrix,
    /// Raising operators `E_a`, `E_b` of `g₂ ⊗ ℂ` (7×7).
    pub g2_raise: [CMatrix; 2],
}

fn t(x: &[C64], y: &[C64]) -> CMatrix {
    CMatrix::from_fn(7, 7, |r, c| x[r] * y[c] - y[r] * x[c])
}

pub(crate) fn bracket(x: &CMatrix, y: &CMatrix) -> CMatrix {
    x * y - y * x
}

/// Largest entry modulus.
pub fn cmax(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn vdot(x: &CMatrix, y: &CMatrix) -> C64 {
    x.iter().zip(y.iter()).map(|(a, b)| a.conj() * b).sum()
}

/// Complexified `X ↦ X⋆φ` on `so(7, ℂ)`.
pub fn star_phi(x: &CMatrix) -> Vec<C64> {
    let g = standard_structure::<f64>();
    let re = Endo::from_fn(|r, c| x[(r, c)].re);
    let im = Endo::from_fn(|r, c| x[(r, c)].im);
    let phi = g.phi.coeffs();
    let a = endo_matrix(&re, 3).apply(phi);
    let b = endo_matrix(&im, 3).apply(phi);
    a.into_iter().zip(b).map(|(p, q)| C64::new(p, q)).collect()
}

fn generate(letters: &[CMatrix; 3], words: &[RootWord]) -> Vec<CMatrix> {
    let mut out: Vec<CMatrix> = Vec::with_capacity(words.len());
    for w in words {
        let m = match w.parent {
            None => letters[w.letter].clone(),
            Some(p) => bracket(&letters[w.letter], &out[p]),
        };
        out.push(m);
    }
    out
}

/// Gram–Schmidt membership test.
fn independent(span: &[CMatrix], x: &CMatrix, tol: f64) -> bool {
    let mut q: Vec<CMatrix> = Vec::new();
    for v in span {
        let mut w = v.clone();
        for u in &q {
            w -= u * vdot(u, &w);
        }
        let n = w.norm();
        if n > tol {
            q.push(w / C64::new(n, 0.0));
        }
    }
    let mut w = x.clone();
    for u in &q {
        w -= u * vdot(u, &w);
    }
    w.norm() > tol * x.norm().max(1.0)
}

fn root_words(e: &[CMatrix; 3]) -> Vec<RootWord> {
    let mut vecs: Vec<CMatrix> = e.to_vec();
    let mut words: Vec<RootWord> = (0..3).map(|i| RootWord { parent: None, letter: i }).collect();
    let mut k = 0;
    while k < vecs.len() {
        for i in 0..3 {
            let x = bracket(&e[i], &vecs[k]);
            if cmax(&x) < 1e-12 {
                continue;
            }
            if independent(&vecs, &x, 1e-9) {
                vecs.push(x);
                words.push(RootWord { parent: Some(k), letter: i });
            }
        }
        k += 1;
    }
    words
}

fn eps_root(x: &CMatrix, he: &[CMatrix; 3]) -> [i32; 3] {
    let n = vdot(x, x);
    he.clone().map(|h| (vdot(x, &bracket(&h, x)) / n).re.round() as i32)
}

fn build() -> LieData {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let u = |p: usize, q: usize| {
        let mut v = vec![C64::new(0.0, 0.0); 7];
        v[p - 1] = C64::new(s, 0.0);
        v[q - 1] = C64::new(0.0, -s);
        v
    };
    let conj = |v: &[C64]| v.iter().map(|z| z.conj()).collect::<Vec<_>>();
    let us = [u(2, 3), u(7, 6), u(4, 5)];
    let mut e1 = vec![C64::new(0.0, 0.0); 7];
    e1[0] = C64::new(1.0, 0.0);
    let e = [
        t(&us[0], &conj(&us[1])),
        t(&us[1], &conj(&us[2])),
        t(&us[2], &e1) * C64::new(std::f64::consts::SQRT_2, 0.0),
    ];
    let f = e.clone().map(|m| m.adjoint());
    let h = [bracket(&e[0], &f[0]), bracket(&e[1], &f[1]), bracket(&e[2], &f[2])];

    let words = root_words(&e);
    let pos = generate(&e, &words);
    let neg = generate(&f, &words);
    let mut basis = pos.clone();
    basis.extend(neg.iter().cloned());
    basis.extend(h.iter().cloned());
    let bmat = CMatrix::from_fn(49, basis.len(), |r, c| basis[c].as_slice()[r]);
    let bh = bmat.adjoint();
    let pinv = (&bh * &bmat).lu().solve(&bh).expect("basis matrix has full column rank");

    // ε-Cartan: Hε₁ = H₁+H₂+H₃/2, Hε₂ = H₂+H₃/2, Hε₃ = H₃/2
    let half = C64::new(0.5, 0.0);
    let he = [&h[0] + &h[1] + &h[2] * half, &h[1] + &h[2] * half, &h[2] * half];
    let roots: Vec<[i32; 3]> = pos.iter().map(|x| eps_root(x, &he)).collect();
    let find = |r: [i32; 3]| roots.iter().position(|&q| q == r).expect("root present");

    // E_a: the g₂ combination inside span{E_{ε₂}, F_{ε₁+ε₃}}
    let ca = &pos[find([0, 1, 0])];
    let cb = &neg[find([1, 0, 1])];
    let (sa, sb) = (star_phi(ca), star_phi(cb));
    let uu: C64 = sa.iter().map(|z| z.norm_sqr()).sum::<f64>().into();
    let uv: C64 = sa.iter().zip(&sb).map(|(a, b)| a.conj() * b).sum();
    let x = -uv / uu;
    let ea = ca * x + cb;
    let eb = pos[find([1, -1, 0])].clone();
    for m in [&ea, &eb] {
        let r = star_phi(m).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(r < 1e-12, "g₂ raising operator does not preserve φ");
    }

    LieData { e, f, h, words, basis, pinv, g2_raise: [ea, eb] }
}

pub fn lie_data() -> &'static LieData {
    static DATA: OnceLock<LieData> = OnceLock::new();
    DATA.get_or_init(build)
}

impl LieData {
    /// Coordinates of `X ∈ so(7, ℂ)` in [`LieData::basis`].
    pub fn coords(&self, x: &CMatrix) -> Vec<C64> {
        let v = CMatrix::from_column_slice(49, 1, x.as_slice());
        (&self.pinv * v).iter().copied().collect()
    }

    /// Real skew matrix as a complex one.
    pub fn complexify(z: &Endo<f64>) -> CMatrix {
        CMatrix::from_fn(7, 7, |r, c| C64::new(z.m[r][c], 0.0))
    }

    /// `G₂` Cartan elements `h₁ = H₁`, `h₂ = H₂`.
    pub fn g2_cartan(&self) -> [&CMatrix; 2] {
        [&self.h[0], &self.h[1]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chevalley_relations() {
        let d = lie_data();
        for i in 0..3 {
            for j in 0..3 {
                let ef = bracket(&d.e[i], &d.f[j]);
                let target = if i == j { d.h[i].clone() } else { CMatrix::zeros(7, 7) };
                assert!(cmax(&(ef - target)) < 1e-12);
                let he = bracket(&d.h[i], &d.e[j]);
                let k = C64::new(f64::from(ALPHA[j][i]), 0.0);
                assert!(cmax(&(he - &d.e[j] * k)) < 1e-12);
            }
        }
        for m in d.e.iter().chain(&d.f) {
            assert!(cmax(&(m + m.transpose())) < 1e-12, "not skew");
        }
    }

    #[test]
    fn nine_positive_roots_and_reconstruction() {
        let d = lie_data();
        assert_eq!(d.words.len(), 9);
        assert_eq!(d.basis.len(), 21);
        for (a, b) in crate::homogeneous::so7_pairs() {
            let z = LieData::complexify(&crate::homogeneous::so7_generator(a, b));
            let c = d.coords(&z);
            let mut back = CMatrix::zeros(7, 7);
            for (k, m) in d.basis.iter().enumerate() {
                back += m * c[k];
            }
            assert!(cmax(&(back - z)) < 1e-12);
        }
    }

    #[test]
    fn g2_raising_operators_stabilize_phi() {
        let d = lie_data();
        for m in &d.g2_raise {
            assert!(cmax(m) > 0.1);
            assert!(star_phi(m).iter().all(|z| z.norm() < 1e-12));
        }
        for h in d.g2_cartan() {
            assert!(star_phi(h).iter().all(|z| z.norm() < 1e-12));
        }
    }
}
