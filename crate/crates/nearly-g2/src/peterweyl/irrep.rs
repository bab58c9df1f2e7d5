//! Irreducible representations of `so(7, ℂ)` from the Shapovalov form.
//!
//! Weight spaces are filled top-down: `V_μ` is spanned by `F_i v` for
//! `v ∈ V_{μ+α_i}`, and the Gram matrix of these vectors is computed from
//! already known blocks via `⟨F_i v, F_j w⟩ = ⟨E_j v, E_i w⟩ + δ_ij μ_i…`.
//! Its positive eigenvectors give an orthonormal basis, so the lowering
//! operators are real and the raising operators are their transposes.

use std::collections::{BTreeSet, HashMap};

use nalgebra::DMatrix;
use nalgebra_sparse::{CooMatrix, CsrMatrix};
use serde::{Deserialize, Serialize};

use super::lie::{lie_data, CMatrix, RootWord, ALPHA, C64};
use super::weights::{casimir_raw, weyl_dimension, Weight};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::exterior::Endo;
use crate::linalg::sym_eigen;

pub type CCsr = CsrMatrix<C64>;

/// One lowering block `F_i : V_ν → V_{ν−α_i}`, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoweringBlock {
    pub letter: u8,
    /// Index of `ν` in [`IrrepData::weights`].
    pub source: usize,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

/// The raw output of the Shapovalov construction; this is what gets cached.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IrrepData {
    pub weight: Weight,
    pub weights: Vec<[i32; 3]>,
    pub mults: Vec<usize>,
    pub blocks: Vec<LoweringBlock>,
}

fn add(a: [i32; 3], b: [i32; 3]) -> [i32; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn sub(a: [i32; 3], b: [i32; 3]) -> [i32; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

impl IrrepData {
    pub fn build(weight: Weight) -> Result<Self> {
        let top = weight.labels().map(|x| x as i32);
        let mut mult: HashMap<[i32; 3], usize> = HashMap::new();
        let mut order = vec![top];
        mult.insert(top, 1);
        let mut lower: [HashMap<[i32; 3], DMatrix<f64>>; 3] = Default::default();
        let mut level = vec![top];
        while !level.is_empty() {
            let cand: BTreeSet<[i32; 3]> =
                level.iter().flat_map(|&m| ALPHA.iter().map(move |&a| sub(m, a))).collect();
            let mut next = Vec::new();
            for mu in cand {
                if mult.contains_key(&mu) {
                    continue;
                }
                let mut idx = Vec::new();
                for (i, &a) in ALPHA.iter().enumerate() {
                    let nu = add(mu, a);
                    if let Some(&d) = mult.get(&nu) {
                        idx.extend((0..d).map(|k| (i, nu, k)));
                    }
                }
                let n = idx.len();
                let mut g = DMatrix::<f64>::zeros(n, n);
                for (p, &(i, nu_p, k)) in idx.iter().enumerate() {
                    for (q, &(j, _, l)) in idx.iter().enumerate() {
                        let t = add(add(mu, ALPHA[i]), ALPHA[j]);
                        let mut v = 0.0;
                        if let (Some(fj), Some(fi)) = (lower[j].get(&t), lower[i].get(&t)) {
                            v += fj.row(k).dot(&fi.row(l));
                        }
                        if i == j && k == l {
                            v += f64::from(nu_p[i]);
                        }
                        g[(p, q)] = v;
                    }
                }
                if n == 0 {
                    continue;
                }
                let (w, u) = sym_eigen(&g);
                let keep: Vec<usize> = (0..n).filter(|&r| w[r] > 1e-9 * w[0].max(1.0)).collect();
                let d = keep.len();
                if d == 0 {
                    continue;
                }
                mult.insert(mu, d);
                order.push(mu);
                next.push(mu);
                for (p, &(i, nu, k)) in idx.iter().enumerate() {
                    let dn = mult[&nu];
                    let f = lower[i].entry(nu).or_insert_with(|| DMatrix::zeros(d, dn));
                    for (r, &e) in keep.iter().enumerate() {
                        f[(r, k)] = w[e].sqrt() * u[(p, e)];
                    }
                }
            }
            level = next;
        }
        let total: usize = mult.values().sum();
        let expect = weyl_dimension(weight);
        if total != expect {
            return Err(Error::Construction(format!(
                "irrep {weight}: Shapovalov construction gave dimension {total}, expected {expect}"
            )));
        }
        let pos: HashMap<[i32; 3], usize> = order.iter().enumerate().map(|(k, &w)| (w, k)).collect();
        let mut blocks = Vec::new();
        for (i, map) in lower.iter().enumerate() {
            let mut keys: Vec<_> = map.keys().copied().collect();
            keys.sort_by_key(|k| pos[k]);
            for nu in keys {
                let m = &map[&nu];
                blocks.push(LoweringBlock {
                    letter: i as u8,
                    source: pos[&nu],
                    rows: m.nrows(),
                    cols: m.ncols(),
                    data: (0..m.nrows()).flat_map(|r| (0..m.ncols()).map(move |c| m[(r, c)])).collect(),
                });
            }
        }
        let mults = order.iter().map(|w| mult[w]).collect();
        Ok(IrrepData { weight, weights: order, mults, blocks })
    }
}

/// A finite-dimensional irrep with sparse images of a basis of `so(7, ℂ)`.
pub struct Irrep {
    pub weight: Weight,
    pub dim: usize,
    /// Spin(7)-weight of each basis vector.
    pub vector_weights: Vec<[i32; 3]>,
    /// Images of [`super::LieData::basis`].
    pub basis: Vec<CsrMatrix<f64>>,
}

fn commutator(a: &CsrMatrix<f64>, b: &CsrMatrix<f64>) -> CsrMatrix<f64> {
    prune(&(&(a * b) - &(b * a)))
}

fn prune(m: &CsrMatrix<f64>) -> CsrMatrix<f64> {
    let mut coo = CooMatrix::new(m.nrows(), m.ncols());
    for (r, c, &v) in m.triplet_iter() {
        if v.abs() > 1e-13 {
            coo.push(r, c, v);
        }
    }
    CsrMatrix::from(&coo)
}

fn generate(letters: &[CsrMatrix<f64>; 3], words: &[RootWord]) -> Vec<CsrMatrix<f64>> {
    let mut out: Vec<CsrMatrix<f64>> = Vec::new();
    for w in words {
        let m = match w.parent {
            None => letters[w.letter].clone(),
            Some(p) => commutator(&letters[w.letter], &out[p]),
        };
        out.push(m);
    }
    out
}

impl Irrep {
    pub fn new(weight: Weight) -> Result<Self> {
        Self::from_data(&IrrepData::build(weight)?)
    }

    pub fn from_data(data: &IrrepData) -> Result<Self> {
        let mut offsets = Vec::with_capacity(data.mults.len());
        let mut dim = 0;
        for &m in &data.mults {
            offsets.push(dim);
            dim += m;
        }
        let index: HashMap<[i32; 3], usize> = data.weights.iter().enumerate().map(|(k, &w)| (w, k)).collect();
        let mut f: [CooMatrix<f64>; 3] = std::array::from_fn(|_| CooMatrix::new(dim, dim));
        for b in &data.blocks {
            let i = b.letter as usize;
            let nu = *data.weights.get(b.source).ok_or_else(|| Error::Cache("bad block source".into()))?;
            let mu = sub(nu, ALPHA[i]);
            let &t = index.get(&mu).ok_or_else(|| Error::Cache("block target weight missing".into()))?;
            if b.rows != data.mults[t] || b.cols != data.mults[b.source] || b.data.len() != b.rows * b.cols {
                return Err(Error::Cache("block shape mismatch".into()));
            }
            for r in 0..b.rows {
                for c in 0..b.cols {
                    let v = b.data[r * b.cols + c];
                    if v != 0.0 {
                        f[i].push(offsets[t] + r, offsets[b.source] + c, v);
                    }
                }
            }
        }
        let fm: [CsrMatrix<f64>; 3] = std::array::from_fn(|i| CsrMatrix::from(&f[i]));
        let em: [CsrMatrix<f64>; 3] = std::array::from_fn(|i| fm[i].transpose());
        let mut vector_weights = Vec::with_capacity(dim);
        for (w, &m) in data.weights.iter().zip(&data.mults) {
            vector_weights.extend(std::iter::repeat(*w).take(m));
        }
        let hm: [CsrMatrix<f64>; 3] = std::array::from_fn(|i| {
            let mut coo = CooMatrix::new(dim, dim);
            for (k, w) in vector_weights.iter().enumerate() {
                if w[i] != 0 {
                    coo.push(k, k, f64::from(w[i]));
                }
            }
            CsrMatrix::from(&coo)
        });
        let words = &lie_data().words;
        let mut basis = generate(&em, words);
        basis.extend(generate(&fm, words));
        basis.extend(hm);
        Ok(Irrep { weight: data.weight, dim, vector_weights, basis })
    }

    /// `ρ(X)` for `X ∈ so(7, ℂ)`.
    pub fn rho(&self, x: &CMatrix) -> CCsr {
        self.combine(&lie_data().coords(x))
    }

    /// `ρ` of a real skew endomorphism.
    pub fn rho_real(&self, z: &Endo<f64>) -> CCsr {
        self.rho(&super::LieData::complexify(z))
    }

    fn combine(&self, c: &[C64]) -> CCsr {
        let mut coo = CooMatrix::new(self.dim, self.dim);
        for (k, b) in self.basis.iter().enumerate() {
            if c[k].norm() < 1e-14 {
                continue;
            }
            for (r, col, &v) in b.triplet_iter() {
                coo.push(r, col, c[k] * v);
            }
        }
        let m = CsrMatrix::from(&coo);
        let mut out = CooMatrix::new(self.dim, self.dim);
        for (r, col, v) in m.triplet_iter() {
            if v.norm() > 1e-13 {
                out.push(r, col, *v);
            }
        }
        CsrMatrix::from(&out)
    }

    /// `max |ρ([X,Y]) − [ρX, ρY]|` over the standard basis of `so(7)`.
    pub fn homomorphism_residual(&self) -> f64 {
        use crate::homogeneous::{so7_generator, so7_pairs};
        let gens: Vec<CMatrix> =
            so7_pairs().into_iter().map(|(a, b)| super::LieData::complexify(&so7_generator(a, b))).collect();
        let reps: Vec<CCsr> = gens.iter().map(|x| self.rho(x)).collect();
        let mut worst: f64 = 0.0;
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                let br = super::lie::bracket(&gens[i], &gens[j]);
                let lhs = self.rho(&br);
                let rhs = &(&reps[i] * &reps[j]) - &(&reps[j] * &reps[i]);
                let diff = &lhs - &rhs;
                worst = diff.values().iter().map(|z| z.norm()).fold(worst, f64::max);
            }
        }
        worst
    }

    /// `max |−Σ ρ(E_ab)² − c(λ)·Id|` with `c(λ) = ⟨λ, λ+2δ⟩`.
    pub fn casimir_residual(&self) -> f64 {
        use crate::homogeneous::{so7_generator, so7_pairs};
        let raw = casimir_raw(self.weight).to_f64();
        let mut acc = CooMatrix::new(self.dim, self.dim);
        for k in 0..self.dim {
            acc.push(k, k, C64::new(raw, 0.0));
        }
        let mut sum = CsrMatrix::from(&acc);
        for (a, b) in so7_pairs() {
            let r = self.rho_real(&so7_generator(a, b));
            sum = &sum + &(&r * &r);
        }
        sum.values().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Basis indices whose `G₂`-weight is `key`.
    pub fn indices_of_g2_weight(&self, key: [i32; 2]) -> Vec<usize> {
        (0..self.dim).filter(|&k| [self.vector_weights[k][0], self.vector_weights[k][1]] == key).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_match_weyl() {
        for w in crate::peterweyl::enumerate_weights(3) {
            let data = IrrepData::build(w).unwrap();
            assert_eq!(data.mults.iter().sum::<usize>(), weyl_dimension(w), "{w}");
        }
    }

    #[test]
    fn small_irreps_are_representations() {
        for w in [Weight::new(1, 0, 0), Weight::new(0, 0, 1), Weight::new(0, 1, 0), Weight::new(1, 0, 1)] {
            let v = Irrep::new(w).unwrap();
            assert!(v.homomorphism_residual() < 1e-10, "{w}");
            assert!(v.casimir_residual() < 1e-10, "{w}");
        }
    }

    #[test]
    fn casimir_on_largest_level_three_irreps() {
        for w in [Weight::new(0, 3, 0), Weight::new(1, 1, 1)] {
            assert!(Irrep::new(w).unwrap().casimir_residual() < 1e-9, "{w}");
        }
    }
}
