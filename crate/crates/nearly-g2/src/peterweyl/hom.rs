//! `Hom_{G₂}(V_λ, W)` via highest-weight vectors of `g₂ ⊗ ℂ`.
//!
//! For each `G₂`-type occurring in `W` the highest-weight vectors of that
//! type are found in `V_λ` and in `W`; a pair `(v, w)` extends to an
//! intertwiner by sending `F…F v ↦ F…F w` on the generated irreducible and
//! zero on its orthogonal complement.

use std::collections::BTreeMap;

use super::bundles::{fibers, Bundle};
use super::irrep::{CCsr, Irrep};
use super::lie::{lie_data, CMatrix, C64};
use super::op::CMat;
use crate::error::{Error, Result};
use crate::linalg::{herm_eigen, nullspace};

/// `G₂` types in the bundles at hand: highest weight `(k₁, k₂)` and dimension.
const TYPES: [([i32; 2], usize); 4] = [([0, 0], 1), ([0, 1], 7), ([1, 1], 14), ([0, 2], 27)];

/// Orthonormal basis of a Hom space and its worst intertwining residual.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub bundle: Bundle,
    pub basis: Vec<CMat>,
    pub residual: f64,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// `ρ_W(X)` for complex `X ∈ so(7, ℂ)` on an ambient fibre.
fn rep_complex(b: Bundle, x: &CMatrix) -> CMatrix {
    let f = fibers();
    let re = crate::exterior::Endo::from_fn(|r, c| x[(r, c)].re);
    let im = crate::exterior::Endo::from_fn(|r, c| x[(r, c)].im);
    let (a, bm) = (f.rep(b, &re), f.rep(b, &im));
    CMatrix::from_fn(a.nrows(), a.ncols(), |r, c| C64::new(a[(r, c)], bm[(r, c)]))
}

fn csr_mul_vec(s: &CCsr, v: &[C64]) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); s.nrows()];
    for (r, row) in s.row_iter().enumerate() {
        out[r] = row.col_indices().iter().zip(row.values()).map(|(&c, x)| x * v[c]).sum();
    }
    out
}

fn dense_mul_vec(m: &CMatrix, v: &[C64]) -> Vec<C64> {
    (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| m[(r, c)] * v[c]).sum()).collect()
}

fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[C64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Lowering data on both sides.
struct Side<'a> {
    v_lower: [&'a CCsr; 2],
    w_lower: [&'a CMatrix; 2],
}

/// Words in `F_a, F_b` applied to `(v, w)` until `dim` independent vectors
/// in `V` are reached.
fn orbit(side: &Side<'_>, v: Vec<C64>, w: Vec<C64>, dim: usize) -> Result<(Vec<Vec<C64>>, Vec<Vec<C64>>)> {
    let mut cv = vec![v];
    let mut cw = vec![w];
    let mut q: Vec<Vec<C64>> = vec![cv[0].iter().map(|z| z / norm(&cv[0])).collect()];
    let mut k = 0;
    while k < cv.len() && cv.len() < dim {
        for op in 0..2 {
            let nv = csr_mul_vec(side.v_lower[op], &cv[k]);
            let nn = norm(&nv);
            if nn < 1e-10 {
                continue;
            }
            let mut r = nv.clone();
            for u in &q {
                let c = dot(u, &r);
                r.iter_mut().zip(u).for_each(|(x, y)| *x -= c * y);
            }
            let rn = norm(&r);
            // genuinely new directions have `rn/nn` of order one; anything
            // near roundoff is a relation among words
            if rn > 1e-6 * nn {
                q.push(r.iter().map(|z| z / rn).collect());
                // rescale both sides alike to keep the words well conditioned
                let nw: Vec<C64> = dense_mul_vec(side.w_lower[op], &cw[k]).iter().map(|z| z / nn).collect();
                cw.push(nw);
                cv.push(nv.iter().map(|z| z / nn).collect());
                if cv.len() == dim {
                    break;
                }
            }
        }
        k += 1;
    }
    if cv.len() != dim {
        return Err(Error::Construction(format!("G₂ orbit spans {} vectors, expected {dim}", cv.len())));
    }
    Ok((cv, cw))
}

/// `Σ c_k A_k` made orthonormal in the Hilbert–Schmidt product.
pub(crate) fn orthonormalize(items: &[CMat], threshold: f64) -> Vec<CMat> {
    if items.is_empty() {
        return Vec::new();
    }
    let n = items.len();
    let g = CMatrix::from_fn(n, n, |k, l| items[k].inner(&items[l]));
    let (w, u) = herm_eigen(&g);
    (0..n)
        .filter(|&r| w[r] > threshold * threshold)
        .map(|r| {
            let c: Vec<C64> = (0..n).map(|k| u[(k, r)] / w[r].sqrt()).collect();
            CMat::combine(items, &c)
        })
        .collect()
}

/// Worst `‖A ρ_V(X) − ρ_W(X) A‖_max` over the `g₂` basis.
pub fn intertwining_residual(v: &Irrep, b: Bundle, basis: &[CMat]) -> f64 {
    let f = fibers();
    let mut worst: f64 = 0.0;
    for h in &f.model.h_basis {
        let rv = v.rho_real(h);
        let rw = f.rep(b, h);
        for a in basis {
            let lhs = a.mul_csr(&rv);
            let rhs = a.left_mul(&rw);
            worst = worst.max(lhs.sub(&rhs).max_abs());
        }
    }
    worst
}

/// Hom spaces into every ambient fibre.
pub fn ambient_homs(v: &Irrep) -> Result<BTreeMap<Bundle, HomSpace>> {
    let lie = lie_data();
    let [ea, eb] = &lie.g2_raise;
    let [h1, h2] = lie.g2_cartan();
    let (fa, fb) = (ea.adjoint(), eb.adjoint());
    let v_raise = [v.rho(ea), v.rho(eb)];
    let v_lower = [v.rho(&fa), v.rho(&fb)];

    // highest-weight vectors in V, per type
    let mut v_hw: BTreeMap<[i32; 2], Vec<Vec<C64>>> = BTreeMap::new();
    for (key, _) in TYPES {
        let idx = v.indices_of_g2_weight(key);
        if idx.is_empty() {
            continue;
        }
        let mut m = CMatrix::zeros(2 * v.dim, idx.len());
        for (op, s) in v_raise.iter().enumerate() {
            for (c, &k) in idx.iter().enumerate() {
                let mut e = vec![C64::new(0.0, 0.0); v.dim];
                e[k] = C64::new(1.0, 0.0);
                let col = csr_mul_vec(s, &e);
                for r in 0..v.dim {
                    m[(op * v.dim + r, c)] = col[r];
                }
            }
        }
        let ns = nullspace(&m, 1e-10);
        let vecs: Vec<Vec<C64>> = (0..ns.ncols())
            .map(|c| {
                let mut full = vec![C64::new(0.0, 0.0); v.dim];
                for (r, &k) in idx.iter().enumerate() {
                    full[k] = ns[(r, c)];
                }
                full
            })
            .collect();
        if !vecs.is_empty() {
            v_hw.insert(key, vecs);
        }
    }

    let mut out = BTreeMap::new();
    for b in [
        Bundle::Functions,
        Bundle::OneForms,
        Bundle::TwoForms,
        Bundle::ThreeForms,
        Bundle::FourForms,
        Bundle::Spinors,
        Bundle::SpinorValued1Forms,
        Bundle::Tensors2,
    ] {
        let n = b.fiber_dim();
        let w_raise = [rep_complex(b, ea), rep_complex(b, eb)];
        let w_lower = [rep_complex(b, &fa), rep_complex(b, &fb)];
        let w_h = [rep_complex(b, h1), rep_complex(b, h2)];
        let side = Side { v_lower: [&v_lower[0], &v_lower[1]], w_lower: [&w_lower[0], &w_lower[1]] };
        let mut items = Vec::new();
        for (key, dim) in TYPES {
            let Some(vs) = v_hw.get(&key) else { continue };
            let mut m = CMatrix::zeros(4 * n, n);
            m.view_mut((0, 0), (n, n)).copy_from(&w_raise[0]);
            m.view_mut((n, 0), (n, n)).copy_from(&w_raise[1]);
            for (t, h) in w_h.iter().enumerate() {
                let shifted = h - CMatrix::identity(n, n) * C64::new(f64::from(key[t]), 0.0);
                m.view_mut(((2 + t) * n, 0), (n, n)).copy_from(&shifted);
            }
            let ws = nullspace(&m, 1e-8);
            for vv in vs {
                for c in 0..ws.ncols() {
                    let w: Vec<C64> = ws.column(c).iter().copied().collect();
                    let (cv, cw) = orbit(&side, vv.clone(), w, dim)?;
                    let k = cv.len();
                    let cvm = CMatrix::from_fn(v.dim, k, |r, c| cv[c][r]);
                    let cwm = CMatrix::from_fn(n, k, |r, c| cw[c][r]);
                    let cvh = cvm.adjoint();
                    let gram = &cvh * &cvm;
                    let x = gram
                        .lu()
                        .solve(&cvh)
                        .ok_or_else(|| Error::Construction("singular orbit Gram matrix".into()))?;
                    items.push(CMat::from_complex(&(cwm * x)));
                }
            }
        }
        let basis = orthonormalize(&items, 1e-6);
        let residual = intertwining_residual(v, b, &basis);
        out.insert(b, HomSpace { bundle: b, basis, residual });
    }
    Ok(out)
}

/// Restricts ambient Hom spaces to the `G₂`-invariant sub-bundles.
pub fn all_homs(v: &Irrep) -> Result<BTreeMap<Bundle, HomSpace>> {
    let mut out = ambient_homs(v)?;
    let f = fibers();
    for b in Bundle::ALL {
        if b.is_ambient() {
            continue;
        }
        let p = f.projector(b).expect("sub-bundle has a projector");
        let amb = &out[&b.ambient()];
        let items: Vec<CMat> = amb.basis.iter().map(|a| a.left_mul(p)).collect();
        let basis = orthonormalize(&items, 1e-6);
        let residual = intertwining_residual(v, b, &basis);
        out.insert(b, HomSpace { bundle: b, basis, residual });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::peterweyl::Weight;

    fn dims(w: Weight) -> Vec<usize> {
        let v = Irrep::new(w).unwrap();
        let homs = all_homs(&v).unwrap();
        for h in homs.values() {
            assert!(h.residual < 1e-9, "{w} {}: residual {}", h.bundle, h.residual);
        }
        use Bundle::*;
        [Functions, OneForms, TwoForms, ThreeForms, FourForms, Spinors, SpinorValued1Forms, Tensors2]
            .iter()
            .map(|b| homs[b].dim())
            .collect()
    }

    #[test]
    fn hom_dimension_table() {
        // columns: Λ⁰ Λ¹ Λ² Λ³ Λ⁴ S S⊗T T⊗T
        let table = [
            ((0, 0, 0), [1, 0, 0, 1, 1, 1, 1, 1]),
            ((1, 0, 0), [0, 1, 1, 1, 1, 1, 2, 1]),
            ((0, 0, 1), [1, 1, 1, 2, 2, 2, 3, 2]),
            ((0, 1, 0), [0, 1, 2, 1, 1, 1, 3, 2]),
            ((0, 0, 2), [1, 1, 1, 3, 3, 2, 4, 3]),
            ((2, 0, 0), [0, 0, 0, 1, 1, 0, 1, 1]),
            ((1, 0, 1), [0, 1, 2, 2, 2, 1, 4, 3]),
        ];
        for ((a, b, c), want) in table {
            assert_eq!(dims(Weight::new(a, b, c)), want.to_vec(), "({a},{b},{c})");
        }
    }

    #[test]
    fn homs_are_orthonormal() {
        let v = Irrep::new(Weight::new(0, 1, 1)).unwrap();
        for h in all_homs(&v).unwrap().values() {
            for (k, a) in h.basis.iter().enumerate() {
                for (l, b) in h.basis.iter().enumerate() {
                    let want = if k == l { 1.0 } else { 0.0 };
                    assert!((a.inner(b) - C64::new(want, 0.0)).norm() < 1e-10);
                }
            }
        }
    }
}
