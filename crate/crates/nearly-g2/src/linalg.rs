//! Jacobi eigen- and singular-value routines for small dense matrices.
//!
//! Slower than LAPACK-style algorithms but robust on the highly degenerate
//! spectra that show up in representation theory.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

/// Unitary 2×2 rotation `G = diag(1, ē)·[[c, s], [−s, c]]` that diagonalizes
/// `[[a, g], [ḡ, b]]` via `G† M G`.
fn rotation(a: f64, b: f64, g: C64) -> (f64, f64, C64) {
    let r = g.norm();
    let e = g / r;
    let theta = (b - a) / (2.0 * r);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    (c, t * c, e)
}

/// `M ← M G` on columns `p`, `q`.
fn rotate_cols(m: &mut DMatrix<C64>, p: usize, q: usize, c: f64, s: f64, e: C64) {
    let ec = e.conj();
    for r in 0..m.nrows() {
        let (x, y) = (m[(r, p)], m[(r, q)]);
        m[(r, p)] = x * c - y * ec * s;
        m[(r, q)] = x * s + y * ec * c;
    }
}

/// `M ← G† M` on rows `p`, `q`.
fn rotate_rows(m: &mut DMatrix<C64>, p: usize, q: usize, c: f64, s: f64, e: C64) {
    for k in 0..m.ncols() {
        let (x, y) = (m[(p, k)], m[(q, k)]);
        m[(p, k)] = x * c - y * e * s;
        m[(q, k)] = x * s + y * e * c;
    }
}

/// Eigen-decomposition of a Hermitian matrix: eigenvalues in descending
/// order and the matching orthonormal eigenvectors as columns.
pub fn herm_eigen(h: &DMatrix<C64>) -> (Vec<f64>, DMatrix<C64>) {
    let n = h.nrows();
    let mut a = h.clone();
    let mut v = DMatrix::<C64>::identity(n, n);
    let scale = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
    for _ in 0..100 {
        let off: f64 = (0..n).flat_map(|p| (0..n).filter(move |&q| q != p).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let g = a[(p, q)];
                if g.norm() <= 1e-300 {
                    continue;
                }
                let (c, s, e) = rotation(a[(p, p)].re, a[(q, q)].re, g);
                rotate_cols(&mut a, p, q, c, s, e);
                rotate_rows(&mut a, p, q, c, s, e);
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                rotate_cols(&mut v, p, q, c, s, e);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let vals = order.iter().map(|&i| a[(i, i)].re).collect();
    let vecs = DMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    (vals, vecs)
}

/// Real symmetric variant of [`herm_eigen`].
pub fn sym_eigen(s: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let (vals, vecs) = herm_eigen(&s.map(|x| C64::new(x, 0.0)));
    (vals, vecs.map(|z| z.re))
}

/// One-sided Jacobi SVD: singular values (descending) and right singular
/// vectors `V` with `M V = U Σ`.
pub fn svd(m: &DMatrix<C64>) -> (Vec<f64>, DMatrix<C64>) {
    let n = m.ncols();
    let mut u = m.clone();
    let mut v = DMatrix::<C64>::identity(n, n);
    for _ in 0..100 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let a: f64 = u.column(p).iter().map(|z| z.norm_sqr()).sum();
                let b: f64 = u.column(q).iter().map(|z| z.norm_sqr()).sum();
                let g: C64 = u.column(p).iter().zip(u.column(q).iter()).map(|(x, y)| x.conj() * y).sum();
                if g.norm() <= 1e-15 * (a * b).sqrt() || g.norm() <= 1e-300 {
                    continue;
                }
                rotated = true;
                let (c, s, e) = rotation(a, b, g);
                rotate_cols(&mut u, p, q, c, s, e);
                rotate_cols(&mut v, p, q, c, s, e);
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: Vec<f64> = (0..n).map(|k| u.column(k).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let vals = order.iter().map(|&i| norms[i]).collect();
    let vecs = DMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    (vals, vecs)
}

/// Orthonormal basis (columns) of the null space, using singular values below
/// `tol · max(σ_max, 1)`.
pub fn nullspace(m: &DMatrix<C64>, tol: f64) -> DMatrix<C64> {
    let (s, v) = svd(m);
    let thr = tol * s.first().copied().unwrap_or(0.0).max(1.0);
    let keep: Vec<usize> = (0..s.len()).filter(|&k| s[k] <= thr).collect();
    DMatrix::from_fn(v.nrows(), keep.len(), |r, c| v[(r, keep[c])])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(n: usize, m: usize, seed: u64) -> DMatrix<C64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        DMatrix::from_fn(n, m, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    #[test]
    fn hermitian_eigen_reconstructs() {
        let a = random(9, 9, 1);
        let h = &a + a.adjoint();
        let (w, v) = herm_eigen(&h);
        let d = DMatrix::from_fn(9, 9, |r, c| if r == c { C64::new(w[r], 0.0) } else { C64::new(0.0, 0.0) });
        let back = &v * d * v.adjoint();
        assert!((back - h).iter().all(|z| z.norm() < 1e-12));
        assert!(w.windows(2).all(|p| p[0] >= p[1]));
    }

    #[test]
    fn degenerate_spectrum() {
        // rank-2 projector plus multiples of identity on a 3-dim subspace
        let b = random(8, 3, 2);
        let h = &b * b.adjoint();
        let (w, v) = herm_eigen(&h);
        assert!(w[3..].iter().all(|x| x.abs() < 1e-12));
        let d = DMatrix::from_fn(8, 8, |r, c| if r == c { C64::new(w[r], 0.0) } else { C64::new(0.0, 0.0) });
        assert!((&h * &v - &v * d).iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn svd_rank_and_nullspace() {
        let a = random(12, 4, 3);
        let b = random(4, 7, 4);
        let m = &a * &b;
        let (s, _) = svd(&m);
        assert!(s[3] > 1e-3 && s[4] < 1e-12);
        let n = nullspace(&m, 1e-10);
        assert_eq!(n.ncols(), 3);
        assert!((&m * &n).iter().all(|z| z.norm() < 1e-12));
    }
}
