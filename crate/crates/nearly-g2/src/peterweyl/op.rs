//! Invariant differential operators as symbolic words in `∇̄`.
//!
//! On a Peter–Weyl block a section is an intertwiner `A : V_λ → W` and
//! `∇̄ᵢA = −A ρ_λ(mᵢ)`. Every operator in this crate is a finite sum
//! `A ↦ Σ_w P_w · A · ρ(m_{w₀}) ρ(m_{w₁}) ⋯` with pointwise matrices `P_w`,
//! so it is stored as a map from words to matrices and evaluated per block.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::bundles::RMat;
use super::irrep::CCsr;
use super::lie::{CMatrix, C64};

/// A complex matrix stored as real and imaginary parts, so products with real
/// pointwise maps stay real BLAS calls.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    pub re: RMat,
    pub im: RMat,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { re: RMat::zeros(rows, cols), im: RMat::zeros(rows, cols) }
    }

    pub fn from_complex(m: &CMatrix) -> Self {
        CMat { re: m.map(|z| z.re), im: m.map(|z| z.im) }
    }

    pub fn to_complex(&self) -> CMatrix {
        CMatrix::from_fn(self.re.nrows(), self.re.ncols(), |r, c| C64::new(self.re[(r, c)], self.im[(r, c)]))
    }

    pub fn nrows(&self) -> usize {
        self.re.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.re.ncols()
    }

    /// `P · self` for a real `P`.
    pub fn left_mul(&self, p: &RMat) -> CMat {
        CMat { re: p * &self.re, im: p * &self.im }
    }

    /// `self · S` for a complex sparse `S`.
    pub fn mul_csr(&self, s: &CCsr) -> CMat {
        let n = self.nrows();
        let mut out = CMat::zeros(n, s.ncols());
        let (are, aim) = (self.re.as_slice(), self.im.as_slice());
        let (ore, oim) = (out.re.as_mut_slice(), out.im.as_mut_slice());
        for (r, row) in s.row_iter().enumerate() {
            let (xr, xi) = (&are[r * n..(r + 1) * n], &aim[r * n..(r + 1) * n]);
            for (&c, v) in row.col_indices().iter().zip(row.values()) {
                let (yr, yi) = (&mut ore[c * n..(c + 1) * n], &mut oim[c * n..(c + 1) * n]);
                for k in 0..n {
                    yr[k] += xr[k] * v.re - xi[k] * v.im;
                    yi[k] += xr[k] * v.im + xi[k] * v.re;
                }
            }
        }
        out
    }

    pub fn add_assign(&mut self, other: &CMat) {
        self.re += &other.re;
        self.im += &other.im;
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        CMat { re: &self.re - &other.re, im: &self.im - &other.im }
    }

    pub fn scale(&self, s: f64) -> CMat {
        CMat { re: &self.re * s, im: &self.im * s }
    }

    /// Hilbert–Schmidt inner product `tr(self† · other)`.
    pub fn inner(&self, other: &CMat) -> C64 {
        let rr = self.re.dot(&other.re) + self.im.dot(&other.im);
        let ri = self.re.dot(&other.im) - self.im.dot(&other.re);
        C64::new(rr, ri)
    }

    pub fn norm(&self) -> f64 {
        (self.re.norm_squared() + self.im.norm_squared()).sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.re.iter().zip(self.im.iter()).map(|(a, b)| a.hypot(*b)).fold(0.0, f64::max)
    }

    /// `Σ c_k M_k`.
    pub fn combine(items: &[CMat], coeffs: &[C64]) -> CMat {
        let mut out = CMat::zeros(items[0].nrows(), items[0].ncols());
        for (m, c) in items.iter().zip(coeffs) {
            out.re += &m.re * c.re - &m.im * c.im;
            out.im += &m.re * c.im + &m.im * c.re;
        }
        out
    }
}

/// `A ↦ Σ_w P_w A ρ_w` with `ρ_w = ρ(m_{w₀})ρ(m_{w₁})⋯`.
#[derive(Clone, Debug, PartialEq)]
pub struct Op {
    rows: usize,
    cols: usize,
    terms: BTreeMap<Vec<u8>, RMat>,
}

impl Op {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Op { rows, cols, terms: BTreeMap::new() }
    }

    pub fn pointwise(p: RMat) -> Self {
        let mut op = Op::zero(p.nrows(), p.ncols());
        op.terms.insert(Vec::new(), p);
        op
    }

    pub fn identity(n: usize) -> Self {
        Op::pointwise(RMat::identity(n, n))
    }

    /// `∇̄ᵢ` on a fibre of dimension `n`.
    pub fn nabla_bar(n: usize, i: usize) -> Self {
        let mut op = Op::zero(n, n);
        op.terms.insert(vec![i as u8], -RMat::identity(n, n));
        op
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &RMat)> {
        self.terms.iter().map(|(w, p)| (w.as_slice(), p))
    }

    /// Highest number of derivatives.
    pub fn order(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Op) -> Op {
        assert_eq!(self.cols, inner.rows, "operator composition dimension mismatch");
        let mut out = Op::zero(self.rows, inner.cols);
        for (w2, p2) in &self.terms {
            for (w1, p1) in &inner.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.accumulate(w, p2 * p1);
            }
        }
        out.prune();
        out
    }

    /// `P ∘ self`.
    pub fn then(&self, p: &RMat) -> Op {
        Op::pointwise(p.clone()).compose(self)
    }

    /// `self ∘ P`.
    pub fn after(&self, p: &RMat) -> Op {
        self.compose(&Op::pointwise(p.clone()))
    }

    fn accumulate(&mut self, w: Vec<u8>, p: RMat) {
        match self.terms.get_mut(&w) {
            Some(q) => *q += p,
            None => {
                self.terms.insert(w, p);
            }
        }
    }

    fn prune(&mut self) {
        self.terms.retain(|_, p| p.amax() > 1e-14);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Stacks operators with a common source vertically.
    pub fn stack(parts: &[&Op]) -> Op {
        let cols = parts[0].cols;
        let rows: usize = parts.iter().map(|p| p.rows).sum();
        let mut out = Op::zero(rows, cols);
        let mut offset = 0;
        for part in parts {
            assert_eq!(part.cols, cols, "stacked operators need a common source");
            for (w, p) in &part.terms {
                let mut big = RMat::zeros(rows, cols);
                big.view_mut((offset, 0), (part.rows, cols)).copy_from(p);
                out.accumulate(w.clone(), big);
            }
            offset += part.rows;
        }
        out.prune();
        out
    }

    /// Applies the operator to `a` using `ρ(mᵢ)`; first products `aρ(mⱼ)` are
    /// shared between words.
    pub fn apply(&self, a: &CMat, rho_m: &[CCsr]) -> CMat {
        let refs: Vec<(&[u8], &RMat)> = self.terms().collect();
        let first: Vec<Option<CMat>> = (0..rho_m.len())
            .map(|j| refs.iter().any(|(w, _)| w.first() == Some(&(j as u8))).then(|| a.mul_csr(&rho_m[j])))
            .collect();
        eval(&refs, a, &first, rho_m, self.rows)
    }
}

/// `Σ P_w a ρ_w`, peeling off the last letter so that each level costs one
/// sparse product per letter.
fn eval(terms: &[(&[u8], &RMat)], a: &CMat, first: &[Option<CMat>], rho: &[CCsr], rows: usize) -> CMat {
    let mut out = CMat::zeros(rows, a.ncols());
    for (w, p) in terms {
        match w.len() {
            0 => out.add_assign(&a.left_mul(p)),
            1 => out.add_assign(&first[w[0] as usize].as_ref().expect("first product computed").left_mul(p)),
            _ => {}
        }
    }
    for (i, r) in rho.iter().enumerate() {
        let sub: Vec<(&[u8], &RMat)> = terms
            .iter()
            .filter(|(w, _)| w.len() >= 2 && *w.last().expect("nonempty") as usize == i)
            .map(|(w, p)| (&w[..w.len() - 1], *p))
            .collect();
        if !sub.is_empty() {
            out.add_assign(&eval(&sub, a, first, rho, rows).mul_csr(r));
        }
    }
    out
}

impl Add for &Op {
    type Output = Op;

    fn add(self, rhs: &Op) -> Op {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "operator sum dimension mismatch");
        let mut out = self.clone();
        for (w, p) in &rhs.terms {
            out.accumulate(w.clone(), p.clone());
        }
        out.prune();
        out
    }
}

impl Sub for &Op {
    type Output = Op;

    fn sub(self, rhs: &Op) -> Op {
        self + &(-rhs)
    }
}

impl Neg for &Op {
    type Output = Op;

    fn neg(self) -> Op {
        self * -1.0
    }
}

impl Mul<f64> for &Op {
    type Output = Op;

    fn mul(self, s: f64) -> Op {
        let mut out = self.clone();
        for p in out.terms.values_mut() {
            *p *= s;
        }
        out.prune();
        out
    }
}

impl Add for Op {
    type Output = Op;

    fn add(self, rhs: Op) -> Op {
        &self + &rhs
    }
}

impl Sub for Op {
    type Output = Op;

    fn sub(self, rhs: Op) -> Op {
        &self - &rhs
    }
}

impl Mul<f64> for Op {
    type Output = Op;

    fn mul(self, s: f64) -> Op {
        &self * s
    }
}

/// Sum of a list of operators with equal shape.
pub fn sum(ops: impl IntoIterator<Item = Op>) -> Option<Op> {
    ops.into_iter().reduce(|a, b| &a + &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra_sparse::{CooMatrix, CsrMatrix};

    fn csr(m: &CMatrix) -> CCsr {
        let mut coo = CooMatrix::new(m.nrows(), m.ncols());
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                if m[(r, c)].norm() > 0.0 {
                    coo.push(r, c, m[(r, c)]);
                }
            }
        }
        CsrMatrix::from(&coo)
    }

    fn cm(rows: usize, cols: usize, seed: u64) -> CMatrix {
        let mut x = seed as f64;
        CMatrix::from_fn(rows, cols, |_, _| {
            x = (x * 1.3 + 0.7).sin() * 3.0;
            C64::new(x, (x * 2.1).cos())
        })
    }

    #[test]
    fn second_order_words_evaluate_in_order() {
        let rho: Vec<CMatrix> = (0..3).map(|k| cm(4, 4, k + 1)).collect();
        let rho_s: Vec<CCsr> = rho.iter().map(csr).collect();
        let a = cm(2, 4, 9);
        let p = RMat::from_fn(2, 2, |r, c| (r + 2 * c) as f64 - 1.0);
        // ∇̄₁ ∘ (P ∘ ∇̄₂): A ↦ P A ρ₂ ρ₁
        let op = Op::nabla_bar(2, 1).compose(&Op::nabla_bar(2, 2).then(&p));
        let got = op.apply(&CMat::from_complex(&a), &rho_s).to_complex();
        let pc = p.map(|x| C64::new(x, 0.0));
        let want = pc * &a * &rho[2] * &rho[1];
        assert!((got - want).iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn algebra_of_terms() {
        let n = Op::nabla_bar(3, 0);
        let z = &n - &n;
        assert!(z.is_zero());
        let two = &n + &n;
        assert_eq!(two.order(), 1);
        let st = Op::stack(&[&n, &Op::identity(3)]);
        assert_eq!((st.rows(), st.cols()), (6, 3));
    }
}
