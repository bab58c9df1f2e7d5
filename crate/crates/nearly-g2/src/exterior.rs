//! Exterior algebra of the oriented Euclidean ℝ⁷.
//!
//! A [`Form`] of degree `p` stores one coefficient per strictly increasing
//! index tuple, in lexicographic order. Indices are 1-based in the public
//! constructors (matching the usual `e^{123}` notation) and 0-based bit
//! masks internally.
//!
//! Conventions:
//! - `(X⌟u)(Y₁,…) = u(X,Y₁,…)`;
//! - `e^{12}(e₁,e₂) = 1` (determinant evaluation);
//! - `vol = e^{1234567}` and `∗e^I = ε(I,Iᶜ) e^{Iᶜ}`;
//! - `B⋆u = −(Bᵀeᵢ) ∧ (eᵢ⌟u)`.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};
use std::sync::OnceLock;

use crate::dense::Mat;
use crate::scalar::Scalar;

pub const DIM: usize = 7;

struct Tables {
    masks: Vec<Vec<u8>>,
    position: [usize; 128],
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| {
        let mut masks = vec![Vec::new(); DIM + 1];
        let mut position = [0usize; 128];
        // lexicographic order on increasing tuples
        for p in 0..=DIM {
            let mut list: Vec<u8> = (0u8..128).filter(|m| m.count_ones() as usize == p).collect();
            list.sort_by_key(|m| indices_of(*m));
            for (i, m) in list.iter().enumerate() {
                position[*m as usize] = i;
            }
            masks[p] = list;
        }
        Tables { masks, position }
    })
}

fn indices_of(mask: u8) -> Vec<usize> {
    (0..DIM).filter(|i| mask & (1 << i) != 0).collect()
}

/// Number of monomials of degree `p` (zero above 7).
pub fn form_dim(p: usize) -> usize {
    if p > DIM {
        0
    } else {
        tables().masks[p].len()
    }
}

/// 0-based index tuple of the `k`-th monomial of degree `p`.
pub fn monomial_indices(p: usize, k: usize) -> Vec<usize> {
    indices_of(tables().masks[p][k])
}

fn mask_at(p: usize, k: usize) -> u8 {
    tables().masks[p][k]
}

fn position(mask: u8) -> usize {
    tables().position[mask as usize]
}

/// Sign of `e^I ∧ e^J` relative to `e^{I∪J}` for disjoint masks.
fn wedge_sign(a: u8, b: u8) -> i64 {
    let mut inversions = 0;
    for j in 0..DIM {
        if b & (1 << j) != 0 {
            inversions += (a >> (j + 1)).count_ones();
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sorts a 0-based index list, returning the permutation sign and mask, or
/// `None` on a repeated index.
fn sort_sign(indices: &[usize]) -> Option<(i64, u8)> {
    let mut v = indices.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    let mut mask = 0u8;
    for i in v {
        assert!(i < DIM, "frame index out of range");
        if mask & (1 << i) != 0 {
            return None;
        }
        mask |= 1 << i;
    }
    Some((sign, mask))
}

/// Exterior form of fixed degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Form<S> {
    degree: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> Form<S> {
    pub fn zero(degree: usize) -> Self {
        Form { degree, coeffs: vec![S::zero(); form_dim(degree)] }
    }

    pub fn from_coeffs(degree: usize, coeffs: Vec<S>) -> Self {
        assert_eq!(coeffs.len(), form_dim(degree), "coefficient count mismatch");
        Form { degree, coeffs }
    }

    /// The constant 0-form `c`.
    pub fn scalar(c: S) -> Self {
        Form { degree: 0, coeffs: vec![c] }
    }

    /// `c · e^{i₁…i_p}` with 1-based, arbitrarily ordered indices.
    pub fn monomial(c: S, indices: &[usize]) -> Self {
        let mut f = Self::zero(indices.len());
        let zero_based: Vec<usize> = indices.iter().map(|i| i - 1).collect();
        if let Some((sign, mask)) = sort_sign(&zero_based) {
            f.coeffs[position(mask)] = c * S::from_int(sign);
        }
        f
    }

    /// Sum of integer multiples of monomials, e.g. `[(1, &[1, 2, 3])]`.
    pub fn from_terms(degree: usize, terms: &[(i64, &[usize])]) -> Self {
        let mut f = Self::zero(degree);
        for (c, idx) in terms {
            assert_eq!(idx.len(), degree, "term degree mismatch");
            f = f + Self::monomial(S::from_int(*c), idx);
        }
        f
    }

    /// The volume form `e^{1234567}`.
    pub fn vol() -> Self {
        Self::monomial(S::one(), &[1, 2, 3, 4, 5, 6, 7])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Coefficient along `e^{i₁…i_p}` (1-based, any order, sign-adjusted).
    pub fn coefficient(&self, indices: &[usize]) -> S {
        if indices.len() != self.degree {
            return S::zero();
        }
        let zero_based: Vec<usize> = indices.iter().map(|i| i - 1).collect();
        match sort_sign(&zero_based) {
            Some((sign, mask)) => self.coeffs[position(mask)].clone() * S::from_int(sign),
            None => S::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.negligible())
    }

    pub fn scale(&self, s: &S) -> Self {
        Form {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.magnitude()).fold(0.0, f64::max)
    }

    pub fn to_f64(&self) -> Form<f64> {
        Form { degree: self.degree, coeffs: self.coeffs.iter().map(|c| c.to_f64()).collect() }
    }

    /// Evaluates the form on `p` vectors.
    pub fn evaluate(&self, vectors: &[Vector<S>]) -> S {
        assert_eq!(vectors.len(), self.degree, "wrong number of arguments");
        let mut u = self.clone();
        for v in vectors {
            u = interior(v, &u);
        }
        u.coeffs[0].clone()
    }

    /// Nonzero terms as (1-based indices, coefficient).
    pub fn terms(&self) -> Vec<(Vec<usize>, S)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.negligible())
            .map(|(k, c)| (monomial_indices(self.degree, k).iter().map(|i| i + 1).collect(), c.clone()))
            .collect()
    }
}

impl<S: Scalar> Add for Form<S> {
    type Output = Form<S>;
    fn add(self, rhs: Form<S>) -> Form<S> {
        assert_eq!(self.degree, rhs.degree, "adding forms of different degree");
        Form {
            degree: self.degree,
            coeffs: self.coeffs.into_iter().zip(rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<S: Scalar> Sub for Form<S> {
    type Output = Form<S>;
    fn sub(self, rhs: Form<S>) -> Form<S> {
        self + (-rhs)
    }
}

impl<S: Scalar> Neg for Form<S> {
    type Output = Form<S>;
    fn neg(self) -> Form<S> {
        Form { degree: self.degree, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

/// Tangent vector, identified with a 1-form through the metric.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector<S>(pub [S; DIM]);

impl<S: Scalar> Vector<S> {
    pub fn zero() -> Self {
        Vector(std::array::from_fn(|_| S::zero()))
    }

    /// The frame vector `e_i`, 1-based.
    pub fn e(i: usize) -> Self {
        let mut v = Self::zero();
        v.0[i - 1] = S::one();
        v
    }

    pub fn from_fn(f: impl FnMut(usize) -> S) -> Self {
        Vector(std::array::from_fn(f))
    }

    pub fn dot(&self, other: &Self) -> S {
        let mut acc = S::zero();
        for i in 0..DIM {
            acc += self.0[i].clone() * other.0[i].clone();
        }
        acc
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::from_fn(|i| self.0[i].clone() * s.clone())
    }

    pub fn to_form(&self) -> Form<S> {
        Form::from_coeffs(1, self.0.to_vec())
    }

    pub fn from_form(u: &Form<S>) -> Self {
        assert_eq!(u.degree(), 1, "not a 1-form");
        Self::from_fn(|i| u.coeffs()[i].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.negligible())
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|c| c.magnitude()).fold(0.0, f64::max)
    }
}

impl<S: Scalar> Add for Vector<S> {
    type Output = Vector<S>;
    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|i| self.0[i].clone() + rhs.0[i].clone())
    }
}

impl<S: Scalar> Sub for Vector<S> {
    type Output = Vector<S>;
    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|i| self.0[i].clone() - rhs.0[i].clone())
    }
}

impl<S: Scalar> Neg for Vector<S> {
    type Output = Vector<S>;
    fn neg(self) -> Self {
        Self::from_fn(|i| -self.0[i].clone())
    }
}

/// Endomorphism of ℝ⁷; `m[r][c]` is the `e_r` component of the image of `e_c`.
#[derive(Clone, Debug, PartialEq)]
pub struct Endo<S> {
    pub m: [[S; DIM]; DIM],
}

impl<S: Scalar> Endo<S> {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> S) -> Self {
        Endo { m: std::array::from_fn(|r| std::array::from_fn(|c| f(r, c))) }
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| S::zero())
    }

    pub fn identity() -> Self {
        Self::from_fn(|r, c| if r == c { S::one() } else { S::zero() })
    }

    /// `u ⊗ v`, i.e. `X ↦ ⟨v, X⟩ u`.
    pub fn outer(u: &Vector<S>, v: &Vector<S>) -> Self {
        Self::from_fn(|r, c| u.0[r].clone() * v.0[c].clone())
    }

    /// Skew matrix with entries `w(e_r, e_c)`.
    pub fn from_two_form(w: &Form<S>) -> Self {
        assert_eq!(w.degree(), 2, "not a 2-form");
        Self::from_fn(|r, c| if r == c { S::zero() } else { w.coefficient(&[r + 1, c + 1]) })
    }

    /// The 2-form `Σ_{r<c} m[r][c] e^{rc}`.
    pub fn to_two_form(&self) -> Form<S> {
        let coeffs = (0..form_dim(2))
            .map(|k| {
                let idx = monomial_indices(2, k);
                self.m[idx[0]][idx[1]].clone()
            })
            .collect();
        Form::from_coeffs(2, coeffs)
    }

    pub fn apply(&self, v: &Vector<S>) -> Vector<S> {
        Vector::from_fn(|r| {
            let mut acc = S::zero();
            for c in 0..DIM {
                acc += self.m[r][c].clone() * v.0[c].clone();
            }
            acc
        })
    }

    pub fn column(&self, c: usize) -> Vector<S> {
        Vector::from_fn(|r| self.m[r][c].clone())
    }

    pub fn row(&self, r: usize) -> Vector<S> {
        Vector::from_fn(|c| self.m[r][c].clone())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|r, c| self.m[c][r].clone())
    }

    pub fn trace(&self) -> S {
        let mut acc = S::zero();
        for i in 0..DIM {
            acc += self.m[i][i].clone();
        }
        acc
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::from_fn(|r, c| self.m[r][c].clone() * s.clone())
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.clone() * other.clone() - other.clone() * self.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(|c| c.negligible())
    }

    pub fn max_abs(&self) -> f64 {
        self.m.iter().flatten().map(|c| c.magnitude()).fold(0.0, f64::max)
    }

    pub fn is_symmetric(&self) -> bool {
        (self.clone() - self.transpose()).is_zero()
    }

    pub fn to_mat(&self) -> Mat<S> {
        Mat::from_fn(DIM, DIM, |r, c| self.m[r][c].clone())
    }

    pub fn from_mat(m: &Mat<S>) -> Self {
        assert_eq!((m.rows(), m.cols()), (DIM, DIM));
        Self::from_fn(|r, c| m[(r, c)].clone())
    }

    pub fn to_f64(&self) -> Endo<f64> {
        Endo::from_fn(|r, c| self.m[r][c].to_f64())
    }
}

impl<S> Index<(usize, usize)> for Endo<S> {
    type Output = S;
    fn index(&self, (r, c): (usize, usize)) -> &S {
        &self.m[r][c]
    }
}

impl<S> IndexMut<(usize, usize)> for Endo<S> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        &mut self.m[r][c]
    }
}

impl<S: Scalar> Add for Endo<S> {
    type Output = Endo<S>;
    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|r, c| self.m[r][c].clone() + rhs.m[r][c].clone())
    }
}

impl<S: Scalar> Sub for Endo<S> {
    type Output = Endo<S>;
    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|r, c| self.m[r][c].clone() - rhs.m[r][c].clone())
    }
}

impl<S: Scalar> Neg for Endo<S> {
    type Output = Endo<S>;
    fn neg(self) -> Self {
        Self::from_fn(|r, c| -self.m[r][c].clone())
    }
}

impl<S: Scalar> Mul for Endo<S> {
    type Output = Endo<S>;
    fn mul(self, rhs: Self) -> Self {
        Self::from_fn(|r, c| {
            let mut acc = S::zero();
            for k in 0..DIM {
                acc += self.m[r][k].clone() * rhs.m[k][c].clone();
            }
            acc
        })
    }
}

pub fn wedge<S: Scalar>(u: &Form<S>, v: &Form<S>) -> Form<S> {
    let (p, q) = (u.degree, v.degree);
    let mut out = Form::zero(p + q);
    if p + q > DIM {
        return out;
    }
    for (a, ua) in u.coeffs.iter().enumerate() {
        if ua.negligible() {
            continue;
        }
        let ma = mask_at(p, a);
        for (b, vb) in v.coeffs.iter().enumerate() {
            if vb.negligible() {
                continue;
            }
            let mb = mask_at(q, b);
            if ma & mb != 0 {
                continue;
            }
            let term = ua.clone() * vb.clone() * S::from_int(wedge_sign(ma, mb));
            out.coeffs[position(ma | mb)] += term;
        }
    }
    out
}

/// `X⌟u`; the zero 0-form when `u` has degree 0.
pub fn interior<S: Scalar>(x: &Vector<S>, u: &Form<S>) -> Form<S> {
    let p = u.degree;
    if p == 0 {
        return Form::zero(0);
    }
    let mut out = Form::zero(p - 1);
    for (a, ua) in u.coeffs.iter().enumerate() {
        if ua.negligible() {
            continue;
        }
        let ma = mask_at(p, a);
        for k in 0..DIM {
            if ma & (1 << k) == 0 || x.0[k].negligible() {
                continue;
            }
            let below = (ma & ((1u8 << k) - 1)).count_ones();
            let sign = if below % 2 == 0 { 1 } else { -1 };
            let term = ua.clone() * x.0[k].clone() * S::from_int(sign);
            out.coeffs[position(ma & !(1 << k))] += term;
        }
    }
    out
}

pub fn hodge<S: Scalar>(u: &Form<S>) -> Form<S> {
    let p = u.degree;
    let mut out = Form::zero(DIM - p);
    for (a, ua) in u.coeffs.iter().enumerate() {
        let ma = mask_at(p, a);
        let comp = !ma & 0x7f;
        out.coeffs[position(comp)] = ua.clone() * S::from_int(wedge_sign(ma, comp));
    }
    out
}

/// Pointwise inner product; zero for unequal degrees.
pub fn form_inner<S: Scalar>(u: &Form<S>, v: &Form<S>) -> S {
    if u.degree != v.degree {
        return S::zero();
    }
    let mut acc = S::zero();
    for (a, b) in u.coeffs.iter().zip(&v.coeffs) {
        acc += a.clone() * b.clone();
    }
    acc
}

/// `B⋆u = −(Bᵀeᵢ) ∧ (eᵢ⌟u)`.
pub fn endo_extend<S: Scalar>(b: &Endo<S>, u: &Form<S>) -> Form<S> {
    let mut out = Form::zero(u.degree);
    if u.degree == 0 {
        return out;
    }
    for i in 0..DIM {
        let bt_ei = b.row(i);
        if bt_ei.is_zero() {
            continue;
        }
        let contracted = interior(&Vector::e(i + 1), u);
        out = out - wedge(&bt_ei.to_form(), &contracted);
    }
    out
}

/// Split into symmetric trace-free part, skew part and trace:
/// `B = sym0 + skew + (trace/7)·Id`.
pub fn endo_split<S: Scalar>(b: &Endo<S>) -> (Endo<S>, Endo<S>, S) {
    let half = S::from_frac(1, 2);
    let tr = b.trace();
    let t = tr.clone() / S::from_int(DIM as i64);
    let sym0 = Endo::from_fn(|r, c| {
        let s = (b.m[r][c].clone() + b.m[c][r].clone()) * half.clone();
        if r == c {
            s - t.clone()
        } else {
            s
        }
    });
    let skew = Endo::from_fn(|r, c| (b.m[r][c].clone() - b.m[c][r].clone()) * half.clone());
    (sym0, skew, tr)
}

/// Matrix of a linear map `Λᵖ → Λ^q` in the monomial bases.
pub fn form_operator<S: Scalar>(p: usize, q: usize, f: impl Fn(&Form<S>) -> Form<S>) -> Mat<S> {
    let cols: Vec<Vec<S>> = (0..form_dim(p))
        .map(|k| {
            let mut basis = Form::zero(p);
            basis.coeffs[k] = S::one();
            let image = f(&basis);
            assert_eq!(image.degree, q, "operator changes degree unexpectedly");
            image.coeffs
        })
        .collect();
    Mat::from_columns(form_dim(q), &cols)
}

/// Matrix of `u ↦ B⋆u` on `Λᵖ`.
pub fn endo_matrix<S: Scalar>(b: &Endo<S>, p: usize) -> Mat<S> {
    form_operator(p, p, |u| endo_extend(b, u))
}

/// Matrix of `u ↦ eᵢ ∧ u` on `Λᵖ` (0-based `i`).
pub fn wedge_e_matrix<S: Scalar>(i: usize, p: usize) -> Mat<S> {
    let e = Vector::<S>::e(i + 1).to_form();
    form_operator(p, p + 1, |u| wedge(&e, u))
}

/// Matrix of `u ↦ eᵢ⌟u` on `Λᵖ` (0-based `i`).
pub fn interior_e_matrix<S: Scalar>(i: usize, p: usize) -> Mat<S> {
    let e = Vector::<S>::e(i + 1);
    form_operator(p, p - 1, |u| interior(&e, u))
}

pub fn hodge_matrix<S: Scalar>(p: usize) -> Mat<S> {
    form_operator(p, DIM - p, hodge)
}
