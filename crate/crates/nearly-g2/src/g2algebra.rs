//! The G₂-structure on ℝ⁷: associative and coassociative forms, the cross
//! product, the irreducible splittings of Λ² and Λ³, the `i`/`j` maps, and
//! the pointwise identity suite.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dense::Mat;
use crate::error::{Error, Result};
use crate::exterior::{endo_extend, endo_split, form_dim, form_inner, hodge, interior, wedge, Endo, Form, Vector, DIM};
use crate::report::CheckReport;
use crate::scalar::Scalar;

/// Element of `T*M ⊗ T*M`, stored like an [`Endo`]: `t[a][b]` is the
/// coefficient of `e_a ⊗ e_b`.
pub type Tensor2<S> = Endo<S>;

/// The terms of φ₀ exactly as usually written.
pub const PHI0_TERMS: [[usize; 3]; 7] =
    [[1, 2, 3], [1, 7, 6], [2, 5, 7], [6, 5, 3], [1, 4, 5], [2, 4, 6], [3, 4, 7]];

/// ψ₀ = ∗φ₀ with its signs.
pub const PSI0_TERMS: [(i64, [usize; 4]); 7] = [
    (1, [4, 5, 6, 7]),
    (-1, [2, 3, 4, 5]),
    (1, [1, 3, 4, 6]),
    (-1, [1, 2, 4, 7]),
    (1, [2, 3, 6, 7]),
    (1, [1, 3, 5, 7]),
    (1, [1, 2, 5, 6]),
];

#[derive(Clone, Debug)]
pub struct G2Structure<S> {
    pub phi: Form<S>,
    pub psi: Form<S>,
    pub tau0: S,
    cross_table: Vec<Vec<Vector<S>>>,
    cross_endos: Vec<Endo<S>>,
    seven_basis: Vec<Form<S>>,
    seven_gram_inv: Mat<S>,
}

pub fn standard_structure<S: Scalar>() -> G2Structure<S> {
    let terms: Vec<(i64, &[usize])> = PHI0_TERMS.iter().map(|t| (1, &t[..])).collect();
    let phi = Form::from_terms(3, &terms);
    let psi = hodge(&phi);
    let cross_table: Vec<Vec<Vector<S>>> = (0..DIM)
        .map(|i| {
            (0..DIM)
                .map(|j| Vector::from_fn(|k| phi.evaluate(&[Vector::e(k + 1), Vector::e(i + 1), Vector::e(j + 1)])))
                .collect()
        })
        .collect();
    let cross_endos = (0..DIM)
        .map(|i| Endo::from_fn(|r, c| cross_table[i][c].0[r].clone()))
        .collect();
    let seven_basis: Vec<Form<S>> = (0..DIM).map(|i| interior(&Vector::e(i + 1), &psi)).collect();
    let gram = Mat::from_fn(DIM, DIM, |a, b| form_inner(&seven_basis[a], &seven_basis[b]));
    let seven_gram_inv = Mat::from_columns(
        DIM,
        &(0..DIM)
            .map(|c| {
                let mut e = vec![S::zero(); DIM];
                e[c] = S::one();
                gram.solve(&e).expect("Gram matrix of Λ³₇ is invertible")
            })
            .collect::<Vec<_>>(),
    );
    G2Structure { phi, psi, tau0: S::from_int(4), cross_table, cross_endos, seven_basis, seven_gram_inv }
}

impl<S: Scalar> G2Structure<S> {
    /// `A(X, Y)` with `g(Z, A(X,Y)) = φ(Z, X, Y)`.
    pub fn cross(&self, x: &Vector<S>, y: &Vector<S>) -> Vector<S> {
        let mut out = Vector::zero();
        for i in 0..DIM {
            if x.0[i].negligible() {
                continue;
            }
            for j in 0..DIM {
                if y.0[j].negligible() {
                    continue;
                }
                out = out + self.cross_table[i][j].scale(&(x.0[i].clone() * y.0[j].clone()));
            }
        }
        out
    }

    /// `A_{e_i}` for a 0-based frame index.
    pub fn frame_cross_endo(&self, i: usize) -> &Endo<S> {
        &self.cross_endos[i]
    }

    /// `A_X = Y ↦ A(X, Y)`.
    pub fn cross_endo(&self, x: &Vector<S>) -> Endo<S> {
        let mut out = Endo::zero();
        for i in 0..DIM {
            if !x.0[i].negligible() {
                out = out + self.cross_endos[i].scale(&x.0[i]);
            }
        }
        out
    }

    /// `χ(Y,Z,W)` with `½ g(X, χ(Y,Z,W)) = ψ(X,Y,Z,W)`.
    pub fn chi(&self, y: &Vector<S>, z: &Vector<S>, w: &Vector<S>) -> Vector<S> {
        let two = S::from_int(2);
        Vector::from_fn(|k| {
            two.clone() * self.psi.evaluate(&[Vector::e(k + 1), y.clone(), z.clone(), w.clone()])
        })
    }

    /// `β ↦ ∗(φ ∧ β)`, eigenvalue −2 on Λ²₇ and +1 on Λ²₁₄.
    pub fn two_form_operator(&self, beta: &Form<S>) -> Form<S> {
        hodge(&wedge(&self.phi, beta))
    }

    /// Splits a 2-form into its Λ²₇ and Λ²₁₄ parts.
    pub fn project2(&self, beta: &Form<S>) -> (Form<S>, Form<S>) {
        let t = self.two_form_operator(beta);
        let p7 = (beta.clone() - t).scale(&S::from_frac(1, 3));
        let p14 = beta.clone() - p7.clone();
        (p7, p14)
    }

    /// Orthogonal splitting of a 3-form into Λ³₁ ⊕ Λ³₇ ⊕ Λ³₂₇.
    pub fn project3(&self, alpha: &Form<S>) -> (Form<S>, Form<S>, Form<S>) {
        let p1 = self.phi.scale(&(form_inner(alpha, &self.phi) / S::from_int(7)));
        let rhs: Vec<S> = self.seven_basis.iter().map(|y| form_inner(alpha, y)).collect();
        let c = self.seven_gram_inv.apply(&rhs);
        let mut p7 = Form::zero(3);
        for (ci, y) in c.iter().zip(&self.seven_basis) {
            p7 = p7 + y.scale(ci);
        }
        let p27 = alpha.clone() - p1.clone() - p7.clone();
        (p1, p7, p27)
    }

    /// `i(H) = −2 H⋆φ` on symmetric trace-free `H`.
    pub fn imap(&self, h: &Endo<S>) -> Result<Form<S>> {
        if !h.is_symmetric() || !h.trace().negligible() {
            return Err(Error::NotSymmetricTraceFree);
        }
        Ok(self.imap_unchecked(h))
    }

    /// `−2 H⋆φ` without hypothesis checks.
    pub fn imap_unchecked(&self, h: &Endo<S>) -> Form<S> {
        endo_extend(h, &self.phi).scale(&S::from_int(-2))
    }

    /// `j(γ)(X,Y) = ∗((X⌟φ) ∧ (Y⌟φ) ∧ γ)`.
    pub fn jmap(&self, gamma: &Form<S>) -> Result<Endo<S>> {
        if gamma.degree() != 3 {
            return Err(Error::WrongDegree { expected: 3, got: gamma.degree() });
        }
        let contracted: Vec<Form<S>> = (0..DIM).map(|i| interior(&Vector::e(i + 1), &self.phi)).collect();
        Ok(Endo::from_fn(|a, b| {
            let top = wedge(&wedge(&contracted[a], &contracted[b]), gamma);
            hodge(&top).coeffs()[0].clone()
        }))
    }

    /// `Ã_X(α⊗β) = A_Xα ⊗ β − α ⊗ A_Xβ`, i.e. `t ↦ A_X t + t A_X`.
    pub fn tilde_extend(&self, x: &Vector<S>, t: &Tensor2<S>) -> Tensor2<S> {
        let a = self.cross_endo(x);
        a.clone() * t.clone() - t.clone() * a.transpose()
    }
}

/// Natural action of `B` on 2-tensors, `−Bᵀt − tB`; for skew `B` this is `[B, t]`.
pub fn tensor_action<S: Scalar>(b: &Endo<S>, t: &Tensor2<S>) -> Tensor2<S> {
    -(b.transpose() * t.clone()) - t.clone() * b.clone()
}

/// Metric determined by `(X⌟φ)∧(Y⌟φ)∧φ = −6 g(X,Y) vol_g`.
pub fn metric_from_phi<S: Scalar>(phi: &Form<S>) -> Result<Endo<S>> {
    if phi.degree() != 3 {
        return Err(Error::WrongDegree { expected: 3, got: phi.degree() });
    }
    let contracted: Vec<Form<S>> = (0..DIM).map(|i| interior(&Vector::e(i + 1), phi)).collect();
    let minus_sixth = S::from_frac(-1, 6);
    let b = Endo::from_fn(|r, c| {
        let top = wedge(&wedge(&contracted[r], &contracted[c]), phi);
        top.coeffs()[0].clone() * minus_sixth.clone()
    });
    let det = b.to_mat().determinant();
    if det.negligible() {
        return Err(Error::DegenerateForm);
    }
    let scale = det.nth_root(9).ok_or(Error::IrrationalScale)?;
    Ok(b.scale(&(S::one() / scale)))
}

pub(crate) fn random_int<S: Scalar>(rng: &mut impl Rng) -> S {
    S::from_int(rng.gen_range(-9..=9))
}

pub fn random_vector<S: Scalar>(rng: &mut impl Rng) -> Vector<S> {
    Vector::from_fn(|_| random_int(rng))
}

pub fn random_form<S: Scalar>(rng: &mut impl Rng, p: usize) -> Form<S> {
    Form::from_coeffs(p, (0..form_dim(p)).map(|_| random_int(rng)).collect())
}

pub fn random_endo<S: Scalar>(rng: &mut impl Rng) -> Endo<S> {
    Endo::from_fn(|_, _| random_int(rng))
}

/// Independent RNG stream for one trial of a seeded suite.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

struct Identity<S> {
    name: &'static str,
    anchor: &'static str,
    residual: fn(&G2Structure<S>, &mut ChaCha8Rng) -> f64,
}

fn identities<S: Scalar>() -> Vec<Identity<S>> {
    vec![
        Identity {
            name: "algebra.cross-double-product",
            anchor: "cross-product/double-product",
            residual: |g, rng| {
                let (x, y, z) = (random_vector::<S>(rng), random_vector(rng), random_vector(rng));
                let lhs = g.cross(&x, &g.cross(&y, &z));
                let rhs = z.scale(&-x.dot(&y)) + y.scale(&x.dot(&z)) - g.chi(&x, &y, &z).scale(&S::from_frac(1, 2));
                (lhs - rhs).max_abs()
            },
        },
        Identity {
            name: "algebra.cross-cyclic",
            anchor: "cross-product/cyclic-relation",
            residual: |g, rng| {
                let (x, y, z) = (random_vector::<S>(rng), random_vector(rng), random_vector(rng));
                let three = S::from_int(3);
                let lhs = g.cross(&g.cross(&x, &y), &z).scale(&S::from_int(2));
                let rhs = g.cross(&g.cross(&y, &z), &x) + g.cross(&g.cross(&z, &x), &y)
                    + y.scale(&(three.clone() * x.dot(&z)))
                    - x.scale(&(three * y.dot(&z)));
                (lhs - rhs).max_abs()
            },
        },
        Identity {
            name: "algebra.double-contraction",
            anchor: "forms/double-contraction",
            residual: |g, rng| {
                let (x, y) = (random_vector::<S>(rng), random_vector(rng));
                let v = Vector::from_form(&interior(&x, &interior(&y, &g.phi)));
                let lhs = interior(&v, &g.phi) + interior(&x, &interior(&y, &g.psi));
                let rhs = -wedge(&x.to_form(), &y.to_form());
                (lhs - rhs).max_abs()
            },
        },
        Identity {
            name: "algebra.phi-wedge-pair",
            anchor: "forms/phi-wedge-pair",
            residual: |g, rng| {
                let (x, y) = (random_vector::<S>(rng), random_vector(rng));
                let lhs = wedge(&wedge(&g.phi, &x.to_form()), &y.to_form());
                let rhs = hodge(&interior(&y, &interior(&x, &g.psi)));
                (lhs - rhs).max_abs()
            },
        },
        Identity {
            name: "algebra.sym-hodge-phi",
            anchor: "sym-action/hodge-phi",
            residual: |g, rng| {
                let h = endo_split(&random_endo::<S>(rng)).0;
                (hodge(&endo_extend(&h, &g.phi)) + endo_extend(&h, &g.psi)).max_abs()
            },
        },
        Identity {
            name: "algebra.sym-hodge-psi",
            anchor: "sym-action/hodge-psi",
            residual: |g, rng| {
                let h = endo_split(&random_endo::<S>(rng)).0;
                (hodge(&endo_extend(&h, &g.psi)) + endo_extend(&h, &g.phi)).max_abs()
            },
        },
        Identity {
            name: "algebra.cross-action-phi",
            anchor: "cross-action/phi",
            residual: |g, rng| {
                let x = random_vector::<S>(rng);
                let lhs = endo_extend(&g.cross_endo(&x), &g.phi);
                (lhs - interior(&x, &g.psi).scale(&S::from_int(3))).max_abs()
            },
        },
        Identity {
            name: "algebra.cross-action-psi",
            anchor: "cross-action/psi",
            residual: |g, rng| {
                let x = random_vector::<S>(rng);
                let lhs = endo_extend(&g.cross_endo(&x), &g.psi);
                (lhs + wedge(&x.to_form(), &g.phi).scale(&S::from_int(3))).max_abs()
            },
        },
        Identity {
            name: "algebra.g2-kills-phi",
            anchor: "cross-action/g2-stabilizer",
            residual: |g, rng| {
                let w = g.project2(&random_form::<S>(rng, 2)).1;
                endo_extend(&Endo::from_two_form(&w), &g.phi).max_abs()
            },
        },
        Identity {
            name: "algebra.schur-wedge-14",
            anchor: "schur/wedge-two-form",
            residual: |g, rng| {
                let w = g.project2(&random_form::<S>(rng, 2)).1;
                let mut acc = Form::zero(3);
                for i in 0..DIM {
                    let aw = endo_extend(g.frame_cross_endo(i), &w);
                    acc = acc + wedge(&Vector::e(i + 1).to_form(), &aw);
                }
                acc.max_abs()
            },
        },
        Identity {
            name: "algebra.schur-contract-14",
            anchor: "schur/contract-two-form",
            residual: |g, rng| {
                let w = g.project2(&random_form::<S>(rng, 2)).1;
                let mut acc = Form::zero(1);
                for i in 0..DIM {
                    let aw = endo_extend(g.frame_cross_endo(i), &w);
                    acc = acc + interior(&Vector::e(i + 1), &aw);
                }
                acc.max_abs()
            },
        },
        Identity {
            name: "algebra.schur-sym",
            anchor: "schur/symmetric",
            residual: |g, rng| {
                let h = endo_split(&random_endo::<S>(rng)).0;
                let mut acc = Vector::zero();
                for i in 0..DIM {
                    let ah = g.frame_cross_endo(i).commutator(&h);
                    acc = acc + ah.column(i);
                }
                acc.max_abs()
            },
        },
        Identity {
            name: "algebra.schur-27",
            anchor: "schur/three-form",
            residual: |g, rng| {
                let gamma = g.project3(&random_form::<S>(rng, 3)).2;
                let mut acc = Form::zero(2);
                for i in 0..DIM {
                    let ag = endo_extend(g.frame_cross_endo(i), &gamma);
                    acc = acc + interior(&Vector::e(i + 1), &ag);
                }
                acc.max_abs()
            },
        },
    ]
}

/// Evaluates every pointwise G₂ identity on `trials` seeded random inputs.
/// On the exact backend each residual must be exactly zero; on the float
/// backend it must not exceed `tol`.
pub fn identity_suite<S: Scalar>(seed: u64, trials: usize, tol: f64) -> CheckReport {
    let g = standard_structure::<S>();
    let tol = if S::EXACT { 0.0 } else { tol };
    let mut report = CheckReport::new();
    for (k, id) in identities::<S>().into_iter().enumerate() {
        let worst = (0..trials as u64)
            .into_par_iter()
            .map(|t| {
                let mut rng = trial_rng(seed.wrapping_add(k as u64), t);
                (id.residual)(&g, &mut rng)
            })
            .reduce(|| 0.0, f64::max);
        report.residual(id.name, id.anchor, worst, tol, format!("{trials} random inputs"));
    }
    report
}

/// Basis of symmetric trace-free endomorphisms: `E_aa − E_77` then
/// `E_ab + E_ba` for `a < b`.
pub fn sym0_basis<S: Scalar>() -> Vec<Endo<S>> {
    let mut out = Vec::with_capacity(27);
    for a in 0..DIM - 1 {
        out.push(Endo::from_fn(|r, c| match (r == c, r) {
            (true, r) if r == a => S::one(),
            (true, r) if r == DIM - 1 => -S::one(),
            _ => S::zero(),
        }));
    }
    for a in 0..DIM {
        for b in a + 1..DIM {
            out.push(Endo::from_fn(|r, c| if (r, c) == (a, b) || (r, c) == (b, a) { S::one() } else { S::zero() }));
        }
    }
    out
}

/// Invariants of the model forms and of the `i`/`j` pair.
pub fn invariant_suite<S: Scalar>(seed: u64, trials: usize, tol: f64) -> CheckReport {
    let g = standard_structure::<S>();
    let tol = if S::EXACT { 0.0 } else { tol };
    let mut report = CheckReport::new();

    let expected_psi = Form::from_terms(4, &PSI0_TERMS.iter().map(|(c, t)| (*c, &t[..])).collect::<Vec<_>>());
    let r = (hodge(&g.phi) - expected_psi).max_abs();
    report.residual("exterior.star-phi", "model-forms/psi", r, tol, "∗φ₀ against the monomial list of ψ₀");
    let r = (wedge(&g.phi, &g.psi) - Form::vol().scale(&S::from_int(7))).max_abs();
    report.residual("exterior.phi-wedge-psi", "model-forms/volume", r, tol, "φ₀∧ψ₀ = 7 vol");

    let worst_star = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            (0..=DIM)
                .map(|p| {
                    let u = random_form::<S>(&mut rng, p);
                    let v = random_form::<S>(&mut rng, p);
                    let twice = (hodge(&hodge(&u)) - u.clone()).max_abs();
                    // u ∧ ∗v = ⟨u, v⟩ vol
                    let pairing = (wedge(&u, &hodge(&v)) - Form::vol().scale(&form_inner(&u, &v))).max_abs();
                    twice.max(pairing)
                })
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    report.residual("exterior.hodge-involution", "exterior/hodge", worst_star, tol, format!("∗∗ = 1 and u∧∗v = ⟨u,v⟩vol, {trials} inputs per degree"));

    let basis = sym0_basis::<S>();
    let images: Vec<Form<S>> = basis.iter().map(|h| g.imap_unchecked(h)).collect();
    let rank = Mat::from_columns(form_dim(3), &images.iter().map(|f| f.coeffs().to_vec()).collect::<Vec<_>>()).rank();
    let kills = images
        .iter()
        .map(|f| wedge(f, &g.phi).max_abs().max(wedge(f, &g.psi).max_abs()))
        .fold(0.0, f64::max);
    report.residual("algebra.i-image", "i-map/lambda3-27", kills, tol, format!("rank {rank}"));
    report.verdict("algebra.i-rank", "i-map/lambda3-27", rank == 27, format!("rank {rank} of 27"));

    let worst_ji = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed.wrapping_add(1), t);
            let h = basis.iter().fold(Endo::zero(), |acc, b| acc + b.scale(&random_int::<S>(&mut rng)));
            let back = g.jmap(&g.imap_unchecked(&h)).expect("degree three");
            (back + h.scale(&S::from_int(8))).max_abs()
        })
        .reduce(|| 0.0, f64::max);
    report.residual("algebra.j-after-i", "i-map/j-inverse", worst_ji, tol, format!("j∘i = −8 on {trials} random inputs"));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Rational;

    #[test]
    fn phi_and_psi_coefficients() {
        let g = standard_structure::<Q>();
        assert_eq!(g.phi.coefficient(&[1, 2, 3]), Q::from_int(1));
        assert_eq!(g.phi.coefficient(&[6, 5, 3]), Q::from_int(1));
        assert_eq!(g.phi.coefficient(&[3, 5, 6]), Q::from_int(-1));
        assert_eq!(g.psi.coefficient(&[2, 3, 4, 5]), Q::from_int(-1));
        let expected = Form::from_terms(4, &PSI0_TERMS.iter().map(|(c, t)| (*c, &t[..])).collect::<Vec<_>>());
        assert_eq!(g.psi, expected);
    }

    #[test]
    fn cross_examples() {
        let g = standard_structure::<Q>();
        assert_eq!(g.cross(&Vector::e(1), &Vector::e(2)), Vector::e(3));
        // φ(e₆, e₁, e₇) = e¹⁷⁶(e₆, e₁, e₇) = +1
        assert_eq!(g.cross(&Vector::e(1), &Vector::e(7)), Vector::e(6));
        let x = Vector::from_fn(|i| Q::from_int(i as i64 - 2));
        assert!(g.cross(&x, &x).is_zero());
    }

    #[test]
    fn chi_example() {
        let g = standard_structure::<Q>();
        let v = g.chi(&Vector::e(4), &Vector::e(5), &Vector::e(6));
        assert_eq!(v, Vector::e(7).scale(&Q::from_int(-2)));
    }

    #[test]
    fn metric_examples() {
        let g = standard_structure::<Q>();
        assert_eq!(metric_from_phi(&g.phi).unwrap(), Endo::identity());
        let lam = Q::from_int(2);
        let scaled = g.phi.scale(&(lam * lam * lam));
        assert_eq!(metric_from_phi(&scaled).unwrap(), Endo::identity().scale(&Q::from_int(4)));
        assert_eq!(metric_from_phi(&Form::<Q>::zero(3)), Err(Error::DegenerateForm));
    }

    #[test]
    fn two_form_split_examples() {
        let g = standard_structure::<Q>();
        let x = interior(&Vector::e(1), &g.phi);
        let (p7, p14) = g.project2(&x);
        assert_eq!(p7, x);
        assert!(p14.is_zero());
        assert_eq!(x.terms().len(), 3);
    }

    #[test]
    fn three_form_split_examples() {
        let g = standard_structure::<Q>();
        let (p1, p7, p27) = g.project3(&g.phi);
        assert_eq!(p1, g.phi);
        assert!(p7.is_zero() && p27.is_zero());
        let y = interior(&Vector::e(1), &g.psi);
        let (p1, p7, p27) = g.project3(&y);
        assert!(p1.is_zero() && p27.is_zero());
        assert_eq!(p7, y);
    }

    #[test]
    fn j_of_phi() {
        let g = standard_structure::<Q>();
        assert_eq!(g.jmap(&g.phi).unwrap(), Endo::identity().scale(&Q::from_int(-6)));
        assert!(g.jmap(&Form::zero(3)).unwrap().is_zero());
    }

    #[test]
    fn imap_rejects_bad_input() {
        let g = standard_structure::<Q>();
        assert!(g.imap(&Endo::identity()).is_err());
        let skew = Endo::from_two_form(&Form::monomial(Q::from_int(1), &[1, 2]));
        assert!(g.imap(&skew).is_err());
        assert!(g.imap(&Endo::zero()).unwrap().is_zero());
    }

    #[test]
    fn tilde_examples() {
        let g = standard_structure::<Q>();
        let t = Endo::outer(&Vector::e(2), &Vector::e(3));
        let out = g.tilde_extend(&Vector::e(1), &t);
        let expected = Endo::outer(&Vector::e(3), &Vector::e(3)) + Endo::outer(&Vector::e(2), &Vector::e(2));
        assert_eq!(out, expected);
        // Σ A_X eᵢ ⊗ eᵢ − eᵢ ⊗ A_X eᵢ = A_X − A_Xᵀ = 2A_X
        let a5 = g.frame_cross_endo(4).clone();
        assert_eq!(g.tilde_extend(&Vector::e(5), &Endo::identity()), a5.scale(&Q::from_int(2)));
    }

    #[test]
    fn exact_suite_small() {
        let r = identity_suite::<Q>(1, 3, 0.0);
        assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
    }
}
