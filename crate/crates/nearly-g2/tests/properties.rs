//! Property tests for the pointwise algebra, on exact rationals.

use nearly_g2::clifford::{clifford_form, clifford_vector, s32_project, spin_lift, SpinTensor, Spinor, VOLUME_SIGN};
use nearly_g2::exterior::{endo_extend, form_dim, form_inner, hodge, interior, wedge, Endo, Form, Vector, DIM};
use nearly_g2::g2algebra::{sym0_basis, standard_structure, G2Structure};
use nearly_g2::{Rational, Scalar};
use proptest::prelude::*;

type Q = Rational;

fn g() -> &'static G2Structure<Q> {
    static G: std::sync::OnceLock<G2Structure<Q>> = std::sync::OnceLock::new();
    G.get_or_init(standard_structure::<Q>)
}

fn coeffs(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, n)
}

fn form(p: usize) -> impl Strategy<Value = Form<Q>> {
    coeffs(form_dim(p)).prop_map(move |c| Form::from_coeffs(p, c.into_iter().map(Q::from_int).collect()))
}

fn form_pair() -> impl Strategy<Value = (Form<Q>, Form<Q>)> {
    (0..=DIM).prop_flat_map(|p| (form(p), form(p)))
}

fn vector() -> impl Strategy<Value = Vector<Q>> {
    coeffs(DIM).prop_map(|c| Vector::from_fn(|i| Q::from_int(c[i])))
}

fn endo() -> impl Strategy<Value = Endo<Q>> {
    coeffs(DIM * DIM).prop_map(|c| Endo::from_fn(|r, s| Q::from_int(c[r * DIM + s])))
}

fn skew() -> impl Strategy<Value = Endo<Q>> {
    endo().prop_map(|b| b.clone() - b.transpose())
}

fn spinor() -> impl Strategy<Value = Spinor<Q>> {
    coeffs(8).prop_map(|c| Spinor::from_slice(&c.into_iter().map(Q::from_int).collect::<Vec<_>>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graded_commutativity((u, v) in (0..=DIM, 0..=DIM).prop_filter("fits in ℝ⁷", |(p, q)| p + q <= DIM).prop_flat_map(|(p, q)| (form(p), form(q)))) {
        let sign = if (u.degree() * v.degree()) % 2 == 0 { Q::from_int(1) } else { Q::from_int(-1) };
        prop_assert_eq!(wedge(&u, &v), wedge(&v, &u).scale(&sign));
    }

    #[test]
    fn wedge_and_interior_are_adjoint(x in vector(), (u, v) in (0..DIM).prop_flat_map(|p| (form(p), form(p + 1)))) {
        prop_assert_eq!(form_inner(&wedge(&x.to_form(), &u), &v), form_inner(&u, &interior(&x, &v)));
    }

    #[test]
    fn hodge_is_an_isometry((u, v) in form_pair()) {
        prop_assert_eq!(form_inner(&hodge(&u), &hodge(&v)), form_inner(&u, &v));
    }

    #[test]
    fn derivation_extension_is_a_representation(b in skew(), c in skew(), u in (0..=DIM).prop_flat_map(form)) {
        let lhs = endo_extend(&b.commutator(&c), &u);
        let rhs = endo_extend(&b, &endo_extend(&c, &u)) - endo_extend(&c, &endo_extend(&b, &u));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_and_float_backends_agree(u in form(3), v in form(2)) {
        let exact = hodge(&wedge(&u, &v)).to_f64();
        let float = hodge(&wedge(&u.to_f64(), &v.to_f64()));
        prop_assert!((exact - float).max_abs() < 1e-12);
    }

    #[test]
    fn cross_product_norm(x in vector(), y in vector()) {
        let a = g().cross(&x, &y);
        let xy = x.dot(&y);
        prop_assert_eq!(a.dot(&a), x.dot(&x) * y.dot(&y) - xy * xy);
    }

    #[test]
    fn three_form_projectors((u, v) in (form(3), form(3))) {
        let (u1, u7, u27) = g().project3(&u);
        let (v1, v7, v27) = g().project3(&v);
        prop_assert_eq!(u1.clone() + u7.clone() + u27.clone(), u.clone());
        // idempotent
        prop_assert_eq!(g().project3(&u7).1, u7.clone());
        prop_assert_eq!(g().project3(&u27).2, u27.clone());
        // mutually annihilating
        let (a, b, _) = g().project3(&u27);
        prop_assert!(a.is_zero() && b.is_zero());
        // self-adjoint
        prop_assert_eq!(form_inner(&u1, &v), form_inner(&u, &v1));
        prop_assert_eq!(form_inner(&u7, &v), form_inner(&u, &v7));
        prop_assert_eq!(form_inner(&u27, &v), form_inner(&u, &v27));
    }

    #[test]
    fn clifford_relation(x in vector(), y in vector(), s in spinor()) {
        let lhs = clifford_vector(g(), &x, &clifford_vector(g(), &y, &s)) + clifford_vector(g(), &y, &clifford_vector(g(), &x, &s));
        prop_assert_eq!(lhs, s.scale(&(x.dot(&y) * Q::from_int(-2))));
    }

    #[test]
    fn volume_is_central(s in spinor()) {
        prop_assert_eq!(clifford_form(g(), &Form::vol(), &s), s.scale(&Q::from_int(VOLUME_SIGN)));
    }

    #[test]
    fn s32_projection_is_equivariant(c in coeffs(8 * DIM), b in skew()) {
        let t = SpinTensor::from_slice(&c.into_iter().map(Q::from_int).collect::<Vec<_>>());
        // spin(7) acts on S ⊗ T by the spin lift on S and by B on T
        let lift = spin_lift(g(), &b);
        let act = |t: &SpinTensor<Q>| {
            SpinTensor::from_fn(|j| {
                let spin = Spinor::from_slice(&lift.apply(&t.columns[j].to_vec()));
                (0..DIM).fold(spin, |acc, i| acc + t.columns[i].scale(&b.m[j][i]))
            })
        };
        prop_assert_eq!(s32_project(g(), &act(&t)), act(&s32_project(g(), &t)));
    }
}

#[test]
fn two_form_operator_spectrum() {
    // (T + 2)(T − 1) = 0 and tr T = 0 force multiplicities 7 and 14
    let n = form_dim(2);
    let mut trace = Q::from_int(0);
    for k in 0..n {
        let mut c = vec![Q::from_int(0); n];
        c[k] = Q::from_int(1);
        let e = Form::from_coeffs(2, c);
        let t = g().two_form_operator(&e);
        trace += t.coeffs()[k];
        let tt = g().two_form_operator(&t);
        // T² + T − 2 = 0
        assert!((tt + t - e.scale(&Q::from_int(2))).is_zero());
    }
    assert_eq!(trace, Q::from_int(0));
}

#[test]
fn i_is_injective_onto_the_common_kernel() {
    let images: Vec<Form<Q>> = sym0_basis::<Q>().iter().map(|h| g().imap(h).unwrap()).collect();
    let m = nearly_g2::dense::Mat::from_columns(form_dim(3), &images.iter().map(|f| f.coeffs().to_vec()).collect::<Vec<_>>());
    assert_eq!(m.rank(), 27);
    // the common kernel of ∧φ and ∧ψ on Λ³ is 27-dimensional
    let n = form_dim(3);
    let wedge_map = |k: usize| {
        let mut c = vec![Q::from_int(0); n];
        c[k] = Q::from_int(1);
        let e = Form::from_coeffs(3, c);
        let mut col = wedge(&e, &g().phi).coeffs().to_vec();
        col.extend(wedge(&e, &g().psi).coeffs().iter().cloned());
        col
    };
    let cols: Vec<Vec<Q>> = (0..n).map(wedge_map).collect();
    let w = nearly_g2::dense::Mat::from_columns(cols[0].len(), &cols);
    assert_eq!(n - w.rank(), 27);
    for f in &images {
        assert!(wedge(f, &g().phi).is_zero() && wedge(f, &g().psi).is_zero());
    }
}
