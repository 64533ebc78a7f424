mod common;

use common::*;
use gcrf_core::scalar::{GaussRational, Poly};
use gcrf_core::tensor::{
    bivector_eval, c_concomitant, pairing, poisson_bracket_1forms, schouten, schouten_concomitant, sharp,
    DiffForm, Multivector,
};
use proptest::prelude::*;

/// The canonical odd bracket `{P,Q} = (−1)^{p−1}[P,Q]`, which obeys the
/// Gerstenhaber sign rules.
fn odd(p: &Multivector, q: &Multivector) -> Multivector {
    let b = schouten(p, q);
    if p.degree() % 2 == 0 { -b } else { b }
}

fn sgn(e: usize) -> GaussRational {
    GaussRational::from_int(if e % 2 == 0 { 1 } else { -1 })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn gelfand_dorfman(pi in multivector(4, 2, 2)) {
        let n = 4;
        let pp = schouten(&pi, &pi);
        let cf = coframe(n);
        for a in 0..n { for b in 0..n { for c in 0..n {
            let lhs = pp.eval(&[cf[a].clone(), cf[b].clone(), cf[c].clone()]);
            let v = &sharp(&pi, &poisson_bracket_1forms(&pi, &cf[a], &cf[b]))
                - &schouten(&sharp(&pi, &cf[a]), &sharp(&pi, &cf[b]));
            let rhs = pairing(&cf[c], &v).scale(&GaussRational::from_int(2));
            prop_assert_eq!(lhs, rhs, "indices {} {} {}", a, b, c);
        }}}
    }

    #[test]
    fn graded_antisymmetry(p in 0usize..=2, q in 0usize..=2, seed in multivector(3, 2, 2), s2 in multivector(3, 1, 2), s3 in poly(3, 2, 3)) {
        let pick = |k: usize| match k { 0 => Multivector::scalar(s3.clone()), 1 => s2.clone(), _ => seed.clone() };
        let (a, b) = (pick(p), pick(q));
        let ab = schouten(&a, &b);
        let ba = schouten(&b, &a);
        prop_assert_eq!(ba, ab.scale_const(&sgn(p * q)));
    }

    #[test]
    fn graded_jacobi(
        degs in (0usize..=2, 0usize..=2, 0usize..=2),
        f in poly(3, 2, 3), x in vector(3, 2), y in vector(3, 1),
        u in multivector(3, 2, 1), w in multivector(3, 2, 2), g in poly(3, 2, 2),
    ) {
        let pool0 = [Multivector::scalar(f), Multivector::scalar(g)];
        let pool1 = [x, y];
        let pool2 = [u, w];
        let pick = |k: usize, slot: usize| match k { 0 => pool0[slot % 2].clone(), 1 => pool1[slot % 2].clone(), _ => pool2[slot % 2].clone() };
        // a bracket of two functions has degree −1; such triples are vacuous
        prop_assume!(degs.0 + degs.1 >= 1 && degs.1 + degs.2 >= 1 && degs.0 + degs.2 >= 1);
        let (p, q, r) = (pick(degs.0, 0), pick(degs.1, 1), pick(degs.2, 0));
        let lhs = odd(&p, &odd(&q, &r));
        let rhs = &odd(&odd(&p, &q), &r)
            + &odd(&q, &odd(&p, &r)).scale_const(&sgn((degs.0 + 1) * (degs.1 + 1)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_squared_vanishes(k in 0usize..=2, w0 in form(4, 0, 3), w1 in form(4, 1, 3), w2 in form(4, 2, 3)) {
        let w = [w0, w1, w2][k].clone();
        prop_assert!(w.d().d().is_zero());
    }

    #[test]
    fn cartan_formula(x in vector(3, 2), w in form(3, 2, 2)) {
        // Independent oracle: L_X ω(Y,Z) = X(ω(Y,Z)) − ω([X,Y],Z) − ω(Y,[X,Z]) on the frame.
        let lw = w.lie_derivative(&x);
        let fr = frame(3);
        for a in 0..3 { for b in 0..3 {
            let val = lw.eval(&[fr[a].clone(), fr[b].clone()]);
            let wab = DiffForm::scalar(w.eval(&[fr[a].clone(), fr[b].clone()]));
            let oracle = &(&pairing(&wab.d(), &x)
                - &w.eval(&[schouten(&x, &fr[a]), fr[b].clone()]))
                - &w.eval(&[fr[a].clone(), schouten(&x, &fr[b])]);
            prop_assert_eq!(val, oracle);
        }}
    }

    #[test]
    fn lie_derivative_is_a_derivation_of_wedge(x in vector(3, 2), a in form(3, 1, 2), b in form(3, 1, 2)) {
        let lhs = a.wedge(&b).lie_derivative(&x);
        let rhs = &a.lie_derivative(&x).wedge(&b) + &a.wedge(&b.lie_derivative(&x));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn concomitant_duality_general(pi in multivector(3, 2, 1), a in endo(3, 1), x in vector(3, 1), al in form(3, 1, 1), be in form(3, 1, 1)) {
        let lhs = pairing(&al, &schouten_concomitant(&pi, &a, &x, &be));
        let rhs = -pairing(&c_concomitant(&pi, &a, &be, &al), &x);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn concomitant_duality_for_compatible_pairs(g in poly(4, 2, 3), x in vector(4, 1), al in form(4, 1, 1), be in form(4, 1, 1)) {
        // A = complex structure on (x1, y1, x2, y2), π = g (∂x1 − i∂y1)∧(∂x2 − i∂y2) of type (2,0)
        let a = gcrf_core::tensor::Endomorphism::from_ints(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
        let i = GaussRational::i();
        let h1 = &Multivector::basis(4, &[0]) - &Multivector::basis(4, &[1]).scale_const(&i);
        let h2 = &Multivector::basis(4, &[2]) - &Multivector::basis(4, &[3]).scale_const(&i);
        let pi = h1.wedge(&h2).scale(&g);
        prop_assert_eq!(bivector_eval(&pi, &a.apply_dual(&al), &be), bivector_eval(&pi, &al, &a.apply_dual(&be)));
        let lhs = pairing(&al, &schouten_concomitant(&pi, &a, &x, &be));
        let rhs = pairing(&c_concomitant(&pi, &a, &al, &be), &x);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sharp_duality(pi in multivector(3, 2, 2), al in form(3, 1, 1), be in form(3, 1, 1)) {
        prop_assert_eq!(bivector_eval(&pi, &al, &be), -bivector_eval(&pi, &be, &al));
        prop_assert_eq!(pi.eval(&[al.clone(), be.clone()]), bivector_eval(&pi, &al, &be));
    }
}

#[test]
fn function_bivector_on_the_plane_is_poisson() {
    let p = gcrf_core::scalar::Patch::new(["y1", "y2"]).unwrap();
    let f = Poly::parse("y1^2*y2 - 3*y2 + 1", &p).unwrap();
    let pi = Multivector::basis(2, &[0, 1]).scale(&f);
    assert!(schouten(&pi, &pi).is_zero());
}
