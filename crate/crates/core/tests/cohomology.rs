mod common;

use common::instances::*;
use common::{multivector as rand_multivector, real_alt};
use gcrf_core::cohomology::*;
use gcrf_core::scalar::{GaussRational, Monomial, Patch, Poly};
use gcrf_core::structures::{Projectors, StructureError};
use gcrf_core::tensor::{schouten, Contra, Endomorphism, Multivector};
use num_traits::Zero;
use proptest::prelude::*;

/// Dense oracle: basis of `χ^k_{≤D}` enumerated here, the differential built
/// from the evaluation formula, ranks by plain Gauss–Jordan over `ℚ(i)`.
mod oracle {
    use super::*;

    fn monos(n: usize, d: u32) -> Vec<Monomial> {
        let mut out = vec![vec![0u32; n]];
        for _ in 0..d {
            let mut next = out.clone();
            for m in &out {
                for i in 0..n {
                    let mut e = m.clone();
                    e[i] += 1;
                    next.push(e);
                }
            }
            next.sort();
            next.dedup();
            out = next;
        }
        out
    }

    fn index_sets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..(1 << n)).filter(|b| b.count_ones() as usize == k).map(|b| (0..n).filter(|i| b & (1 << i) != 0).collect()).collect()
    }

    pub fn basis(n: usize, k: usize, d: u32) -> Vec<(Vec<usize>, Monomial)> {
        let ms = monos(n, d);
        index_sets(n, k).into_iter().flat_map(|s| ms.iter().map(move |m| (s.clone(), m.clone()))).collect()
    }

    fn rank(mut rows: Vec<Vec<GaussRational>>) -> usize {
        let mut r = 0;
        let ncols = rows.first().map_or(0, Vec::len);
        for c in 0..ncols {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
            rows.swap(r, p);
            let inv = rows[r][c].inv().unwrap();
            let pivot: Vec<GaussRational> = rows[r].iter().map(|x| x * &inv).collect();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && !row[c].is_zero() {
                    let f = row[c].clone();
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x -= &(&f * y);
                    }
                }
            }
            rows[r] = pivot;
            r += 1;
        }
        r
    }

    fn differential_rank(pi: &Multivector, k: usize, d: u32) -> usize {
        let n = pi.dim();
        let cod = basis(n, k + 1, d);
        let rows = basis(n, k, d)
            .into_iter()
            .map(|(set, m)| {
                let w = Multivector::from_components(n, k, [(set, Poly::monomial(m, GaussRational::from_int(1)))]);
                let dw = d_pi_by_evaluation(pi, &w);
                cod.iter().map(|(s, m)| dw.component(s).coeff(m)).collect()
            })
            .collect();
        rank(rows)
    }

    pub fn betti(pi: &Multivector, d: u32) -> Vec<usize> {
        let n = pi.dim();
        let ranks: Vec<usize> = (0..=n).map(|k| if k == n { 0 } else { differential_rank(pi, k, d) }).collect();
        (0..=n).map(|k| basis(n, k, d).len() - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 }).collect()
    }
}

fn symplectic_r2() -> Multivector {
    Multivector::basis(2, &[0, 1])
}

/// `π = x ∂y∧∂z + y ∂z∧∂x + z ∂x∧∂y`, the linear Poisson structure of `so(3)*`.
fn so3() -> Multivector {
    let p = Patch::new(["x", "y", "z"]).unwrap();
    bivector(&p, &[(1, 2, "x"), (0, 2, "-y"), (0, 1, "z")])
}

fn poisson_corpus() -> Vec<Multivector> {
    vec![
        symplectic_r2(),
        so3(),
        Multivector::zero(3, 2),
        holomorphic_r4().pi,
        locally_product_r5().pi,
        heisenberg_distribution_r5().pi,
        perturbed_r6().pi,
    ]
}

#[test]
fn sign_convention_on_the_plane() {
    let p = Patch::new(["x", "y"]).unwrap();
    let x = Multivector::scalar(poly(&p, "x"));
    let expected = Multivector::basis(2, &[1]).scale_const(&GaussRational::from_int(-1));
    assert_eq!(d_pi(&symplectic_r2(), &x), expected);
    assert_eq!(d_pi_by_evaluation(&symplectic_r2(), &x), expected);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn coboundary_formulas_agree(pi in real_alt::<Contra>(4, 2, 2), k in 0usize..=2, w0 in rand_multivector(4, 0, 2), w1 in rand_multivector(4, 1, 2), w2 in rand_multivector(4, 2, 2)) {
        let w = [w0, w1, w2][k].clone();
        prop_assert_eq!(d_pi(&pi, &w), d_pi_by_evaluation(&pi, &w));
    }

    #[test]
    fn d_pi_squares_to_zero_on_poisson_corpus(which in 0usize..7, k in 0usize..=2, seed in 0usize..1000) {
        let pi = poisson_corpus()[which].clone();
        let n = pi.dim();
        let k = k.min(n);
        let space = TruncatedSpace::new(n, k, 2);
        let w = space.basis_element(seed % space.dim());
        prop_assert!(d_pi(&pi, &d_pi(&pi, &w)).is_zero());
    }

    #[test]
    fn sparse_and_dense_ranks_agree(rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 5), 0..7)) {
        let dense: Vec<Vec<GaussRational>> = rows.iter().map(|r| r.iter().map(|&x| GaussRational::from_int(x)).collect()).collect();
        let sparse: Vec<SparseVec> = dense
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect())
            .collect();
        prop_assert_eq!(rank(&sparse), rank_of_rows(&dense, 5));
        prop_assert_eq!(kernel(&sparse).len(), sparse.len() - rank(&sparse));
    }
}

#[test]
fn non_poisson_bivector_has_nonzero_d_squared() {
    let p = Patch::new(["x", "y", "z"]).unwrap();
    // v = (y, 0, 1) has v · curl v = −1
    let pi = bivector(&p, &[(0, 1, "1"), (1, 2, "y")]);
    assert!(!schouten(&pi, &pi).is_zero());
    let witness = (0..3)
        .map(|i| Multivector::scalar(Poly::var(3, i)))
        .find(|w| !d_pi(&pi, &d_pi(&pi, w)).is_zero());
    assert!(witness.is_some());
    assert!(matches!(poisson_cohomology(&pi, 1, 3), Err(CohomologyError::NotPoisson(_))));
}

#[test]
fn truncation_preconditions() {
    let p = Patch::new(["x", "y"]).unwrap();
    let quad = bivector(&p, &[(0, 1, "x^2")]);
    assert!(matches!(poisson_cohomology(&quad, 2, 2), Err(CohomologyError::DegreeTooHigh { degree: 2 })));
    let space = TruncatedSpace::new(2, 0, 1);
    let w = Multivector::scalar(poly(&p, "x*y"));
    assert!(matches!(space.coords(&w), Err(CohomologyError::OutsideTruncation { degree: 2, bound: 1 })));
}

#[test]
fn truncated_space_round_trip() {
    let space = TruncatedSpace::new(3, 2, 2);
    assert_eq!(space.dim(), binomial(3, 2) * binomial(5, 2));
    for (k, e) in space.basis().enumerate() {
        let c = space.coords(&e).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.keys().next(), Some(&k));
        assert_eq!(space.element(&c), e);
    }
}

#[test]
fn symplectic_plane_has_constant_casimirs_only() {
    let t = poisson_cohomology(&symplectic_r2(), 3, 2).unwrap();
    assert_eq!(t.betti[0], 1);
    assert_eq!(t.betti, oracle::betti(&symplectic_r2(), 3));
}

#[test]
fn zero_bivector_cohomology_is_the_whole_space() {
    let pi = Multivector::zero(3, 2);
    let t = poisson_cohomology(&pi, 2, 3).unwrap();
    let expected: Vec<usize> = (0..=3).map(|k| binomial(3, k) * binomial(3 + 2, 2)).collect();
    assert_eq!(t.betti, expected);
    assert_eq!(t.dims, expected);
    assert_eq!(t.betti, oracle::betti(&pi, 2));
}

#[test]
fn so3_casimirs() {
    let t = poisson_cohomology(&so3(), 2, 3).unwrap();
    assert_eq!(t.betti[0], 2);
    assert_eq!(t.betti, oracle::betti(&so3(), 2));
    // the quadratic Casimir is a cocycle
    let p = Patch::new(["x", "y", "z"]).unwrap();
    let c = Multivector::scalar(poly(&p, "x^2 + y^2 + z^2"));
    assert!(d_pi(&so3(), &c).is_zero());
}

#[test]
fn dense_oracle_matches_on_corpus() {
    for pi in [holomorphic_r4().pi, locally_product_r5().pi, so3()] {
        let t = poisson_cohomology(&pi, 1, pi.dim()).unwrap();
        assert_eq!(t.betti, oracle::betti(&pi, 1));
    }
}

#[test]
fn grading_on_integrable_instances() {
    for m in [holomorphic_r4(), cosymplectic_r5(), locally_product_r5(), complex_times_contact_r7()] {
        let a = m.a.clone().unwrap();
        let r = check_grading(&m.pi, &a, &grading_samples(m.dim())).unwrap();
        assert!(r.passed(), "{:?} {:?}", m.patch.names(), r.failing().map(|c| c.id.clone()).collect::<Vec<_>>());
        if let Some(fr) = &m.frames {
            let t = check_triple_grading(&m.pi, &a, fr, &m.base_point(), &m.patch, &grading_samples(m.dim())).unwrap();
            assert!(t.passed(), "{:?}", t.failing().map(|c| c.id.clone()).collect::<Vec<_>>());
        }
    }
}

#[test]
fn components_sum_back() {
    let m = non_crf_r5();
    let pr = Projectors::new(m.a.as_ref().unwrap()).unwrap();
    for w in grading_samples(5) {
        let bi = bigrade(&w, &pr).into_iter().fold(Multivector::zero(5, w.degree()), |acc, c| &acc + &c.value);
        let tri = triple_grade(&w, &pr).into_iter().fold(Multivector::zero(5, w.degree()), |acc, c| &acc + &c.value);
        assert_eq!(bi, w);
        assert_eq!(tri, w);
    }
}

#[test]
fn sigma_prime_vanishes_without_q() {
    let m = holomorphic_r4();
    let pr = Projectors::new(m.a.as_ref().unwrap()).unwrap();
    for w in grading_samples(4) {
        assert!(sigma_prime(&m.pi, &pr, &w).is_zero());
        assert_eq!(sigma_second(&m.pi, &pr, &w), d_pi(&m.pi, &w));
    }
}

#[test]
fn conjugation_swaps_h_and_hbar_degrees() {
    let m = cosymplectic_r5();
    let pr = Projectors::new(m.a.as_ref().unwrap()).unwrap();
    let p = &m.patch;
    let w = bivector(p, &[(0, 2, "x1 + i*y2"), (1, 4, "t"), (0, 1, "i")]);
    let direct = triple_grade(&w, &pr);
    let conj = triple_grade(&w.conj(), &pr);
    assert_eq!(direct.len(), conj.len());
    for c in &direct {
        let partner = conj.iter().find(|d| (d.a, d.b, d.c) == (c.a, c.c, c.b)).expect("swapped component");
        assert_eq!(partner.value, c.value.conj());
    }
}

#[test]
fn triple_grading_rejects_invalid_frame() {
    let m = holomorphic_r4();
    let mut fr = m.frames.clone().unwrap();
    fr.h.swap(0, 1);
    fr.kappa.reverse();
    fr.h[0] = fr.h[0].conj();
    let r = check_triple_grading(&m.pi, m.a.as_ref().unwrap(), &fr, &m.base_point(), &m.patch, &grading_samples(4));
    assert!(matches!(r, Err(CohomologyError::Structure(StructureError::InvalidFrame(_)))));
}

#[test]
fn spectral_e1_is_the_binomial_count() {
    let m = locally_product_r5();
    let t = spectral_terms(&m.pi, m.a.as_ref().unwrap(), 2, SpectralOptions::default()).unwrap();
    assert_eq!((t.p_rank, t.q_rank), (4, 1));
    let monos = binomial(5 + 2, 2);
    for i in 0..=4 {
        for j in 0..=1 {
            assert_eq!(t.e1[i][j], binomial(4, i) * binomial(1, j) * monos, "({i}, {j})");
        }
    }
    assert!(t.report.passed(), "{:?}", t.report.failing().map(|c| c.id.clone()).collect::<Vec<_>>());
    assert_eq!(t.ann_p_dims, vec![monos, monos]);
    for i in 0..=4 {
        for j in 0..=1 {
            assert!(t.e3[i][j] <= t.e2[i][j] && t.e2[i][j] <= t.e1[i][j]);
        }
    }
}

#[test]
fn spectral_without_q_reproduces_cohomology() {
    let m = holomorphic_r4();
    let t = spectral_terms(&m.pi, m.a.as_ref().unwrap(), 2, SpectralOptions::default()).unwrap();
    let h = poisson_cohomology(&m.pi, 2, 4).unwrap();
    assert_eq!(t.q_rank, 0);
    let column: Vec<usize> = (0..=4).map(|i| t.e2[i][0]).collect();
    assert_eq!(column, h.betti);
    assert_eq!(t.e3, t.e2);
}

#[test]
fn spectral_for_zero_bivector_stops_at_e1() {
    let m = locally_product_r5();
    let t = spectral_terms(&Multivector::zero(5, 2), m.a.as_ref().unwrap(), 1, SpectralOptions::default()).unwrap();
    assert_eq!(t.e2, t.e1);
    assert_eq!(t.e3, t.e1);
}

#[test]
fn spectral_dimensions_do_not_depend_on_representatives() {
    let m = locally_product_r5();
    let a = m.a.as_ref().unwrap();
    let t1 = spectral_terms(&m.pi, a, 1, SpectralOptions::default()).unwrap();
    let t2 = spectral_terms(&m.pi, a, 1, SpectralOptions { reverse_representatives: true }).unwrap();
    assert_eq!(t1.e2, t2.e2);
    assert_eq!(t1.e3, t2.e3);
    assert_eq!(t1.sigma_prime_ranks, t2.sigma_prime_ranks);
}

#[test]
fn spectral_preconditions() {
    let m = heisenberg_contact_r3();
    assert!(matches!(spectral_terms(&m.pi, m.a.as_ref().unwrap(), 1, SpectralOptions::default()), Err(CohomologyError::NonConstantA)));
    let p = perturbed_r6();
    assert!(matches!(
        spectral_terms(&p.pi, p.a.as_ref().unwrap(), 1, SpectralOptions::default()),
        Err(CohomologyError::Structure(StructureError::Precondition(_)))
    ));
    let swap = Endomorphism::from_ints(&[&[0, 1], &[1, 0]]);
    assert!(matches!(
        spectral_terms(&Multivector::zero(2, 2), &swap, 1, SpectralOptions::default()),
        Err(CohomologyError::Structure(StructureError::NotF(_)))
    ));
}

#[test]
fn quotient_algebroid_on_distribution_instance() {
    let m = heisenberg_distribution_r5();
    let pp = m.projector_p.clone().unwrap();
    let r = check_quotient_well_defined(&m.pi, &pp).unwrap();
    for id in ["quotient:anchor-kills", "quotient:ideal", "quotient:jacobi"] {
        assert!(r.verdict_of(id).is_pass(), "{id}");
    }
    // a form in ann P has zero class
    let theta = pp.row(4).scale_const(&GaussRational::from_int(-1));
    let theta = &theta + &gcrf_core::tensor::coord_form(5, 4);
    assert!(pp.apply_dual(&theta).is_zero());
    let any = gcrf_core::tensor::coord_form(5, 0);
    assert!(quotient_algebroid_bracket(&m.pi, &pp, &theta, &any).is_zero());
    // a bivector with a transverse Hamiltonian is refused
    let bad = bivector(&m.patch, &[(0, 4, "1")]);
    assert!(check_quotient_well_defined(&bad, &pp).is_err());
}
