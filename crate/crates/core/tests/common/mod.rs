#![allow(dead_code)]

pub mod instances;

use gcrf_core::scalar::{GaussRational, Poly};
use gcrf_core::tensor::{AltTensor, DiffForm, Endomorphism, Multivector, Variance};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn monomials(n: usize, max_deg: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0; n]];
    for _ in 0..max_deg {
        let mut next = Vec::new();
        for m in &out {
            for i in 0..n {
                let mut e = m.clone();
                e[i] += 1;
                next.push(e);
            }
        }
        out.extend(next);
        out.sort();
        out.dedup();
    }
    out
}

pub fn coeff() -> impl Strategy<Value = GaussRational> {
    (-3i64..=3, 1i64..=2, -1i64..=1).prop_map(|(a, b, c)| {
        GaussRational::new(BigRational::new(BigInt::from(a), BigInt::from(b)), BigRational::from_integer(BigInt::from(c)))
    })
}

pub fn real_coeff() -> impl Strategy<Value = GaussRational> {
    (-3i64..=3, 1i64..=2).prop_map(|(a, b)| GaussRational::from_ratio(a, b))
}

/// Random polynomial with at most `terms` terms of degree ≤ `max_deg`.
pub fn poly(n: usize, max_deg: u32, terms: usize) -> impl Strategy<Value = Poly> {
    let ms = monomials(n, max_deg);
    prop::collection::vec((prop::sample::select(ms), coeff()), 0..=terms)
        .prop_map(move |ts| Poly::from_terms(n, ts))
}

pub fn real_poly(n: usize, max_deg: u32, terms: usize) -> impl Strategy<Value = Poly> {
    let ms = monomials(n, max_deg);
    prop::collection::vec((prop::sample::select(ms), real_coeff()), 0..=terms)
        .prop_map(move |ts| Poly::from_terms(n, ts))
}

fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn alt<V: Variance>(n: usize, k: usize, max_deg: u32) -> impl Strategy<Value = AltTensor<V>> {
    let ts = tuples(n, k);
    let len = ts.len();
    prop::collection::vec(poly(n, max_deg, 3), len)
        .prop_map(move |cs| AltTensor::from_components(n, k, ts.iter().cloned().zip(cs)))
}

pub fn real_alt<V: Variance>(n: usize, k: usize, max_deg: u32) -> impl Strategy<Value = AltTensor<V>> {
    let ts = tuples(n, k);
    let len = ts.len();
    prop::collection::vec(real_poly(n, max_deg, 3), len)
        .prop_map(move |cs| AltTensor::from_components(n, k, ts.iter().cloned().zip(cs)))
}

pub fn vector(n: usize, max_deg: u32) -> impl Strategy<Value = Multivector> {
    alt(n, 1, max_deg)
}

pub fn form(n: usize, k: usize, max_deg: u32) -> impl Strategy<Value = DiffForm> {
    alt(n, k, max_deg)
}

pub fn multivector(n: usize, k: usize, max_deg: u32) -> impl Strategy<Value = Multivector> {
    alt(n, k, max_deg)
}

pub fn endo(n: usize, max_deg: u32) -> impl Strategy<Value = Endomorphism> {
    prop::collection::vec(poly(n, max_deg, 2), n * n)
        .prop_map(move |es| Endomorphism::from_rows(es.chunks(n).map(|c| c.to_vec()).collect()))
}

pub fn coframe(n: usize) -> Vec<DiffForm> {
    (0..n).map(|i| DiffForm::basis(n, &[i])).collect()
}

pub fn frame(n: usize) -> Vec<Multivector> {
    (0..n).map(|i| Multivector::basis(n, &[i])).collect()
}

/// `S A₀ S⁻¹` with `A₀ = J ⊕ 0` (`pairs` complex pairs, `q` zero directions)
/// and `S = Id + N`, `N` strictly upper triangular with real entries of degree ≤ 1.
pub fn conjugated_f_structure(pairs: usize, q: usize) -> impl Strategy<Value = Endomorphism> {
    let n = 2 * pairs + q;
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    prop::collection::vec((prop::sample::select(slots), real_poly(n, 1, 2)), 0..=2).prop_map(move |ns| {
        let mut a0 = Endomorphism::zero(n);
        for k in 0..pairs {
            a0.set_entry(2 * k, 2 * k + 1, Poly::int(n, -1));
            a0.set_entry(2 * k + 1, 2 * k, Poly::int(n, 1));
        }
        let mut nil = Endomorphism::zero(n);
        for ((i, j), p) in ns {
            nil.set_entry(i, j, p);
        }
        let id = Endomorphism::identity(n);
        let s = &id + &nil;
        // (Id + N)⁻¹ = Σ (−N)^k, finite since N is nilpotent
        let mut inv = id.clone();
        let mut term = id;
        for _ in 1..n {
            term = term.compose(&nil).scale_const(&GaussRational::from_int(-1));
            inv = &inv + &term;
        }
        s.compose(&a0).compose(&inv)
    })
}
