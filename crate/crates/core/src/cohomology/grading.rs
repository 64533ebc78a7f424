//! Splitting of multivectors by the decomposition `TM = Q ⊕ P` and, on the
//! complexification, `Q ⊕ H ⊕ H̄`, and the induced pieces of `d_π`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::complex::{d_pi, without};
use super::space::subsets;
use super::CohomologyError;
use crate::scalar::Poly;
use crate::structures::{AdaptedFrame, Arg, CheckReport, ConditionBuilder, Projectors, StructureError};
use crate::tensor::{coord_form, poisson_bracket_1forms, sharp, DiffForm, Endomorphism, Multivector};

/// Expands every slot of `w` through the complementary projectors `projs`
/// and groups the terms by how many slots went through each projector.
pub fn slot_split(w: &Multivector, projs: &[&Endomorphism]) -> BTreeMap<Vec<usize>, Multivector> {
    let n = w.dim();
    let cols: Vec<Vec<Multivector>> = projs.iter().map(|p| (0..n).map(|i| p.column(i)).collect()).collect();
    let mut out: BTreeMap<Vec<usize>, Multivector> = BTreeMap::new();
    for (idx, c) in w.comps() {
        let mut partial: BTreeMap<Vec<usize>, Multivector> = BTreeMap::new();
        partial.insert(vec![0; projs.len()], Multivector::scalar(c.clone()));
        for &slot in idx.iter() {
            let mut next: BTreeMap<Vec<usize>, Multivector> = BTreeMap::new();
            for (key, t) in &partial {
                for (p, col) in cols.iter().enumerate() {
                    if col[slot].is_zero() {
                        continue;
                    }
                    let v = t.wedge(&col[slot]);
                    if v.is_zero() {
                        continue;
                    }
                    let mut k = key.clone();
                    k[p] += 1;
                    let e = next.entry(k).or_insert_with(|| Multivector::zero(n, v.degree()));
                    *e = &*e + &v;
                }
            }
            partial = next;
        }
        for (key, t) in partial {
            let e = out.entry(key).or_insert_with(|| Multivector::zero(n, w.degree()));
            *e = &*e + &t;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Component of bidegree `(i, j)`: `i` slots in `Q`, `j` slots in `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedComponent {
    pub i: usize,
    pub j: usize,
    pub value: Multivector,
}

/// Component of triple grade `(a, b, c)`: `a` slots in `Q`, `b` in `H`, `c` in `H̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleComponent {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub value: Multivector,
}

/// Nonzero bigraded components of `w`, ordered by `(i, j)`; they sum to `w`.
pub fn bigrade(w: &Multivector, pr: &Projectors) -> Vec<BigradedComponent> {
    slot_split(w, &[&pr.q, &pr.p]).into_iter().map(|(k, value)| BigradedComponent { i: k[0], j: k[1], value }).collect()
}

/// Nonzero triple-graded components of `w`, ordered by `(a, b, c)`.
pub fn triple_grade(w: &Multivector, pr: &Projectors) -> Vec<TripleComponent> {
    slot_split(w, &[&pr.q, &pr.h, &pr.hbar])
        .into_iter()
        .map(|(k, value)| TripleComponent { a: k[0], b: k[1], c: k[2], value })
        .collect()
}

/// As [`triple_grade`], after validating `frame` at `point`.
pub fn triple_grade_with_frame(
    w: &Multivector,
    a: &Endomorphism,
    frame: &AdaptedFrame,
    point: &[crate::scalar::GaussRational],
    patch: &crate::scalar::Patch,
) -> Result<Vec<TripleComponent>, CohomologyError> {
    let pr = Projectors::new(a)?;
    let r = frame.validate(a, point, patch);
    if !r.passed() {
        return Err(CohomologyError::Structure(StructureError::InvalidFrame(r)));
    }
    Ok(triple_grade(w, &pr))
}

/// `σ′w`, `σ″w` and the part of `d_π w` outside the two expected shifts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaSplit {
    pub sigma_prime: Multivector,
    pub sigma_second: Multivector,
    pub residual: Multivector,
}

/// Splits `d_π` on each bigraded component `w_{ij}` into the parts of
/// bidegree `(i−1, j+2)`, `(i, j+1)` and everything else.
pub fn sigma_split(pi: &Multivector, pr: &Projectors, w: &Multivector) -> SigmaSplit {
    let n = w.dim();
    let k1 = w.degree() + 1;
    let mut s = SigmaSplit {
        sigma_prime: Multivector::zero(n, k1),
        sigma_second: Multivector::zero(n, k1),
        residual: Multivector::zero(n, k1),
    };
    for comp in bigrade(w, pr) {
        for out in bigrade(&d_pi(pi, &comp.value), pr) {
            let slot = if comp.i >= 1 && out.i == comp.i - 1 && out.j == comp.j + 2 {
                &mut s.sigma_prime
            } else if out.i == comp.i && out.j == comp.j + 1 {
                &mut s.sigma_second
            } else {
                &mut s.residual
            };
            *slot = &*slot + &out.value;
        }
    }
    s
}

pub fn sigma_prime(pi: &Multivector, pr: &Projectors, w: &Multivector) -> Multivector {
    sigma_split(pi, pr, w).sigma_prime
}

pub fn sigma_second(pi: &Multivector, pr: &Projectors, w: &Multivector) -> Multivector {
    sigma_split(pi, pr, w).sigma_second
}

/// `(σ″_H w, σ″_H̄ w)`: the parts of `σ″` raising the `H` resp. `H̄` degree.
/// Anything else in `σ″` is returned as the third entry.
pub fn sigma_second_split(pi: &Multivector, pr: &Projectors, w: &Multivector) -> (Multivector, Multivector, Multivector) {
    let n = w.dim();
    let k1 = w.degree() + 1;
    let (mut h, mut hb, mut rest) = (Multivector::zero(n, k1), Multivector::zero(n, k1), Multivector::zero(n, k1));
    for comp in triple_grade(w, pr) {
        let s2 = sigma_second(pi, pr, &comp.value);
        for out in triple_grade(&s2, pr) {
            let slot = if out.a == comp.a && out.b == comp.b + 1 && out.c == comp.c {
                &mut h
            } else if out.a == comp.a && out.b == comp.b && out.c == comp.c + 1 {
                &mut hb
            } else {
                &mut rest
            };
            *slot = &*slot + &out.value;
        }
    }
    (h, hb, rest)
}

/// Deterministic test multivectors: for each degree `k ≤ 3`, a few basis
/// `k`-vectors times `1`, a coordinate, and a quadratic monomial.
pub fn grading_samples(n: usize) -> Vec<Multivector> {
    let mut out = Vec::new();
    for k in 0..=n.min(3) {
        let sets = subsets(n, k);
        let step = (sets.len() / 3).max(1);
        for set in sets.iter().step_by(step).take(3) {
            let s: usize = set.iter().sum();
            let coeffs = [Poly::one(n), Poly::var(n, s % n), &Poly::var(n, 0) * &Poly::var(n, n - 1)];
            for c in coeffs {
                out.push(Multivector::from_components(n, k, [(set.clone(), c)]));
            }
        }
    }
    out
}

/// Value of the explicit `σ″` formula at `α`'s in `ann P` and `β`'s in `ann Q`.
fn sigma_second_formula(pi: &Multivector, w: &Multivector, alphas: &[DiffForm], betas: &[DiffForm]) -> Poly {
    let n = w.dim();
    let i = alphas.len();
    let mut acc = Poly::zero(n);
    let add = |acc: &mut Poly, sign: usize, t: Poly| {
        *acc = if sign % 2 == 0 { &*acc + &t } else { &*acc - &t };
    };
    for h in 0..betas.len() {
        let mut args = alphas.to_vec();
        args.extend(without(betas, &[h]));
        let f = w.eval(&args);
        let t = crate::tensor::pairing(&DiffForm::scalar(f).d(), &sharp(pi, &betas[h]));
        add(&mut acc, i + h, t);
    }
    for h in 0..i {
        for k in 0..betas.len() {
            let mut args = vec![poisson_bracket_1forms(pi, &alphas[h], &betas[k])];
            args.extend(without(alphas, &[h]));
            args.extend(without(betas, &[k]));
            add(&mut acc, i + h + k, w.eval(&args));
        }
    }
    // the bracket sits after the i α's, hence the extra (−1)^i relative to
    // the coboundary formula, where it comes first
    for h in 0..betas.len() {
        for k in h + 1..betas.len() {
            let mut args = alphas.to_vec();
            args.push(poisson_bracket_1forms(pi, &betas[h], &betas[k]));
            args.extend(without(betas, &[h, k]));
            add(&mut acc, i + h + k, w.eval(&args));
        }
    }
    acc
}

/// Value of the explicit `σ′` formula.
fn sigma_prime_formula(pi: &Multivector, w: &Multivector, alphas: &[DiffForm], betas: &[DiffForm]) -> Poly {
    let n = w.dim();
    let mut acc = Poly::zero(n);
    for h in 0..betas.len() {
        for k in h + 1..betas.len() {
            let mut args = vec![poisson_bracket_1forms(pi, &betas[h], &betas[k])];
            args.extend(alphas.iter().cloned());
            args.extend(without(betas, &[h, k]));
            let t = w.eval(&args);
            acc = if (h + k) % 2 == 0 { &acc + &t } else { &acc - &t };
        }
    }
    acc
}

/// Checks, on each sample, that `d_π` has no component outside the shifts
/// `(−1, 2)` and `(0, 1)`, that `σ′² = σ″² = σ′σ″ + σ″σ′ = 0`, and that the
/// graded pieces agree with the explicit formulas on projected coframes.
pub fn check_grading(pi: &Multivector, a: &Endomorphism, samples: &[Multivector]) -> Result<CheckReport, CohomologyError> {
    let pr = Projectors::new(a)?;
    let n = a.dim();
    let mut residual = ConditionBuilder::new("grading:residual", "d_π = σ′ + σ″ with shifts (−1, 2) and (0, 1)");
    let mut s1 = ConditionBuilder::new("grading:sigma-prime-square", "σ′² = 0");
    let mut s2 = ConditionBuilder::new("grading:sigma-second-square", "σ″² = 0");
    let mut anti = ConditionBuilder::new("grading:anticommute", "σ′σ″ + σ″σ′ = 0");
    let mut f1 = ConditionBuilder::new("grading:sigma-prime-formula", "σ′ agrees with its explicit formula");
    let mut f2 = ConditionBuilder::new("grading:sigma-second-formula", "σ″ agrees with its explicit formula");
    let alphas_all: Vec<DiffForm> = (0..n).map(|i| pr.q.apply_dual(&coord_form(n, i))).collect();
    let betas_all: Vec<DiffForm> = (0..n).map(|i| pr.p.apply_dual(&coord_form(n, i))).collect();
    let a_idx: Vec<usize> = (0..n).filter(|&i| !alphas_all[i].is_zero()).collect();
    let b_idx: Vec<usize> = (0..n).filter(|&i| !betas_all[i].is_zero()).collect();
    for (s, w) in samples.iter().enumerate() {
        let arg = vec![Arg::Index("sample", s)];
        let sp = sigma_split(pi, &pr, w);
        residual.check(arg.clone(), sp.residual.clone());
        s1.check(arg.clone(), sigma_prime(pi, &pr, &sp.sigma_prime));
        s2.check(arg.clone(), sigma_second(pi, &pr, &sp.sigma_second));
        let ac = &sigma_second(pi, &pr, &sp.sigma_prime) + &sigma_prime(pi, &pr, &sp.sigma_second);
        anti.check(arg.clone(), ac);
        for comp in bigrade(w, &pr) {
            let (i, j) = (comp.i, comp.j);
            let split = sigma_split(pi, &pr, &comp.value);
            for al in subsets(a_idx.len(), i) {
                let alphas: Vec<DiffForm> = al.iter().map(|&t| alphas_all[a_idx[t]].clone()).collect();
                for bl in subsets(b_idx.len(), j + 1) {
                    let betas: Vec<DiffForm> = bl.iter().map(|&t| betas_all[b_idx[t]].clone()).collect();
                    let mut args = alphas.clone();
                    args.extend(betas.iter().cloned());
                    let diff = &split.sigma_second.eval(&args) - &sigma_second_formula(pi, &comp.value, &alphas, &betas);
                    f2.check(arg.clone(), diff);
                }
            }
            if i == 0 {
                continue;
            }
            for al in subsets(a_idx.len(), i - 1) {
                let alphas: Vec<DiffForm> = al.iter().map(|&t| alphas_all[a_idx[t]].clone()).collect();
                for bl in subsets(b_idx.len(), j + 2) {
                    let betas: Vec<DiffForm> = bl.iter().map(|&t| betas_all[b_idx[t]].clone()).collect();
                    let mut args = alphas.clone();
                    args.extend(betas.iter().cloned());
                    let diff = &split.sigma_prime.eval(&args) - &sigma_prime_formula(pi, &comp.value, &alphas, &betas);
                    f1.check(arg.clone(), diff);
                }
            }
        }
    }
    let mut r = CheckReport::new();
    for c in [residual, s1, s2, anti, f1, f2] {
        r.push(c.finish());
    }
    Ok(r)
}

/// Checks `σ″_H² = σ″_H̄² = σ″_Hσ″_H̄ + σ″_H̄σ″_H = 0` and `σ″ = σ″_H + σ″_H̄`
/// on the samples, after validating the adapted frame.
pub fn check_triple_grading(
    pi: &Multivector,
    a: &Endomorphism,
    frame: &AdaptedFrame,
    point: &[crate::scalar::GaussRational],
    patch: &crate::scalar::Patch,
    samples: &[Multivector],
) -> Result<CheckReport, CohomologyError> {
    let pr = Projectors::new(a)?;
    let fr = frame.validate(a, point, patch);
    if !fr.passed() {
        return Err(CohomologyError::Structure(StructureError::InvalidFrame(fr)));
    }
    let mut hh = ConditionBuilder::new("triple:h-square", "σ″_H² = 0");
    let mut bb = ConditionBuilder::new("triple:hbar-square", "σ″_H̄² = 0");
    let mut anti = ConditionBuilder::new("triple:anticommute", "σ″_H σ″_H̄ + σ″_H̄ σ″_H = 0");
    let mut sum = ConditionBuilder::new("triple:sum", "σ″ = σ″_H + σ″_H̄");
    for (s, w) in samples.iter().enumerate() {
        let arg = vec![Arg::Index("sample", s)];
        let (h, hb, rest) = sigma_second_split(pi, &pr, w);
        sum.check(arg.clone(), rest);
        hh.check(arg.clone(), sigma_second_split(pi, &pr, &h).0);
        bb.check(arg.clone(), sigma_second_split(pi, &pr, &hb).1);
        let ac = &sigma_second_split(pi, &pr, &hb).0 + &sigma_second_split(pi, &pr, &h).1;
        anti.check(arg, ac);
    }
    let mut r = CheckReport::new();
    r.notes = fr.notes;
    for c in [hh, bb, anti, sum] {
        r.push(c.finish());
    }
    Ok(r)
}
