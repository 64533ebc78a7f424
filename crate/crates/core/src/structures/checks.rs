//! Checkers for F structures, quasi-classical pairs `(A, π)` and their
//! integrability, decided on the coordinate (co)basis through the
//! polynomial projectors of `A`.

use alloc::vec;
use alloc::vec::Vec;

use super::{coframe, frame, AdaptedFrame, Arg, CheckReport, ConditionBuilder, Projectors, StructureError, StructureInstance};
use crate::scalar::Patch;
use crate::tensor::{bivector_eval, cr_tensor, schouten, schouten_concomitant, sharp, Endomorphism, Multivector};

/// `A³ + A = 0`, reported as a single matrix witness.
pub fn check_f_structure(a: &Endomorphism) -> CheckReport {
    let mut c = ConditionBuilder::new("f:cube", "A³ + A = 0");
    c.check(vec![], &a.pow(3) + a);
    let mut r = CheckReport::new();
    r.push(c.finish());
    r
}

/// CR type: `𝒮_A(∂_i, ∂_j) = 0` for `i < j`.
pub fn check_cr_type(a: &Endomorphism) -> Result<CheckReport, StructureError> {
    Projectors::new(a)?;
    let n = a.dim();
    let e = frame(n);
    let mut c = ConditionBuilder::new("cr:s_a", "𝒮_A(X, Y) = 0");
    for i in 0..n {
        for j in i + 1..n {
            c.check(vec![Arg::Vector(i), Arg::Vector(j)], cr_tensor(a, &e[i], &e[j]));
        }
    }
    let mut r = CheckReport::new();
    r.push(c.finish());
    Ok(r)
}

/// Classical CRF: `[H, H] ⊆ H` and `A²[X, Y] − A[AX, Y] = 0` for `X ∈ P`, `Y ∈ Q`.
pub fn check_classical_crf(a: &Endomorphism) -> Result<CheckReport, StructureError> {
    let pr = Projectors::new(a)?;
    Ok(classical_crf_conditions(a, &pr))
}

pub(super) fn classical_crf_conditions(a: &Endomorphism, pr: &Projectors) -> CheckReport {
    let n = a.dim();
    let e = frame(n);
    let not_h = &Endomorphism::identity(n) - &pr.h;
    let hv: Vec<Multivector> = e.iter().map(|v| pr.h.apply(v)).collect();
    let mut ha = ConditionBuilder::new("crf:h-involutive", "(Id − pr_H)[pr_H X, pr_H Y] = 0");
    for i in 0..n {
        for j in i + 1..n {
            if hv[i].is_zero() || hv[j].is_zero() {
                continue;
            }
            ha.check(
                vec![Arg::projected("pr_H", Arg::Vector(i)), Arg::projected("pr_H", Arg::Vector(j))],
                not_h.apply(&schouten(&hv[i], &hv[j])),
            );
        }
    }
    let a2 = a.square();
    let pv: Vec<Multivector> = e.iter().map(|v| pr.p.apply(v)).collect();
    let qv: Vec<Multivector> = e.iter().map(|v| pr.q.apply(v)).collect();
    let mut mixed = ConditionBuilder::new("crf:mixed", "A²[X, Y] − A[AX, Y] = 0 for X ∈ P, Y ∈ Q");
    for i in 0..n {
        if pv[i].is_zero() {
            continue;
        }
        let apx = a.apply(&pv[i]);
        for j in 0..n {
            if qv[j].is_zero() {
                continue;
            }
            let v = &a2.apply(&schouten(&pv[i], &qv[j])) - &a.apply(&schouten(&apx, &qv[j]));
            mixed.check(vec![Arg::projected("pr_P", Arg::Vector(i)), Arg::projected("pr_Q", Arg::Vector(j))], v);
        }
    }
    let mut r = CheckReport::new();
    r.push(ha.finish());
    r.push(mixed.finish());
    r
}

/// Frame form of the classical CRF conditions: `[H, H] ⊆ H` and
/// `[H, Q^c] ⊆ H ⊕ Q^c`, on the claimed frame vectors.
pub fn check_classical_crf_frame(a: &Endomorphism, fr: &AdaptedFrame) -> Result<CheckReport, StructureError> {
    let pr = Projectors::new(a)?;
    let n = a.dim();
    let not_h = &Endomorphism::identity(n) - &pr.h;
    let mut hh = ConditionBuilder::new("crf-frame:h-h", "[h_i, h_j] ∈ H");
    for i in 0..fr.h.len() {
        for j in i + 1..fr.h.len() {
            hh.check(vec![Arg::Index("h", i), Arg::Index("h", j)], not_h.apply(&schouten(&fr.h[i], &fr.h[j])));
        }
    }
    let mut hq = ConditionBuilder::new("crf-frame:h-q", "[h_i, q_j] ∈ H ⊕ Q");
    for (i, h) in fr.h.iter().enumerate() {
        for (j, q) in fr.q.iter().enumerate() {
            hq.check(vec![Arg::Index("h", i), Arg::Index("q", j)], pr.hbar.apply(&schouten(h, q)));
        }
    }
    let mut r = CheckReport::new();
    r.push(hh.finish());
    r.push(hq.finish());
    Ok(r)
}

/// `A³ + A = 0`, `A∘♯_π = ♯_π∘A*` and `♯_π(ann P) = 0`.
pub fn check_quasi_classical(a: &Endomorphism, pi: &Multivector) -> CheckReport {
    let n = a.dim();
    let mut r = check_f_structure(a);
    let df = coframe(n);
    let mut compat = ConditionBuilder::new("quasi:compatible", "A ♯_π α = ♯_π(α∘A)");
    for (j, f) in df.iter().enumerate() {
        compat.check(vec![Arg::Form(j)], &a.apply(&sharp(pi, f)) - &sharp(pi, &a.apply_dual(f)));
    }
    let q = Projectors::new_unchecked(a).q;
    let mut img = ConditionBuilder::new("quasi:image-in-p", "♯_π(α∘(A² + Id)) = 0");
    for (j, f) in df.iter().enumerate() {
        img.check(vec![Arg::projected("pr_Q*", Arg::Form(j))], sharp(pi, &q.apply_dual(f)));
    }
    r.push(compat.finish());
    r.push(img.finish());
    r
}

/// Coordinate-free content of the local normal form of `π`: no `Q` leg,
/// no `H ∧ H̄` part, and `π` real. Requires only that `A` is F, so it can
/// serve as an independent oracle for [`check_quasi_classical`].
pub fn check_local_form(a: &Endomorphism, pi: &Multivector) -> Result<CheckReport, StructureError> {
    let pr = Projectors::new(a)?;
    let n = a.dim();
    let df = coframe(n);
    let mut qleg = ConditionBuilder::new("local:q-leg", "π(α∘pr_Q, ·) = 0");
    for (j, f) in df.iter().enumerate() {
        qleg.check(vec![Arg::projected("pr_Q*", Arg::Form(j))], sharp(pi, &pr.q.apply_dual(f)));
    }
    let mut mixed = ConditionBuilder::new("local:mixed-type", "π(α∘pr_H, β∘pr_H̄) = 0");
    let hf: Vec<_> = df.iter().map(|f| pr.h.apply_dual(f)).collect();
    let hbf: Vec<_> = df.iter().map(|f| pr.hbar.apply_dual(f)).collect();
    for i in 0..n {
        for j in 0..n {
            mixed.check(
                vec![Arg::projected("pr_H*", Arg::Form(i)), Arg::projected("pr_H̄*", Arg::Form(j))],
                bivector_eval(pi, &hf[i], &hbf[j]),
            );
        }
    }
    let mut real = ConditionBuilder::new("local:real", "conj(π) = π");
    real.check(vec![], &pi.conj() - pi);
    let mut r = CheckReport::new();
    r.push(qleg.finish());
    r.push(mixed.finish());
    r.push(real.finish());
    Ok(r)
}

fn require_quasi(a: &Endomorphism, pi: &Multivector) -> Result<Projectors, StructureError> {
    let q = check_quasi_classical(a, pi);
    if !q.passed() {
        return Err(StructureError::Precondition(q));
    }
    Ok(Projectors::new_unchecked(a))
}

fn poisson_condition(id: &str, pi: &Multivector) -> super::Condition {
    let mut c = ConditionBuilder::new(id, "[π, π] = 0");
    c.check(vec![], schouten(pi, pi));
    c.finish()
}

/// Integrability of a quasi-classical pair: classical CRF, `[π, π] = 0`
/// and `R_{(π,A)}(X, β) = 0` for `X ∈ P`, `β ∈ ann Q`.
pub fn check_integrability(a: &Endomorphism, pi: &Multivector) -> Result<CheckReport, StructureError> {
    let pr = require_quasi(a, pi)?;
    let n = a.dim();
    let mut r = classical_crf_conditions(a, &pr);
    r.push(poisson_condition("integrable:poisson", pi));
    let e = frame(n);
    let df = coframe(n);
    let pv: Vec<Multivector> = e.iter().map(|v| pr.p.apply(v)).collect();
    let pf: Vec<_> = df.iter().map(|f| pr.p.apply_dual(f)).collect();
    let mut conc = ConditionBuilder::new("integrable:concomitant", "R_(π,A)(X, β) = 0 for X ∈ P, β ∈ ann Q");
    for i in 0..n {
        if pv[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if pf[j].is_zero() {
                continue;
            }
            conc.check(
                vec![Arg::projected("pr_P", Arg::Vector(i)), Arg::projected("pr_P*", Arg::Form(j))],
                schouten_concomitant(pi, a, &pv[i], &pf[j]),
            );
        }
    }
    r.push(conc.finish());
    Ok(r)
}

/// The part of `C_(π,A)(α, β) = 0`, `α, β ∈ ann Q`, that the concomitant
/// condition on `X ∈ P` does not reach: `⟨C(α, β), Y⟩ = α(R(Y, β))` for `Y ∈ Q`,
/// i.e. `pr_P R_(π,A)(Y, β) = 0`. Nonzero exactly when `π|_{ann Q}` varies
/// along `Q` in a way the leafwise conditions cannot see; reported on its own
/// so that [`check_integrability`] keeps its stated condition list.
pub fn check_transverse_concomitant(a: &Endomorphism, pi: &Multivector) -> Result<CheckReport, StructureError> {
    let pr = require_quasi(a, pi)?;
    let n = a.dim();
    let e = frame(n);
    let df = coframe(n);
    let mut c = ConditionBuilder::new("integrable:transverse-concomitant", "pr_P R_(π,A)(Y, β) = 0 for Y ∈ Q, β ∈ ann Q");
    for (i, v) in e.iter().enumerate() {
        let y = pr.q.apply(v);
        if y.is_zero() {
            continue;
        }
        for (j, f) in df.iter().enumerate() {
            let beta = pr.p.apply_dual(f);
            if beta.is_zero() {
                continue;
            }
            c.check(
                vec![Arg::projected("pr_Q", Arg::Vector(i)), Arg::projected("pr_P*", Arg::Form(j))],
                pr.p.apply(&schouten_concomitant(pi, a, &y, &beta)),
            );
        }
    }
    let mut r = CheckReport::new();
    r.push(c.finish());
    Ok(r)
}

/// Integrability with the concomitant condition replaced by: Hamiltonian
/// fields of `ann Q` preserve `P`, and `(L_Y π)|_{ann Q}` vanishes for `Y ∈ H̄`.
pub fn check_integrability_alt(a: &Endomorphism, pi: &Multivector) -> Result<CheckReport, StructureError> {
    let pr = require_quasi(a, pi)?;
    let n = a.dim();
    let mut r = classical_crf_conditions(a, &pr);
    r.push(poisson_condition("integrable:poisson", pi));
    r.push(hamiltonian_preserves_p(n, pi, &pr));
    let e = frame(n);
    let df = coframe(n);
    let hf: Vec<_> = df.iter().map(|f| pr.h.apply_dual(f)).collect();
    let mut hol = ConditionBuilder::new("alt:lie-hbar", "(L_Y π)(α, β) = 0 for Y ∈ H̄, α, β ∈ H*");
    for (k, v) in e.iter().enumerate() {
        let y = pr.hbar.apply(v);
        if y.is_zero() {
            continue;
        }
        let lp = pi.lie_derivative(&y);
        for i in 0..n {
            for j in i + 1..n {
                hol.check(
                    vec![
                        Arg::projected("pr_H̄", Arg::Vector(k)),
                        Arg::projected("pr_H*", Arg::Form(i)),
                        Arg::projected("pr_H*", Arg::Form(j)),
                    ],
                    bivector_eval(&lp, &hf[i], &hf[j]),
                );
            }
        }
    }
    r.push(hol.finish());
    Ok(r)
}

fn hamiltonian_preserves_p(n: usize, pi: &Multivector, pr: &Projectors) -> super::Condition {
    let e = frame(n);
    let df = coframe(n);
    let mut c = ConditionBuilder::new("alt:hamiltonian-p", "pr_Q[♯_π β, X] = 0 for X ∈ P, β ∈ ann Q");
    for j in 0..n {
        let hb = sharp(pi, &pr.p.apply_dual(&df[j]));
        if hb.is_zero() {
            continue;
        }
        for (i, v) in e.iter().enumerate() {
            let x = pr.p.apply(v);
            if x.is_zero() {
                continue;
            }
            c.check(
                vec![Arg::projected("pr_P*", Arg::Form(j)), Arg::projected("pr_P", Arg::Vector(i))],
                pr.q.apply(&schouten(&hb, &x)),
            );
        }
    }
    c.finish()
}

/// Three further forms of the Hamiltonian condition, for `β ∈ ann Q`,
/// `X ∈ P`, `λ ∈ ann P`: `(L_{♯β}A²)(X) = 0`, `dλ(♯β, X) = 0` and
/// `(L_{♯β}λ)(X) = 0`. Reported next to `alt:hamiltonian-p`.
pub fn check_hamiltonian_variants(a: &Endomorphism, pi: &Multivector) -> Result<CheckReport, StructureError> {
    let pr = require_quasi(a, pi)?;
    let n = a.dim();
    let e = frame(n);
    let df = coframe(n);
    let a2 = a.square();
    let lambdas: Vec<_> = df.iter().map(|f| pr.q.apply_dual(f)).collect();
    let mut lie_a2 = ConditionBuilder::new("variant:lie-a2", "(L_{♯β}A²)(X) = 0");
    let mut d_lambda = ConditionBuilder::new("variant:d-lambda", "dλ(♯β, X) = 0");
    let mut lie_lambda = ConditionBuilder::new("variant:lie-lambda", "(L_{♯β}λ)(X) = 0");
    for j in 0..n {
        let hb = sharp(pi, &pr.p.apply_dual(&df[j]));
        if hb.is_zero() {
            continue;
        }
        let la2 = a2.lie_derivative(&hb);
        for (i, v) in e.iter().enumerate() {
            let x = pr.p.apply(v);
            if x.is_zero() {
                continue;
            }
            let args = vec![Arg::projected("pr_P*", Arg::Form(j)), Arg::projected("pr_P", Arg::Vector(i))];
            lie_a2.check(args.clone(), la2.apply(&x));
            for (k, lam) in lambdas.iter().enumerate() {
                if lam.is_zero() {
                    continue;
                }
                let mut la = args.clone();
                la.push(Arg::projected("pr_Q*", Arg::Form(k)));
                d_lambda.check(la.clone(), lam.d().eval(&[hb.clone(), x.clone()]));
                lie_lambda.check(la, crate::tensor::pairing(&lam.lie_derivative(&hb), &x));
            }
        }
    }
    let mut r = CheckReport::new();
    r.push(hamiltonian_preserves_p(n, pi, &pr));
    r.push(lie_a2.finish());
    r.push(d_lambda.finish());
    r.push(lie_lambda.finish());
    Ok(r)
}

/// Direct product of two instances on disjoint coordinate names:
/// `A = A₁ ⊕ A₂`, `π = π₁ + π₂`, contact data and frames carried over.
pub fn product_instance(m1: &StructureInstance, m2: &StructureInstance) -> Result<StructureInstance, StructureError> {
    let patch = concat_patches(&m1.patch, &m2.patch)?;
    let (n1, n) = (m1.dim(), patch.dim());
    let lift = |m: &StructureInstance, off: usize| -> (Endomorphism, Multivector) {
        let a = m.a.clone().unwrap_or_else(|| Endomorphism::zero(m.dim()));
        let big = if off == 0 { a.direct_sum(&Endomorphism::zero(n - m.dim())) } else { Endomorphism::zero(off).direct_sum(&a) };
        (big, m.pi.embed(n, off))
    };
    let (a1, p1) = lift(m1, 0);
    let (a2, p2) = lift(m2, n1);
    let contact = m1
        .contact
        .iter()
        .map(|c| (c, 0))
        .chain(m2.contact.iter().map(|c| (c, n1)))
        .map(|(c, off)| super::ContactPair { z: c.z.embed(n, off), xi: c.xi.embed(n, off) })
        .collect();
    let frames = match (&m1.frames, &m2.frames) {
        (Some(f1), Some(f2)) => Some(AdaptedFrame {
            h: f1.h.iter().map(|v| v.embed(n, 0)).chain(f2.h.iter().map(|v| v.embed(n, n1))).collect(),
            q: f1.q.iter().map(|v| v.embed(n, 0)).chain(f2.q.iter().map(|v| v.embed(n, n1))).collect(),
            kappa: f1.kappa.iter().map(|v| v.embed(n, 0)).chain(f2.kappa.iter().map(|v| v.embed(n, n1))).collect(),
        }),
        _ => None,
    };
    let base_point = match (&m1.base_point, &m2.base_point) {
        (None, None) => None,
        _ => Some(m1.base_point().into_iter().chain(m2.base_point()).collect()),
    };
    let inst = StructureInstance {
        patch,
        a: Some(&a1 + &a2),
        pi: &p1 + &p2,
        contact,
        frames,
        projector_p: None,
        base_point,
    };
    inst.validate()?;
    Ok(inst)
}

pub(super) fn concat_patches(p1: &Patch, p2: &Patch) -> Result<Patch, StructureError> {
    if let Some(name) = p1.names().iter().find(|x| p2.index_of(x).is_some()) {
        return Err(StructureError::CoordinateCollision(name.clone()));
    }
    p1.concat(p2).map_err(|e| StructureError::CoordinateCollision(alloc::format!("{e}")))
}
