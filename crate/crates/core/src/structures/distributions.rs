//! Distributions given by projectors: involutivity, projectability of `π`
//! along `Q`, and (non)holonomic Poisson submanifolds.

use alloc::vec;

use super::{coframe, frame, Arg, CheckReport, Condition, ConditionBuilder, StructureError};
use crate::tensor::{bivector_eval, schouten, sharp, Endomorphism, Multivector};

fn idempotent(d: &Endomorphism) -> Condition {
    let mut c = ConditionBuilder::new("distribution:idempotent", "D² = D");
    c.check(vec![], &d.square() - d);
    c.finish()
}

fn require_idempotent(d: &Endomorphism) -> Result<Condition, StructureError> {
    let c = idempotent(d);
    if c.verdict.is_pass() {
        Ok(c)
    } else {
        let mut r = CheckReport::new();
        r.push(c);
        Err(StructureError::NotIdempotent(r))
    }
}

/// `(Id − D)[D∂_i, D∂_j] = 0` for `i < j`, where `D` projects onto the distribution.
pub fn check_involutive(d: &Endomorphism) -> Result<CheckReport, StructureError> {
    let mut r = CheckReport::new();
    r.push(require_idempotent(d)?);
    let n = d.dim();
    let comp = &Endomorphism::identity(n) - d;
    let dv: alloc::vec::Vec<Multivector> = frame(n).iter().map(|v| d.apply(v)).collect();
    let mut c = ConditionBuilder::new("distribution:involutive", "(Id − D)[DX, DY] = 0");
    for i in 0..n {
        for j in i + 1..n {
            if dv[i].is_zero() || dv[j].is_zero() {
                continue;
            }
            c.check(
                vec![Arg::projected("D", Arg::Vector(i)), Arg::projected("D", Arg::Vector(j))],
                comp.apply(&schouten(&dv[i], &dv[j])),
            );
        }
    }
    r.push(c.finish());
    Ok(r)
}

/// `π` projectable along `Q = im pr_Q`: `im ♯_π ⊆ P` and the
/// `ann Q ∧ ann Q` part of `L_Y π` vanishes for `Y ∈ Q`.
pub fn check_projectable(pi: &Multivector, pr_q: &Endomorphism) -> Result<CheckReport, StructureError> {
    let mut r = CheckReport::new();
    r.push(require_idempotent(pr_q)?);
    let n = pr_q.dim();
    let pr_p = &Endomorphism::identity(n) - pr_q;
    let df = coframe(n);
    let mut img = ConditionBuilder::new("projectable:image-in-p", "pr_Q ♯_π α = 0");
    for (a, f) in df.iter().enumerate() {
        img.check(vec![Arg::Form(a)], pr_q.apply(&sharp(pi, f)));
    }
    let pf: alloc::vec::Vec<_> = df.iter().map(|f| pr_p.apply_dual(f)).collect();
    let mut lie = ConditionBuilder::new("projectable:transverse-lie", "(L_Y π)(α, β) = 0 for Y ∈ Q, α, β ∈ ann Q");
    for (k, v) in frame(n).iter().enumerate() {
        let y = pr_q.apply(v);
        if y.is_zero() {
            continue;
        }
        let lp = pi.lie_derivative(&y);
        for a in 0..n {
            for b in a + 1..n {
                lie.check(
                    vec![Arg::projected("pr_Q", Arg::Vector(k)), Arg::projected("pr_P*", Arg::Form(a)), Arg::projected("pr_P*", Arg::Form(b))],
                    bivector_eval(&lp, &pf[a], &pf[b]),
                );
            }
        }
    }
    r.push(img.finish());
    r.push(lie.finish());
    Ok(r)
}

/// `P = im pr_P` is a (non)holonomic Poisson submanifold of `(M, π)`:
/// `im ♯_π ⊆ P` and `[♯_π α, X] ∈ P` for `X ∈ P`. `[π, π]` is reported alongside.
pub fn check_nonholonomic_poisson_submanifold(pi: &Multivector, pr_p: &Endomorphism) -> Result<CheckReport, StructureError> {
    let mut r = CheckReport::new();
    r.push(require_idempotent(pr_p)?);
    let n = pr_p.dim();
    let comp = &Endomorphism::identity(n) - pr_p;
    let mut poisson = ConditionBuilder::new("submanifold:poisson", "[π, π] = 0");
    poisson.check(vec![], schouten(pi, pi));
    r.push(poisson.finish());
    let mut img = ConditionBuilder::new("submanifold:image-in-p", "(Id − pr_P) ♯_π α = 0");
    let mut ham = ConditionBuilder::new("submanifold:hamiltonian", "(Id − pr_P)[♯_π α, X] = 0 for X ∈ P");
    let pv: alloc::vec::Vec<Multivector> = frame(n).iter().map(|v| pr_p.apply(v)).collect();
    for (a, f) in coframe(n).iter().enumerate() {
        let h = sharp(pi, f);
        img.check(vec![Arg::Form(a)], comp.apply(&h));
        if h.is_zero() {
            continue;
        }
        for (i, x) in pv.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            ham.check(vec![Arg::Form(a), Arg::projected("pr_P", Arg::Vector(i))], comp.apply(&schouten(&h, x)));
        }
    }
    r.push(img.finish());
    r.push(ham.finish());
    Ok(r)
}
