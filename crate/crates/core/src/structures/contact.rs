//! Generalized almost contact structures with `σ = 0`: the structure
//! equations, normality, contact-Poisson bivectors and the almost complex
//! structure on a product of two almost contact manifolds.

use alloc::vec;
use alloc::vec::Vec;

use super::checks::{check_integrability_alt, concat_patches};
use super::{coframe, frame, Arg, CheckReport, Condition, ConditionBuilder, StructureError, StructureInstance};
use crate::scalar::{GaussRational, Poly};
use crate::tensor::{
    nijenhuis, pairing, schouten, schouten_concomitant, sharp, Endomorphism, Multivector,
};

fn sum_dxi_z(inst: &StructureInstance, x: &Multivector, y: &Multivector) -> Multivector {
    let mut acc = Multivector::zero(inst.dim(), 1);
    for c in &inst.contact {
        let v = c.xi.d().eval(&[x.clone(), y.clone()]);
        if !v.is_zero() {
            acc = &acc + &c.z.scale(&v);
        }
    }
    acc
}

fn compat_condition(a: &Endomorphism, pi: &Multivector) -> Condition {
    let mut c = ConditionBuilder::new("contact:compatible", "π(α∘A, β) = π(α, β∘A)");
    for (j, f) in coframe(a.dim()).iter().enumerate() {
        c.check(vec![Arg::Form(j)], &a.apply(&sharp(pi, f)) - &sharp(pi, &a.apply_dual(f)));
    }
    c.finish()
}

fn xi_pi_condition(inst: &StructureInstance) -> Condition {
    let mut c = ConditionBuilder::new("contact:xi-pi", "i(ξ^a)π = 0");
    for (k, p) in inst.contact.iter().enumerate() {
        c.check(vec![Arg::Index("xi", k)], sharp(&inst.pi, &p.xi));
    }
    c.finish()
}

/// The structure equations with `σ = 0`: compatibility of `π`, `AZ_a = 0`,
/// `ξ^a∘A = 0`, `i(ξ^a)π = 0`, `ξ^a(Z_b) = δ^a_b` and `A² = −Id + Σ ξ^a ⊗ Z_a`.
pub fn check_almost_contact(inst: &StructureInstance) -> Result<CheckReport, StructureError> {
    let a = inst.a()?;
    let cs = inst.contact()?;
    let n = inst.dim();
    let mut r = CheckReport::new();
    r.push(compat_condition(a, &inst.pi));
    let mut az = ConditionBuilder::new("contact:a-z", "A Z_a = 0");
    let mut xa = ConditionBuilder::new("contact:xi-a", "ξ^a∘A = 0");
    let mut dual = ConditionBuilder::new("contact:dual", "ξ^a(Z_b) = δ^a_b");
    let mut sq = &a.square() + &Endomorphism::identity(n);
    for (k, c) in cs.iter().enumerate() {
        az.check(vec![Arg::Index("Z", k)], a.apply(&c.z));
        xa.check(vec![Arg::Index("xi", k)], a.apply_dual(&c.xi));
        for (l, d) in cs.iter().enumerate() {
            let delta = Poly::int(n, i64::from(k == l));
            dual.check(vec![Arg::Index("xi", k), Arg::Index("Z", l)], &pairing(&c.xi, &d.z) - &delta);
        }
        sq = &sq - &Endomorphism::outer(&c.z, &c.xi);
    }
    r.push(az.finish());
    r.push(xa.finish());
    r.push(xi_pi_condition(inst));
    r.push(dual.finish());
    let mut square = ConditionBuilder::new("contact:square", "A² + Id − Σ ξ^a ⊗ Z_a = 0");
    square.check(vec![], sq);
    r.push(square.finish());
    Ok(r)
}

fn concomitant_all(a: &Endomorphism, pi: &Multivector) -> Condition {
    let n = a.dim();
    let mut c = ConditionBuilder::new("normal:concomitant", "R_(π,A)(X, α) = 0");
    if !pi.is_zero() {
        let df = coframe(n);
        for (i, x) in frame(n).iter().enumerate() {
            for (j, f) in df.iter().enumerate() {
                c.check(vec![Arg::Vector(i), Arg::Form(j)], schouten_concomitant(pi, a, x, f));
            }
        }
    }
    c.finish()
}

fn lie_z_pi(inst: &StructureInstance) -> Condition {
    let mut c = ConditionBuilder::new("normal:lie-z-pi", "L_{Z_a} π = 0");
    for (k, p) in inst.contact.iter().enumerate() {
        c.check(vec![Arg::Index("Z", k)], inst.pi.lie_derivative(&p.z));
    }
    c.finish()
}

fn nijenhuis_condition(id: &str, inst: &StructureInstance, a: &Endomorphism) -> Condition {
    let n = inst.dim();
    let e = frame(n);
    let mut c = ConditionBuilder::new(id, "𝒩_A(X, Y) + Σ dξ^a(X, Y) Z_a = 0");
    for i in 0..n {
        for j in i + 1..n {
            let v = &nijenhuis(a, &e[i], &e[j]) + &sum_dxi_z(inst, &e[i], &e[j]);
            c.check(vec![Arg::Vector(i), Arg::Vector(j)], v);
        }
    }
    c.finish()
}

/// Normality with `σ = 0`: `[π, π] = 0`, `R_(π,A) = 0`, `L_{Z_a}π = 0`,
/// `L_{♯_π α}ξ^a = 0` and `𝒩_A + Σ dξ^a ⊗ Z_a = 0`.
pub fn check_normality(inst: &StructureInstance) -> Result<CheckReport, StructureError> {
    let a = inst.a()?;
    inst.contact()?;
    let n = inst.dim();
    let mut r = CheckReport::new();
    let mut p = ConditionBuilder::new("normal:poisson", "[π, π] = 0");
    p.check(vec![], schouten(&inst.pi, &inst.pi));
    r.push(p.finish());
    r.push(concomitant_all(a, &inst.pi));
    r.push(lie_z_pi(inst));
    let mut lx = ConditionBuilder::new("normal:lie-sharp-xi", "L_{♯_π α} ξ^a = 0");
    for (j, f) in coframe(n).iter().enumerate() {
        let h = sharp(&inst.pi, f);
        if h.is_zero() {
            continue;
        }
        for (k, c) in inst.contact.iter().enumerate() {
            lx.check(vec![Arg::Form(j), Arg::Index("xi", k)], c.xi.lie_derivative(&h));
        }
    }
    r.push(lx.finish());
    r.push(nijenhuis_condition("normal:nijenhuis", inst, a));
    Ok(r)
}

/// Normality of the classical almost contact structure `(A, Z_a, ξ^a)`,
/// ignoring `π`.
pub fn check_normal_classical(inst: &StructureInstance) -> Result<CheckReport, StructureError> {
    let a = inst.a()?;
    inst.contact()?;
    let mut r = CheckReport::new();
    r.push(nijenhuis_condition("normal-classical:nijenhuis", inst, a));
    Ok(r)
}

/// `π` is contact-Poisson: compatibility and `i(ξ)π = 0`, `A` classical CRF,
/// `[π, π] = 0`, and the two Hamiltonian/holomorphy conditions replacing the
/// concomitant condition.
pub fn check_contact_poisson(inst: &StructureInstance) -> Result<CheckReport, StructureError> {
    let ac = check_almost_contact(inst)?;
    if !ac.passed() {
        return Err(StructureError::Precondition(ac));
    }
    let a = inst.a()?;
    let mut r = CheckReport::new();
    r.push(compat_condition(a, &inst.pi));
    r.push(xi_pi_condition(inst));
    r.extend(check_integrability_alt(a, &inst.pi)?);
    Ok(r)
}

/// Full normality list for a normal almost contact structure carrying a
/// normal contact-Poisson `π`, including the concomitant at the argument
/// pairs `(A²X, ξ)`, `(Z, α∘A²)` and `(Z, ξ)`.
pub fn check_generalized_normality(inst: &StructureInstance) -> Result<CheckReport, StructureError> {
    let mut pre = check_almost_contact(inst)?;
    if pre.passed() {
        pre.extend(check_normal_classical(inst)?);
        pre.extend(check_contact_poisson(inst)?);
        pre.push(lie_z_pi(inst));
    }
    if !pre.passed() {
        return Err(StructureError::Precondition(pre));
    }
    let a = inst.a()?;
    let n = inst.dim();
    let e = frame(n);
    let df = coframe(n);
    let mut r = check_normality(inst)?;
    let cs = &inst.contact;
    let mut zz = ConditionBuilder::new("normal:z-commute", "[Z_a, Z_b] = 0");
    let mut lzx = ConditionBuilder::new("normal:lie-z-xi", "L_{Z_b} ξ^a = 0");
    let mut lza = ConditionBuilder::new("normal:lie-z-a", "L_{Z_a} A = 0");
    for (k, c) in cs.iter().enumerate() {
        lza.check(vec![Arg::Index("Z", k)], a.lie_derivative(&c.z));
        for (l, d) in cs.iter().enumerate() {
            if k < l {
                zz.check(vec![Arg::Index("Z", k), Arg::Index("Z", l)], schouten(&c.z, &d.z));
            }
            lzx.check(vec![Arg::Index("xi", k), Arg::Index("Z", l)], c.xi.lie_derivative(&d.z));
        }
    }
    let mut sym = ConditionBuilder::new("normal:xi-a-symmetry", "(L_{AX} ξ^a)(Y) − (L_{AY} ξ^a)(X) = 0");
    let ae: Vec<Multivector> = e.iter().map(|v| a.apply(v)).collect();
    for (k, c) in cs.iter().enumerate() {
        for i in 0..n {
            for j in i + 1..n {
                let v = &pairing(&c.xi.lie_derivative(&ae[i]), &e[j]) - &pairing(&c.xi.lie_derivative(&ae[j]), &e[i]);
                sym.check(vec![Arg::Index("xi", k), Arg::Vector(i), Arg::Vector(j)], v);
            }
        }
    }
    let a2 = a.square();
    let pi = &inst.pi;
    let mut r1 = ConditionBuilder::new("normal:concomitant-a2x-xi", "R_(π,A)(A²X, ξ^a) = 0");
    let mut r2 = ConditionBuilder::new("normal:concomitant-z-a2alpha", "R_(π,A)(Z_a, α∘A²) = 0");
    let mut r3 = ConditionBuilder::new("normal:concomitant-z-xi", "R_(π,A)(Z_a, ξ^b) = 0");
    for (k, c) in cs.iter().enumerate() {
        for (i, v) in e.iter().enumerate() {
            r1.check(vec![Arg::projected("A²", Arg::Vector(i)), Arg::Index("xi", k)], schouten_concomitant(pi, a, &a2.apply(v), &c.xi));
        }
        for (j, f) in df.iter().enumerate() {
            r2.check(vec![Arg::Index("Z", k), Arg::projected("A*²", Arg::Form(j))], schouten_concomitant(pi, a, &c.z, &a2.apply_dual(f)));
        }
        for (l, d) in cs.iter().enumerate() {
            r3.check(vec![Arg::Index("Z", k), Arg::Index("xi", l)], schouten_concomitant(pi, a, &c.z, &d.xi));
        }
    }
    for c in [zz, lzx, lza, sym, r1, r2, r3] {
        r.push(c.finish());
    }
    Ok(r)
}

/// Product of two almost contact structures of codimension one, carrying
/// the almost complex structure `J` and `π = π₁ + π₂`.
#[derive(Clone, Debug)]
pub struct ContactProduct {
    /// Instance on the concatenated patch with `A = J` and no contact data.
    pub instance: StructureInstance,
    /// Factor hypotheses (`factor1:*`, `factor2:*`) and product conditions.
    pub report: CheckReport,
}

/// `J(X₁, X₂) = (A₁X₁ − ξ₂(X₂)Z₁, A₂X₂ + ξ₁(X₁)Z₂)` on `M₁ × M₂`.
/// The almost contact equations of each factor are required; factor
/// normality and contact-Poisson hypotheses are reported, not enforced, so a
/// non-normal factor yields a `𝒩_J` witness.
pub fn contact_product(m1: &StructureInstance, m2: &StructureInstance) -> Result<ContactProduct, StructureError> {
    let mut report = CheckReport::new();
    for (tag, m) in [("factor1", m1), ("factor2", m2)] {
        if m.contact.len() != 1 {
            return Err(StructureError::Missing("exactly one contact pair per factor"));
        }
        let ac = check_almost_contact(m)?;
        if !ac.passed() {
            return Err(StructureError::Precondition(ac));
        }
        report.push(summary(alloc::format!("{tag}:normal"), "factor is a normal almost contact structure", check_normal_classical(m)?));
        let mut cp = check_contact_poisson(m)?;
        cp.push(lie_z_pi(m));
        report.push(summary(alloc::format!("{tag}:normal-contact-poisson"), "π is a normal contact-Poisson structure", cp));
    }
    let patch = concat_patches(&m1.patch, &m2.patch)?;
    let (n1, n) = (m1.dim(), patch.dim());
    let a1 = m1.a()?.direct_sum(&Endomorphism::zero(m2.dim()));
    let a2 = Endomorphism::zero(n1).direct_sum(m2.a()?);
    let (z1, x1) = (m1.contact[0].z.embed(n, 0), m1.contact[0].xi.embed(n, 0));
    let (z2, x2) = (m2.contact[0].z.embed(n, n1), m2.contact[0].xi.embed(n, n1));
    let j = &(&(&a1 + &a2) - &Endomorphism::outer(&z1, &x2)) + &Endomorphism::outer(&z2, &x1);
    let pi = &m1.pi.embed(n, 0) + &m2.pi.embed(n, n1);

    let mut sq = ConditionBuilder::new("product:j-square", "J² + Id = 0");
    sq.check(vec![], &j.square() + &Endomorphism::identity(n));
    report.push(sq.finish());
    let e = frame(n);
    let mut nj = ConditionBuilder::new("product:nijenhuis", "𝒩_J = 0");
    for i in 0..n {
        for k in i + 1..n {
            nj.check(vec![Arg::Vector(i), Arg::Vector(k)], nijenhuis(&j, &e[i], &e[k]));
        }
    }
    report.push(nj.finish());
    let mut pp = ConditionBuilder::new("product:poisson", "[π, π] = 0");
    pp.check(vec![], schouten(&pi, &pi));
    report.push(pp.finish());
    let df = coframe(n);
    let block = |i: usize| if i < n1 { 1 } else { 2 };
    let mut blocks: Vec<ConditionBuilder> = [(1, 1), (1, 2), (2, 1), (2, 2)]
        .iter()
        .map(|(u, v)| {
            ConditionBuilder::new(&alloc::format!("product:concomitant-{u}{v}"), &alloc::format!("R_(π,J)(X_{u}, α_{v}) = 0"))
        })
        .collect();
    if !pi.is_zero() {
        for (i, x) in e.iter().enumerate() {
            for (k, f) in df.iter().enumerate() {
                let slot = 2 * (block(i) - 1) + (block(k) - 1);
                blocks[slot].check(vec![Arg::Vector(i), Arg::Form(k)], schouten_concomitant(&pi, &j, x, f));
            }
        }
    }
    for b in blocks {
        report.push(b.finish());
    }
    let base_point = match (&m1.base_point, &m2.base_point) {
        (None, None) => None,
        _ => Some(m1.base_point().into_iter().chain(m2.base_point()).collect::<Vec<GaussRational>>()),
    };
    let instance =
        StructureInstance { patch, a: Some(j), pi, contact: Vec::new(), frames: None, projector_p: None, base_point };
    Ok(ContactProduct { instance, report })
}

/// Collapses a sub-report to one condition whose witnesses are those of
/// its failing conditions.
fn summary(id: alloc::string::String, description: &str, sub: CheckReport) -> Condition {
    let mut c = ConditionBuilder::new(&id, description);
    for cond in sub.failing() {
        for w in &cond.witnesses {
            c.fail(w.args.clone(), w.value.clone());
        }
        if cond.witnesses.is_empty() {
            c.fail(vec![], Poly::int(1, 1));
        }
    }
    c.finish()
}
