//! The Lie algebroid `P* = T*M / ann P` induced by a (non)holonomic Poisson
//! submanifold, with classes represented by forms `α∘pr_P ∈ ann Q`.

use alloc::vec;
use alloc::vec::Vec;

use super::space::subsets;
use super::CohomologyError;
use crate::structures::{check_nonholonomic_poisson_submanifold, Arg, CheckReport, ConditionBuilder, StructureError};
use crate::tensor::{coord_form, poisson_bracket_1forms, sharp, DiffForm, Endomorphism, Multivector};

/// Representative `{α∘pr_P, β∘pr_P}_π ∘ pr_P` of `{[α], [β]}`.
pub fn quotient_algebroid_bracket(pi: &Multivector, pr_p: &Endomorphism, alpha: &DiffForm, beta: &DiffForm) -> DiffForm {
    pr_p.apply_dual(&poisson_bracket_1forms(pi, &pr_p.apply_dual(alpha), &pr_p.apply_dual(beta)))
}

/// For `β ∈ ann P`: (a) `♯_π{α, β}_π = 0` and, reported separately, (b)
/// `{α, β}_π ∈ ann P`; plus the Jacobi identity of the quotient bracket on
/// coordinate classes, modulo `ann P`.
pub fn check_quotient_well_defined(pi: &Multivector, pr_p: &Endomorphism) -> Result<CheckReport, CohomologyError> {
    let pre = check_nonholonomic_poisson_submanifold(pi, pr_p)?;
    if !pre.passed() {
        return Err(CohomologyError::Structure(StructureError::Precondition(pre)));
    }
    let n = pr_p.dim();
    let comp = &Endomorphism::identity(n) - pr_p;
    let forms: Vec<DiffForm> = (0..n).map(|i| coord_form(n, i)).collect();
    let ann: Vec<(usize, DiffForm)> =
        forms.iter().enumerate().map(|(i, f)| (i, comp.apply_dual(f))).filter(|(_, f)| !f.is_zero()).collect();
    let mut anchor = ConditionBuilder::new("quotient:anchor-kills", "♯_π{α, β}_π = 0 for β ∈ ann P");
    let mut ideal = ConditionBuilder::new("quotient:ideal", "{α, β}_π ∈ ann P for β ∈ ann P");
    for (a, alpha) in forms.iter().enumerate() {
        for (b, beta) in &ann {
            let br = poisson_bracket_1forms(pi, alpha, beta);
            let args = vec![Arg::Form(a), Arg::projected("pr_Q*", Arg::Form(*b))];
            anchor.check(args.clone(), sharp(pi, &br));
            ideal.check(args, pr_p.apply_dual(&br));
        }
    }
    let mut jac = ConditionBuilder::new("quotient:jacobi", "Jacobi identity of the quotient bracket");
    let br = |x: &DiffForm, y: &DiffForm| quotient_algebroid_bracket(pi, pr_p, x, y);
    for t in subsets(n, 3) {
        let (x, y, z) = (&forms[t[0]], &forms[t[1]], &forms[t[2]]);
        let s = &(&br(x, &br(y, z)) + &br(y, &br(z, x))) + &br(z, &br(x, y));
        jac.check(vec![Arg::Form(t[0]), Arg::Form(t[1]), Arg::Form(t[2])], s);
    }
    let mut r = CheckReport::new();
    r.extend(pre);
    r.push(anchor.finish());
    r.push(ideal.finish());
    r.push(jac.finish());
    Ok(r)
}
