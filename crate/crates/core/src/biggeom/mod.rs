//! Calculus on `TM ⊕ T*M`: the pairing metric, the Courant bracket, block
//! endomorphisms `Φ = [[A, ♯_π], [♭_σ, −A*]]`, their eigen-projectors and
//! the integrability tensor `𝒮_Φ`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::scalar::{GaussRational, Patch, Poly};
use crate::structures::{Arg, CheckReport, ConditionBuilder};
use crate::tensor::{pairing as dual_pairing, schouten, sharp, DiffForm, Endomorphism, Multivector};

/// Section `(X, α)` of the big tangent bundle.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GenSection {
    pub vec: Multivector,
    pub form: DiffForm,
}

impl GenSection {
    pub fn new(vec: Multivector, form: DiffForm) -> Self {
        assert_eq!(vec.degree(), 1);
        assert_eq!(form.degree(), 1);
        assert_eq!(vec.dim(), form.dim(), "patch mismatch");
        Self { vec, form }
    }

    pub fn zero(dim: usize) -> Self {
        Self { vec: Multivector::zero(dim, 1), form: DiffForm::zero(dim, 1) }
    }

    pub fn from_vector(vec: Multivector) -> Self {
        let dim = vec.dim();
        Self::new(vec, DiffForm::zero(dim, 1))
    }

    pub fn from_form(form: DiffForm) -> Self {
        let dim = form.dim();
        Self::new(Multivector::zero(dim, 1), form)
    }

    /// Coordinate section `k`: `(∂_k, 0)` for `k < dim`, `(0, dx^{k−dim})` otherwise.
    pub fn basis(dim: usize, k: usize) -> Self {
        if k < dim {
            Self::from_vector(Multivector::basis(dim, &[k]))
        } else {
            Self::from_form(DiffForm::basis(dim, &[k - dim]))
        }
    }

    pub fn dim(&self) -> usize {
        self.vec.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.vec.is_zero() && self.form.is_zero()
    }

    pub fn scale(&self, f: &Poly) -> Self {
        Self { vec: self.vec.scale(f), form: self.form.scale(f) }
    }

    pub fn scale_const(&self, c: &GaussRational) -> Self {
        Self { vec: self.vec.scale_const(c), form: self.form.scale_const(c) }
    }

    pub fn conj(&self) -> Self {
        Self { vec: self.vec.conj(), form: self.form.conj() }
    }

    pub fn display<'a>(&'a self, patch: &'a Patch) -> SectionDisplay<'a> {
        SectionDisplay { s: self, patch }
    }
}

impl<'a> Add<&'a GenSection> for &'a GenSection {
    type Output = GenSection;
    fn add(self, rhs: &GenSection) -> GenSection {
        GenSection { vec: &self.vec + &rhs.vec, form: &self.form + &rhs.form }
    }
}

impl<'a> Sub<&'a GenSection> for &'a GenSection {
    type Output = GenSection;
    fn sub(self, rhs: &GenSection) -> GenSection {
        GenSection { vec: &self.vec - &rhs.vec, form: &self.form - &rhs.form }
    }
}

impl Neg for &GenSection {
    type Output = GenSection;
    fn neg(self) -> GenSection {
        GenSection { vec: -&self.vec, form: -&self.form }
    }
}

pub struct SectionDisplay<'a> {
    s: &'a GenSection,
    patch: &'a Patch,
}

impl fmt::Display for SectionDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.s.vec.display(self.patch), self.s.form.display(self.patch))
    }
}

/// `g((X,α),(Y,β)) = ½(α(Y) + β(X))`.
pub fn pairing(e1: &GenSection, e2: &GenSection) -> Poly {
    let s = &dual_pairing(&e1.form, &e2.vec) + &dual_pairing(&e2.form, &e1.vec);
    s.scale(&GaussRational::half())
}

/// `[(X,α),(Y,β)] = ([X,Y], L_Xβ − L_Yα + ½d(α(Y) − β(X)))`.
pub fn courant_bracket(e1: &GenSection, e2: &GenSection) -> GenSection {
    let (x, a) = (&e1.vec, &e1.form);
    let (y, b) = (&e2.vec, &e2.form);
    let f = &dual_pairing(a, y) - &dual_pairing(b, x);
    let df = DiffForm::scalar(f).d().scale_const(&GaussRational::half());
    let form = &(&b.lie_derivative(x) - &a.lie_derivative(y)) + &df;
    GenSection::new(schouten(x, y), form)
}

/// Block endomorphism `Φ(X, α) = (AX + ♯_π α, ♭_σ X − A*α)` of `TM ⊕ T*M`.
///
/// `sigma` holds the matrix `s` of the lower-left block, `(♭X)_j = X^i s_ij`;
/// for a 2-form it is the antisymmetric component matrix. Keeping it a general
/// matrix lets non-skew blocks be represented for negative checks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GenEndomorphism {
    pub a: Endomorphism,
    pub pi: Multivector,
    pub sigma: Endomorphism,
}

impl GenEndomorphism {
    /// Quasi-classical blocks `(A, π, σ = 0)`.
    pub fn quasi_classical(a: Endomorphism, pi: Multivector) -> Self {
        let dim = a.dim();
        assert_eq!(pi.dim(), dim, "patch mismatch");
        assert_eq!(pi.degree(), 2, "π must be a bivector");
        Self { a, pi, sigma: Endomorphism::zero(dim) }
    }

    /// Blocks `(A, π, σ)` with `σ` a 2-form.
    pub fn with_form(a: Endomorphism, pi: Multivector, sigma: &DiffForm) -> Self {
        let dim = a.dim();
        assert_eq!(sigma.degree(), 2, "σ must be a 2-form");
        let mut s = Endomorphism::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                s.set_entry(i, j, sigma.component(&[i, j]));
            }
        }
        Self { a, pi, sigma: s }
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn flat(&self, x: &Multivector) -> DiffForm {
        // (♭X)_j = X^i s_ij, i.e. X∘s read as a row vector
        self.sigma.apply_dual(&DiffForm::from_coeffs(x.coeffs()))
    }

    pub fn apply(&self, e: &GenSection) -> GenSection {
        let vec = &self.a.apply(&e.vec) + &sharp(&self.pi, &e.form);
        let form = &self.flat(&e.vec) - &self.a.apply_dual(&e.form);
        GenSection::new(vec, form)
    }

    pub fn apply_n(&self, e: &GenSection, n: u32) -> GenSection {
        (0..n).fold(e.clone(), |acc, _| self.apply(&acc))
    }

    /// Coordinate sections `0 .. 2·dim`.
    pub fn basis(&self) -> Vec<GenSection> {
        (0..2 * self.dim()).map(|k| GenSection::basis(self.dim(), k)).collect()
    }

    /// `g`-skewness and `Φ³ + Φ = 0` on the coordinate sections.
    pub fn is_skew_and_f(&self) -> CheckReport {
        let basis = self.basis();
        let mut skew = ConditionBuilder::new("gen:skew", "g(Φe1, e2) + g(e1, Φe2) = 0");
        let images: Vec<GenSection> = basis.iter().map(|e| self.apply(e)).collect();
        for k in 0..basis.len() {
            for l in k..basis.len() {
                let v = &pairing(&images[k], &basis[l]) + &pairing(&basis[k], &images[l]);
                skew.check(vec![Arg::Section(k), Arg::Section(l)], v);
            }
        }
        let mut cube = ConditionBuilder::new("gen:cube", "Φ³ + Φ = 0");
        for (k, e) in basis.iter().enumerate() {
            let v = &self.apply_n(e, 3) + &images[k];
            cube.check(vec![Arg::Section(k)], v);
        }
        let mut r = CheckReport::new();
        r.push(skew.finish());
        r.push(cube.finish());
        r
    }

    pub fn is_f(&self) -> bool {
        self.basis().iter().all(|e| (&self.apply_n(e, 3) + &self.apply(e)).is_zero())
    }

    /// `𝒮_Φ(e1,e2) = [Φe1,Φe2] + Φ[Φe1,Φ²e2] + Φ[Φ²e1,Φe2] − [Φ²e1,Φ²e2]`, Courant brackets.
    pub fn s_phi(&self, e1: &GenSection, e2: &GenSection) -> GenSection {
        let p1 = self.apply(e1);
        let p2 = self.apply(e2);
        let pp1 = self.apply(&p1);
        let pp2 = self.apply(&p2);
        let inner = &courant_bracket(&p1, &pp2) + &courant_bracket(&pp1, &p2);
        &(&courant_bracket(&p1, &p2) + &self.apply(&inner)) - &courant_bracket(&pp1, &pp2)
    }

    /// `𝒮_Φ = 0` on all pairs of coordinate sections.
    pub fn s_phi_report(&self) -> CheckReport {
        let basis = self.basis();
        let mut c = ConditionBuilder::new("gen:s_phi", "S_Φ vanishes on coordinate sections");
        for k in 0..basis.len() {
            for l in k + 1..basis.len() {
                c.check(vec![Arg::Section(k), Arg::Section(l)], self.s_phi(&basis[k], &basis[l]));
            }
        }
        let mut r = CheckReport::new();
        r.push(c.finish());
        r
    }

    /// Eigen-projectors; refuses unless `Φ³ + Φ = 0`.
    pub fn projectors(&self) -> Result<GenProjectors<'_>, CheckReport> {
        let r = self.is_skew_and_f();
        if r.verdict_of("gen:cube").is_pass() {
            Ok(GenProjectors { phi: self })
        } else {
            Err(r)
        }
    }

    /// `(Z − (i/2)♯_π ξ, ξ)`, the section of `E` determined by `Z ∈ H` and
    /// `ξ ∈ ann(H ⊕ Q)`.
    pub fn e_section(&self, z: &Multivector, xi: &DiffForm) -> GenSection {
        let half_i = &GaussRational::i() * &GaussRational::half();
        GenSection::new(z - &sharp(&self.pi, xi).scale_const(&half_i), xi.clone())
    }

    /// `(Z − ½♯_π ξ, ξ)`; lies in `E` only where `♯_π ξ = 0`.
    pub fn e_section_real_half(&self, z: &Multivector, xi: &DiffForm) -> GenSection {
        GenSection::new(z - &sharp(&self.pi, xi).scale_const(&GaussRational::half()), xi.clone())
    }
}

/// `pr_E = −½(Φ² + iΦ)`, `pr_Ē = −½(Φ² − iΦ)`, `pr_S = Φ² + Id`.
pub struct GenProjectors<'a> {
    phi: &'a GenEndomorphism,
}

impl GenProjectors<'_> {
    fn combo(&self, e: &GenSection, sign: i64) -> GenSection {
        let p = self.phi.apply(e);
        let pp = self.phi.apply(&p);
        let i = if sign > 0 { GaussRational::i() } else { -GaussRational::i() };
        let ip = p.scale_const(&i);
        (&pp + &ip).scale_const(&GaussRational::from_ratio(-1, 2))
    }

    pub fn pr_e(&self, e: &GenSection) -> GenSection {
        self.combo(e, 1)
    }

    pub fn pr_ebar(&self, e: &GenSection) -> GenSection {
        self.combo(e, -1)
    }

    pub fn pr_s(&self, e: &GenSection) -> GenSection {
        &self.phi.apply_n(e, 2) + e
    }

    pub fn in_e(&self, e: &GenSection) -> bool {
        self.pr_e(e) == *e
    }
}

/// `e ∈ E ⟺ pr_E e = e`; refuses unless `Φ³ + Φ = 0`.
pub fn eigenbundle_e_membership(phi: &GenEndomorphism, e: &GenSection) -> Result<bool, CheckReport> {
    Ok(phi.projectors()?.in_e(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_examples() {
        let e = GenSection::new(Multivector::basis(2, &[0]), DiffForm::basis(2, &[0]));
        assert_eq!(pairing(&e, &e), Poly::one(2));
        let x = GenSection::basis(2, 0);
        let y = GenSection::basis(2, 1);
        assert!(pairing(&x, &y).is_zero());
    }

    #[test]
    fn cotangent_brackets_vanish() {
        let p = Patch::new(["x", "y"]).unwrap();
        let a = GenSection::from_form(DiffForm::from_coeffs(vec![Poly::parse("x*y", &p).unwrap(), Poly::parse("y^2", &p).unwrap()]));
        let b = GenSection::from_form(DiffForm::from_coeffs(vec![Poly::parse("x", &p).unwrap(), Poly::parse("1", &p).unwrap()]));
        assert!(courant_bracket(&a, &b).is_zero());
        assert_eq!(courant_bracket(&a, &b).display(&p).to_string(), "(0, 0)");
    }

    #[test]
    fn block_action() {
        let j = Endomorphism::from_ints(&[&[0, -1], &[1, 0]]);
        let pi = Multivector::basis(2, &[0, 1]);
        let phi = GenEndomorphism::quasi_classical(j, pi.clone());
        let x = Multivector::basis(2, &[0]);
        assert_eq!(phi.apply(&GenSection::from_vector(x.clone())), GenSection::from_vector(phi.a.apply(&x)));
        let b = DiffForm::basis(2, &[1]);
        let img = phi.apply(&GenSection::from_form(b.clone()));
        assert_eq!(img, GenSection::new(sharp(&pi, &b), -phi.a.apply_dual(&b)));
    }

    use alloc::string::ToString;
}
