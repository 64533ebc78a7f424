use super::{AltTensor, DiffForm, Endomorphism, Multivector, Variance};
use crate::scalar::Poly;

impl DiffForm {
    /// `dω = Σ_j dx^j ∧ ∂_j ω`.
    pub fn d(&self) -> DiffForm {
        let n = self.dim();
        let mut out = DiffForm::zero(n, self.degree() + 1);
        for (idx, c) in self.comps() {
            for j in 0..n {
                if idx.contains(&j) {
                    continue;
                }
                let dc = c.diff(j);
                if dc.is_zero() {
                    continue;
                }
                let mut full = alloc::vec![j];
                full.extend_from_slice(idx);
                out.add_component(&full, &dc);
            }
        }
        out
    }

    /// `i(X)ω`, contraction into the first slot.
    pub fn interior(&self, x: &Multivector) -> DiffForm {
        self.contract(x)
    }

    /// Cartan's formula `L_X ω = i(X) dω + d i(X) ω`.
    pub fn lie_derivative(&self, x: &Multivector) -> DiffForm {
        let a = self.d().interior(x);
        if self.degree() == 0 {
            return a;
        }
        &a + &self.interior(x).d()
    }
}

impl Multivector {
    /// `L_X w = [X, w]`.
    pub fn lie_derivative(&self, x: &Multivector) -> Multivector {
        schouten(x, self)
    }

    /// `i(α)w`, contraction into the first slot.
    pub fn interior(&self, alpha: &DiffForm) -> Multivector {
        self.contract(alpha)
    }
}

/// Schouten–Nijenhuis bracket of a `p`-vector and a `q`-vector:
/// `[P, Q] = Σ_i D_i P ∧ ∂_i Q + (−1)^{pq} D_i Q ∧ ∂_i P`, where `D_i` is
/// [`AltTensor::left_derivative`].
///
/// It restricts to the Lie bracket on vector fields, gives `[X, f] = X(f)`
/// and `[P, f] = i(df)P`, satisfies `[Q, P] = (−1)^{pq}[P, Q]`, and
/// `d_π w = −[π, w]` is the Lichnerowicz coboundary.
pub fn schouten(p: &Multivector, q: &Multivector) -> Multivector {
    assert_eq!(p.dim(), q.dim(), "patch mismatch");
    let n = p.dim();
    let deg = (p.degree() + q.degree()).saturating_sub(1);
    let mut out = Multivector::zero(n, deg);
    if p.degree() + q.degree() == 0 {
        return out;
    }
    let sign_odd = (p.degree() * q.degree()) % 2 == 1;
    for i in 0..n {
        if p.degree() > 0 {
            let dp = p.left_derivative(i);
            let qi = q.partial(i);
            if !dp.is_zero() && !qi.is_zero() {
                out = &out + &dp.wedge(&qi);
            }
        }
        if q.degree() > 0 {
            let dq = q.left_derivative(i);
            let pi = p.partial(i);
            if !dq.is_zero() && !pi.is_zero() {
                let t = dq.wedge(&pi);
                out = if sign_odd { &out - &t } else { &out + &t };
            }
        }
    }
    out
}

/// `♯_π α = i(α)π`, so `(♯α)^j = α_i π^{ij}`.
pub fn sharp(pi: &Multivector, alpha: &DiffForm) -> Multivector {
    pi.contract(alpha)
}

/// `♭_σ X = i(X)σ`.
pub fn flat(sigma: &DiffForm, x: &Multivector) -> DiffForm {
    sigma.contract(x)
}

/// `⟨α, X⟩ = α_i X^i`.
pub fn pairing<V: Variance>(a: &AltTensor<V>, b: &AltTensor<V::Dual>) -> Poly {
    assert!(a.degree() == 1 && b.degree() == 1, "pairing of degree-1 tensors only");
    let mut acc = Poly::zero(a.dim());
    for (idx, c) in a.comps() {
        let bi = b.coeff(idx[0]);
        if !bi.is_zero() {
            acc = &acc + &(c * &bi);
        }
    }
    acc
}

/// `π(α, β) = ⟨β, ♯_π α⟩`.
pub fn bivector_eval(pi: &Multivector, alpha: &DiffForm, beta: &DiffForm) -> Poly {
    pairing(beta, &sharp(pi, alpha))
}

/// Nijenhuis tensor `[AX,AY] − A[X,AY] − A[AX,Y] + A²[X,Y]`.
pub fn nijenhuis(a: &Endomorphism, x: &Multivector, y: &Multivector) -> Multivector {
    let ax = a.apply(x);
    let ay = a.apply(y);
    let inner = &(&schouten(x, &ay) + &schouten(&ax, y)) - &a.apply(&schouten(x, y));
    &schouten(&ax, &ay) - &a.apply(&inner)
}

/// CR tensor `[AX,AY] + A[AX,A²Y] + A[A²X,AY] − [A²X,A²Y]`.
pub fn cr_tensor(a: &Endomorphism, x: &Multivector, y: &Multivector) -> Multivector {
    let ax = a.apply(x);
    let ay = a.apply(y);
    let aax = a.apply(&ax);
    let aay = a.apply(&ay);
    let inner = &schouten(&ax, &aay) + &schouten(&aax, &ay);
    &(&schouten(&ax, &ay) + &a.apply(&inner)) - &schouten(&aax, &aay)
}

/// Schouten concomitant `R(X, α) = ♯_π[L_X(A*α) − L_{AX}α] − (L_{♯_π α}A)(X)`.
pub fn schouten_concomitant(pi: &Multivector, a: &Endomorphism, x: &Multivector, alpha: &DiffForm) -> Multivector {
    let ax = a.apply(x);
    let form = &a.apply_dual(alpha).lie_derivative(x) - &alpha.lie_derivative(&ax);
    let lie_a = a.lie_derivative(&sharp(pi, alpha));
    &sharp(pi, &form) - &lie_a.apply(x)
}

/// The 1-form `C(α, β) = β∘L_{♯α}A − α∘L_{♯β}A + d(π(α,β))∘A − d(π(α∘A, β))`.
pub fn c_concomitant(pi: &Multivector, a: &Endomorphism, alpha: &DiffForm, beta: &DiffForm) -> DiffForm {
    let la = a.lie_derivative(&sharp(pi, alpha));
    let lb = a.lie_derivative(&sharp(pi, beta));
    let pab = DiffForm::scalar(bivector_eval(pi, alpha, beta)).d();
    let paab = DiffForm::scalar(bivector_eval(pi, &a.apply_dual(alpha), beta)).d();
    &(&(&la.apply_dual(beta) - &lb.apply_dual(alpha)) + &a.apply_dual(&pab)) - &paab
}

/// Bracket of 1-forms `{α,β}_π = L_{♯α}β − L_{♯β}α − d(π(α,β))`.
pub fn poisson_bracket_1forms(pi: &Multivector, alpha: &DiffForm, beta: &DiffForm) -> DiffForm {
    let a = beta.lie_derivative(&sharp(pi, alpha));
    let b = alpha.lie_derivative(&sharp(pi, beta));
    let c = DiffForm::scalar(bivector_eval(pi, alpha, beta)).d();
    &(&a - &b) - &c
}

/// The basis vector field `∂/∂x^i`.
pub fn coord_vector(dim: usize, i: usize) -> Multivector {
    Multivector::basis(dim, &[i])
}

/// The basis 1-form `dx^i`.
pub fn coord_form(dim: usize, i: usize) -> DiffForm {
    DiffForm::basis(dim, &[i])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Patch, Poly};
    use alloc::vec;

    fn v(n: usize, i: usize) -> Multivector {
        coord_vector(n, i)
    }

    #[test]
    fn lie_bracket_examples() {
        let x = Poly::var(2, 0);
        // [∂x, x∂y] = ∂y
        assert_eq!(schouten(&v(2, 0), &v(2, 1).scale(&x)), v(2, 1));
        let p = Patch::new(["x1", "x2", "x3"]).unwrap();
        let x1 = Poly::parse("x1", &p).unwrap();
        let x2 = Poly::parse("x2", &p).unwrap();
        let a = &v(3, 0) + &v(3, 2).scale(&x2);
        let b = &v(3, 1) - &v(3, 2).scale(&x1);
        assert_eq!(schouten(&a, &b), v(3, 2).scale_const(&crate::scalar::GaussRational::from_int(-2)));
    }

    #[test]
    fn exterior_derivative_examples() {
        let p = Patch::new(["x", "y"]).unwrap();
        let x = Poly::parse("x", &p).unwrap();
        assert_eq!(coord_form(2, 1).scale(&x).d(), DiffForm::basis(2, &[0, 1]));
        assert!(coord_form(2, 0).d().is_zero());
        let f = DiffForm::scalar(Poly::parse("x^2*y", &p).unwrap());
        let expected = DiffForm::from_coeffs(vec![Poly::parse("2*x*y", &p).unwrap(), Poly::parse("x^2", &p).unwrap()]);
        assert_eq!(f.d(), expected);
    }

    #[test]
    fn lie_derivative_of_forms() {
        let x = Poly::var(2, 0);
        assert_eq!(coord_form(2, 1).scale(&x).lie_derivative(&v(2, 0)), coord_form(2, 1));
    }

    #[test]
    fn sharp_and_interior() {
        let pxy = Multivector::basis(2, &[0, 1]);
        assert_eq!(sharp(&pxy, &coord_form(2, 0)), v(2, 1));
        assert_eq!(DiffForm::basis(2, &[0, 1]).interior(&v(2, 0)), coord_form(2, 1));
        let f = Poly::var(2, 0);
        let pi = pxy.scale(&f);
        assert_eq!(pi.interior(&coord_form(2, 1)), -v(2, 0).scale(&f));
    }

    #[test]
    fn schouten_function_cases() {
        let p = Patch::new(["x", "y"]).unwrap();
        let f = Multivector::scalar(Poly::parse("x*y^2", &p).unwrap());
        let xf = schouten(&v(2, 0), &f);
        assert_eq!(xf.as_scalar(), Poly::parse("y^2", &p).unwrap());
        // [π, f] = i(df)π
        let pi = Multivector::basis(2, &[0, 1]);
        let df = DiffForm::scalar(f.as_scalar()).d();
        assert_eq!(schouten(&pi, &f), pi.interior(&df));
    }

    #[test]
    fn nijenhuis_of_constant_complex_structure() {
        let j = Endomorphism::from_ints(&[&[0, -1], &[1, 0]]);
        let x = &v(2, 0).scale(&Poly::var(2, 1)) + &v(2, 1);
        assert!(nijenhuis(&j, &x, &v(2, 0)).is_zero());
        assert!(cr_tensor(&j, &x, &v(2, 1)).is_zero());
    }
}
