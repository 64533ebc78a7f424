use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use super::{DiffForm, Multivector};
use crate::scalar::{GaussRational, Poly};

/// Field of endomorphisms of the tangent bundle, `(AX)^i = A^i_j X^j`.
/// `rows[i][j]` holds `A^i_j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Endomorphism {
    dim: usize,
    rows: Vec<Vec<Poly>>,
}

impl Endomorphism {
    pub fn zero(dim: usize) -> Self {
        Self { dim, rows: (0..dim).map(|_| (0..dim).map(|_| Poly::zero(dim)).collect()).collect() }
    }

    pub fn identity(dim: usize) -> Self {
        let mut a = Self::zero(dim);
        for i in 0..dim {
            a.rows[i][i] = Poly::one(dim);
        }
        a
    }

    /// Panics unless `rows` is square with entries on a patch of matching dimension.
    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Self {
        let dim = rows.len();
        for r in &rows {
            assert_eq!(r.len(), dim, "endomorphism matrix must be square");
            for p in r {
                assert_eq!(p.nvars(), dim, "entry on a patch of the wrong dimension");
            }
        }
        Self { dim, rows }
    }

    /// Constant matrix from integer entries.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let dim = rows.len();
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| Poly::int(dim, v)).collect()).collect())
    }

    /// The rank-one map `X ↦ ξ(X) Z`.
    pub fn outer(z: &Multivector, xi: &DiffForm) -> Self {
        let dim = z.dim();
        let zc = z.coeffs();
        let xc = xi.coeffs();
        Self { dim, rows: zc.iter().map(|zi| xc.iter().map(|xj| zi * xj).collect()).collect() }
    }

    /// Block diagonal sum on the concatenated patch; entries are re-embedded.
    pub fn direct_sum(&self, other: &Endomorphism) -> Self {
        let n = self.dim + other.dim;
        let mut a = Self::zero(n);
        for i in 0..self.dim {
            for j in 0..self.dim {
                a.rows[i][j] = embed(&self.rows[i][j], n, 0);
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                a.rows[self.dim + i][self.dim + j] = embed(&other.rows[i][j], n, self.dim);
            }
        }
        a
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.rows[i][j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, p: Poly) {
        assert_eq!(p.nvars(), self.dim);
        self.rows[i][j] = p;
    }

    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Poly::is_zero)
    }

    pub fn is_constant(&self) -> bool {
        self.rows.iter().flatten().all(Poly::is_constant)
    }

    /// Largest coefficient degree among the entries, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.rows.iter().flatten().filter_map(Poly::degree).max()
    }

    /// `AX` for a vector field `X`.
    pub fn apply(&self, x: &Multivector) -> Multivector {
        assert_eq!(x.degree(), 1, "endomorphisms act on vector fields");
        assert_eq!(x.dim(), self.dim, "patch mismatch");
        let xc = x.coeffs();
        Multivector::from_coeffs(
            self.rows
                .iter()
                .map(|r| r.iter().zip(&xc).fold(Poly::zero(self.dim), |acc, (a, b)| &acc + &(a * b)))
                .collect(),
        )
    }

    /// `A*α = α ∘ A` for a 1-form `α`.
    pub fn apply_dual(&self, alpha: &DiffForm) -> DiffForm {
        assert_eq!(alpha.degree(), 1, "the transpose acts on 1-forms");
        assert_eq!(alpha.dim(), self.dim, "patch mismatch");
        let ac = alpha.coeffs();
        DiffForm::from_coeffs(
            (0..self.dim)
                .map(|j| (0..self.dim).fold(Poly::zero(self.dim), |acc, i| &acc + &(&ac[i] * &self.rows[i][j])))
                .collect(),
        )
    }

    /// `A∂_j`, the `j`-th column as a vector field.
    pub fn column(&self, j: usize) -> Multivector {
        Multivector::from_coeffs(self.rows.iter().map(|r| r[j].clone()).collect())
    }

    /// `dx^i ∘ A`, the `i`-th row as a 1-form.
    pub fn row(&self, i: usize) -> DiffForm {
        DiffForm::from_coeffs(self.rows[i].clone())
    }

    /// Builds the endomorphism whose `j`-th column is `cols[j]`.
    pub fn from_columns(cols: &[Multivector]) -> Self {
        let dim = cols.len();
        let mut a = Self::zero(dim);
        for (j, c) in cols.iter().enumerate() {
            for i in 0..dim {
                a.rows[i][j] = c.coeff(i);
            }
        }
        a
    }

    /// Matrix transpose; as an operator on 1-form components it is `A*`.
    pub fn transpose(&self) -> Self {
        let mut a = Self::zero(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                a.rows[j][i] = self.rows[i][j].clone();
            }
        }
        a
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &Endomorphism) -> Self {
        assert_eq!(self.dim, other.dim, "patch mismatch");
        let n = self.dim;
        let mut a = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let mut acc = Poly::zero(n);
                for j in 0..n {
                    if self.rows[i][j].is_zero() || other.rows[j][k].is_zero() {
                        continue;
                    }
                    acc = &acc + &(&self.rows[i][j] * &other.rows[j][k]);
                }
                a.rows[i][k] = acc;
            }
        }
        a
    }

    pub fn square(&self) -> Self {
        self.compose(self)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::identity(self.dim), |acc, _| acc.compose(self))
    }

    pub fn scale(&self, f: &Poly) -> Self {
        self.map(|p| p * f)
    }

    pub fn scale_const(&self, c: &GaussRational) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        Self { dim: self.dim, rows: self.rows.iter().map(|r| r.iter().map(&f).collect()).collect() }
    }

    pub fn conj(&self) -> Self {
        self.map(Poly::conj)
    }

    /// `(L_Y A)(X) = [Y, AX] − A[Y, X]`.
    pub fn lie_derivative(&self, y: &Multivector) -> Self {
        let cols: Vec<Multivector> = (0..self.dim)
            .map(|j| {
                let aj = self.column(j);
                // [Y, ∂_j] = −∂_j Y
                let yj = -y.partial(j);
                &super::schouten(y, &aj) - &self.apply(&yj)
            })
            .collect();
        Self::from_columns(&cols)
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &Poly)> {
        for (i, r) in self.rows.iter().enumerate() {
            for (j, p) in r.iter().enumerate() {
                if !p.is_zero() {
                    return Some((i, j, p));
                }
            }
        }
        None
    }
}

/// Moves a polynomial on `p.nvars()` coordinates into a patch of dimension
/// `n`, placing its variables at `offset..`.
pub fn embed(p: &Poly, n: usize, offset: usize) -> Poly {
    let images: Vec<Poly> = (0..p.nvars()).map(|k| Poly::var(n, offset + k)).collect();
    if images.is_empty() {
        return Poly::constant(n, p.constant_term());
    }
    p.substitute(&images)
}

impl<'a> Add<&'a Endomorphism> for &'a Endomorphism {
    type Output = Endomorphism;
    fn add(self, rhs: &Endomorphism) -> Endomorphism {
        assert_eq!(self.dim, rhs.dim, "patch mismatch");
        Endomorphism {
            dim: self.dim,
            rows: self.rows.iter().zip(&rhs.rows).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect(),
        }
    }
}

impl<'a> Sub<&'a Endomorphism> for &'a Endomorphism {
    type Output = Endomorphism;
    fn sub(self, rhs: &Endomorphism) -> Endomorphism {
        self + &(-rhs)
    }
}

impl Neg for &Endomorphism {
    type Output = Endomorphism;
    fn neg(self) -> Endomorphism {
        self.map(|p| -p)
    }
}

impl<'a> Mul<&'a Endomorphism> for &'a Endomorphism {
    type Output = Endomorphism;
    fn mul(self, rhs: &Endomorphism) -> Endomorphism {
        self.compose(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_structure_squares_to_minus_one() {
        let j = Endomorphism::from_ints(&[&[0, -1], &[1, 0]]);
        assert_eq!(j.square(), -&Endomorphism::identity(2));
        // J∂x = ∂y
        assert_eq!(j.apply(&Multivector::basis(2, &[0])), Multivector::basis(2, &[1]));
        // dx∘J = −dy
        assert_eq!(j.apply_dual(&DiffForm::basis(2, &[0])), -DiffForm::basis(2, &[1]));
        assert_eq!(j.transpose().transpose(), j);
    }

    #[test]
    fn direct_sum_embeds_entries() {
        let x = Poly::var(1, 0);
        let a = Endomorphism::from_rows(alloc::vec![alloc::vec![x]]);
        let s = a.direct_sum(&Endomorphism::identity(1));
        assert_eq!(s.entry(0, 0), &Poly::var(2, 0));
        assert_eq!(s.entry(1, 1), &Poly::one(2));
    }
}
