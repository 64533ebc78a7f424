use alloc::collections::btree_map::{BTreeMap, Entry};
use alloc::vec::Vec;
use core::fmt;
use core::hash::Hash;
use core::marker::PhantomData;
use core::ops::{Add, Neg, Sub};

use crate::scalar::{GaussRational, Patch, Poly};

/// Strictly increasing index tuple.
pub type IndexSet = Vec<usize>;

/// Variance marker for [`AltTensor`].
pub trait Variance: Copy + Clone + fmt::Debug + PartialEq + Eq + Hash + Default + 'static {
    type Dual: Variance<Dual = Self>;
    const CONTRAVARIANT: bool;
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Contra;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Co;

impl Variance for Contra {
    type Dual = Co;
    const CONTRAVARIANT: bool = true;
}

impl Variance for Co {
    type Dual = Contra;
    const CONTRAVARIANT: bool = false;
}

/// Totally antisymmetric tensor field of degree `k` with polynomial
/// components, stored on strictly increasing index tuples only.
///
/// Evaluation follows the determinant convention:
/// `(d/dx ∧ d/dy)(dx, dy) = 1`, and `T(a1, .., ak)` is successive
/// contraction of `a1, a2, ..` into the first slot.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AltTensor<V: Variance> {
    dim: usize,
    degree: usize,
    comps: BTreeMap<IndexSet, Poly>,
    _variance: PhantomData<V>,
}

/// k-vector field.
pub type Multivector = AltTensor<Contra>;
/// Differential k-form.
pub type DiffForm = AltTensor<Co>;

/// Sorts `idx` in place and returns the permutation sign, or `None` on a repeat.
pub(crate) fn sort_with_sign(idx: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for a in 1..idx.len() {
        let mut b = a;
        while b > 0 && idx[b - 1] > idx[b] {
            idx.swap(b - 1, b);
            sign = -sign;
            b -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

fn signed(p: &Poly, sign: i64) -> Poly {
    if sign < 0 {
        -p
    } else {
        p.clone()
    }
}

impl<V: Variance> AltTensor<V> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Self { dim, degree, comps: BTreeMap::new(), _variance: PhantomData }
    }

    pub fn scalar(f: Poly) -> Self {
        let mut t = Self::zero(f.nvars(), 0);
        t.insert(Vec::new(), f);
        t
    }

    /// The basis element `e_{i1} ∧ .. ∧ e_{ik}` for an arbitrary index order.
    pub fn basis(dim: usize, indices: &[usize]) -> Self {
        let mut t = Self::zero(dim, indices.len());
        t.add_component(indices, &Poly::one(dim));
        t
    }

    /// Degree-1 tensor with the given coordinate components.
    pub fn from_coeffs(coeffs: Vec<Poly>) -> Self {
        let dim = coeffs.len();
        let mut t = Self::zero(dim, 1);
        for (i, c) in coeffs.into_iter().enumerate() {
            assert_eq!(c.nvars(), dim, "component on a patch of the wrong dimension");
            t.insert(alloc::vec![i], c);
        }
        t
    }

    /// Sums `coeff · e_I` over the given entries; index order is arbitrary.
    pub fn from_components(dim: usize, degree: usize, entries: impl IntoIterator<Item = (Vec<usize>, Poly)>) -> Self {
        let mut t = Self::zero(dim, degree);
        for (idx, c) in entries {
            assert_eq!(idx.len(), degree, "index tuple length differs from the degree");
            t.add_component(&idx, &c);
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Stored components, keyed by increasing index tuples.
    pub fn comps(&self) -> impl Iterator<Item = (&IndexSet, &Poly)> {
        self.comps.iter()
    }

    pub fn num_comps(&self) -> usize {
        self.comps.len()
    }

    /// Component at an arbitrary index order, with the permutation sign applied.
    pub fn component(&self, indices: &[usize]) -> Poly {
        let mut idx = indices.to_vec();
        match sort_with_sign(&mut idx) {
            None => Poly::zero(self.dim),
            Some(s) => self.comps.get(&idx).map_or_else(|| Poly::zero(self.dim), |p| signed(p, s)),
        }
    }

    /// The `i`-th component of a degree-1 tensor.
    pub fn coeff(&self, i: usize) -> Poly {
        debug_assert_eq!(self.degree, 1);
        self.comps.get(&alloc::vec![i]).cloned().unwrap_or_else(|| Poly::zero(self.dim))
    }

    pub fn coeffs(&self) -> Vec<Poly> {
        (0..self.dim).map(|i| self.coeff(i)).collect()
    }

    /// The function of a degree-0 tensor.
    pub fn as_scalar(&self) -> Poly {
        debug_assert_eq!(self.degree, 0);
        self.comps.get(&Vec::new()).cloned().unwrap_or_else(|| Poly::zero(self.dim))
    }

    fn insert(&mut self, idx: IndexSet, c: Poly) {
        if c.is_zero() {
            return;
        }
        match self.comps.entry(idx) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = &*o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Adds `c · e_{indices}` with the permutation sign of `indices`.
    pub fn add_component(&mut self, indices: &[usize], c: &Poly) {
        assert!(indices.iter().all(|&i| i < self.dim), "index out of range");
        let mut idx = indices.to_vec();
        if let Some(s) = sort_with_sign(&mut idx) {
            self.insert(idx, signed(c, s));
        }
    }

    pub fn scale(&self, f: &Poly) -> Self {
        let mut t = Self::zero(self.dim, self.degree);
        if f.is_zero() {
            return t;
        }
        for (idx, c) in &self.comps {
            t.insert(idx.clone(), c * f);
        }
        t
    }

    pub fn scale_const(&self, c: &GaussRational) -> Self {
        self.map(|p| p.scale(c))
    }

    /// Applies `f` to every component.
    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        let mut t = Self::zero(self.dim, self.degree);
        for (idx, c) in &self.comps {
            t.insert(idx.clone(), f(c));
        }
        t
    }

    pub fn conj(&self) -> Self {
        self.map(Poly::conj)
    }

    pub fn is_real(&self) -> bool {
        self.comps.values().all(Poly::is_real)
    }

    /// Componentwise partial derivative along coordinate `i`.
    pub fn partial(&self, i: usize) -> Self {
        self.map(|p| p.diff(i))
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "patch mismatch");
        let mut t = Self::zero(self.dim, self.degree + other.degree);
        for (a, f) in &self.comps {
            for (b, g) in &other.comps {
                if let Some((idx, s)) = merge(a, b) {
                    t.insert(idx, signed(&(f * g), s));
                }
            }
        }
        t
    }

    /// Odd derivation removing the index `i` from the front:
    /// `D_i(e_{j1} ∧ .. ∧ e_{jk}) = Σ_p (-1)^p δ_{i,jp} e_{j1} ∧ ..^p.. ∧ e_{jk}`.
    pub fn left_derivative(&self, i: usize) -> Self {
        let mut t = Self::zero(self.dim, self.degree.saturating_sub(1));
        for (idx, c) in &self.comps {
            if let Some(p) = idx.iter().position(|&j| j == i) {
                let mut rest = idx.clone();
                rest.remove(p);
                t.insert(rest, signed(c, if p % 2 == 0 { 1 } else { -1 }));
            }
        }
        t
    }

    /// Contraction of a degree-1 tensor of the opposite variance into the
    /// first slot. Panics on a degree-0 receiver.
    pub fn contract(&self, v: &AltTensor<V::Dual>) -> Self {
        assert!(self.degree >= 1, "contraction into a degree-0 tensor");
        assert_eq!(v.degree, 1, "only degree-1 tensors contract");
        assert_eq!(self.dim, v.dim, "patch mismatch");
        let mut t = Self::zero(self.dim, self.degree - 1);
        for (idx, c) in &self.comps {
            for (p, &i) in idx.iter().enumerate() {
                let vi = v.coeff(i);
                if vi.is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(p);
                let term = c * &vi;
                t.insert(rest, signed(&term, if p % 2 == 0 { 1 } else { -1 }));
            }
        }
        t
    }

    /// Value on `args`, contracted in order into the first slot. The number of
    /// arguments must equal the degree.
    pub fn eval(&self, args: &[AltTensor<V::Dual>]) -> Poly {
        assert_eq!(args.len(), self.degree, "argument count differs from the degree");
        let mut t = self.clone();
        for a in args {
            t = t.contract(a);
        }
        t.as_scalar()
    }

    /// Re-embeds into a patch of dimension `n`, shifting indices and
    /// variables by `offset`.
    pub fn embed(&self, n: usize, offset: usize) -> Self {
        assert!(offset + self.dim <= n, "embedding out of range");
        let mut t = Self::zero(n, self.degree);
        for (idx, c) in &self.comps {
            t.insert(idx.iter().map(|i| i + offset).collect(), super::embed(c, n, offset));
        }
        t
    }

    /// Printer using the coordinate names of `patch`.
    pub fn display<'a>(&'a self, patch: &'a Patch) -> AltDisplay<'a, V> {
        AltDisplay { t: self, patch }
    }
}

/// Merges two increasing tuples; returns the sorted union and the sign of
/// the shuffle, or `None` if they share an index.
fn merge(a: &[usize], b: &[usize]) -> Option<(IndexSet, i64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut inversions = 0usize;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(b[j]);
                inversions += a.len() - i;
                j += 1;
            }
            core::cmp::Ordering::Equal => return None,
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, if inversions % 2 == 0 { 1 } else { -1 }))
}

impl<'a, V: Variance> Add<&'a AltTensor<V>> for &'a AltTensor<V> {
    type Output = AltTensor<V>;
    fn add(self, rhs: &AltTensor<V>) -> AltTensor<V> {
        assert_eq!(self.dim, rhs.dim, "patch mismatch");
        assert_eq!(self.degree, rhs.degree, "adding tensors of different degree");
        let mut t = self.clone();
        for (idx, c) in &rhs.comps {
            t.insert(idx.clone(), c.clone());
        }
        t
    }
}

impl<V: Variance> Add for AltTensor<V> {
    type Output = AltTensor<V>;
    fn add(self, rhs: AltTensor<V>) -> AltTensor<V> {
        &self + &rhs
    }
}

impl<'a, V: Variance> Sub<&'a AltTensor<V>> for &'a AltTensor<V> {
    type Output = AltTensor<V>;
    fn sub(self, rhs: &AltTensor<V>) -> AltTensor<V> {
        self + &(-rhs)
    }
}

impl<V: Variance> Sub for AltTensor<V> {
    type Output = AltTensor<V>;
    fn sub(self, rhs: AltTensor<V>) -> AltTensor<V> {
        &self - &rhs
    }
}

impl<V: Variance> Neg for &AltTensor<V> {
    type Output = AltTensor<V>;
    fn neg(self) -> AltTensor<V> {
        self.map(|p| -p)
    }
}

impl<V: Variance> Neg for AltTensor<V> {
    type Output = AltTensor<V>;
    fn neg(self) -> AltTensor<V> {
        -&self
    }
}

pub struct AltDisplay<'a, V: Variance> {
    t: &'a AltTensor<V>,
    patch: &'a Patch,
}

impl<V: Variance> fmt::Display for AltDisplay<'_, V> {
    /// `x*d/dx ∧ d/dy - 2*d/dz` for multivectors, `(x + 1)*dx∧dy` for forms;
    /// the zero tensor prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.t.is_zero() {
            return f.write_str("0");
        }
        for (k, (idx, c)) in self.t.comps.iter().enumerate() {
            let single = c.len() == 1;
            let negative = single && c.sorted_terms()[0].1.leading_negative();
            let mag = if negative { -c } else { c.clone() };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if idx.is_empty() {
                if single {
                    write!(f, "{}", mag.display(self.patch))?;
                } else {
                    write!(f, "({})", mag.display(self.patch))?;
                }
                continue;
            }
            let unit = mag.as_constant().is_some_and(|v| v.is_one());
            if !unit {
                if single {
                    write!(f, "{}*", mag.display(self.patch))?;
                } else {
                    write!(f, "({})*", mag.display(self.patch))?;
                }
            }
            for (p, &i) in idx.iter().enumerate() {
                if p > 0 {
                    f.write_str("∧")?;
                }
                if V::CONTRAVARIANT {
                    write!(f, "d/d{}", self.patch.name(i))?;
                } else {
                    write!(f, "d{}", self.patch.name(i))?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn patch() -> Patch {
        Patch::new(["x", "y", "z"]).unwrap()
    }

    #[test]
    fn basis_sign_and_repeats() {
        let t = Multivector::basis(3, &[1, 0]);
        assert_eq!(t.component(&[0, 1]), Poly::int(3, -1));
        assert_eq!(t.component(&[1, 0]), Poly::int(3, 1));
        assert!(Multivector::basis(3, &[1, 1]).is_zero());
    }

    #[test]
    fn wedge_is_graded_commutative() {
        let a = DiffForm::basis(3, &[0]);
        let b = DiffForm::basis(3, &[2]);
        assert_eq!(a.wedge(&b), -b.wedge(&a));
        let ab = a.wedge(&b);
        assert_eq!(ab.wedge(&DiffForm::basis(3, &[1])), -DiffForm::basis(3, &[0, 1, 2]));
    }

    #[test]
    fn first_slot_contraction() {
        let pxy = Multivector::basis(3, &[0, 1]);
        assert_eq!(pxy.contract(&DiffForm::basis(3, &[0])), Multivector::basis(3, &[1]));
        assert_eq!(pxy.contract(&DiffForm::basis(3, &[1])), -Multivector::basis(3, &[0]));
        assert_eq!(pxy.eval(&[DiffForm::basis(3, &[0]), DiffForm::basis(3, &[1])]), Poly::one(3));
    }

    #[test]
    fn printing() {
        let pt = patch();
        let x = Poly::var(3, 0);
        let v = Multivector::from_components(3, 1, [(vec![2], Poly::int(3, -2))]);
        assert_eq!(v.display(&pt).to_string(), "-2*d/dz");
        let w = Multivector::from_components(3, 2, [(vec![0, 1], x.clone()), (vec![1, 2], &x + &Poly::one(3))]);
        assert_eq!(w.display(&pt).to_string(), "x*d/dx∧d/dy + (x + 1)*d/dy∧d/dz");
        assert_eq!(DiffForm::basis(3, &[0, 1]).display(&pt).to_string(), "dx∧dy");
        assert_eq!(DiffForm::zero(3, 1).display(&pt).to_string(), "0");
    }
}
