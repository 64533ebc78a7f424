use alloc::collections::btree_map::{BTreeMap, Entry};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{GaussRational, Patch, ScalarError};

/// Exponent vector, one entry per patch coordinate.
pub type Monomial = Vec<u32>;

/// Sparse multivariate polynomial over ℚ(i) in the coordinates of a patch.
///
/// Only the patch dimension is stored; coordinate names are supplied when
/// printing. Zero coefficients are never stored, so `is_zero` is an empty map.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, GaussRational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, GaussRational::one())
    }

    pub fn constant(nvars: usize, c: GaussRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn int(nvars: usize, n: i64) -> Self {
        Self::constant(nvars, GaussRational::from_int(n))
    }

    /// The coordinate function `x_index`.
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "coordinate index {index} out of range for dimension {nvars}");
        let mut e = vec![0; nvars];
        e[index] = 1;
        Self::monomial(e, GaussRational::one())
    }

    pub fn monomial(exponents: Monomial, c: GaussRational) -> Self {
        let nvars = exponents.len();
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exponents, c);
        }
        p
    }

    /// Builds a polynomial from possibly repeated or zero terms.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, GaussRational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length must equal the patch dimension");
            p.add_term(e, &c);
        }
        p
    }

    fn add_term(&mut self, e: Monomial, c: &GaussRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> GaussRational {
        self.terms.get(e).cloned().unwrap_or_else(GaussRational::zero)
    }

    pub fn constant_term(&self) -> GaussRational {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Returns the constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<GaussRational> {
        self.is_constant().then(|| self.constant_term())
    }

    fn check_same(&self, other: &Poly) -> Result<(), ScalarError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(ScalarError::PatchMismatch { left: self.nvars, right: other.nvars })
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, ScalarError> {
        self.check_same(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, ScalarError> {
        self.check_same(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, ScalarError> {
        self.check_same(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, c: &GaussRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to coordinate `index`.
    pub fn partial(&self, index: usize) -> Result<Poly, ScalarError> {
        if index >= self.nvars {
            return Err(ScalarError::IndexOutOfRange { index, dim: self.nvars });
        }
        Ok(self.diff(index))
    }

    /// Partial derivative; panics if `index` is out of range.
    pub fn diff(&self, index: usize) -> Poly {
        assert!(index < self.nvars, "coordinate index {index} out of range for dimension {}", self.nvars);
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e[index];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[index] = k - 1;
            out.add_term(e2, &(c * &GaussRational::from_int(k as i64)));
        }
        out
    }

    /// Coefficient-wise complex conjugation (the coordinates are real).
    pub fn conj(&self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.conj())).collect() }
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(GaussRational::is_real)
    }

    /// Evaluates at a point of ℚ(i)^n.
    pub fn eval(&self, point: &[GaussRational]) -> GaussRational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = GaussRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += &t;
        }
        acc
    }

    /// Composition `p(q_1, ..., q_n)`; the result lives on the patch of the `q_i`.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map_or(self.nvars, Poly::nvars);
        let mut out = Poly::zero(target);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (q, &k) in images.iter().zip(e) {
                if k > 0 {
                    t = &t * &q.pow(k);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Terms in printing order: descending total degree, then descending
    /// exponents in coordinate order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &GaussRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| graded_desc(a.0, b.0));
        v
    }

    pub fn display<'a>(&'a self, patch: &'a Patch) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names: NameSource::Patch(patch) }
    }
}

fn graded_desc(a: &Monomial, b: &Monomial) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "patch mismatch");
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (e, c) in &small.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "patch mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), &-c);
        }
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "patch mismatch");
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &(c1 * c2));
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

enum NameSource<'a> {
    Patch(&'a Patch),
    Generic,
}

impl NameSource<'_> {
    fn write(&self, f: &mut fmt::Formatter<'_>, index: usize) -> fmt::Result {
        match self {
            NameSource::Patch(p) => f.write_str(p.name(index)),
            NameSource::Generic => write!(f, "x{}", index + 1),
        }
    }
}

/// Canonical printer in the expression grammar; its output parses back to the
/// same polynomial.
pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: NameSource<'a>,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.poly.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let negative = c.leading_negative();
            let mag = if negative { -c } else { c.clone() };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_const = e.iter().all(|&x| x == 0);
            if is_const {
                mag.fmt_signed(f)?;
                continue;
            }
            if !mag.is_one() {
                mag.fmt_signed(f)?;
                f.write_str("*")?;
            }
            let mut first = true;
            for (idx, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                self.names.write(f, idx)?;
                if exp > 1 {
                    write!(f, "^{exp}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    /// Prints with generic names `x1, x2, ...`; use [`Poly::display`] for patch names.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        PolyDisplay { poly: self, names: NameSource::Generic }.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn xy() -> (Poly, Poly) {
        (Poly::var(2, 0), Poly::var(2, 1))
    }

    #[test]
    fn sum_of_opposites() {
        let (x, _) = xy();
        let one = Poly::one(2);
        assert_eq!(&(&x + &one) + &(&x - &one), x.scale(&GaussRational::from_int(2)));
    }

    #[test]
    fn conjugate_product() {
        let (x, y) = xy();
        let iy = y.scale(&GaussRational::i());
        let p = &(&x + &iy) * &(&x - &iy);
        assert_eq!(p, &(&x * &x) + &(&y * &y));
    }

    #[test]
    fn zero_annihilates() {
        let (x, y) = xy();
        let p = &(&x * &y) + &Poly::int(2, 3);
        let z = &Poly::zero(2) * &p;
        assert!(z.is_zero());
        assert_eq!(z.len(), 0);
    }

    #[test]
    fn partials() {
        let (x, y) = xy();
        let p = &(&x * &x) * &y;
        assert_eq!(p.diff(0), (&x * &y).scale(&GaussRational::from_int(2)));
        assert!((&x * &x).diff(1).is_zero());
        assert_eq!(x.scale(&GaussRational::i()).diff(0), Poly::constant(2, GaussRational::i()));
        assert!(matches!(p.partial(2), Err(ScalarError::IndexOutOfRange { .. })));
    }

    #[test]
    fn conjugation() {
        let (x, _) = xy();
        let ix = x.scale(&GaussRational::i());
        assert_eq!(ix.conj(), -&ix);
        let q = &x + &Poly::one(2);
        assert_eq!(q.conj(), q);
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = Poly::var(2, 0);
        let b = Poly::var(3, 0);
        assert!(matches!(a.checked_add(&b), Err(ScalarError::PatchMismatch { left: 2, right: 3 })));
    }

    #[test]
    fn degree_and_substitution() {
        let (x, y) = xy();
        let p = &(&x * &x) + &y;
        assert_eq!(p.degree(), Some(2));
        assert_eq!(Poly::zero(2).degree(), None);
        // p(x + y, y) = x^2 + 2xy + y^2 + y
        let q = p.substitute(&[&x + &y, y.clone()]);
        let expect = &(&(&x * &x) + &(&x * &y).scale(&GaussRational::from_int(2))) + &(&(&y * &y) + &y);
        assert_eq!(q, expect);
    }

    #[test]
    fn printing() {
        let patch = Patch::new(["x", "y"]).unwrap();
        let (x, y) = xy();
        let p = &(&(&x * &x) * &y) - &Poly::constant(2, GaussRational::from_ratio(3, 2));
        assert_eq!(p.display(&patch).to_string(), "x^2*y - 3/2");
        let q = (&x + &y).scale(&GaussRational::i());
        assert_eq!(q.display(&patch).to_string(), "i*x + i*y");
        assert_eq!((-&x).display(&patch).to_string(), "-x");
        assert_eq!(Poly::zero(2).display(&patch).to_string(), "0");
    }
}
