use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An element of ℚ(i): `re + im·i` with both parts in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn real(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn i() -> Self {
        Self { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn half() -> Self {
        Self::from_ratio(1, 2)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.im.is_zero() && self.re.is_one()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    /// |z|², always a nonnegative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self { re: &self.re / &n, im: -(&self.im / &n) })
    }

    /// Least common multiple of the two denominators.
    pub fn denom_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }

    /// Writes the coefficient in the expression grammar. A purely real value is
    /// printed with its sign; a genuinely complex one is parenthesised.
    pub(crate) fn fmt_signed(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write_rational(f, &self.re);
        }
        if self.re.is_zero() {
            return write_imag(f, &self.im);
        }
        f.write_str("(")?;
        write_rational(f, &self.re)?;
        if self.im.is_negative() {
            f.write_str(" - ")?;
            write_imag(f, &-self.im.clone())?;
        } else {
            f.write_str(" + ")?;
            write_imag(f, &self.im)?;
        }
        f.write_str(")")
    }

    /// Sign used when the coefficient is joined into a sum: a value is
    /// "negative" when its only nonzero part is negative.
    pub(crate) fn leading_negative(&self) -> bool {
        if self.im.is_zero() {
            self.re.is_negative()
        } else if self.re.is_zero() {
            self.im.is_negative()
        } else {
            false
        }
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

fn write_imag(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.is_one() {
        f.write_str("i")
    } else if (-r.clone()).is_one() {
        f.write_str("-i")
    } else {
        write_rational(f, r)?;
        f.write_str("*i")
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_signed(f)
    }
}

impl Zero for GaussRational {
    fn zero() -> Self {
        Self { re: BigRational::zero(), im: BigRational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRational {
    fn one() -> Self {
        Self::real(BigRational::one())
    }
}

impl From<i64> for GaussRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &GaussRational) -> GaussRational {
        GaussRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Add for GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: GaussRational) -> GaussRational {
        &self + &rhs
    }
}

impl AddAssign<&GaussRational> for GaussRational {
    fn add_assign(&mut self, rhs: &GaussRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl<'a> Sub<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &GaussRational) -> GaussRational {
        GaussRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Sub for GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: GaussRational) -> GaussRational {
        &self - &rhs
    }
}

impl SubAssign<&GaussRational> for GaussRational {
    fn sub_assign(&mut self, rhs: &GaussRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl<'a> Mul<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &GaussRational) -> GaussRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussRational::real(&self.re * &rhs.re);
        }
        GaussRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Mul for GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: GaussRational) -> GaussRational {
        &self * &rhs
    }
}

impl MulAssign<&GaussRational> for GaussRational {
    fn mul_assign(&mut self, rhs: &GaussRational) {
        *self = &*self * rhs;
    }
}

impl<'a> Div<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    /// Panics on division by zero, like the rational type it wraps.
    fn div(self, rhs: &GaussRational) -> GaussRational {
        self * &rhs.inv().expect("division by zero Gaussian rational")
    }
}

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}
