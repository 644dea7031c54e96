//! Exact scalar fields.
//!
//! Everything above this module is generic over [`Field`]. Two families are
//! provided: prime fields [`Fp`] (the prime is a const parameter) and the
//! rationals ([`Rational`], reduced fractions of arbitrary-precision integers).

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;

pub type Rational = BigRational;

/// Which exact field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Prime(u64),
    Rationals,
}

impl FieldSpec {
    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }
}

impl Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

/// An exact commutative field.
pub trait Field:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Hash
    + Ord
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + Send
    + Sync
    + 'static
{
    fn spec() -> FieldSpec;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_i64(n: i64) -> Self;

    /// Parse a coefficient such as `"3"`, `"-1"` or (over Q) `"3/4"`.
    fn parse_coeff(s: &str) -> Result<Self, Error>;

    /// All field elements, for finite fields.
    fn elements() -> Option<Vec<Self>>;
}

/// The prime field with `P` elements. Values are kept reduced in `0..P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub const fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero in prime field")
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> AddAssign for Fp<P> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const P: u64> SubAssign for Fp<P> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<const P: u64> MulAssign for Fp<P> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn spec() -> FieldSpec {
        FieldSpec::Prime(P)
    }

    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            // Fermat
            Some(self.pow(P - 2))
        }
    }

    fn from_i64(n: i64) -> Self {
        Fp(n.rem_euclid(P as i64) as u64)
    }

    fn parse_coeff(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let n = Self::parse_coeff(num)?;
            let d = Self::parse_coeff(den)?;
            return d
                .inv()
                .map(|di| n * di)
                .ok_or_else(|| Error::Parse(format!("zero denominator in {s:?}")));
        }
        let v: i64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad coefficient {s:?} for GF({P})")))?;
        Ok(Self::from_i64(v))
    }

    fn elements() -> Option<Vec<Self>> {
        Some((0..P).map(Fp).collect())
    }
}

impl Field for BigRational {
    fn spec() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn parse_coeff(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let r = if s.contains('/') {
            BigRational::from_str(s).ok()
        } else {
            BigInt::from_str(s).ok().map(BigRational::from_integer)
        };
        r.ok_or_else(|| Error::Parse(format!("bad rational coefficient {s:?}")))
    }

    fn elements() -> Option<Vec<Self>> {
        None
    }
}

pub type Gf2 = Fp<2>;
pub type Gf3 = Fp<3>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverses() {
        for a in 1..7u64 {
            let x = Fp::<7>::new(a);
            assert_eq!(x * x.inv().unwrap(), Fp::one());
        }
        assert!(Fp::<7>::zero().inv().is_none());
    }

    #[test]
    fn parse_coefficients() {
        assert_eq!(Gf3::parse_coeff("-1").unwrap(), Gf3::new(2));
        assert_eq!(Gf3::parse_coeff("1/2").unwrap(), Gf3::new(2));
        let q = Rational::parse_coeff("3/4").unwrap();
        assert_eq!(q * Rational::from_i64(4), Rational::from_i64(3));
        assert!(Rational::parse_coeff("x").is_err());
    }
}
