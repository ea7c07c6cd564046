//! Exact scalar fields.
//!
//! Every computation in the crate is generic over [`Scalar`], which is
//! implemented for the rationals ([`Q`]) and for prime fields [`Fp<P>`] with
//! the modulus fixed at compile time. Runtime field selection goes through
//! [`FieldDescriptor`] and the [`with_field!`](crate::with_field) macro.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::NcgError;

/// Rational numbers with arbitrary precision.
pub type Q = BigRational;

/// A field with exact arithmetic.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Hash
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + Send
    + Sync
    + 'static
{
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// 0 for the rationals, `p` for a prime field.
    fn characteristic() -> u64;

    fn descriptor() -> FieldDescriptor;

    /// Image of a rational number; `None` if the denominator vanishes.
    fn from_rational(r: &BigRational) -> Option<Self>;

    fn from_i64(v: i64) -> Self;

    /// Canonical rational representative, used for serialization.
    fn to_rational(&self) -> BigRational;

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

impl Scalar for BigRational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn characteristic() -> u64 {
        0
    }

    fn descriptor() -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    fn from_rational(r: &BigRational) -> Option<Self> {
        Some(r.clone())
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }
}

/// Element of the prime field of order `P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

pub type F2 = Fp<2>;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
pub type F7 = Fp<7>;
pub type F11 = Fp<11>;
pub type F13 = Fp<13>;

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
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
        Fp((self.0 * rhs.0) % P)
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

impl<const P: u64> Scalar for Fp<P> {
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // Fermat
        Some(Scalar::pow(self, P - 2))
    }

    fn characteristic() -> u64 {
        P
    }

    fn descriptor() -> FieldDescriptor {
        FieldDescriptor::Prime(P)
    }

    fn from_rational(r: &BigRational) -> Option<Self> {
        let p = BigInt::from(P);
        let num = r.numer().mod_floor(&p).to_u64()?;
        let den = r.denom().mod_floor(&p).to_u64()?;
        Fp::<P>(den).inv().map(|d| Fp(num) * d)
    }

    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }

    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.0))
    }
}

/// Runtime description of the ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldDescriptor {
    Rationals,
    Prime(u64),
}

/// Primes with a compiled field implementation.
pub const SUPPORTED_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

impl FieldDescriptor {
    pub fn characteristic(self) -> u64 {
        match self {
            FieldDescriptor::Rationals => 0,
            FieldDescriptor::Prime(p) => p,
        }
    }

    pub fn check(self) -> Result<Self, NcgError> {
        match self {
            FieldDescriptor::Prime(p) if !SUPPORTED_PRIMES.contains(&p) => {
                Err(NcgError::UnsupportedField(format!(
                    "F_{p} (supported primes: {SUPPORTED_PRIMES:?})"
                )))
            }
            other => Ok(other),
        }
    }
}

impl Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = NcgError;

    /// Accepts `Q`, `QQ`, `rationals`, `F5`, `F_5`, `GF5` or `p=5`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if matches!(t, "Q" | "QQ" | "q" | "rationals") {
            return Ok(FieldDescriptor::Rationals);
        }
        let digits = t
            .trim_start_matches("GF")
            .trim_start_matches("p=")
            .trim_start_matches('F')
            .trim_start_matches('_');
        let p: u64 = digits
            .parse()
            .map_err(|_| NcgError::UnsupportedField(s.to_string()))?;
        FieldDescriptor::Prime(p).check()
    }
}

impl Serialize for FieldDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Dispatch on a runtime [`FieldDescriptor`], binding the matching
/// [`Scalar`] type to the given identifier.
///
/// ```
/// use ncg_core::{with_field, scalar::{FieldDescriptor, Scalar}};
/// let c = with_field!(FieldDescriptor::Prime(3), F => Ok::<u64, ncg_core::NcgError>(F::characteristic()));
/// assert_eq!(c.unwrap(), 3);
/// ```
#[macro_export]
macro_rules! with_field {
    ($desc:expr, $f:ident => $body:expr) => {{
        match $desc {
            $crate::scalar::FieldDescriptor::Rationals => {
                type $f = $crate::scalar::Q;
                $body
            }
            $crate::scalar::FieldDescriptor::Prime(2) => {
                type $f = $crate::scalar::F2;
                $body
            }
            $crate::scalar::FieldDescriptor::Prime(3) => {
                type $f = $crate::scalar::F3;
                $body
            }
            $crate::scalar::FieldDescriptor::Prime(5) => {
                type $f = $crate::scalar::F5;
                $body
            }
            $crate::scalar::FieldDescriptor::Prime(7) => {
                type $f = $crate::scalar::F7;
                $body
            }
            $crate::scalar::FieldDescriptor::Prime(11) => {
                type $f = $crate::scalar::F11;
                $body
            }
            $crate::scalar::FieldDescriptor::Prime(13) => {
                type $f = $crate::scalar::F13;
                $body
            }
            $crate::scalar::FieldDescriptor::Prime(p) => Err($crate::NcgError::UnsupportedField(
                format!("F_{p}"),
            )
            .into()),
        }
    }};
}

/// Parse a rational from `"num/den"` or `"num"`.
pub fn parse_rational(s: &str) -> Result<BigRational, NcgError> {
    let t = s.trim();
    let bad = || NcgError::Schema(format!("malformed rational {s:?}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// Inverse of [`parse_rational`]: always `"num/den"` with a positive denominator.
pub fn format_rational(r: &BigRational) -> String {
    debug_assert!(r.denom().is_positive());
    format!("{}/{}", r.numer(), r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_arithmetic() {
        let a = F5::new(3);
        let b = F5::new(4);
        assert_eq!(a + b, F5::new(2));
        assert_eq!(a * b, F5::new(2));
        assert_eq!(a - b, F5::new(4));
        assert_eq!(a.inv().unwrap() * a, F5::one());
        assert!(F5::zero().inv().is_none());
    }

    #[test]
    fn rational_images() {
        let half = parse_rational("1/2").unwrap();
        assert_eq!(F3::from_rational(&half), Some(F3::new(2)));
        assert_eq!(F2::from_rational(&half), None);
        assert_eq!(format_rational(&parse_rational("-4/6").unwrap()), "-2/3");
        assert_eq!(format_rational(&parse_rational("7").unwrap()), "7/1");
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn descriptor_parsing() {
        assert_eq!("Q".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::Rationals);
        assert_eq!("F3".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::Prime(3));
        assert_eq!("F_2".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::Prime(2));
        assert!("F4".parse::<FieldDescriptor>().is_err());
        assert!("F17".parse::<FieldDescriptor>().is_err());
    }
}
