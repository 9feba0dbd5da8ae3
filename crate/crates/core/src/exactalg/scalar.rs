//! Gaussian rationals `a/b + (c/d)·i`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rat::{parse_rat, Rat};
use crate::error::{Error, Result};

/// An element of `Q(i)`, always stored in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    re: Rat,
    im: Rat,
}

impl Scalar {
    pub fn from_int(n: i64) -> Self {
        Scalar {
            re: Rat::from_int(n),
            im: Rat::ZERO,
        }
    }

    /// `num / den`; fails when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Result<Self> {
        let re = Rat::from_int(num)
            .div(&Rat::from_int(den))
            .ok_or_else(|| Error::invalid("zero denominator"))?;
        Ok(Scalar { re, im: Rat::ZERO })
    }

    pub fn from_big_ratio(num: BigInt, den: BigInt) -> Result<Self> {
        let re = Rat::new(num, den).ok_or_else(|| Error::invalid("zero denominator"))?;
        Ok(Scalar { re, im: Rat::ZERO })
    }

    pub fn i() -> Self {
        Scalar {
            re: Rat::ZERO,
            im: Rat::ONE,
        }
    }

    pub fn gaussian(re: Scalar, im: Scalar) -> Self {
        debug_assert!(re.is_real() && im.is_real());
        Scalar {
            re: re.re,
            im: im.re,
        }
    }

    pub fn re(&self) -> Scalar {
        Scalar {
            re: self.re.clone(),
            im: Rat::ZERO,
        }
    }

    pub fn im(&self) -> Scalar {
        Scalar {
            re: self.im.clone(),
            im: Rat::ZERO,
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.is_real() && self.re.is_integer()
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_real() {
            self.re.to_i64()
        } else {
            None
        }
    }

    /// Sign of a real scalar; `None` when the imaginary part is nonzero.
    pub fn real_signum(&self) -> Option<i32> {
        self.is_real().then(|| self.re.signum())
    }

    pub fn conj(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn norm_sqr(&self) -> Scalar {
        let n = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        Scalar {
            re: n,
            im: Rat::ZERO,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::invalid("division by zero"));
        }
        if self.is_real() {
            return Ok(Scalar {
                re: self.re.inv().expect("nonzero"),
                im: Rat::ZERO,
            });
        }
        let n = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let ni = n.inv().expect("nonzero norm");
        Ok(Scalar {
            re: self.re.mul(&ni),
            im: self.im.neg().mul(&ni),
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `self^e` for any integer exponent; fails for `0^e` with `e < 0`.
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inv()?.pow((-e) as u32))
        }
    }

    /// Exact square root of a nonnegative rational square.
    pub fn sqrt_rational(&self) -> Option<Self> {
        if !self.is_real() {
            return None;
        }
        self.re.sqrt().map(|re| Scalar { re, im: Rat::ZERO })
    }

    pub fn numer(&self) -> BigInt {
        self.re.numer()
    }

    pub fn denom(&self) -> BigInt {
        self.re.denom()
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar {
            re: Rat::ZERO,
            im: Rat::ZERO,
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar {
            re: Rat::ONE,
            im: Rat::ZERO,
        }
    }

    fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: self.re.add(&rhs.re),
            im: self.im.add(&rhs.im),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: self.re.sub(&rhs.re),
            im: self.im.sub(&rhs.im),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar {
                re: self.re.mul(&rhs.re),
                im: Rat::ZERO,
            };
        }
        let re = self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im));
        let im = self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re));
        Scalar { re, im }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

/// Serialized as `a/b` or `a/b+c/d*i` (`-` when the imaginary part is negative).
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.re)?;
        if !self.im.is_zero() {
            if self.im.signum() > 0 {
                write!(f, "+")?;
            }
            write!(f, "{}*i", self.im)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts the canonical serialization plus bare integers and pure
    /// imaginary `c/d*i`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("malformed scalar {s:?}"));
        let s = s.trim();
        if s.is_empty() {
            return Err(bad());
        }
        if let Some(body) = s.strip_suffix("*i") {
            // split at the last sign that is not the leading one
            let split = body
                .char_indices()
                .skip(1)
                .filter(|&(_, c)| c == '+' || c == '-')
                .map(|(k, _)| k)
                .last();
            let (re, im) = match split {
                Some(k) => (&body[..k], body[k..].trim_start_matches('+')),
                None => ("0", body),
            };
            let re = parse_rat(re).ok_or_else(bad)?;
            let im = parse_rat(im).ok_or_else(bad)?;
            return Ok(Scalar { re, im });
        }
        let re = parse_rat(s).ok_or_else(bad)?;
        Ok(Scalar { re, im: Rat::ZERO })
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn product_with_conjugate() {
        let a = &s("1/2") + &Scalar::i();
        let b = a.conj();
        assert_eq!(&a * &b, s("5/4"));
    }

    #[test]
    fn division_by_zero_is_invalid_input() {
        let err = s("3/7").checked_div(&Scalar::zero()).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
        assert!(Scalar::ratio(1, 0).is_err());
    }

    #[test]
    fn canonical_reduction() {
        let x = &Scalar::ratio(2, 4).unwrap() + &Scalar::zero();
        assert_eq!(x.to_string(), "1/2");
        assert_eq!(Scalar::zero(), -Scalar::zero());
    }

    #[test]
    fn serialization_forms() {
        assert_eq!(Scalar::from_int(3).to_string(), "3/1");
        let z = Scalar::gaussian(s("-1/2"), s("3/4"));
        assert_eq!(z.to_string(), "-1/2+3/4*i");
        assert_eq!((-&z).to_string(), "1/2-3/4*i");
        assert_eq!(s("0/1+1/1*i"), Scalar::i());
        assert_eq!(s("-2/3-1/1*i"), Scalar::gaussian(s("-2/3"), s("-1")));
        assert_eq!(s("1/1*i"), Scalar::i());
        for w in ["7/3", "-1/2+3/4*i", "0/1-5/2*i"] {
            assert_eq!(s(w).to_string(), w);
        }
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
    }

    #[test]
    fn gaussian_inverse() {
        let z = Scalar::gaussian(s("2"), s("-3"));
        assert_eq!(&z * &z.inv().unwrap(), Scalar::one());
        assert_eq!(z.powi(-2).unwrap(), (&z * &z).inv().unwrap());
    }
}
