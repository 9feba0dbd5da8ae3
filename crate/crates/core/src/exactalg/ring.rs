use std::fmt;
use std::ops::{AddAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::scalar::Scalar;

/// Commutative `Q(i)`-algebra used as a coefficient ring for Lie algebra
/// elements, matrices and dgla elements.
///
/// Implemented by [`Scalar`], [`PolyScalar`](super::PolyScalar) and
/// [`Jet`](super::Jet) over either.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    fn from_scalar(s: &Scalar) -> Self;

    fn scale(&self, s: &Scalar) -> Self;

    fn mul_ref(&self, rhs: &Self) -> Self;

    /// The value as a field element, if it has no symbolic part.
    fn as_scalar(&self) -> Option<Scalar>;

    fn add_ref(&self, rhs: &Self) -> Self {
        let mut r = self.clone();
        r += rhs;
        r
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        let mut r = self.clone();
        r -= rhs;
        r
    }

    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self += &a.mul_ref(b);
    }

    fn add_scaled_assign(&mut self, a: &Self, s: &Scalar) {
        if !s.is_zero() && !a.is_zero() {
            *self += &a.scale(s);
        }
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }
}

impl Coeff for Scalar {
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }

    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn as_scalar(&self) -> Option<Scalar> {
        Some(self.clone())
    }

    fn pow(&self, e: u32) -> Self {
        Scalar::pow(self, e)
    }
}
