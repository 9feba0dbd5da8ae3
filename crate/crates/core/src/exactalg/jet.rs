//! First-order jets `f + Σ df_k ε_k` with `ε_j ε_k = 0`.

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::ring::Coeff;
use super::scalar::Scalar;

/// Direction label of a jet.
pub type Direction = usize;

#[derive(Clone, Debug, PartialEq)]
pub struct Jet<R> {
    value: R,
    diff: BTreeMap<Direction, R>,
}

impl<R: Coeff> Jet<R> {
    pub fn constant(value: R) -> Self {
        Jet {
            value,
            diff: BTreeMap::new(),
        }
    }

    /// `value + ε_dir · tangent`.
    pub fn with_tangent(value: R, dir: Direction, tangent: R) -> Self {
        let mut diff = BTreeMap::new();
        if !tangent.is_zero() {
            diff.insert(dir, tangent);
        }
        Jet { value, diff }
    }

    pub fn value(&self) -> &R {
        &self.value
    }

    /// Derivative along `dir` (zero when absent).
    pub fn derivative(&self, dir: Direction) -> R {
        self.diff.get(&dir).cloned().unwrap_or_else(R::zero)
    }

    pub fn directions(&self) -> impl Iterator<Item = Direction> + '_ {
        self.diff.keys().copied()
    }

    fn combine(&mut self, rhs: &Jet<R>, negate: bool) {
        if negate {
            self.value -= &rhs.value;
        } else {
            self.value += &rhs.value;
        }
        for (k, d) in &rhs.diff {
            let e = self.diff.entry(*k).or_insert_with(R::zero);
            if negate {
                *e -= d;
            } else {
                *e += d;
            }
        }
        self.diff.retain(|_, d| !d.is_zero());
    }
}

impl<R: Coeff> Zero for Jet<R> {
    fn zero() -> Self {
        Jet::constant(R::zero())
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero() && self.diff.is_empty()
    }
}

impl<R: Coeff> One for Jet<R> {
    fn one() -> Self {
        Jet::constant(R::one())
    }
}

impl<R: Coeff> Add for Jet<R> {
    type Output = Jet<R>;
    fn add(mut self, rhs: Jet<R>) -> Jet<R> {
        self.combine(&rhs, false);
        self
    }
}

impl<R: Coeff> Sub for Jet<R> {
    type Output = Jet<R>;
    fn sub(mut self, rhs: Jet<R>) -> Jet<R> {
        self.combine(&rhs, true);
        self
    }
}

impl<R: Coeff> Mul for Jet<R> {
    type Output = Jet<R>;
    fn mul(self, rhs: Jet<R>) -> Jet<R> {
        self.mul_ref(&rhs)
    }
}

impl<R: Coeff> Neg for Jet<R> {
    type Output = Jet<R>;
    fn neg(self) -> Jet<R> {
        Jet {
            value: -self.value,
            diff: self.diff.into_iter().map(|(k, d)| (k, -d)).collect(),
        }
    }
}

impl<R: Coeff> AddAssign<&Jet<R>> for Jet<R> {
    fn add_assign(&mut self, rhs: &Jet<R>) {
        self.combine(rhs, false);
    }
}

impl<R: Coeff> SubAssign<&Jet<R>> for Jet<R> {
    fn sub_assign(&mut self, rhs: &Jet<R>) {
        self.combine(rhs, true);
    }
}

impl<R: Coeff> Coeff for Jet<R> {
    fn from_scalar(s: &Scalar) -> Self {
        Jet::constant(R::from_scalar(s))
    }

    fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Jet::zero();
        }
        Jet {
            value: self.value.scale(s),
            diff: self.diff.iter().map(|(k, d)| (*k, d.scale(s))).collect(),
        }
    }

    /// Leibniz rule: `d(fg) = f·dg + g·df`.
    fn mul_ref(&self, rhs: &Self) -> Self {
        let value = self.value.mul_ref(&rhs.value);
        let mut diff: BTreeMap<Direction, R> = BTreeMap::new();
        for (k, d) in &rhs.diff {
            diff.insert(*k, self.value.mul_ref(d));
        }
        for (k, d) in &self.diff {
            let e = diff.entry(*k).or_insert_with(R::zero);
            e.add_mul_assign(&rhs.value, d);
        }
        diff.retain(|_, d| !d.is_zero());
        Jet { value, diff }
    }

    fn as_scalar(&self) -> Option<Scalar> {
        if self.diff.is_empty() {
            self.value.as_scalar()
        } else {
            None
        }
    }
}
