use std::collections::BTreeMap;
use std::ops::{Add, Index, Neg, Sub};

use serde::Serialize;

use crate::error::Result;
use crate::exactalg::{Coeff, PolyScalar, Scalar};

/// Coordinates over the basis of a Lie algebra.
#[derive(Clone, PartialEq, Debug, Serialize)]
#[serde(transparent)]
pub struct Element<R> {
    coords: Vec<R>,
}

impl<R: Coeff> Element<R> {
    pub fn zero(dim: usize) -> Self {
        Element {
            coords: vec![R::zero(); dim],
        }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coords[i] = R::one();
        e
    }

    pub fn from_coords(coords: Vec<R>) -> Self {
        Element { coords }
    }

    pub fn coords(&self) -> &[R] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<R> {
        self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Element {
            coords: self.coords.iter().map(|c| c.scale(s)).collect(),
        }
    }

    pub fn scale_by(&self, r: &R) -> Self {
        Element {
            coords: self
                .coords
                .iter()
                .map(|c| if c.is_zero() { R::zero() } else { c.mul_ref(r) })
                .collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &Element<R>, r: &R) {
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            if !b.is_zero() {
                a.add_mul_assign(b, r);
            }
        }
    }

    pub fn map<S: Coeff>(&self, f: impl Fn(&R) -> S) -> Element<S> {
        Element {
            coords: self.coords.iter().map(f).collect(),
        }
    }
}

impl Element<Scalar> {
    pub fn lift<R: Coeff>(&self) -> Element<R> {
        self.map(R::from_scalar)
    }

    pub fn conj(&self) -> Self {
        self.map(|c| c.conj())
    }
}

impl<R> Index<usize> for Element<R> {
    type Output = R;
    fn index(&self, i: usize) -> &R {
        &self.coords[i]
    }
}

impl<R: Coeff> Add for &Element<R> {
    type Output = Element<R>;
    fn add(self, rhs: &Element<R>) -> Element<R> {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        Element {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        }
    }
}

impl<R: Coeff> Sub for &Element<R> {
    type Output = Element<R>;
    fn sub(self, rhs: &Element<R>) -> Element<R> {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        Element {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a.sub_ref(b))
                .collect(),
        }
    }
}

impl<R: Coeff> Add for Element<R> {
    type Output = Element<R>;
    fn add(self, rhs: Element<R>) -> Element<R> {
        &self + &rhs
    }
}

impl<R: Coeff> Sub for Element<R> {
    type Output = Element<R>;
    fn sub(self, rhs: Element<R>) -> Element<R> {
        &self - &rhs
    }
}

impl<R: Coeff> Neg for &Element<R> {
    type Output = Element<R>;
    fn neg(self) -> Element<R> {
        Element {
            coords: self.coords.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<R: Coeff> Neg for Element<R> {
    type Output = Element<R>;
    fn neg(self) -> Element<R> {
        -&self
    }
}

impl Element<PolyScalar> {
    /// Substitutes values for the variables in every coordinate.
    pub fn evaluate(&self, values: &BTreeMap<String, Scalar>) -> Result<Element<Scalar>> {
        Ok(Element {
            coords: self
                .coords
                .iter()
                .map(|c| c.evaluate(values))
                .collect::<Result<_>>()?,
        })
    }
}
