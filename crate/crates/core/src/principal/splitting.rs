use num_traits::{One, Zero};
use serde::Serialize;

use super::{IsotypicDecomposition, PrincipalTriple};
use crate::error::{Error, Result};
use crate::exactalg::{Coeff, Matrix, Scalar};
use crate::liecore::{Element, LieAlgebra};

/// Splittings of `ad_y` and `ad_x` and the projections of the bigrading,
/// all as matrices on `g`.
///
/// `p` is `P ∘ π`: it vanishes on `z(x)` and inverts `ad_y` on `Im ad_y`.
/// `q` is `Q` extended by zero on `z(y)`.
#[derive(Clone, Debug, Serialize)]
pub struct SplittingData {
    pub p: Matrix<Scalar>,
    pub q: Matrix<Scalar>,
    pub pi: Matrix<Scalar>,
    /// Columns are the weight vectors of all summands, lowest first.
    weight_basis: Matrix<Scalar>,
    weight_basis_inv: Matrix<Scalar>,
    /// `(summand, weight)` for each column of `weight_basis`.
    slots: Vec<(usize, i32)>,
}

pub fn build_splittings(
    alg: &LieAlgebra,
    triple: &PrincipalTriple,
    dec: &IsotypicDecomposition,
) -> Result<SplittingData> {
    let d = alg.dim();
    let mut cols = Vec::with_capacity(d);
    let mut slots = Vec::with_capacity(d);
    for (i, c) in dec.components.iter().enumerate() {
        let m = c.exponent as i32;
        for (k, w) in (-m..=m).zip(c.weights()) {
            cols.push(w.coords().to_vec());
            slots.push((i, k));
        }
    }
    let w = Matrix::from_columns(d, &cols);
    let w_inv = w
        .inverse()
        .ok_or_else(|| Error::inconsistent("weight vectors are not a basis"))?;

    let mut p_w = Matrix::zeros(d, d);
    let mut q_w = Matrix::zeros(d, d);
    let mut pi_w = Matrix::zeros(d, d);
    for (col, &(i, k)) in slots.iter().enumerate() {
        let m = dec.components[i].exponent as i32;
        if k < m {
            p_w.set(col + 1, col, Scalar::one());
            pi_w.set(col, col, Scalar::one());
        }
        if k > -m {
            let below = dec.components[i].weight(k - 1);
            let image = alg.bracket(&triple.x, below);
            let here = dec.components[i].weight(k);
            let c = ratio_of(&image, here).ok_or_else(|| {
                Error::inconsistent("ad_x does not map weight vectors along the string")
            })?;
            q_w.set(col - 1, col, c.inv()?);
        }
    }
    let conj = |a: &Matrix<Scalar>| -> Result<Matrix<Scalar>> { w.mul(a)?.mul(&w_inv) };
    let data = SplittingData {
        p: conj(&p_w)?,
        q: conj(&q_w)?,
        pi: conj(&pi_w)?,
        weight_basis: w,
        weight_basis_inv: w_inv,
        slots,
    };
    data.check(alg, triple)?;
    Ok(data)
}

/// `c` with `a = c·b`, if `a` is a multiple of the nonzero vector `b`.
fn ratio_of(a: &Element<Scalar>, b: &Element<Scalar>) -> Option<Scalar> {
    let i = b.coords().iter().position(|c| !c.is_zero())?;
    let c = a[i].checked_div(&b[i]).ok()?;
    (a == &b.scale(&c)).then_some(c)
}

impl SplittingData {
    fn check(&self, alg: &LieAlgebra, triple: &PrincipalTriple) -> Result<()> {
        let ad_y = alg.ad(&triple.y);
        let ad_x = alg.ad(&triple.x);
        if ad_y.mul(&self.p)?.mul(&ad_y)? != ad_y {
            return Err(Error::inconsistent("P does not split ad_y"));
        }
        if ad_x.mul(&self.q)?.mul(&ad_x)? != ad_x {
            return Err(Error::inconsistent("Q does not split ad_x"));
        }
        if self.pi.mul(&self.pi)? != self.pi || self.pi.mul(&ad_y)? != ad_y {
            return Err(Error::inconsistent("π is not a projection onto Im ad_y"));
        }
        Ok(())
    }

    /// `P(v)`; fails unless `v ∈ Im ad_y`.
    pub fn apply_p<R: Coeff>(&self, v: &Element<R>) -> Result<Element<R>> {
        let c = self.weight_basis_inv.apply(v.coords());
        for (col, &(i, k)) in self.slots.iter().enumerate() {
            let top = self.slots.get(col + 1).is_none_or(|&(j, _)| j != i);
            if top && !c[col].is_zero() {
                return Err(Error::Domain(format!(
                    "vector has a component along the highest weight vector of summand {} (weight {k}); apply π first",
                    i + 1
                )));
            }
        }
        Ok(Element::from_coords(self.p.apply(v.coords())))
    }

    /// `P(π(v))`.
    pub fn apply_p_pi<R: Coeff>(&self, v: &Element<R>) -> Element<R> {
        Element::from_coords(self.p.apply(v.coords()))
    }

    pub fn apply_pi<R: Coeff>(&self, v: &Element<R>) -> Element<R> {
        Element::from_coords(self.pi.apply(v.coords()))
    }

    pub fn apply_q<R: Coeff>(&self, v: &Element<R>) -> Element<R> {
        Element::from_coords(self.q.apply(v.coords()))
    }

    /// Coordinates of `v` in the weight basis, indexed like [`Self::slots`].
    pub fn weight_coordinates<R: Coeff>(&self, v: &Element<R>) -> Vec<R> {
        self.weight_basis_inv.apply(v.coords())
    }

    /// Inverse of [`Self::weight_coordinates`].
    pub fn from_weight_coordinates<R: Coeff>(&self, c: &[R]) -> Element<R> {
        Element::from_coords(self.weight_basis.apply(c))
    }

    /// `(summand, weight)` labels of the weight basis.
    pub fn slots(&self) -> &[(usize, i32)] {
        &self.slots
    }

    /// The projector `p^r_i` onto `g_{r,i}` along all other weight vectors.
    pub fn grading_projector(&self, r: i32, i: usize) -> Matrix<Scalar> {
        let d = self.slots.len();
        let mut out = Matrix::zeros(d, d);
        if let Some(col) = self.slots.iter().position(|&s| s == (i, r)) {
            for a in 0..d {
                let wa = self.weight_basis.get(a, col);
                if wa.is_zero() {
                    continue;
                }
                for b in 0..d {
                    let v = wa * self.weight_basis_inv.get(col, b);
                    out.set(a, b, v);
                }
            }
        }
        out
    }

    /// `Σ_m c^m Π_m`, the action of `c ∈ C*` through the principal grading.
    pub fn grading_action(&self, c: &Scalar) -> Result<Matrix<Scalar>> {
        if c.is_zero() {
            return Err(Error::invalid("grading action needs a nonzero scalar"));
        }
        let d = self.slots.len();
        let mut diag = Matrix::zeros(d, d);
        for (col, &(_, k)) in self.slots.iter().enumerate() {
            diag.set(col, col, c.powi(k as i64)?);
        }
        self.weight_basis.mul(&diag)?.mul(&self.weight_basis_inv)
    }
}
