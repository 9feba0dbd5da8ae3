//! Finite-dimensional differential graded Lie algebras concentrated in
//! degrees 0 to 3, with Maurer-Cartan residuals, Hodge splittings, the
//! Kuranishi series and the gauge action.

mod formal;
mod hodge;
mod slice;
mod toy;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{Coeff, Matrix, Scalar};

pub use formal::{
    closed_form_terms, gauge_act, gauge_fix, harmonic_generic, kuranishi, kuranishi_gauge_suite,
    kuranishi_terms, mc_residual_formal, series_consistency, FormalElement, KuranishiReport,
    SeriesChoice, SeriesConsistency,
};
pub use hodge::{generic_hodge_split, hodge_split, HodgeSplitting};
pub use slice::{
    check_section3, darboux_check, gamma_a, in_slice, phi_a, slice_criterion, Section3Report,
};
pub use toy::{toy_from_lie, toy_pairing};

/// Highest degree carried by a [`Dgla`].
pub const TOP_DEGREE: usize = 3;

/// Sparse bilinear map `L^i x L^j -> L^{i+j}`: entry `a * cols + b` lists
/// the nonzero coordinates of `[e_a, e_b]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BracketTensor {
    pub left: usize,
    pub right: usize,
    pub entries: Vec<Vec<(usize, Scalar)>>,
}

impl BracketTensor {
    pub fn zero(left: usize, right: usize) -> Self {
        BracketTensor {
            left,
            right,
            entries: vec![Vec::new(); left * right],
        }
    }

    pub fn get(&self, a: usize, b: usize) -> &[(usize, Scalar)] {
        &self.entries[a * self.right + b]
    }

    pub fn set(&mut self, a: usize, b: usize, v: &[Scalar]) {
        self.entries[a * self.right + b] = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.clone()))
            .collect();
    }
}

/// Splitting `L^1 = L' + L''` given by complementary projectors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub prime: Matrix<Scalar>,
    pub second: Matrix<Scalar>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Dgla {
    label: String,
    dims: [usize; 4],
    d: [Matrix<Scalar>; 3],
    brackets: Vec<BracketTensor>,
    decomposition: Option<Decomposition>,
    #[serde(skip)]
    canonical: Option<Box<HodgeSplitting>>,
}

fn slot(i: usize, j: usize) -> usize {
    i * 4 + j
}

impl Dgla {
    /// Builds and verifies a dgla. `brackets` maps `(i, j)` with
    /// `i + j <= 3` to its tensor; missing pairs are zero.
    pub fn new(
        label: &str,
        dims: [usize; 4],
        d: [Matrix<Scalar>; 3],
        brackets: Vec<((usize, usize), BracketTensor)>,
        decomposition: Option<Decomposition>,
    ) -> Result<Dgla> {
        for (i, m) in d.iter().enumerate() {
            if m.rows() != dims[i + 1] || m.cols() != dims[i] {
                return Err(Error::invalid(format!("d{i} has the wrong shape")));
            }
        }
        let mut table: Vec<BracketTensor> = (0..16)
            .map(|s| BracketTensor::zero(dims[s / 4], dims[s % 4]))
            .collect();
        for ((i, j), t) in brackets {
            if i + j > TOP_DEGREE {
                return Err(Error::invalid(format!(
                    "bracket of degrees ({i},{j}) exceeds the top degree"
                )));
            }
            if t.left != dims[i] || t.right != dims[j] || t.entries.len() != dims[i] * dims[j] {
                return Err(Error::invalid(format!(
                    "bracket tensor ({i},{j}) has the wrong shape"
                )));
            }
            if t.entries.iter().flatten().any(|(k, _)| *k >= dims[i + j]) {
                return Err(Error::invalid(format!(
                    "bracket tensor ({i},{j}) leaves L{}",
                    i + j
                )));
            }
            table[slot(i, j)] = t;
        }
        if let Some(dec) = &decomposition {
            let n = dims[1];
            for m in [&dec.prime, &dec.second] {
                if m.rows() != n || m.cols() != n {
                    return Err(Error::invalid(
                        "decomposition projectors have the wrong shape",
                    ));
                }
            }
        }
        let dg = Dgla {
            label: label.into(),
            dims,
            d,
            brackets: table,
            decomposition,
            canonical: None,
        };
        dg.verify()?;
        Ok(dg)
    }

    pub(crate) fn with_canonical(mut self, split: HodgeSplitting) -> Result<Dgla> {
        split.verify(&self)?;
        self.canonical = Some(Box::new(split));
        Ok(self)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dims(&self) -> [usize; 4] {
        self.dims
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims.get(i).copied().unwrap_or(0)
    }

    /// `d_i : L^i -> L^{i+1}`.
    pub fn differential_matrix(&self, i: usize) -> &Matrix<Scalar> {
        &self.d[i]
    }

    pub fn decomposition(&self) -> Option<&Decomposition> {
        self.decomposition.as_ref()
    }

    pub fn canonical_splitting(&self) -> Option<&HodgeSplitting> {
        self.canonical.as_deref()
    }

    pub fn bracket_tensor(&self, i: usize, j: usize) -> &BracketTensor {
        &self.brackets[slot(i, j)]
    }

    pub fn zero<R: Coeff>(&self, i: usize) -> Vec<R> {
        vec![R::zero(); self.dim(i)]
    }

    pub fn basis(&self, i: usize, k: usize) -> Vec<Scalar> {
        let mut v = self.zero(i);
        v[k] = Scalar::from_int(1);
        v
    }

    pub fn differential<R: Coeff>(&self, i: usize, a: &[R]) -> Vec<R> {
        if i >= TOP_DEGREE {
            return Vec::new();
        }
        self.d[i].apply(a)
    }

    /// `[a, b]` for `a` in `L^i` and `b` in `L^j`.
    pub fn bracket<R: Coeff>(&self, i: usize, a: &[R], j: usize, b: &[R]) -> Vec<R> {
        if i + j > TOP_DEGREE {
            return Vec::new();
        }
        let t = &self.brackets[slot(i, j)];
        let mut out = self.zero::<R>(i + j);
        if out.is_empty() {
            return out;
        }
        for (p, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (q, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let entries = t.get(p, q);
                if entries.is_empty() {
                    continue;
                }
                let xy = x.mul_ref(y);
                for (k, c) in entries {
                    out[*k].add_scaled_assign(&xy, c);
                }
            }
        }
        out
    }

    /// `d u + [u, u] / 2` for `u` in `L^1`.
    pub fn mc_residual<R: Coeff>(&self, u: &[R]) -> Vec<R> {
        let mut r = self.differential(1, u);
        let half = Scalar::ratio(1, 2).expect("nonzero denominator");
        for (x, y) in r.iter_mut().zip(self.bracket(1, u, 1, u)) {
            x.add_scaled_assign(&y, &half);
        }
        r
    }

    pub fn prime<R: Coeff>(&self, u: &[R]) -> Result<Vec<R>> {
        Ok(self.require_decomposition()?.prime.apply(u))
    }

    pub fn second<R: Coeff>(&self, u: &[R]) -> Result<Vec<R>> {
        Ok(self.require_decomposition()?.second.apply(u))
    }

    pub(crate) fn require_decomposition(&self) -> Result<&Decomposition> {
        self.decomposition
            .as_ref()
            .ok_or_else(|| Error::invalid("the dgla carries no decomposition of L1"))
    }

    fn verify(&self) -> Result<()> {
        let dims = self.dims;
        for i in 0..2 {
            let dd = self.d[i + 1].mul(&self.d[i])?;
            if !dd.is_zero() {
                return Err(Error::inconsistent(format!(
                    "d{} d{} is not zero",
                    i + 1,
                    i
                )));
            }
        }
        for i in 0..=TOP_DEGREE {
            for j in 0..=TOP_DEGREE - i {
                if dims[i + j] == 0 {
                    continue;
                }
                let sign = if (i * j) % 2 == 0 { -1 } else { 1 };
                for a in 0..dims[i] {
                    for b in 0..dims[j] {
                        let ab = self.bracket(i, &self.basis(i, a), j, &self.basis(j, b));
                        let ba = self.bracket(j, &self.basis(j, b), i, &self.basis(i, a));
                        let ok = ab
                            .iter()
                            .zip(&ba)
                            .all(|(x, y)| *x == y.scale(&Scalar::from_int(sign)));
                        if !ok {
                            return Err(Error::inconsistent(format!(
                                "graded antisymmetry fails for degrees ({i},{j})"
                            )));
                        }
                    }
                }
            }
        }
        for i in 0..=TOP_DEGREE {
            for j in 0..=TOP_DEGREE - i {
                if i + j + 1 > TOP_DEGREE || dims[i + j + 1] == 0 {
                    continue;
                }
                let sign = Scalar::from_int(if i % 2 == 0 { 1 } else { -1 });
                for a in 0..dims[i] {
                    let ea = self.basis(i, a);
                    let da = self.differential(i, &ea);
                    for b in 0..dims[j] {
                        let eb = self.basis(j, b);
                        let lhs = self.differential(i + j, &self.bracket(i, &ea, j, &eb));
                        let mut rhs = self.bracket(i + 1, &da, j, &eb);
                        let t = self.bracket(i, &ea, j + 1, &self.differential(j, &eb));
                        for (x, y) in rhs.iter_mut().zip(&t) {
                            x.add_scaled_assign(y, &sign);
                        }
                        if lhs != rhs {
                            return Err(Error::inconsistent(format!(
                                "Leibniz rule fails for degrees ({i},{j})"
                            )));
                        }
                    }
                }
            }
        }
        self.verify_jacobi()?;
        if let Some(dec) = &self.decomposition {
            self.verify_decomposition(dec)?;
        }
        Ok(())
    }

    /// `[a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]]` on basis triples
    /// with nondecreasing degrees.
    fn verify_jacobi(&self) -> Result<()> {
        let dims = self.dims;
        for i in 0..=TOP_DEGREE {
            for j in i..=TOP_DEGREE {
                for k in j..=TOP_DEGREE {
                    if i + j + k > TOP_DEGREE || dims[i + j + k] == 0 {
                        continue;
                    }
                    let sign = Scalar::from_int(if (i * j) % 2 == 0 { 1 } else { -1 });
                    for a in 0..dims[i] {
                        let ea = self.basis(i, a);
                        for b in 0..dims[j] {
                            let eb = self.basis(j, b);
                            let ab = self.bracket(i, &ea, j, &eb);
                            for c in 0..dims[k] {
                                let ec = self.basis(k, c);
                                let lhs =
                                    self.bracket(i, &ea, j + k, &self.bracket(j, &eb, k, &ec));
                                let mut rhs = self.bracket(i + j, &ab, k, &ec);
                                let t = self.bracket(j, &eb, i + k, &self.bracket(i, &ea, k, &ec));
                                for (x, y) in rhs.iter_mut().zip(&t) {
                                    x.add_scaled_assign(y, &sign);
                                }
                                if lhs != rhs {
                                    return Err(Error::inconsistent(format!(
                                        "graded Jacobi fails for degrees ({i},{j},{k})"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn verify_decomposition(&self, dec: &Decomposition) -> Result<()> {
        let n = self.dims[1];
        let (p, s) = (&dec.prime, &dec.second);
        if p.mul(p)? != *p || s.mul(s)? != *s || p.add(s)? != Matrix::identity(n) {
            return Err(Error::invalid(
                "L' and L'' projectors are not complementary",
            ));
        }
        let prime_basis: Vec<Vec<Scalar>> = crate::exactalg::kernel_image(p)?.image;
        let second_basis: Vec<Vec<Scalar>> = crate::exactalg::kernel_image(s)?.image;
        for (name, basis) in [("L'", &prime_basis), ("L''", &second_basis)] {
            for a in basis {
                for b in basis {
                    if self.bracket(1, a, 1, b).iter().any(|c| !c.is_zero()) {
                        return Err(Error::inconsistent(format!(
                            "{name} is not isotropic for the bracket"
                        )));
                    }
                }
            }
        }
        for g in 0..self.dims[0] {
            let eg = self.basis(0, g);
            for (proj, basis, name) in [(s, &prime_basis, "L'"), (p, &second_basis, "L''")] {
                for a in basis {
                    let img = proj.apply(&self.bracket(0, &eg, 1, a));
                    if img.iter().any(|c| !c.is_zero()) {
                        return Err(Error::inconsistent(format!(
                            "{name} is not preserved by ad L0"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Abelian dgla `C -> C` with `d = 1`, a single nonzero differential.
    fn interval() -> Dgla {
        let d0 = Matrix::from_rows(vec![vec![Scalar::from_int(1)]]).unwrap();
        Dgla::new(
            "interval",
            [1, 1, 0, 0],
            [d0, Matrix::zeros(0, 1), Matrix::zeros(0, 0)],
            vec![],
            None,
        )
        .unwrap()
    }

    #[test]
    fn rejects_nonzero_square() {
        let one = Matrix::from_rows(vec![vec![Scalar::from_int(1)]]).unwrap();
        let err = Dgla::new(
            "bad",
            [1, 1, 1, 0],
            [one.clone(), one, Matrix::zeros(0, 1)],
            vec![],
            None,
        );
        assert!(err.is_err());
    }

    #[test]
    fn rejects_symmetric_even_bracket() {
        let mut t = BracketTensor::zero(1, 1);
        t.set(0, 0, &[Scalar::from_int(1)]);
        let err = Dgla::new(
            "bad",
            [1, 0, 0, 0],
            [
                Matrix::zeros(0, 1),
                Matrix::zeros(0, 0),
                Matrix::zeros(0, 0),
            ],
            vec![((0, 0), t)],
            None,
        );
        assert!(err.is_err());
    }

    #[test]
    fn interval_residual_is_linear() {
        let dg = interval();
        assert!(dg.mc_residual(&[Scalar::from_int(3)]).is_empty());
        assert_eq!(
            dg.differential(0, &[Scalar::from_int(2)]),
            vec![Scalar::from_int(2)]
        );
    }
}
