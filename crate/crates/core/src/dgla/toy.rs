//! The dgla `g -> g + g -> g` attached to a principal triple.

use num_traits::Zero;

use super::hodge::HodgeSplitting;
use super::{BracketTensor, Decomposition, Dgla};
use crate::error::Result;
use crate::exactalg::{Matrix, Scalar};
use crate::liecore::LieAlgebra;
use crate::principal::Principal;

fn block(rows: usize, cols: usize, parts: &[(usize, usize, &Matrix<Scalar>)]) -> Matrix<Scalar> {
    let mut m = Matrix::zeros(rows, cols);
    for (r0, c0, p) in parts {
        for i in 0..p.rows() {
            for j in 0..p.cols() {
                let v = p.get(i, j);
                if !v.is_zero() {
                    m.set(r0 + i, c0 + j, v.clone());
                }
            }
        }
    }
    m
}

/// `L0 = g`, `L1 = g + g`, `L2 = g` with `d0 = (ad_y, 0)`, `d1 = (0, ad_y)`
/// and `[(a, b), (a', b')] = [a, b'] + [a', b]`. Carries the decomposition
/// into the two copies of `g` and the grading-based Hodge splitting.
pub fn toy_from_lie(alg: &LieAlgebra, p: &Principal) -> Result<Dgla> {
    let n = alg.dim();
    let ady = alg.ad(&p.triple.y);
    let d0 = block(2 * n, n, &[(0, 0, &ady)]);
    let d1 = block(n, 2 * n, &[(0, n, &ady)]);
    let d2 = Matrix::zeros(0, n);

    let lie = |a: usize, b: usize| -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); n];
        for (k, c) in alg.structure_constants(a, b) {
            v[*k] = c.clone();
        }
        v
    };
    let shift = |v: Vec<Scalar>, off: usize| -> Vec<Scalar> {
        let mut w = vec![Scalar::zero(); 2 * n];
        w[off..off + n].clone_from_slice(&v);
        w
    };

    let mut b00 = BracketTensor::zero(n, n);
    let mut b02 = BracketTensor::zero(n, n);
    let mut b20 = BracketTensor::zero(n, n);
    let mut b01 = BracketTensor::zero(n, 2 * n);
    let mut b10 = BracketTensor::zero(2 * n, n);
    let mut b11 = BracketTensor::zero(2 * n, 2 * n);
    for a in 0..n {
        for b in 0..n {
            let ab = lie(a, b);
            let neg: Vec<Scalar> = ab.iter().map(|c| -c.clone()).collect();
            b00.set(a, b, &ab);
            b02.set(a, b, &ab);
            b20.set(b, a, &neg);
            for off in [0, n] {
                b01.set(a, off + b, &shift(ab.clone(), off));
                b10.set(off + b, a, &shift(neg.clone(), off));
            }
            b11.set(a, n + b, &ab);
            b11.set(n + b, a, &ab);
        }
    }

    let prime = block(2 * n, 2 * n, &[(0, 0, &Matrix::identity(n))]);
    let second = block(2 * n, 2 * n, &[(n, n, &Matrix::identity(n))]);
    let dg = Dgla::new(
        &alg.label(),
        [n, 2 * n, n, 0],
        [d0, d1, d2],
        vec![
            ((0, 0), b00),
            ((0, 1), b01),
            ((1, 0), b10),
            ((0, 2), b02),
            ((2, 0), b20),
            ((1, 1), b11),
        ],
        Some(Decomposition { prime, second }),
    )?;

    let ppi = &p.splitting.p;
    let delta1 = block(n, 2 * n, &[(0, 0, ppi)]);
    let delta2 = block(2 * n, n, &[(n, 0, ppi)]);
    let delta3 = Matrix::zeros(n, 0);
    let dec = &p.decomposition;
    let zx: Vec<Vec<Scalar>> = dec.zx_basis.iter().map(|e| e.coords().to_vec()).collect();
    let zy: Vec<Vec<Scalar>> = dec.zy_basis.iter().map(|e| e.coords().to_vec()).collect();
    let h1: Vec<Vec<Scalar>> = zx
        .iter()
        .map(|v| shift(v.clone(), 0))
        .chain(zy.iter().map(|v| shift(v.clone(), n)))
        .collect();
    let l = alg.rank();
    let names = (1..=l)
        .map(|i| format!("t{i}"))
        .chain((1..=l).map(|j| format!("s{j}")))
        .collect();
    let split = HodgeSplitting::from_deltas(
        &dg,
        [delta1, delta2, delta3],
        [zy, h1, zx, Vec::new()],
        names,
    )?;
    dg.with_canonical(split)
}

/// Symmetric form on `L1` pairing the two copies of `g` by the Killing form.
pub fn toy_pairing(alg: &LieAlgebra) -> Matrix<Scalar> {
    let n = alg.dim();
    let k = alg.killing_matrix();
    block(2 * n, 2 * n, &[(0, n, k), (n, 0, k)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::{build_algebra, LieType};

    #[test]
    fn sl2_dims_and_residual() {
        let alg = build_algebra(LieType::A, 1).unwrap();
        let p = Principal::new(&alg).unwrap();
        let dg = toy_from_lie(&alg, &p).unwrap();
        assert_eq!(dg.dims(), [3, 6, 3, 0]);
        let x = p.triple.x.coords().to_vec();
        let y = p.triple.y.coords().to_vec();
        let h = p.triple.h.coords().to_vec();
        // (h, v) = (x, y): residual is [y + x, y] = [x, y] = h.
        let mut u = x.clone();
        u.extend(y.iter().cloned());
        assert_eq!(dg.mc_residual(&u), h);
        // (h, v) = (x, y + x) commutes with y + x.
        let mut w = x.clone();
        w.extend(y.iter().zip(&x).map(|(a, b)| a + b));
        assert!(dg.mc_residual(&w).iter().all(|c| c.is_zero()));
    }
}
