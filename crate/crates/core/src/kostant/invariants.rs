//! Invariant polynomials of the defining representation.

use std::collections::HashMap;

use crate::error::Result;
use crate::exactalg::{Coeff, Matrix, Scalar};

/// Coefficients `c_0..c_n` of `det(λ - A) = Σ c_k λ^k` by Faddeev–LeVerrier.
pub fn char_poly<R: Coeff>(a: &Matrix<R>) -> Result<Vec<R>> {
    let n = a.rows();
    let mut c = vec![R::zero(); n + 1];
    c[n] = R::one();
    let mut m = Matrix::identity(n);
    for k in 1..=n {
        let am = a.mul(&m)?;
        let ck = am.trace().scale(&Scalar::ratio(-1, k as i64)?);
        c[n - k] = ck.clone();
        m = am;
        for i in 0..n {
            *m.get_mut(i, i) += &ck;
        }
    }
    Ok(c)
}

/// `tr(A^{2k})` for `k = 1..=count`.
pub fn even_power_traces<R: Coeff>(a: &Matrix<R>, count: usize) -> Result<Vec<R>> {
    let sq = a.mul(a)?;
    let mut p = sq.clone();
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        if k > 0 {
            p = p.mul(&sq)?;
        }
        out.push(p.trace());
    }
    Ok(out)
}

/// Pfaffian of a skew-symmetric matrix of even size, by expansion along the
/// first remaining row with memoization over index subsets.
pub fn pfaffian<R: Coeff>(a: &Matrix<R>) -> R {
    let n = a.rows();
    assert!(
        n.is_multiple_of(2) && n < 64,
        "pfaffian needs an even size below 64"
    );
    let mut memo: HashMap<u64, R> = HashMap::new();
    pf_rec(a, (1u64 << n) - 1, &mut memo)
}

fn pf_rec<R: Coeff>(a: &Matrix<R>, mask: u64, memo: &mut HashMap<u64, R>) -> R {
    if mask == 0 {
        return R::one();
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let i = mask.trailing_zeros() as usize;
    let rest = mask & !(1u64 << i);
    let mut acc = R::zero();
    let mut sign = true;
    let mut bits = rest;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let aij = a.get(i, j);
        if !aij.is_zero() {
            let sub = pf_rec(a, rest & !(1u64 << j), memo);
            if !sub.is_zero() {
                let t = aij.mul_ref(&sub);
                if sign {
                    acc += &t;
                } else {
                    acc -= &t;
                }
            }
        }
        sign = !sign;
    }
    memo.insert(mask, acc.clone());
    acc
}

/// `exp(N)` for a nilpotent matrix, exactly.
pub fn exp_nilpotent(n: &Matrix<Scalar>) -> Option<Matrix<Scalar>> {
    let size = n.rows();
    let mut term = Matrix::identity(size);
    let mut sum = Matrix::identity(size);
    for k in 1..=size {
        term = term.mul(n).ok()?.scale(&Scalar::ratio(1, k as i64).ok()?);
        if term.is_zero() {
            return Some(sum);
        }
        sum = sum.add(&term).ok()?;
    }
    term.mul(n).ok()?.is_zero().then_some(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix<Scalar> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn char_poly_diag() {
        let c = char_poly(&m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -2]])).unwrap();
        let ints: Vec<i64> = c.iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(ints, vec![2, -3, 0, 1]);
    }

    #[test]
    fn pfaffian_square_is_det() {
        let a = m(&[
            &[0, 1, 2, 3],
            &[-1, 0, 4, 5],
            &[-2, -4, 0, 6],
            &[-3, -5, -6, 0],
        ]);
        // af - be + cd with (a..f) = (1, 2, 3, 4, 5, 6)
        assert_eq!(pfaffian(&a), Scalar::from_int(6 - 10 + 12));
        let c = char_poly(&a).unwrap();
        assert_eq!(c[0], pfaffian(&a).pow(2));
    }

    #[test]
    fn exp_of_nilpotent() {
        let n = m(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let e = exp_nilpotent(&n).unwrap();
        assert_eq!(e.get(0, 2), &Scalar::ratio(1, 2).unwrap());
        assert!(exp_nilpotent(&m(&[&[1]])).is_none());
    }
}
