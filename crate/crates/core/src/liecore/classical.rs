//! Defining matrix realizations of the classical simple Lie algebras.
//!
//! `sl(n)` uses elementary matrices. `sp(2l)` preserves `[[0, I], [-I, 0]]`,
//! `so(2l)` preserves `[[0, I], [I, 0]]` and `so(2l+1)` preserves the same form
//! with an extra `1` in the last diagonal slot.

use num_traits::Zero;

use super::LieType;
use crate::error::{Error, Result};
use crate::exactalg::{Matrix, Scalar};

pub(super) struct Realization {
    pub size: usize,
    pub labels: Vec<String>,
    pub matrices: Vec<Matrix<Scalar>>,
    /// Basis indices of `(e_i, h_i, f_i)`.
    pub chevalley: Vec<(usize, usize, usize)>,
    /// Invariant bilinear form `J` with `XᵀJ + JX = 0`, if any.
    pub form: Option<Matrix<Scalar>>,
}

struct Builder {
    n: usize,
    labels: Vec<String>,
    matrices: Vec<Matrix<Scalar>>,
}

impl Builder {
    fn new(n: usize) -> Self {
        Builder {
            n,
            labels: Vec::new(),
            matrices: Vec::new(),
        }
    }

    /// Adds `Σ c·E_{ij}` and returns its index.
    fn push(&mut self, label: String, entries: &[(usize, usize, i64)]) -> usize {
        let mut m = Matrix::zeros(self.n, self.n);
        for &(i, j, c) in entries {
            let v = m.get(i, j) + &Scalar::from_int(c);
            m.set(i, j, v);
        }
        self.labels.push(label);
        self.matrices.push(m);
        self.matrices.len() - 1
    }

    fn find(&self, label: &str) -> usize {
        self.labels
            .iter()
            .position(|l| l == label)
            .expect("label present")
    }
}

pub(super) fn realize(kind: LieType, rank: usize) -> Result<Realization> {
    let supported = match kind {
        LieType::A => (1..=8).contains(&rank),
        LieType::B | LieType::C => (2..=6).contains(&rank),
        LieType::D => (3..=6).contains(&rank),
        _ => false,
    };
    if !supported {
        return Err(Error::unsupported(format!("{kind}{rank}")));
    }
    Ok(match kind {
        LieType::A => type_a(rank),
        LieType::B => type_b(rank),
        LieType::C => type_c(rank),
        LieType::D => type_d(rank),
        _ => unreachable!(),
    })
}

fn type_a(l: usize) -> Realization {
    let n = l + 1;
    let mut b = Builder::new(n);
    for h in 1..n {
        for i in 0..n - h {
            b.push(format!("E{}{}", i + 1, i + h + 1), &[(i, i + h, 1)]);
        }
    }
    for i in 0..l {
        b.push(format!("H{}", i + 1), &[(i, i, 1), (i + 1, i + 1, -1)]);
    }
    for h in 1..n {
        for i in 0..n - h {
            b.push(format!("E{}{}", i + h + 1, i + 1), &[(i + h, i, 1)]);
        }
    }
    let chevalley = (0..l)
        .map(|i| {
            (
                b.find(&format!("E{}{}", i + 1, i + 2)),
                b.find(&format!("H{}", i + 1)),
                b.find(&format!("E{}{}", i + 2, i + 1)),
            )
        })
        .collect();
    Realization {
        size: n,
        labels: b.labels,
        matrices: b.matrices,
        chevalley,
        form: None,
    }
}

/// Root vectors `E_ij - E_j'i'` for the `gl(l)` block shared by types B, C, D.
fn gl_block(b: &mut Builder, l: usize, positive: bool) {
    for h in 1..l {
        for i in 0..l - h {
            let (r, c) = if positive { (i, i + h) } else { (i + h, i) };
            b.push(
                format!("X[{},{}]", r + 1, c + 1),
                &[(r, c, 1), (c + l, r + l, -1)],
            );
        }
    }
}

fn gl_cartan(b: &mut Builder, l: usize, last: &[(usize, usize, i64)]) {
    for i in 0..l - 1 {
        b.push(
            format!("H[{}]", i + 1),
            &[
                (i, i, 1),
                (i + 1, i + 1, -1),
                (i + l, i + l, -1),
                (i + 1 + l, i + 1 + l, 1),
            ],
        );
    }
    b.push(format!("H[{l}]"), last);
}

fn form(n: usize, entries: &[(usize, usize, i64)]) -> Matrix<Scalar> {
    let mut j = Matrix::zeros(n, n);
    for &(r, c, v) in entries {
        j.set(r, c, Scalar::from_int(v));
    }
    j
}

fn type_c(l: usize) -> Realization {
    let n = 2 * l;
    let p = |i: usize| i + l;
    let mut b = Builder::new(n);
    gl_block(&mut b, l, true);
    for h in 0..l {
        for i in 0..l - h {
            let j = i + h;
            if i == j {
                b.push(format!("Y[{},{}]", i + 1, j + 1), &[(i, p(i), 1)]);
            } else {
                b.push(
                    format!("Y[{},{}]", i + 1, j + 1),
                    &[(i, p(j), 1), (j, p(i), 1)],
                );
            }
        }
    }
    gl_cartan(&mut b, l, &[(l - 1, l - 1, 1), (p(l - 1), p(l - 1), -1)]);
    gl_block(&mut b, l, false);
    for h in 0..l {
        for i in 0..l - h {
            let j = i + h;
            if i == j {
                b.push(format!("Z[{},{}]", i + 1, j + 1), &[(p(i), i, 1)]);
            } else {
                b.push(
                    format!("Z[{},{}]", i + 1, j + 1),
                    &[(p(j), i, 1), (p(i), j, 1)],
                );
            }
        }
    }
    let mut chevalley: Vec<(usize, usize, usize)> = (0..l - 1)
        .map(|i| {
            (
                b.find(&format!("X[{},{}]", i + 1, i + 2)),
                b.find(&format!("H[{}]", i + 1)),
                b.find(&format!("X[{},{}]", i + 2, i + 1)),
            )
        })
        .collect();
    chevalley.push((
        b.find(&format!("Y[{l},{l}]")),
        b.find(&format!("H[{l}]")),
        b.find(&format!("Z[{l},{l}]")),
    ));
    let mut j = Vec::new();
    for i in 0..l {
        j.push((i, p(i), 1));
        j.push((p(i), i, -1));
    }
    Realization {
        size: n,
        labels: b.labels,
        matrices: b.matrices,
        chevalley,
        form: Some(form(n, &j)),
    }
}

/// Shared by types B and D: the `so(2l)` root vectors `Y`, `Z` for `i < j`.
fn so_even_pairs(b: &mut Builder, l: usize, positive: bool) {
    let p = |i: usize| i + l;
    for h in 1..l {
        for i in 0..l - h {
            let j = i + h;
            if positive {
                b.push(
                    format!("Y[{},{}]", i + 1, j + 1),
                    &[(i, p(j), 1), (j, p(i), -1)],
                );
            } else {
                b.push(
                    format!("Z[{},{}]", i + 1, j + 1),
                    &[(p(j), i, 1), (p(i), j, -1)],
                );
            }
        }
    }
}

fn type_d(l: usize) -> Realization {
    let n = 2 * l;
    let p = |i: usize| i + l;
    let mut b = Builder::new(n);
    gl_block(&mut b, l, true);
    so_even_pairs(&mut b, l, true);
    gl_cartan(
        &mut b,
        l,
        &[
            (l - 2, l - 2, 1),
            (l - 1, l - 1, 1),
            (p(l - 2), p(l - 2), -1),
            (p(l - 1), p(l - 1), -1),
        ],
    );
    gl_block(&mut b, l, false);
    so_even_pairs(&mut b, l, false);
    let mut chevalley: Vec<(usize, usize, usize)> = (0..l - 1)
        .map(|i| {
            (
                b.find(&format!("X[{},{}]", i + 1, i + 2)),
                b.find(&format!("H[{}]", i + 1)),
                b.find(&format!("X[{},{}]", i + 2, i + 1)),
            )
        })
        .collect();
    chevalley.push((
        b.find(&format!("Y[{},{}]", l - 1, l)),
        b.find(&format!("H[{l}]")),
        b.find(&format!("Z[{},{}]", l - 1, l)),
    ));
    let mut j = Vec::new();
    for i in 0..l {
        j.push((i, p(i), 1));
        j.push((p(i), i, 1));
    }
    Realization {
        size: n,
        labels: b.labels,
        matrices: b.matrices,
        chevalley,
        form: Some(form(n, &j)),
    }
}

fn type_b(l: usize) -> Realization {
    let n = 2 * l + 1;
    let z = 2 * l;
    let p = |i: usize| i + l;
    let mut b = Builder::new(n);
    gl_block(&mut b, l, true);
    so_even_pairs(&mut b, l, true);
    for i in 0..l {
        b.push(format!("U[{}]", i + 1), &[(i, z, 1), (z, p(i), -1)]);
    }
    gl_cartan(&mut b, l, &[(l - 1, l - 1, 2), (p(l - 1), p(l - 1), -2)]);
    gl_block(&mut b, l, false);
    so_even_pairs(&mut b, l, false);
    for i in 0..l {
        b.push(format!("V[{}]", i + 1), &[(z, i, 2), (p(i), z, -2)]);
    }
    let mut chevalley: Vec<(usize, usize, usize)> = (0..l - 1)
        .map(|i| {
            (
                b.find(&format!("X[{},{}]", i + 1, i + 2)),
                b.find(&format!("H[{}]", i + 1)),
                b.find(&format!("X[{},{}]", i + 2, i + 1)),
            )
        })
        .collect();
    chevalley.push((
        b.find(&format!("U[{l}]")),
        b.find(&format!("H[{l}]")),
        b.find(&format!("V[{l}]")),
    ));
    let mut j = vec![(z, z, 1)];
    for i in 0..l {
        j.push((i, p(i), 1));
        j.push((p(i), i, 1));
    }
    Realization {
        size: n,
        labels: b.labels,
        matrices: b.matrices,
        chevalley,
        form: Some(form(n, &j)),
    }
}

/// Whether `m` preserves the bilinear form `j`.
pub(super) fn preserves_form(m: &Matrix<Scalar>, j: &Matrix<Scalar>) -> bool {
    let lhs = m.transpose().mul(j).expect("square");
    let rhs = j.mul(m).expect("square");
    lhs.add(&rhs).expect("square").is_zero()
}

pub(super) fn is_traceless(m: &Matrix<Scalar>) -> bool {
    m.trace().is_zero()
}
