use num_traits::Zero;
use serde::Serialize;

use super::Dgla;
use crate::error::{Error, Result};
use crate::exactalg::{kernel_image, Matrix, Scalar, SpanBasis};

/// Degree `-1` maps `delta_{i+1} : L^{i+1} -> L^i` with `delta^2 = 0`,
/// `d delta d = d` and `delta d delta = delta`, together with the induced
/// decomposition `L = B + H + C` in every degree.
#[derive(Clone, Debug, Serialize)]
pub struct HodgeSplitting {
    delta: [Matrix<Scalar>; 3],
    harmonic: [Vec<Vec<Scalar>>; 4],
    harmonic_names: Vec<String>,
    proj_b: [Matrix<Scalar>; 4],
    proj_h: [Matrix<Scalar>; 4],
    proj_c: [Matrix<Scalar>; 4],
}

fn dmat(dg: &Dgla, i: usize) -> Matrix<Scalar> {
    if i < 3 {
        dg.differential_matrix(i).clone()
    } else {
        Matrix::zeros(0, dg.dim(3))
    }
}

impl HodgeSplitting {
    /// Completes `delta` to a splitting. `harmonic` holds the chosen bases
    /// of `H^0..H^3` and `names` the coordinate names on `H^1`.
    pub fn from_deltas(
        dg: &Dgla,
        delta: [Matrix<Scalar>; 3],
        harmonic: [Vec<Vec<Scalar>>; 4],
        names: Vec<String>,
    ) -> Result<Self> {
        for (k, m) in delta.iter().enumerate() {
            if m.rows() != dg.dim(k) || m.cols() != dg.dim(k + 1) {
                return Err(Error::invalid(format!(
                    "delta{} has the wrong shape",
                    k + 1
                )));
            }
        }
        if names.len() != harmonic[1].len() {
            return Err(Error::invalid("one name per H1 basis vector is required"));
        }
        let mut proj_b = Vec::new();
        let mut proj_c = Vec::new();
        let mut proj_h = Vec::new();
        for i in 0..4 {
            let n = dg.dim(i);
            // B = d delta (incoming), C = delta d (outgoing).
            let b = if i == 0 {
                Matrix::zeros(n, n)
            } else {
                dmat(dg, i - 1).mul(&delta[i - 1])?
            };
            let c = if i == 3 {
                Matrix::zeros(n, n)
            } else {
                delta[i].mul(&dmat(dg, i))?
            };
            let h = Matrix::identity(n).sub(&b)?.sub(&c)?;
            proj_b.push(b);
            proj_c.push(c);
            proj_h.push(h);
        }
        let arr =
            |v: Vec<Matrix<Scalar>>| -> [Matrix<Scalar>; 4] { v.try_into().expect("four degrees") };
        let s = HodgeSplitting {
            delta,
            harmonic,
            harmonic_names: names,
            proj_b: arr(proj_b),
            proj_h: arr(proj_h),
            proj_c: arr(proj_c),
        };
        s.verify(dg)?;
        Ok(s)
    }

    /// `delta_i : L^i -> L^{i-1}` for `i = 1, 2, 3`.
    pub fn delta_matrix(&self, i: usize) -> &Matrix<Scalar> {
        &self.delta[i - 1]
    }

    pub fn delta<R: crate::exactalg::Coeff>(&self, i: usize, v: &[R]) -> Vec<R> {
        self.delta[i - 1].apply(v)
    }

    pub fn harmonic_basis(&self, i: usize) -> &[Vec<Scalar>] {
        &self.harmonic[i]
    }

    pub fn harmonic_dims(&self) -> [usize; 4] {
        [0, 1, 2, 3].map(|i| self.harmonic[i].len())
    }

    pub fn harmonic_names(&self) -> &[String] {
        &self.harmonic_names
    }

    pub fn projector_b(&self, i: usize) -> &Matrix<Scalar> {
        &self.proj_b[i]
    }

    pub fn projector_h(&self, i: usize) -> &Matrix<Scalar> {
        &self.proj_h[i]
    }

    pub fn projector_c(&self, i: usize) -> &Matrix<Scalar> {
        &self.proj_c[i]
    }

    pub(crate) fn verify(&self, dg: &Dgla) -> Result<()> {
        let bad = |m: &str| Err(Error::inconsistent(m.to_string()));
        for k in 0..2 {
            if !self.delta[k].mul(&self.delta[k + 1])?.is_zero() {
                return bad("delta squared is not zero");
            }
        }
        for i in 0..3 {
            let d = dmat(dg, i);
            let dd = d.mul(&self.delta[i])?.mul(&d)?;
            if dd != d {
                return bad("d delta d differs from d");
            }
            let dl = &self.delta[i];
            if dl.mul(&d)?.mul(dl)? != *dl {
                return bad("delta d delta differs from delta");
            }
        }
        for i in 0..4 {
            let n = dg.dim(i);
            let (b, h, c) = (&self.proj_b[i], &self.proj_h[i], &self.proj_c[i]);
            for m in [b, h, c] {
                if m.mul(m)? != *m {
                    return bad("a Hodge projector is not idempotent");
                }
            }
            if b.add(h)?.add(c)? != Matrix::identity(n) {
                return bad("B + H + C is not the identity");
            }
            let basis = &self.harmonic[i];
            if basis.len() != h.rank() {
                return bad("harmonic basis has the wrong size");
            }
            if basis.iter().any(|v| v.len() != n || h.apply(v) != *v) {
                return bad("harmonic basis vector is not harmonic");
            }
            let span = SpanBasis::from_vectors(basis);
            if span.dim() != basis.len() {
                return bad("harmonic basis is dependent");
            }
        }
        if let Some(dec) = dg.decomposition() {
            // H1 = H' + H'' with H'' the kernel of d1 on L''.
            let h = &self.proj_h[1];
            if h.mul(&dec.prime)? != dec.prime.mul(h)? {
                return bad("H1 does not split along L' + L''");
            }
            let h_prime = h.mul(&dec.prime)?.rank();
            let h_second = h.mul(&dec.second)?.rank();
            if h_prime == 0 || h_second == 0 {
                return bad("the decomposition of H1 is trivial");
            }
            let d1_second = dg.differential_matrix(1).mul(&dec.second)?;
            let ker: Vec<Vec<Scalar>> = kernel_image(&d1_second)?
                .kernel
                .into_iter()
                .map(|v| dec.second.apply(&v))
                .filter(|v| v.iter().any(|c| !c.is_zero()))
                .collect();
            let ker_dim = crate::exactalg::span_dim(&ker);
            let inside = ker.iter().all(|v| h.apply(v) == *v);
            if ker_dim != h_second || !inside {
                return bad("H'' differs from the kernel of d1 on L''");
            }
        }
        Ok(())
    }
}

fn unit(n: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::from_int(0); n];
    v[k] = Scalar::from_int(1);
    v
}

/// In degree 1 with a decomposition, replaces each vector by its `L'` and
/// `L''` parts so that the chosen complements respect the splitting.
fn candidates(dg: &Dgla, i: usize, vs: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    match (i, dg.decomposition()) {
        (1, Some(dec)) => vs
            .iter()
            .flat_map(|v| [dec.prime.apply(v), dec.second.apply(v)])
            .collect(),
        _ => vs,
    }
}

/// The dgla's own splitting when it carries one, otherwise
/// [`generic_hodge_split`].
pub fn hodge_split(dg: &Dgla) -> Result<HodgeSplitting> {
    match dg.canonical_splitting() {
        Some(s) => Ok(s.clone()),
        None => generic_hodge_split(dg),
    }
}

/// Splitting from coordinate complements: `C` spanned by standard vectors
/// completing `ker d`, `B = d(C)` and `H` completing `B` inside `ker d`.
pub fn generic_hodge_split(dg: &Dgla) -> Result<HodgeSplitting> {
    let mut cycles = Vec::new();
    let mut co = Vec::new();
    for i in 0..4 {
        let n = dg.dim(i);
        let z = kernel_image(&dmat(dg, i))?.kernel;
        let mut span = SpanBasis::from_vectors(&z);
        let c: Vec<Vec<Scalar>> = candidates(dg, i, (0..n).map(|k| unit(n, k)).collect())
            .into_iter()
            .filter(|e| span.insert(e))
            .collect();
        cycles.push(z);
        co.push(c);
    }
    let mut harmonic: Vec<Vec<Vec<Scalar>>> = Vec::new();
    let mut bounds: Vec<Vec<Vec<Scalar>>> = vec![Vec::new()];
    for i in 0..4 {
        if i > 0 {
            let b: Vec<Vec<Scalar>> = co[i - 1].iter().map(|v| dmat(dg, i - 1).apply(v)).collect();
            bounds.push(b);
        }
        let mut span = SpanBasis::from_vectors(&bounds[i]);
        let d = dmat(dg, i);
        let zs: Vec<Vec<Scalar>> = candidates(dg, i, cycles[i].clone())
            .into_iter()
            .filter(|v| d.apply(v).iter().all(|c| c.is_zero()))
            .collect();
        harmonic.push(zs.into_iter().filter(|z| span.insert(z)).collect());
    }
    let mut deltas = Vec::new();
    for i in 1..4 {
        let n = dg.dim(i);
        let frame: Vec<Vec<Scalar>> = bounds[i]
            .iter()
            .chain(&harmonic[i])
            .chain(&co[i])
            .cloned()
            .collect();
        if frame.len() != n {
            return Err(Error::inconsistent(format!("B + H + C does not fill L{i}")));
        }
        if n == 0 {
            deltas.push(Matrix::zeros(dg.dim(i - 1), 0));
            continue;
        }
        let t = Matrix::from_columns(n, &frame);
        let t_inv = t
            .inverse()
            .ok_or_else(|| Error::inconsistent("Hodge frame is singular"))?;
        let mut images = co[i - 1].clone();
        images.resize(n, vec![Scalar::from_int(0); dg.dim(i - 1)]);
        let img = Matrix::from_columns(dg.dim(i - 1), &images);
        deltas.push(img.mul(&t_inv)?);
    }
    let names = (1..=harmonic[1].len()).map(|k| format!("x{k}")).collect();
    let deltas: [Matrix<Scalar>; 3] = deltas.try_into().expect("three maps");
    let harmonic: [Vec<Vec<Scalar>>; 4] = harmonic.try_into().expect("four degrees");
    HodgeSplitting::from_deltas(dg, deltas, harmonic, names)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgla::toy_from_lie;
    use crate::liecore::{build_algebra, LieType};
    use crate::principal::Principal;

    fn toy(kind: LieType, l: usize) -> Dgla {
        let alg = build_algebra(kind, l).unwrap();
        let p = Principal::new(&alg).unwrap();
        toy_from_lie(&alg, &p).unwrap()
    }

    #[test]
    fn canonical_dims() {
        for l in 1..=3 {
            let dg = toy(LieType::A, l);
            let s = hodge_split(&dg).unwrap();
            assert_eq!(s.harmonic_dims(), [l, 2 * l, l, 0]);
        }
    }

    #[test]
    fn generic_matches_cohomology() {
        let dg = toy(LieType::A, 2);
        let g = generic_hodge_split(&dg).unwrap();
        let c = hodge_split(&dg).unwrap();
        assert_eq!(g.harmonic_dims(), c.harmonic_dims());
        // Betti numbers from ranks: dim ker d_i - rank d_{i-1}.
        let r0 = dg.differential_matrix(0).rank();
        let r1 = dg.differential_matrix(1).rank();
        assert_eq!(g.harmonic_dims()[1], dg.dim(1) - r1 - r0);
    }
}
