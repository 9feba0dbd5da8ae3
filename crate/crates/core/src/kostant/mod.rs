//! The Kostant slice `y + z(x)`, the adjoint quotient restricted to it and
//! the `C*`-action through the principal grading.

pub mod invariants;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{variables, Coeff, Matrix, PolyScalar, Scalar, SpanBasis};
use crate::liecore::{Element, LieAlgebra, LieType};
use crate::principal::Principal;
use crate::sampling::sample_vector;

/// Affine coordinates `a_i` on `y + z(x)` along the highest weight vectors.
#[derive(Clone, Debug, Serialize)]
pub struct SliceChart {
    pub y: Element<Scalar>,
    pub hw_basis: Vec<Element<Scalar>>,
    pub exponents: Vec<u32>,
    pub names: Vec<String>,
}

impl SliceChart {
    pub fn new(p: &Principal) -> Self {
        let exponents = p.exponents();
        SliceChart {
            y: p.triple.y.clone(),
            hw_basis: p.decomposition.zx_basis.clone(),
            names: (1..=exponents.len()).map(|i| format!("a{i}")).collect(),
            exponents,
        }
    }

    pub fn rank(&self) -> usize {
        self.hw_basis.len()
    }

    /// Weight `m_i + 1` of the coordinate `a_i`.
    pub fn weights(&self) -> Vec<u32> {
        self.exponents.iter().map(|m| m + 1).collect()
    }

    pub fn weight_map(&self) -> BTreeMap<String, u32> {
        self.names.iter().cloned().zip(self.weights()).collect()
    }

    pub fn variables(&self) -> Arc<Vec<String>> {
        variables(&self.names.iter().map(String::as_str).collect::<Vec<_>>())
    }

    /// The coordinates as polynomial variables.
    pub fn symbolic(&self) -> Vec<PolyScalar> {
        let vars = self.variables();
        (0..self.rank())
            .map(|i| PolyScalar::var_in(&vars, i))
            .collect()
    }

    /// `Σ a_i v_i ∈ z(x)`.
    pub fn centraliser_point<R: Coeff>(&self, a: &[R]) -> Result<Element<R>> {
        if a.len() != self.rank() {
            return Err(Error::invalid(format!(
                "expected {} slice coordinates, got {}",
                self.rank(),
                a.len()
            )));
        }
        let mut u = Element::zero(self.y.dim());
        for (c, v) in a.iter().zip(&self.hw_basis) {
            u.add_scaled(&v.lift(), c);
        }
        Ok(u)
    }

    /// `y + Σ a_i v_i`.
    pub fn slice_point<R: Coeff>(&self, a: &[R]) -> Result<Element<R>> {
        Ok(&self.y.lift() + &self.centraliser_point(a)?)
    }

    pub fn assignment(&self, a: &[Scalar]) -> BTreeMap<String, Scalar> {
        self.names.iter().cloned().zip(a.iter().cloned()).collect()
    }
}

/// Degrees of the invariant polynomials returned by [`adjoint_quotient`].
pub fn invariant_degrees(alg: &LieAlgebra) -> Result<Vec<u32>> {
    let l = alg.rank() as u32;
    let mut d: Vec<u32> = match alg.kind() {
        LieType::A => (2..=l + 1).collect(),
        LieType::B | LieType::C => (1..=l).map(|k| 2 * k).collect(),
        LieType::D => (1..l).map(|k| 2 * k).chain([l]).collect(),
        k => return Err(Error::unsupported(format!("adjoint quotient for type {k}"))),
    };
    d.sort();
    Ok(d)
}

/// Basic invariants of `u`, ordered by degree.
///
/// Type A: the non-leading coefficients of `det(λ - u)`, each multiplied by
/// `(-1)^{n+1}`, so that `sl(2)` gives `-det`. Types B and C: `tr(u^{2k})`
/// for `k = 1..l`. Type D: `tr(u^{2k})` for `k < l` and the Pfaffian of
/// `J u`. All computed in the defining representation.
pub fn adjoint_quotient<R: Coeff>(alg: &LieAlgebra, u: &Element<R>) -> Result<Vec<R>> {
    let m = alg.to_matrix(u);
    let l = alg.rank();
    match alg.kind() {
        LieType::A => {
            let n = m.rows();
            let c = invariants::char_poly(&m)?;
            let sign = if n.is_multiple_of(2) {
                -Scalar::from_int(1)
            } else {
                Scalar::from_int(1)
            };
            Ok((2..=n).map(|k| c[n - k].scale(&sign)).collect())
        }
        LieType::B | LieType::C => invariants::even_power_traces(&m, l),
        LieType::D => {
            let mut out = invariants::even_power_traces(&m, l - 1)?;
            let ju = so_form(l).lift::<R>().mul(&m)?;
            let pf = invariants::pfaffian(&ju);
            let slot = (1..l).filter(|k| 2 * k <= l).count();
            out.insert(slot, pf);
            Ok(out)
        }
        k => Err(Error::unsupported(format!("adjoint quotient for type {k}"))),
    }
}

fn so_form(l: usize) -> Matrix<Scalar> {
    let mut j = Matrix::zeros(2 * l, 2 * l);
    for i in 0..l {
        j.set(i, i + l, Scalar::from_int(1));
        j.set(i + l, i, Scalar::from_int(1));
    }
    j
}

/// Outcome of the symbolic check of the composite `a ↦ χ(y + Σ a_i v_i)`.
#[derive(Clone, Debug, Serialize)]
pub struct SliceChartReport {
    pub algebra: String,
    pub weights: Vec<u32>,
    pub quotient: Vec<String>,
    pub weighted_homogeneous: bool,
    /// Type A only: `χ_j = d_j a_j + f_j(a_1..a_{j-1})`.
    pub triangular: Option<bool>,
    pub diagonal: Option<Vec<Scalar>>,
    /// Point and Jacobian rank used for the generic invertibility check.
    pub jacobian_point: Vec<Scalar>,
    pub jacobian_rank: usize,
    pub passed: bool,
}

/// Verifies that the adjoint quotient restricted to the slice is a
/// weighted-homogeneous polynomial automorphism. In type A the map is
/// checked to be weighted-triangular with nonzero diagonal; in other types
/// only its Jacobian is checked to be invertible at a rational point.
pub fn verify_slice_chart(
    alg: &LieAlgebra,
    chart: &SliceChart,
    degree_bound: u32,
    seed: u64,
) -> Result<SliceChartReport> {
    let a = chart.symbolic();
    let q = adjoint_quotient(alg, &chart.slice_point(&a)?)?;
    let weights = chart.weight_map();
    let homogeneous = q.iter().zip(chart.weights()).all(|(p, w)| {
        p.is_weighted_homogeneous(&weights, w) && p.total_degree().unwrap_or(0) <= degree_bound
    });

    let (mut triangular, mut diagonal) = (None, None);
    if alg.kind() == LieType::A {
        let mut ok = true;
        let mut diag = Vec::new();
        for (j, p) in q.iter().enumerate() {
            let name = chart.names[j].as_str();
            let d = p.coefficient(&[(name, 1)]);
            let rest = p.clone() - PolyScalar::var(name).scale(&d);
            ok &= !d.is_zero() && rest.degree_in(name) == 0;
            ok &= chart.names[j + 1..]
                .iter()
                .all(|later| p.degree_in(later) == 0);
            diag.push(d);
        }
        triangular = Some(ok);
        diagonal = Some(diag);
    }

    let l = chart.rank();
    let mut best = (Vec::new(), 0);
    for attempt in 0..8 {
        let point = sample_vector(seed, attempt, l);
        let vals = chart.assignment(&point);
        let mut jac = Matrix::zeros(l, l);
        for (i, p) in q.iter().enumerate() {
            for (j, name) in chart.names.iter().enumerate() {
                jac.set(i, j, p.derivative(name).evaluate(&vals)?);
            }
        }
        let r = jac.rank();
        if r > best.1 || best.0.is_empty() {
            best = (point, r);
        }
        if r == l {
            break;
        }
    }
    let passed = homogeneous && triangular.unwrap_or(true) && best.1 == l;
    let report = SliceChartReport {
        algebra: alg.label(),
        weights: chart.weights(),
        quotient: q.iter().map(ToString::to_string).collect(),
        weighted_homogeneous: homogeneous,
        triangular,
        diagonal,
        jacobian_point: best.0,
        jacobian_rank: best.1,
        passed,
    };
    if !passed {
        return Err(Error::TheoremViolation(format!(
            "adjoint quotient on the slice of {} is not a weighted automorphism: {:?}",
            alg.label(),
            report.quotient
        )));
    }
    Ok(report)
}

/// `D_c = Σ_m c^m Π_m` applied to `u`.
pub fn cx_rescale<R: Coeff>(p: &Principal, c: &Scalar, u: &Element<R>) -> Result<Element<R>> {
    let d = p.splitting.grading_action(c)?;
    Ok(Element::from_coords(d.apply(u.coords())))
}

/// `c · D_c(u)` for a possibly symbolic `c`; needs `u` to have no
/// components below degree `-1` so that only nonnegative powers occur.
pub fn weighted_rescale<R: Coeff>(p: &Principal, c: &R, u: &Element<R>) -> Result<Element<R>> {
    shifted_rescale(p, c, 1, u)
}

/// `c^s · D_c(u)`, defined when `u` has no components below degree `-s`.
pub fn shifted_rescale<R: Coeff>(
    p: &Principal,
    c: &R,
    shift: u32,
    u: &Element<R>,
) -> Result<Element<R>> {
    let mut w = p.splitting.weight_coordinates(u);
    for (x, &(_, k)) in w.iter_mut().zip(p.splitting.slots()) {
        if x.is_zero() {
            continue;
        }
        let e = k + shift as i32;
        if e < 0 {
            return Err(Error::Domain(format!(
                "component of degree {k} needs a negative power of c"
            )));
        }
        *x = x.mul_ref(&c.pow(e as u32));
    }
    Ok(p.splitting.from_weight_coordinates(&w))
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularitySample {
    pub index: u64,
    pub coordinates: Vec<Scalar>,
    pub centraliser_dim: usize,
    pub regular: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularityReport {
    pub algebra: String,
    pub seed: u64,
    pub samples: Vec<RegularitySample>,
    pub failures: usize,
}

impl RegularityReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Centraliser dimensions at seeded pseudorandom slice points.
pub fn regularity_scan(
    alg: &LieAlgebra,
    chart: &SliceChart,
    samples: usize,
    seed: u64,
) -> Result<RegularityReport> {
    let mut out = Vec::with_capacity(samples);
    for i in 0..samples as u64 {
        let a = sample_vector(seed, i, chart.rank());
        let u = chart.slice_point(&a)?;
        let dim = alg.dim() - alg.ad(&u).rank();
        out.push(RegularitySample {
            index: i,
            coordinates: a,
            centraliser_dim: dim,
            regular: dim == alg.rank(),
        });
    }
    let failures = out.iter().filter(|s| !s.regular).count();
    Ok(RegularityReport {
        algebra: alg.label(),
        seed,
        samples: out,
        failures,
    })
}

/// Bounds on the rank of `ad_{y + Σ a_i v_i}` over the field of rational
/// functions in the `a_i`.
#[derive(Clone, Debug, Serialize)]
pub struct GenericRank {
    /// Rank at a rational point; the generic rank is at least this.
    pub lower: usize,
    /// `dim g` minus the number of polynomial kernel vectors found.
    pub upper: usize,
    pub point: Vec<Scalar>,
    pub kernel_vectors: usize,
}

impl GenericRank {
    pub fn exact(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.lower)
    }
}

/// Polynomial vectors in `z(y + h)` for `h = Σ a_i v_i`, one per lowest
/// weight vector `w`, given by `Σ_k (-Pπ ad_h)^k w`.
pub fn slice_centraliser_vectors<R: Coeff>(
    alg: &LieAlgebra,
    p: &Principal,
    h: &Element<R>,
) -> Vec<Element<R>> {
    p.decomposition
        .zy_basis
        .iter()
        .map(|w| {
            let mut term: Element<R> = w.lift();
            let mut sum = term.clone();
            for _ in 0..=p.coxeter() {
                term = -p.splitting.apply_p_pi(&alg.bracket(h, &term));
                if term.is_zero() {
                    break;
                }
                sum = &sum + &term;
            }
            sum
        })
        .collect()
}

pub fn generic_slice_rank(
    alg: &LieAlgebra,
    p: &Principal,
    chart: &SliceChart,
    seed: u64,
) -> Result<GenericRank> {
    let a = chart.symbolic();
    let u = chart.slice_point(&a)?;
    let h = chart.centraliser_point(&a)?;
    let kernel: Vec<Element<PolyScalar>> = slice_centraliser_vectors(alg, p, &h)
        .into_iter()
        .filter(|z| alg.bracket(&u, z).is_zero())
        .collect();

    let mut lower = 0;
    let mut point = Vec::new();
    let mut independent = 0;
    for attempt in 0..8 {
        let pt = sample_vector(seed, attempt, chart.rank());
        let vals = chart.assignment(&pt);
        let r = alg.ad(&u.evaluate(&vals)?).rank();
        let mut span = SpanBasis::new();
        let mut ind = 0;
        for z in &kernel {
            if span.insert(z.evaluate(&vals)?.coords()) {
                ind += 1;
            }
        }
        if r > lower || point.is_empty() {
            lower = r;
            point = pt;
        }
        independent = independent.max(ind);
        if lower + independent == alg.dim() {
            break;
        }
    }
    Ok(GenericRank {
        lower,
        upper: alg.dim() - independent,
        point,
        kernel_vectors: independent,
    })
}

/// Checks `χ(g u g⁻¹) = χ(u)` for `g = exp(n)` with `n` a random nilpotent
/// in `g_{>0}` or `g_{<0}`. Returns the number of samples that failed.
pub fn conjugation_invariance(
    alg: &LieAlgebra,
    p: &Principal,
    samples: usize,
    seed: u64,
) -> Result<usize> {
    let mut failures = 0;
    let positive: Vec<&Element<Scalar>> =
        p.grading.pieces.range(1..).flat_map(|(_, b)| b).collect();
    let negative: Vec<&Element<Scalar>> =
        p.grading.pieces.range(..0).flat_map(|(_, b)| b).collect();
    for i in 0..samples as u64 {
        let u = Element::from_coords(sample_vector(seed, 2 * i, alg.dim()));
        let side = if i % 2 == 0 { &positive } else { &negative };
        let coeffs = sample_vector(seed, 2 * i + 1, side.len());
        let mut n = alg.zero();
        for (c, b) in coeffs.iter().zip(side) {
            n.add_scaled(b, c);
        }
        let nm = alg.to_matrix(&n);
        let g = invariants::exp_nilpotent(&nm)
            .ok_or_else(|| Error::inconsistent("element is not nilpotent"))?;
        let g_inv = invariants::exp_nilpotent(&nm.scale(&-Scalar::from_int(1))).expect("nilpotent");
        let conj = alg.from_matrix(&g.mul(&alg.to_matrix(&u))?.mul(&g_inv)?)?;
        if adjoint_quotient(alg, &u)? != adjoint_quotient(alg, &conj)? {
            failures += 1;
        }
    }
    Ok(failures)
}
