//! Elements of `L^i (x) m_A` for `A = C[x...]/m^{N+1}`, the Kuranishi
//! series and the gauge action.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::hodge::HodgeSplitting;
use super::Dgla;
use crate::error::{Error, Result};
use crate::exactalg::{Coeff, PolyScalar, Scalar};
use crate::report::IdentityResult;
use crate::sampling::sample_vector;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormalElement {
    degree: usize,
    truncation: u32,
    coeffs: Vec<PolyScalar>,
}

impl FormalElement {
    /// Rejects coefficients with a nonzero constant term.
    pub fn new(degree: usize, coeffs: Vec<PolyScalar>, truncation: u32) -> Result<Self> {
        if coeffs.iter().any(|c| !c.constant_term().is_zero()) {
            return Err(Error::invalid(
                "formal elements must have zero constant terms",
            ));
        }
        let coeffs = coeffs
            .into_iter()
            .map(|c| c.truncated(truncation))
            .collect();
        Ok(FormalElement {
            degree,
            truncation,
            coeffs,
        })
    }

    pub fn zero(dg: &Dgla, degree: usize, truncation: u32) -> Self {
        FormalElement {
            degree,
            truncation,
            coeffs: vec![PolyScalar::zero(); dg.dim(degree)],
        }
    }

    /// `sum_k p_k v_k` for polynomials `p_k` and vectors `v_k` of `L^degree`.
    pub fn linear(
        degree: usize,
        parts: &[(PolyScalar, Vec<Scalar>)],
        dim: usize,
        truncation: u32,
    ) -> Result<Self> {
        let mut coeffs = vec![PolyScalar::zero(); dim];
        for (p, v) in parts {
            if v.len() != dim {
                return Err(Error::invalid("vector length does not match the degree"));
            }
            for (c, x) in coeffs.iter_mut().zip(v) {
                c.add_scaled_assign(p, x);
            }
        }
        Self::new(degree, coeffs, truncation)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn coeffs(&self) -> &[PolyScalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn homogeneous_part(&self, k: u32) -> Self {
        self.with(self.coeffs.iter().map(|c| c.homogeneous_part(k)).collect())
    }

    /// Lowest total degree present, `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.coeffs.iter().filter_map(|c| c.min_degree()).min()
    }

    fn with(&self, coeffs: Vec<PolyScalar>) -> Self {
        let coeffs = coeffs
            .into_iter()
            .map(|c| c.truncated(self.truncation))
            .collect();
        FormalElement {
            degree: self.degree,
            truncation: self.truncation,
            coeffs,
        }
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree || self.coeffs.len() != other.coeffs.len() {
            return Err(Error::invalid("formal elements of different degrees"));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut out = self.with(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        );
        out.truncation = self.truncation.min(other.truncation);
        Ok(out.with(out.coeffs.clone()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut out = self.with(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.sub_ref(b))
                .collect(),
        );
        out.truncation = self.truncation.min(other.truncation);
        Ok(out.with(out.coeffs.clone()))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        self.with(self.coeffs.iter().map(|c| c.scale(s)).collect())
    }

    /// Same element with the truncation order lowered to `n`.
    pub fn truncated(&self, n: u32) -> Self {
        let mut out = self.clone();
        out.truncation = self.truncation.min(n);
        out.with(out.coeffs.clone())
    }
}

fn bracket(dg: &Dgla, a: &FormalElement, b: &FormalElement) -> FormalElement {
    let n = a.truncation.min(b.truncation);
    let coeffs = dg.bracket(a.degree, &a.coeffs, b.degree, &b.coeffs);
    FormalElement {
        degree: a.degree + b.degree,
        truncation: n,
        coeffs,
    }
    .truncated(n)
}

fn differential(dg: &Dgla, a: &FormalElement) -> FormalElement {
    a.with_degree(a.degree + 1, dg.differential(a.degree, &a.coeffs))
}

impl FormalElement {
    fn with_degree(&self, degree: usize, coeffs: Vec<PolyScalar>) -> Self {
        FormalElement {
            degree,
            truncation: self.truncation,
            coeffs,
        }
        .truncated(self.truncation)
    }
}

fn require_degree(u: &FormalElement, degree: usize, what: &str) -> Result<()> {
    if u.degree != degree {
        return Err(Error::invalid(format!("{what} must have degree {degree}")));
    }
    Ok(())
}

/// `d u + [u, u] / 2` modulo `m^{N+1}`.
pub fn mc_residual_formal(dg: &Dgla, u: &FormalElement) -> Result<FormalElement> {
    require_degree(u, 1, "a Maurer-Cartan candidate")?;
    Ok(u.with_degree(2, dg.mc_residual(&u.coeffs)))
}

/// `sum_a x_a e_a` over the harmonic basis of `H^1`, with the splitting's
/// coordinate names.
pub fn harmonic_generic(
    dg: &Dgla,
    split: &HodgeSplitting,
    truncation: u32,
) -> Result<FormalElement> {
    let names: Vec<&str> = split.harmonic_names().iter().map(String::as_str).collect();
    let vars = crate::exactalg::variables(&names);
    let parts: Vec<(PolyScalar, Vec<Scalar>)> = split
        .harmonic_basis(1)
        .iter()
        .enumerate()
        .map(|(k, v)| (PolyScalar::var_in(&vars, k), v.clone()))
        .collect();
    FormalElement::linear(1, &parts, dg.dim(1), truncation)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesChoice {
    /// `delta_2` of the Hodge splitting.
    FullDelta,
    /// `delta_2` followed by the projection onto `L''`.
    PPiTilde,
}

impl SeriesChoice {
    pub fn name(self) -> &'static str {
        match self {
            SeriesChoice::FullDelta => "full_delta",
            SeriesChoice::PPiTilde => "p_pi_tilde",
        }
    }
}

pub(crate) fn tilde_delta(
    dg: &Dgla,
    split: &HodgeSplitting,
    choice: SeriesChoice,
    w: &[PolyScalar],
) -> Result<Vec<PolyScalar>> {
    let v = split.delta(2, w);
    match choice {
        SeriesChoice::FullDelta => Ok(v),
        SeriesChoice::PPiTilde => dg.second(&v),
    }
}

fn check_harmonic(split: &HodgeSplitting, input: &FormalElement) -> Result<()> {
    require_degree(input, 1, "the Kuranishi input")?;
    if split.projector_h(1).apply(&input.coeffs) != input.coeffs {
        return Err(Error::invalid("the Kuranishi input is not harmonic"));
    }
    Ok(())
}

/// `Gamma_1, ..., Gamma_N` with `Gamma_1 = input` and
/// `Gamma_k = -1/2 tilde_delta sum_{n<k} [Gamma_n, Gamma_{k-n}]`.
pub fn kuranishi_terms(
    dg: &Dgla,
    split: &HodgeSplitting,
    input: &FormalElement,
    order: u32,
    choice: SeriesChoice,
) -> Result<Vec<FormalElement>> {
    check_harmonic(split, input)?;
    let input = input.truncated(order.max(1));
    let mut terms = vec![input.clone()];
    let half = Scalar::ratio(-1, 2)?;
    for k in 2..=order as usize {
        let mut acc = FormalElement::zero(dg, 2, input.truncation);
        for n in 1..k {
            acc = acc.add(&bracket(dg, &terms[n - 1], &terms[k - n - 1]))?;
        }
        let t = tilde_delta(dg, split, choice, &acc.coeffs)?;
        terms.push(input.with(t).scale(&half));
    }
    Ok(terms)
}

/// Sum of [`kuranishi_terms`].
pub fn kuranishi(
    dg: &Dgla,
    split: &HodgeSplitting,
    input: &FormalElement,
    order: u32,
    choice: SeriesChoice,
) -> Result<FormalElement> {
    let terms = kuranishi_terms(dg, split, input, order, choice)?;
    let mut acc = FormalElement::zero(dg, 1, terms[0].truncation);
    for t in &terms {
        acc = acc.add(t)?;
    }
    Ok(acc)
}

/// Terms of `(h, (1 + P pi ad_h)^{-1} v)` for `input = (h, v)`: the first is
/// the input and the `k`-th is `-(P pi ad_h)` applied to the previous one.
pub fn closed_form_terms(
    dg: &Dgla,
    split: &HodgeSplitting,
    input: &FormalElement,
    order: u32,
) -> Result<Vec<FormalElement>> {
    check_harmonic(split, input)?;
    geometric_terms(dg, split, &input.truncated(order.max(1)), order)
}

pub(crate) fn geometric_terms(
    dg: &Dgla,
    split: &HodgeSplitting,
    input: &FormalElement,
    order: u32,
) -> Result<Vec<FormalElement>> {
    require_degree(input, 1, "the series input")?;
    let h = input.with(dg.prime(&input.coeffs)?);
    let mut terms = vec![input.clone()];
    for _ in 2..=order {
        let prev = terms.last().expect("nonempty");
        let w = bracket(dg, &h, prev);
        let t = tilde_delta(dg, split, SeriesChoice::PPiTilde, &w.coeffs)?;
        terms.push(input.with(t).scale(&Scalar::from_int(-1)));
        if terms.last().is_some_and(FormalElement::is_zero) {
            break;
        }
    }
    Ok(terms)
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesConsistency {
    pub order: u32,
    pub termwise_equal: bool,
    /// Largest `k` with `Gamma_k` nonzero.
    pub last_nonzero: u32,
}

/// Compares the `p_pi_tilde` series with the closed form term by term.
pub fn series_consistency(
    dg: &Dgla,
    split: &HodgeSplitting,
    input: &FormalElement,
    order: u32,
) -> Result<SeriesConsistency> {
    let a = kuranishi_terms(dg, split, input, order, SeriesChoice::PPiTilde)?;
    let b = closed_form_terms(dg, split, input, order)?;
    let termwise_equal = a
        .iter()
        .enumerate()
        .all(|(k, t)| b.get(k).map_or(t.is_zero(), |u| u == t));
    let last_nonzero = a
        .iter()
        .rposition(|t| !t.is_zero())
        .map_or(0, |k| k as u32 + 1);
    Ok(SeriesConsistency {
        order,
        termwise_equal,
        last_nonzero,
    })
}

/// `exp(ad lambda) u - sum_k (ad lambda)^k d lambda / (k+1)!` modulo `m^{N+1}`.
pub fn gauge_act(dg: &Dgla, lambda: &FormalElement, u: &FormalElement) -> Result<FormalElement> {
    require_degree(lambda, 0, "a gauge parameter")?;
    require_degree(u, 1, "the gauged element")?;
    let n = lambda.truncation.min(u.truncation);
    let lambda = lambda.truncated(n);
    let mut a = u.truncated(n);
    let mut b = differential(dg, &lambda);
    let mut out = a.sub(&b)?;
    let mut k: i64 = 0;
    while !(a.is_zero() && b.is_zero()) {
        k += 1;
        a = bracket(dg, &lambda, &a).scale(&Scalar::ratio(1, k)?);
        b = bracket(dg, &lambda, &b).scale(&Scalar::ratio(1, k + 1)?);
        out = out.add(&a)?.sub(&b)?;
        if k > n as i64 + 1 {
            return Err(Error::inconsistent("gauge series failed to terminate"));
        }
    }
    Ok(out)
}

/// Gauge parameter `lambda` with `delta_1(gauge_act(lambda, u)) = 0`, built
/// one order at a time; returns `(lambda, gauge_act(lambda, u))`.
pub fn gauge_fix(
    dg: &Dgla,
    split: &HodgeSplitting,
    u: &FormalElement,
) -> Result<(FormalElement, FormalElement)> {
    if !mc_residual_formal(dg, u)?.is_zero() {
        return Err(Error::invalid("gauge fixing needs a Maurer-Cartan element"));
    }
    let n = u.truncation;
    let mut lambda = FormalElement::zero(dg, 0, n);
    for k in 1..=n {
        let w = gauge_act(dg, &lambda, u)?;
        let r = w
            .with_degree(0, split.delta(1, &w.coeffs))
            .homogeneous_part(k);
        if !r.is_zero() {
            lambda = lambda.add(&r)?;
        }
    }
    let fixed = gauge_act(dg, &lambda, u)?;
    if !split.delta(1, &fixed.coeffs).iter().all(|c| c.is_zero()) {
        return Err(Error::inconsistent(
            "gauge fixing did not reach the kernel of delta",
        ));
    }
    Ok((lambda, fixed))
}

#[derive(Clone, Debug, Serialize)]
pub struct KuranishiReport {
    pub dgla: String,
    pub order: u32,
    pub seed: u64,
    pub series: SeriesConsistency,
    pub identities: Vec<IdentityResult>,
}

impl KuranishiReport {
    pub fn passed(&self) -> bool {
        self.series.termwise_equal && self.identities.iter().all(|i| i.passed)
    }
}

/// Series comparison and Maurer-Cartan property of both series in generic
/// harmonic coordinates, then the gauge action and gauge fixing on the
/// restriction to a seeded line `x_a = c_a tau` with `lambda = tau w`.
pub fn kuranishi_gauge_suite(
    dg: &Dgla,
    split: &HodgeSplitting,
    order: u32,
    seed: u64,
) -> Result<KuranishiReport> {
    let x = harmonic_generic(dg, split, order)?;
    let series = series_consistency(dg, split, &x, order)?;
    let mut ids = Vec::new();
    for choice in [SeriesChoice::PPiTilde, SeriesChoice::FullDelta] {
        let g = kuranishi(dg, split, &x, order, choice)?;
        ids.push(IdentityResult::new(
            &format!("{}_mc", choice.name()),
            mc_residual_formal(dg, &g)?.is_zero(),
            "Maurer-Cartan residual vanishes",
        ));
    }
    let tau = PolyScalar::var("tau");
    let basis = split.harmonic_basis(1);
    let c = sample_vector(seed, 0, basis.len());
    let line: Vec<(PolyScalar, Vec<Scalar>)> = basis
        .iter()
        .zip(&c)
        .map(|(v, ca)| (tau.scale(ca), v.clone()))
        .collect();
    let input = FormalElement::linear(1, &line, dg.dim(1), order)?;
    let u = kuranishi(dg, split, &input, order, SeriesChoice::PPiTilde)?;
    let parts = [(tau, sample_vector(seed, 1, dg.dim(0)))];
    let lambda = FormalElement::linear(0, &parts, dg.dim(0), order)?;
    let moved = gauge_act(dg, &lambda, &u)?;
    ids.push(IdentityResult::new(
        "gauge_preserves_mc",
        mc_residual_formal(dg, &moved)?.is_zero(),
        "gauge transform of the series is Maurer-Cartan",
    ));
    match gauge_fix(dg, split, &moved) {
        Ok((mu, fixed)) => {
            let kernel = split.delta(1, fixed.coeffs()).iter().all(|c| c.is_zero());
            let consistent = gauge_act(dg, &mu, &moved)? == fixed;
            ids.push(IdentityResult::new(
                "gauge_fix_kernel",
                kernel && consistent,
                "delta_1 of the fixed element vanishes",
            ));
        }
        Err(e) => ids.push(IdentityResult::new(
            "gauge_fix_kernel",
            false,
            e.to_string(),
        )),
    }
    Ok(KuranishiReport {
        dgla: dg.label().into(),
        order,
        seed,
        series,
        identities: ids,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    use crate::dgla::{hodge_split, toy_from_lie};
    use crate::exactalg::variables;
    use crate::liecore::{build_algebra, LieType};
    use crate::principal::Principal;

    struct Toy {
        dg: Dgla,
        split: HodgeSplitting,
        x: Vec<Scalar>,
        y: Vec<Scalar>,
        h: Vec<Scalar>,
        n: usize,
    }

    fn sl2() -> Toy {
        let alg = build_algebra(LieType::A, 1).unwrap();
        let p = Principal::new(&alg).unwrap();
        let dg = toy_from_lie(&alg, &p).unwrap();
        let split = hodge_split(&dg).unwrap();
        let c = |e: &crate::liecore::Element<Scalar>| e.coords().to_vec();
        Toy {
            split,
            x: c(&p.triple.x),
            y: c(&p.triple.y),
            h: c(&p.triple.h),
            n: alg.dim(),
            dg,
        }
    }

    fn pair(t: &Toy, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); 2 * t.n];
        v[..t.n].clone_from_slice(a);
        v[t.n..].clone_from_slice(b);
        v
    }

    #[test]
    fn residual_of_unsolved_pair() {
        let t = sl2();
        let vars = variables(&["alpha", "xi", "t"]);
        let (al, xi, tt) = (
            PolyScalar::var_in(&vars, 0),
            PolyScalar::var_in(&vars, 1),
            PolyScalar::var_in(&vars, 2),
        );
        let z = vec![Scalar::zero(); t.n];
        let u = FormalElement::linear(
            1,
            &[
                (al.mul_ref(&tt), pair(&t, &t.x, &z)),
                (xi.mul_ref(&tt), pair(&t, &z, &t.y)),
            ],
            2 * t.n,
            4,
        )
        .unwrap();
        let r = mc_residual_formal(&t.dg, &u).unwrap();
        let expect = FormalElement::linear(
            2,
            &[(al.mul_ref(&xi).mul_ref(&tt).mul_ref(&tt), t.h.clone())],
            t.n,
            4,
        )
        .unwrap();
        assert_eq!(r, expect);
        // With the correction term the pair is Maurer-Cartan.
        let fix = FormalElement::linear(
            1,
            &[(
                al.mul_ref(&xi).mul_ref(&tt).mul_ref(&tt),
                pair(&t, &z, &t.x),
            )],
            2 * t.n,
            4,
        )
        .unwrap();
        assert!(mc_residual_formal(&t.dg, &u.add(&fix).unwrap())
            .unwrap()
            .is_zero());
        assert!(mc_residual_formal(&t.dg, &FormalElement::zero(&t.dg, 1, 4))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn kuranishi_sl2() {
        let t = sl2();
        let u = harmonic_generic(&t.dg, &t.split, 6).unwrap();
        let g = kuranishi(&t.dg, &t.split, &u, 6, SeriesChoice::PPiTilde).unwrap();
        let vars = u.coeffs[0].vars().to_vec();
        assert_eq!(vars, ["t1", "s1"]);
        let names: Vec<&str> = vars.iter().map(String::as_str).collect();
        let vs = variables(&names);
        let (a, s) = (PolyScalar::var_in(&vs, 0), PolyScalar::var_in(&vs, 1));
        let z = vec![Scalar::zero(); t.n];
        let expect = FormalElement::linear(
            1,
            &[
                (a.clone(), pair(&t, &t.x, &z)),
                (s.clone(), pair(&t, &z, &t.y)),
                (a.mul_ref(&s), pair(&t, &z, &t.x)),
            ],
            2 * t.n,
            6,
        )
        .unwrap();
        assert_eq!(g, expect);
        let full = kuranishi(&t.dg, &t.split, &u, 6, SeriesChoice::FullDelta).unwrap();
        assert_eq!(full, g);
        assert!(mc_residual_formal(&t.dg, &g).unwrap().is_zero());
    }

    #[test]
    fn hitchin_input_is_fixed() {
        let t = sl2();
        let vars = variables(&["t"]);
        let z = vec![Scalar::zero(); t.n];
        let u = FormalElement::linear(
            1,
            &[(PolyScalar::var_in(&vars, 0), pair(&t, &t.x, &z))],
            2 * t.n,
            5,
        )
        .unwrap();
        assert_eq!(
            kuranishi(&t.dg, &t.split, &u, 5, SeriesChoice::PPiTilde).unwrap(),
            u
        );
    }

    #[test]
    fn non_harmonic_input_rejected() {
        let t = sl2();
        let vars = variables(&["t"]);
        let z = vec![Scalar::zero(); t.n];
        let u = FormalElement::linear(
            1,
            &[(PolyScalar::var_in(&vars, 0), pair(&t, &t.h, &z))],
            2 * t.n,
            3,
        )
        .unwrap();
        assert!(kuranishi(&t.dg, &t.split, &u, 3, SeriesChoice::PPiTilde).is_err());
        assert!(FormalElement::new(0, vec![PolyScalar::one()], 3).is_err());
    }

    #[test]
    fn gauge_basics() {
        let t = sl2();
        let vars = variables(&["t"]);
        let tt = PolyScalar::var_in(&vars, 0);
        let u =
            FormalElement::linear(1, &[(tt.clone(), pair(&t, &t.x, &t.y))], 2 * t.n, 4).unwrap();
        let zero = FormalElement::zero(&t.dg, 0, 4);
        assert_eq!(gauge_act(&t.dg, &zero, &u).unwrap(), u);
        // Affine part: lambda = w t acting on 0 gives -d(w) t + ...
        let w = t.x.clone();
        let lam = FormalElement::linear(0, &[(tt.clone(), w.clone())], t.n, 4).unwrap();
        let g = gauge_act(&t.dg, &lam, &FormalElement::zero(&t.dg, 1, 4)).unwrap();
        let dw = t.dg.differential(0, &w);
        let expect = FormalElement::linear(1, &[(tt.clone(), dw)], 2 * t.n, 4)
            .unwrap()
            .scale(&Scalar::from_int(-1));
        assert_eq!(g.homogeneous_part(1), expect);
    }

    #[test]
    fn gauge_preserves_mc_and_fix_round_trip() {
        let t = sl2();
        let u = kuranishi(
            &t.dg,
            &t.split,
            &harmonic_generic(&t.dg, &t.split, 4).unwrap(),
            4,
            SeriesChoice::PPiTilde,
        )
        .unwrap();
        let vars = u.coeffs[0].vars().to_vec();
        let names: Vec<&str> = vars.iter().map(String::as_str).collect();
        let vs = variables(&names);
        let w: Vec<Scalar> = t.h.iter().zip(&t.y).map(|(a, b)| a + b).collect();
        let lam = FormalElement::linear(0, &[(PolyScalar::var_in(&vs, 0), w)], t.n, 4).unwrap();
        let moved = gauge_act(&t.dg, &lam, &u).unwrap();
        assert!(mc_residual_formal(&t.dg, &moved).unwrap().is_zero());
        assert!(t
            .split
            .delta(1, moved.coeffs())
            .iter()
            .any(|c| !c.is_zero()));
        let (mu, fixed) = gauge_fix(&t.dg, &t.split, &moved).unwrap();
        assert!(t.split.delta(1, fixed.coeffs()).iter().all(|c| c.is_zero()));
        assert_eq!(gauge_act(&t.dg, &mu, &moved).unwrap(), fixed);
        assert!(mc_residual_formal(&t.dg, &fixed).unwrap().is_zero());
        // Already on the slice: nothing to do.
        let (zero, same) = gauge_fix(&t.dg, &t.split, &u).unwrap();
        assert!(zero.is_zero());
        assert_eq!(same, u);
    }

    #[test]
    fn gauge_fix_rejects_non_mc() {
        let t = sl2();
        let vars = variables(&["a", "b"]);
        let u = FormalElement::linear(
            1,
            &[
                (
                    PolyScalar::var_in(&vars, 0),
                    pair(&t, &t.x, &vec![Scalar::zero(); t.n]),
                ),
                (
                    PolyScalar::var_in(&vars, 1),
                    pair(&t, &vec![Scalar::zero(); t.n], &t.y),
                ),
            ],
            2 * t.n,
            3,
        )
        .unwrap();
        assert!(matches!(
            gauge_fix(&t.dg, &t.split, &u),
            Err(Error::InvalidInput(_))
        ));
    }
}
