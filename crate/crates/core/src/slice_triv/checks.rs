use std::fmt::Display;

use num_traits::Zero;
use serde::Serialize;

use super::{gamma, gamma_terms, phi, trivialized_point, CentraliserPoint, TrivializedPoint};
use crate::error::{Error, Result};
use crate::exactalg::{variables, Coeff, Jet, PolyScalar, Scalar};
use crate::kostant::{generic_slice_rank, shifted_rescale, weighted_rescale, SliceChart};
use crate::liecore::{Element, LieAlgebra};
use crate::principal::Principal;
use crate::report::IdentityResult;
use crate::sampling::sample_vector;

#[derive(Clone, Debug, Serialize)]
pub struct LemmaEntry {
    pub h_index: usize,
    pub v_index: usize,
    pub k: u32,
    /// `ad_h (P ad_h)^k v ∈ Im ad_y`.
    pub in_image: bool,
    /// `(Pπ ad_h)^k v = (P ad_h)^k v`.
    pub formulations_agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub algebra: String,
    pub entries: Vec<LemmaEntry>,
    pub failures: usize,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Exhaustive check of `ad_h (P ad_h)^k (z(y)) ⊆ Im ad_y` over highest
/// weight `h`, lowest weight `v` and `0 ≤ k ≤ 𝗁`.
pub fn lemma_inclusion_check(alg: &LieAlgebra, p: &Principal) -> Result<LemmaReport> {
    let dec = &p.decomposition;
    let mut entries = Vec::new();
    for (i, h) in dec.zx_basis.iter().enumerate() {
        for (j, v) in dec.zy_basis.iter().enumerate() {
            let mut strict = Some(v.clone());
            let mut projected = v.clone();
            for k in 0..=p.coxeter() {
                let (in_image, agree) = match &strict {
                    Some(w) => {
                        let b = alg.bracket(h, w);
                        (p.splitting.apply_pi(&b) == b, *w == projected)
                    }
                    None => (false, false),
                };
                entries.push(LemmaEntry {
                    h_index: i,
                    v_index: j,
                    k,
                    in_image,
                    formulations_agree: agree,
                });
                strict = strict.and_then(|w| p.splitting.apply_p(&alg.bracket(h, &w)).ok());
                projected = p.splitting.apply_p_pi(&alg.bracket(h, &projected));
            }
        }
    }
    let failures = entries
        .iter()
        .filter(|e| !(e.in_image && e.formulations_agree))
        .count();
    Ok(LemmaReport {
        algebra: alg.label(),
        entries,
        failures,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    pub algebra: String,
    pub terms_checked: usize,
    pub max_terms: usize,
    /// `(i, j, k, expected degree)` for terms outside the expected piece.
    pub failures: Vec<(usize, usize, usize, i32)>,
}

impl DegreeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The `k`-th term of `Γ(h, v)` for `h ∈ g_{m_i}`, `v ∈ g_{-m_j}` lies in
/// `g_{k m_i - m_j + k}`, and the series has at most `𝗁 + 1` terms.
pub fn degree_bookkeeping(alg: &LieAlgebra, p: &Principal) -> Result<DegreeReport> {
    let dec = &p.decomposition;
    let ad_h = alg.ad(&p.triple.h);
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut max_terms = 0;
    for (i, h) in dec.zx_basis.iter().enumerate() {
        let mi = dec.components[i].exponent as i32;
        for (j, v) in dec.zy_basis.iter().enumerate() {
            let mj = dec.components[j].exponent as i32;
            let terms = gamma_terms(alg, p, h, v);
            max_terms = max_terms.max(terms.len());
            for (k, t) in terms.iter().enumerate() {
                let r = k as i32 * mi - mj + k as i32;
                checked += 1;
                let expect = t.scale(&Scalar::from_int(2 * r as i64));
                if ad_h.apply(t.coords()) != expect.coords() {
                    failures.push((i, j, k, r));
                }
            }
            if terms.len() > p.coxeter() as usize + 1 {
                failures.push((i, j, terms.len(), i32::MAX));
            }
        }
    }
    Ok(DegreeReport {
        algebra: alg.label(),
        terms_checked: checked,
        max_terms,
        failures,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointMode {
    Numeric { samples: usize, seed: u64 },
    Generic,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymplecticFailure {
    pub point: Vec<String>,
    pub directions: (usize, usize),
    pub expected: String,
    pub pulled_back: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymplecticReport {
    pub algebra: String,
    pub mode: PointMode,
    pub points: usize,
    pub pairs: usize,
    pub failures: Vec<SymplecticFailure>,
}

impl SymplecticReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `Γ*ω_can = ω_can` on all pairs of basis tangent vectors of
/// `z(x) × z(y)`, with `dΓ` computed by first-order jets.
pub fn symplectic_pullback_check(
    alg: &LieAlgebra,
    p: &Principal,
    mode: PointMode,
) -> Result<SymplecticReport> {
    let l = alg.rank();
    let mut failures = Vec::new();
    let mut pairs = 0;
    let points = match mode {
        PointMode::Generic => {
            let names: Vec<String> = (1..=l)
                .map(|i| format!("t{i}"))
                .chain((1..=l).map(|j| format!("s{j}")))
                .collect();
            let vars = variables(&names.iter().map(String::as_str).collect::<Vec<_>>());
            let coords: Vec<PolyScalar> =
                (0..2 * l).map(|i| PolyScalar::var_in(&vars, i)).collect();
            pairs += pullback_at(alg, p, &coords, &mut failures)?;
            1
        }
        PointMode::Numeric { samples, seed } => {
            for i in 0..samples as u64 {
                let coords = sample_vector(seed, i, 2 * l);
                pairs += pullback_at(alg, p, &coords, &mut failures)?;
            }
            samples
        }
    };
    Ok(SymplecticReport {
        algebra: alg.label(),
        mode,
        points,
        pairs,
        failures,
    })
}

fn pullback_at<R: Coeff + Display>(
    alg: &LieAlgebra,
    p: &Principal,
    coords: &[R],
    failures: &mut Vec<SymplecticFailure>,
) -> Result<usize> {
    let l = alg.rank();
    let jets: Vec<Jet<R>> = coords
        .iter()
        .enumerate()
        .map(|(d, c)| Jet::with_tangent(c.clone(), d, R::one()))
        .collect();
    let pt = trivialized_point(p, &jets[..l], &jets[l..])?;
    let u = gamma(alg, p, &pt)?.u;
    let dec = &p.decomposition;
    let zero = alg.zero::<R>();
    let dh = |a: usize| {
        if a < l {
            dec.zx_basis[a].lift::<R>()
        } else {
            zero.clone()
        }
    };
    let dv = |a: usize| {
        if a >= l {
            dec.zy_basis[a - l].lift::<R>()
        } else {
            zero.clone()
        }
    };
    let du: Vec<Element<R>> = (0..2 * l).map(|a| u.map(|c| c.derivative(a))).collect();
    let omega = |xh: &Element<R>, xv: &Element<R>, eh: &Element<R>, ev: &Element<R>| {
        alg.killing(xh, ev) - alg.killing(xv, eh)
    };
    let mut pairs = 0;
    for a in 0..2 * l {
        for b in a + 1..2 * l {
            pairs += 1;
            let expected = omega(&dh(a), &dv(a), &dh(b), &dv(b));
            let pulled = omega(&dh(a), &du[a], &dh(b), &du[b]);
            if expected != pulled {
                failures.push(SymplecticFailure {
                    point: coords.iter().map(ToString::to_string).collect(),
                    directions: (a, b),
                    expected: expected.to_string(),
                    pulled_back: pulled.to_string(),
                });
            }
        }
    }
    Ok(pairs)
}

#[derive(Clone, Debug, Serialize)]
pub struct GenericReport {
    pub algebra: String,
    pub variables: Vec<String>,
    pub identities: Vec<IdentityResult>,
}

impl GenericReport {
    pub fn passed(&self) -> bool {
        self.identities.iter().all(|i| i.passed)
    }

    pub fn identity(&self, name: &str) -> Option<&IdentityResult> {
        self.identities.iter().find(|i| i.name == name)
    }
}

/// Symbolic coordinates `t_1..t_l` on `z(x)` and `s_1..s_l` on `z(y)`.
pub fn generic_point(p: &Principal) -> Result<(Vec<String>, TrivializedPoint<PolyScalar>)> {
    let l = p.decomposition.zx_basis.len();
    let names: Vec<String> = (1..=l)
        .map(|i| format!("t{i}"))
        .chain((1..=l).map(|j| format!("s{j}")))
        .collect();
    let vars = variables(&names.iter().map(String::as_str).collect::<Vec<_>>());
    let c: Vec<PolyScalar> = (0..2 * l).map(|i| PolyScalar::var_in(&vars, i)).collect();
    Ok((names, trivialized_point(p, &c[..l], &c[l..])?))
}

/// Identities over the polynomial ring in `t_i`, `s_j`:
/// `Φ∘Γ = id`, `Γ∘Φ = id`, `[y + h, u] = 0` with `(π - 1)[Γ, Γ] = 0`,
/// generic regularity of the slice and `Γ(h, 0) = (y + h, 0)`. `Γ∘Φ` is
/// additionally checked at sampled points on an independently computed
/// basis of each centraliser.
pub fn generic_verify(
    alg: &LieAlgebra,
    p: &Principal,
    samples: usize,
    seed: u64,
) -> Result<GenericReport> {
    let (names, t) = generic_point(p)?;
    let mut ids = Vec::new();
    let mut record = |name: &str, passed: bool, detail: String| {
        ids.push(IdentityResult {
            name: name.into(),
            passed,
            detail,
        })
    };

    let c = gamma(alg, p, &t)?;
    let back = phi(alg, p, &c);
    record(
        "phi_gamma",
        back.as_ref() == Ok(&t),
        describe(&back.map(|_| ())),
    );
    let again = gamma(
        alg,
        p,
        &TrivializedPoint {
            h: c.h.clone(),
            v: phi(alg, p, &c)?.v,
        },
    );
    record(
        "gamma_phi",
        again.as_ref() == Ok(&c),
        describe(&again.map(|_| ())),
    );

    let mut fails = 0;
    for i in 0..samples as u64 {
        let a = sample_vector(seed, i, alg.rank());
        let h = trivialized_point(p, &a, &vec![Scalar::zero(); alg.rank()])?.h;
        let start = CentraliserPoint {
            h: h.clone(),
            u: alg.zero(),
        };
        for u in alg.centraliser(&start.slice_point(&p.triple.y))?.basis {
            let pt = CentraliserPoint { h: h.clone(), u };
            let round = gamma(alg, p, &phi(alg, p, &pt)?)?;
            if round != pt {
                fails += 1;
            }
        }
    }
    record(
        "gamma_phi_sampled",
        fails == 0,
        format!("{samples} points, {fails} failures"),
    );

    let mc = alg.bracket(&c.slice_point(&p.triple.y), &c.u);
    record("maurer_cartan", mc.is_zero(), "[y + h, u] = 0".into());
    let gg = alg.bracket(&c.h, &c.u).scale(&Scalar::from_int(2));
    record(
        "mc_bracket_in_image",
        p.splitting.apply_pi(&gg) == gg,
        "(π - 1)[Γ, Γ] = 0".into(),
    );

    let chart = SliceChart::new(p);
    let rank = generic_slice_rank(alg, p, &chart, seed)?;
    record(
        "generic_regularity",
        rank.exact() == Some(alg.dim() - alg.rank()),
        format!("rank between {} and {}", rank.lower, rank.upper),
    );

    let hitchin = gamma(
        alg,
        p,
        &TrivializedPoint {
            h: t.h.clone(),
            v: alg.zero(),
        },
    )?;
    let slice = chart.slice_point(&chart_coords(&names, alg.rank()))?;
    let ok = hitchin.u.is_zero() && hitchin.slice_point(&p.triple.y) == slice;
    record("hitchin_section", ok, "Γ(h, 0) = (y + h, 0)".into());

    Ok(GenericReport {
        algebra: alg.label(),
        variables: names,
        identities: ids,
    })
}

fn chart_coords(names: &[String], l: usize) -> Vec<PolyScalar> {
    let vars = variables(&names.iter().map(String::as_str).collect::<Vec<_>>());
    (0..l).map(|i| PolyScalar::var_in(&vars, i)).collect()
}

fn describe<T>(r: &Result<T>) -> String {
    match r {
        Ok(_) => "exact polynomial identity".into(),
        Err(e) => e.to_string(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivarianceReport {
    pub algebra: String,
    /// Weight of `t_i`.
    pub t_weights: Vec<u32>,
    /// Weight of `s_j`.
    pub s_weights: Vec<u32>,
    /// `Γ₂` transforms by `c^shift · D_c`.
    pub output_shift: u32,
    pub slice_equivariant: bool,
    pub centraliser_equivariant: bool,
}

impl EquivarianceReport {
    pub fn passed(&self) -> bool {
        self.slice_equivariant && self.centraliser_equivariant
    }
}

/// With `t_i ↦ c^{m_i+1} t_i` and `s_j ↦ c^{𝗁 - m_j} s_j`, the first
/// component of `Γ` transforms by `c·D_c` and the second by `c^𝗁·D_c`.
///
/// Since `P` raises degree by one, `P ad_{c·D_c h} = D_c (P ad_h) D_c⁻¹`, so
/// `Γ₂(c·D_c h, c^n D_c v) = c^n D_c Γ₂(h, v)` for every `n`; `n = 𝗁` is the
/// least shift making both the weights and the identity polynomial.
pub fn equivariance_check(alg: &LieAlgebra, p: &Principal) -> Result<EquivarianceReport> {
    let (mut names, _) = generic_point(p)?;
    names.push("c".into());
    let vars = variables(&names.iter().map(String::as_str).collect::<Vec<_>>());
    let l = alg.rank();
    let var = |i: usize| PolyScalar::var_in(&vars, i);
    let c = var(2 * l);
    let hc = p.coxeter();
    let exps = p.exponents();
    let t_weights: Vec<u32> = exps.iter().map(|m| m + 1).collect();
    let s_weights: Vec<u32> = exps.iter().map(|m| hc - m).collect();

    let t: Vec<PolyScalar> = (0..l).map(var).collect();
    let s: Vec<PolyScalar> = (l..2 * l).map(var).collect();
    let ts: Vec<PolyScalar> = t
        .iter()
        .zip(&t_weights)
        .map(|(x, &w)| x.mul_ref(&c.pow(w)))
        .collect();
    let ss: Vec<PolyScalar> = s
        .iter()
        .zip(&s_weights)
        .map(|(x, &w)| x.mul_ref(&c.pow(w)))
        .collect();

    let base = gamma(alg, p, &trivialized_point(p, &t, &s)?)?;
    let scaled = gamma(alg, p, &trivialized_point(p, &ts, &ss)?)?;
    let y = &p.triple.y;
    let slice_equivariant = scaled.slice_point(y) == weighted_rescale(p, &c, &base.slice_point(y))?;
    let centraliser_equivariant = match shifted_rescale(p, &c, hc, &base.u) {
        Ok(r) => r == scaled.u,
        Err(Error::Domain(_)) => false,
        Err(e) => return Err(e),
    };
    Ok(EquivarianceReport {
        algebra: alg.label(),
        t_weights,
        s_weights,
        output_shift: hc,
        slice_equivariant,
        centraliser_equivariant,
    })
}
