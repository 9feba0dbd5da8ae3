//! Per-module check runners producing report rows.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_traits::Zero;
use serde::Serialize;
use serde_json::json;

use lietriv::dgla::{
    check_section3, darboux_check, hodge_split, kuranishi_gauge_suite, toy_from_lie, toy_pairing,
    Dgla,
};
use lietriv::exactalg::{Matrix, Scalar};
use lietriv::kostant::{
    conjugation_invariance, generic_slice_rank, regularity_scan, verify_slice_chart, SliceChart,
};
use lietriv::liecore::{build_algebra, classical_dimension, parse_label, LieAlgebra, LieType};
use lietriv::principal::{classical_exponents, Principal};
use lietriv::report::{CheckOutcome, Status};
use lietriv::slice_triv::{
    degree_bookkeeping, equivariance_check, generic_verify, lemma_inclusion_check,
    symplectic_pullback_check, PointMode,
};
use lietriv::{Error, Result};

/// Algebras covered by `report all` unless others are requested.
pub const DEFAULT_ALGEBRAS: [&str; 8] = ["A1", "A2", "A3", "A4", "B2", "C2", "C3", "D4"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Module {
    Liecore,
    Principal,
    Kostant,
    SliceTriv,
    Dgla,
}

impl Module {
    pub const ALL: [Module; 5] = [
        Module::Liecore,
        Module::Principal,
        Module::Kostant,
        Module::SliceTriv,
        Module::Dgla,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Module::Liecore => "liecore",
            Module::Principal => "principal",
            Module::Kostant => "kostant",
            Module::SliceTriv => "slice_triv",
            Module::Dgla => "dgla",
        }
    }
}

impl fmt::Display for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Module {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Module::ALL
            .into_iter()
            .find(|m| m.name() == s || (s == "centraliser" && *m == Module::SliceTriv))
            .ok_or_else(|| Error::InvalidInput(format!("unknown check group {s:?}")))
    }
}

/// Parameters shared by every check.
#[derive(Clone, Debug, Serialize)]
pub struct Params {
    pub seed: u64,
    pub samples: usize,
    /// Truncation order; `None` means `max(h + 2, 6)`.
    pub order: Option<u32>,
}

/// A built algebra with its principal data.
pub struct Context {
    pub alg: LieAlgebra,
    pub principal: Principal,
    pub label: String,
    dgla: Option<Dgla>,
}

impl Context {
    pub fn new(kind: LieType, rank: usize) -> Result<Context> {
        let alg = build_algebra(kind, rank)?;
        let principal = Principal::new(&alg)?;
        Ok(Context {
            label: alg.label(),
            alg,
            principal,
            dgla: None,
        })
    }

    pub fn from_label(label: &str) -> Result<Context> {
        let (kind, rank) = parse_label(label)?;
        Self::new(kind, rank)
    }

    pub fn order(&self, params: &Params) -> u32 {
        params
            .order
            .unwrap_or_else(|| (self.principal.coxeter() + 2).max(6))
    }

    fn dgla(&mut self) -> Result<&Dgla> {
        if self.dgla.is_none() {
            self.dgla = Some(toy_from_lie(&self.alg, &self.principal)?);
        }
        Ok(self.dgla.as_ref().expect("just built"))
    }
}

/// One report row and the time it took.
pub struct Timed {
    pub outcome: CheckOutcome,
    pub elapsed: Duration,
}

fn timed(
    module: Module,
    check: &str,
    algebra: &str,
    f: impl FnOnce() -> Result<(bool, serde_json::Value)>,
) -> Timed {
    let start = Instant::now();
    let outcome = match f() {
        Ok((passed, witness)) => CheckOutcome::new(module.name(), check, algebra, passed, witness),
        Err(e) => CheckOutcome::from_error(module.name(), check, algebra, &e),
    };
    Timed {
        outcome,
        elapsed: start.elapsed(),
    }
}

fn rows(m: &Matrix<Scalar>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(ToString::to_string).collect())
        .collect()
}

/// Exponents read off the dimensions of the `ad_h` eigenspaces:
/// `#{i : m_i >= m} = dim ker(ad_h - 2m)` for `m >= 0`.
pub fn spectral_exponents(alg: &LieAlgebra, p: &Principal) -> Result<Vec<u32>> {
    let adh = alg.ad(&p.triple.h);
    let n = alg.dim();
    let mut counts = Vec::new();
    for m in 0.. {
        let shifted = adh.sub(&Matrix::identity(n).scale(&Scalar::from_int(2 * m as i64)))?;
        let k = n - shifted.rank();
        if k == 0 {
            break;
        }
        counts.push(k);
    }
    let mut exps = Vec::new();
    for (m, &c) in counts.iter().enumerate() {
        let next = counts.get(m + 1).copied().unwrap_or(0);
        exps.extend(std::iter::repeat_n(m as u32, c - next));
    }
    exps.retain(|&m| m > 0);
    exps.sort_unstable();
    Ok(exps)
}

pub fn run_module(module: Module, ctx: &mut Context, params: &Params) -> Vec<Timed> {
    match module {
        Module::Liecore => liecore_checks(ctx),
        Module::Principal => principal_checks(ctx),
        Module::Kostant => kostant_checks(ctx, params),
        Module::SliceTriv => slice_checks(ctx, params),
        Module::Dgla => dgla_checks(ctx, params),
    }
}

fn liecore_checks(ctx: &Context) -> Vec<Timed> {
    let (alg, label) = (&ctx.alg, ctx.label.as_str());
    vec![timed(Module::Liecore, "structure", label, || {
        let dim_ok = classical_dimension(alg.kind(), alg.rank()) == Some(alg.dim());
        Ok((
            dim_ok,
            json!({
                "dimension": alg.dim(),
                "rank": alg.rank(),
                "cartan_matrix": rows(alg.cartan_matrix()),
                "rho_vee": alg.rho_vee(),
            }),
        ))
    })]
}

fn principal_checks(ctx: &Context) -> Vec<Timed> {
    let (alg, p, label) = (&ctx.alg, &ctx.principal, ctx.label.as_str());
    let mut out = Vec::new();
    out.push(timed(Module::Principal, "triple", label, || {
        let t = &p.triple;
        let ok = alg.bracket(&t.x, &t.y) == t.h
            && alg.bracket(&t.h, &t.x) == t.x.scale(&Scalar::from_int(2))
            && alg.bracket(&t.h, &t.y) == t.y.scale(&Scalar::from_int(-2))
            && alg.is_regular(&t.x)?
            && alg.is_regular(&t.y)?;
        Ok((
            ok,
            json!({
                "x": alg.format_element(&t.x),
                "h": alg.format_element(&t.h),
                "y": alg.format_element(&t.y),
                "grading_dims": p.grading.dims(),
            }),
        ))
    }));
    out.push(timed(Module::Principal, "exponents", label, || {
        let exps = p.exponents();
        let spectral = spectral_exponents(alg, p)?;
        let table = classical_exponents(alg.kind(), alg.rank());
        let total: u32 = exps.iter().map(|m| 2 * m + 1).sum();
        let cox = p.coxeter();
        let ok = Some(&exps) == table.as_ref()
            && spectral == exps
            && total as usize == alg.dim()
            && Some(&cox) == exps.iter().max();
        Ok((
            ok,
            json!({ "exponents": exps, "spectral": spectral, "coxeter": cox, "sum_dims": total }),
        ))
    }));
    out.push(timed(Module::Principal, "orthogonality", label, || {
        let comps = &p.decomposition.components;
        let mut worst = 0usize;
        for (i, a) in comps.iter().enumerate() {
            for b in &comps[i + 1..] {
                for u in a.weights() {
                    for v in b.weights() {
                        if !alg.hermitian_product(u, v).is_zero() || !alg.killing(u, v).is_zero() {
                            worst += 1;
                        }
                    }
                }
            }
        }
        Ok((
            worst == 0,
            json!({ "components": comps.len(), "nonorthogonal_pairs": worst }),
        ))
    }));
    out.push(timed(Module::Principal, "splitting", label, || {
        let s = &p.splitting;
        let ady = alg.ad(&p.triple.y);
        let adx = alg.ad(&p.triple.x);
        let ok = ady.mul(&s.p)?.mul(&ady)? == ady
            && adx.mul(&s.q)?.mul(&adx)? == adx
            && s.pi.mul(&s.pi)? == s.pi
            && s.pi.mul(&ady)? == ady;
        let hw_ok = p.decomposition.components.iter().all(|c| s.apply_p(c.highest()).is_err());
        Ok((ok && hw_ok, json!({ "p_y": alg.format_element(&s.apply_p(&p.triple.y)?), "p_h": alg.format_element(&s.apply_p(&p.triple.h)?) })))
    }));
    out
}

fn kostant_checks(ctx: &Context, params: &Params) -> Vec<Timed> {
    let (alg, p, label) = (&ctx.alg, &ctx.principal, ctx.label.as_str());
    let chart = SliceChart::new(p);
    let mut out = Vec::new();
    out.push(timed(Module::Kostant, "slice_chart", label, || {
        let r = verify_slice_chart(alg, &chart, p.coxeter() + 1, params.seed)?;
        Ok((r.passed, serde_json::to_value(&r).unwrap_or_default()))
    }));
    out.push(timed(Module::Kostant, "regularity", label, || {
        let r = regularity_scan(alg, &chart, params.samples, params.seed)?;
        Ok((
            r.passed(),
            json!({ "samples": r.samples.len(), "failures": r.failures, "seed": r.seed }),
        ))
    }));
    out.push(timed(Module::Kostant, "generic_rank", label, || {
        let r = generic_slice_rank(alg, p, &chart, params.seed)?;
        let expected = alg.dim() - alg.rank();
        Ok((
            r.exact() == Some(expected),
            json!({ "lower": r.lower, "upper": r.upper, "expected": expected }),
        ))
    }));
    out.push(timed(
        Module::Kostant,
        "conjugation_invariance",
        label,
        || {
            let failures = conjugation_invariance(alg, p, params.samples, params.seed)?;
            Ok((
                failures == 0,
                json!({ "samples": params.samples, "failures": failures }),
            ))
        },
    ));
    out
}

/// Symbolic jets for small type A, seeded rational points otherwise.
pub fn symplectic_mode(alg: &LieAlgebra, params: &Params) -> PointMode {
    if alg.kind() == LieType::A && alg.rank() <= 3 {
        PointMode::Generic
    } else {
        PointMode::Numeric {
            samples: params.samples.max(20),
            seed: params.seed,
        }
    }
}

fn slice_checks(ctx: &Context, params: &Params) -> Vec<Timed> {
    let (alg, p, label) = (&ctx.alg, &ctx.principal, ctx.label.as_str());
    let mut out = Vec::new();
    out.push(timed(Module::SliceTriv, "lemma_inclusion", label, || {
        let r = lemma_inclusion_check(alg, p)?;
        Ok((
            r.passed(),
            json!({ "entries": r.entries.len(), "failures": r.failures }),
        ))
    }));
    out.push(timed(
        Module::SliceTriv,
        "generic_round_trip",
        label,
        || {
            let r = generic_verify(alg, p, params.samples, params.seed)?;
            Ok((
                r.passed(),
                json!({ "variables": r.variables, "identities": r.identities }),
            ))
        },
    ));
    out.push(timed(Module::SliceTriv, "symplectic_pullback", label, || {
        let r = symplectic_pullback_check(alg, p, symplectic_mode(alg, params))?;
        Ok((r.passed(), json!({ "mode": r.mode, "points": r.points, "pairs": r.pairs, "failures": r.failures.len() })))
    }));
    out.push(timed(Module::SliceTriv, "degrees", label, || {
        let r = degree_bookkeeping(alg, p)?;
        Ok((
            r.passed(),
            json!({ "terms_checked": r.terms_checked, "failures": r.failures.len() }),
        ))
    }));
    out.push(timed(Module::SliceTriv, "equivariance", label, || {
        let r = equivariance_check(alg, p)?;
        Ok((r.passed(), serde_json::to_value(&r).unwrap_or_default()))
    }));
    out
}

fn dgla_checks(ctx: &mut Context, params: &Params) -> Vec<Timed> {
    let label = ctx.label.clone();
    let order = ctx.order(params);
    let l = ctx.alg.rank();
    let start = Instant::now();
    let built = ctx.dgla().cloned();
    let dg = match built {
        Ok(d) => d,
        Err(e) => {
            return vec![Timed {
                outcome: CheckOutcome::from_error("dgla", "toy_build", &label, &e),
                elapsed: start.elapsed(),
            }]
        }
    };
    let mut out = vec![Timed {
        outcome: CheckOutcome::new(
            "dgla",
            "toy_build",
            &label,
            true,
            json!({ "dims": dg.dims() }),
        ),
        elapsed: start.elapsed(),
    }];
    let split = match hodge_split(&dg) {
        Ok(s) => s,
        Err(e) => {
            out.push(Timed {
                outcome: CheckOutcome::from_error("dgla", "hodge", &label, &e),
                elapsed: Duration::ZERO,
            });
            return out;
        }
    };
    out.push(timed(Module::Dgla, "harmonic_dims", &label, || {
        let dims = split.harmonic_dims();
        Ok((dims[..3] == [l, 2 * l, l], json!({ "harmonic_dims": dims })))
    }));
    out.push(timed(Module::Dgla, "section3", &label, || {
        let r = check_section3(&dg, &split, order)?;
        Ok((r.passed(), serde_json::to_value(&r).unwrap_or_default()))
    }));
    out.push(timed(Module::Dgla, "darboux", &label, || {
        let r = darboux_check(&dg, &split, &toy_pairing(&ctx.alg), order)?;
        Ok((
            r.iter().all(|i| i.passed),
            json!({ "order": order, "identities": r }),
        ))
    }));
    out.push(timed(Module::Dgla, "kuranishi_gauge", &label, || {
        let r = kuranishi_gauge_suite(&dg, &split, order, params.seed)?;
        let bound = ctx.principal.coxeter() + 1;
        let terminates = order <= bound || r.series.last_nonzero <= bound;
        Ok((r.passed() && terminates, json!({ "termination_bound": bound, "termination_observed": order > bound, "report": r })))
    }));
    out
}

pub fn aggregate_status(rows: &[CheckOutcome]) -> Status {
    if rows.iter().any(|r| r.status == Status::Error) {
        Status::Error
    } else if rows.iter().any(|r| r.status == Status::Fail) {
        Status::Fail
    } else {
        Status::Pass
    }
}
