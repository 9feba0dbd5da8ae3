//! End-to-end acceptance gate. Prints one line per criterion and exits
//! nonzero if any criterion fails or exceeds its time limit.

use std::time::{Duration, Instant};

use lietriv::dgla::{
    check_section3, gauge_act, gauge_fix, harmonic_generic, hodge_split, kuranishi,
    kuranishi_gauge_suite, mc_residual_formal, series_consistency, toy_from_lie, Dgla,
    FormalElement, SeriesChoice,
};
use lietriv::exactalg::{Coeff, Matrix, PolyScalar, Scalar, SpanBasis};
use lietriv::kostant::{
    adjoint_quotient, generic_slice_rank, invariant_degrees, regularity_scan, verify_slice_chart,
    SliceChart,
};
use lietriv::liecore::{build_algebra, parse_label, Element, LieAlgebra, LieType};
use lietriv::principal::Principal;
use lietriv::sampling::sample_vector;
use lietriv::slice_triv::{
    gamma, generic_point, generic_verify, lemma_inclusion_check, phi, symplectic_pullback_check,
    CentraliserPoint, PointMode, TrivializedPoint,
};
use lietriv_cli::suite::Module;
use lietriv_cli::{build_report, Format, RunConfig};
use num_traits::{One, Zero};

const REQUIRED: [&str; 8] = ["A1", "A2", "A3", "A4", "B2", "C2", "C3", "D4"];
const SEED: u64 = 0;
const SAMPLES: usize = 20;

const LIMIT_SL2: Duration = Duration::from_secs(1);
const LIMIT_ROUND_TRIP: Duration = Duration::from_secs(30);
const LIMIT_REPORT: Duration = Duration::from_secs(120);

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T>(r: lietriv::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn setup(label: &str) -> Result<(LieAlgebra, Principal), String> {
    let (kind, rank) = ok(parse_label(label))?;
    let alg = ok(build_algebra(kind, rank))?;
    let p = ok(Principal::new(&alg))?;
    Ok((alg, p))
}

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn sl2_example() -> Check {
    let (alg, p) = setup("A1")?;
    let t = &p.triple;
    ensure!(
        t.x == alg.e(0) && t.y == alg.f(0),
        "triple is not (e, h, f) in sl(2)"
    );
    let (alpha, xi) = (PolyScalar::var("alpha"), PolyScalar::var("xi"));
    let x: Element<PolyScalar> = t.x.lift();
    let y: Element<PolyScalar> = t.y.lift();
    let c = ok(gamma(
        &alg,
        &p,
        &TrivializedPoint {
            h: x.scale_by(&alpha),
            v: y.scale_by(&xi),
        },
    ))?;
    let slice = c.slice_point(&t.y);
    ensure!(
        slice == &y + &x.scale_by(&alpha),
        "slice point {}",
        alg.format_element(&slice)
    );
    let expected = &y.scale_by(&xi) + &x.scale_by(&(&alpha * &xi));
    ensure!(
        c.u == expected,
        "centraliser part {}",
        alg.format_element(&c.u)
    );

    let (a, b) = (alg.to_matrix(&slice), alg.to_matrix(&c.u));
    let comm = ok(ok(a.mul(&b))?.sub(&ok(b.mul(&a))?))?;
    ensure!(comm.is_zero(), "matrix commutator is nonzero");

    let rho_vee = alg.h(0).scale(&ok(Scalar::ratio(1, 2))?);
    ensure!(
        ok(p.splitting.apply_p(&t.y))? == rho_vee,
        "P(y) differs from rho_vee"
    );
    ensure!(
        ok(p.splitting.apply_p(&t.h))? == -t.x.clone(),
        "P(h) differs from -x"
    );
    Ok("Gamma(alpha x, xi y) = (y + alpha x, xi y + alpha xi x); P(y) = rho_vee; P(h) = -x".into())
}

/// Coordinates of a polynomial matrix in the algebra basis, by least squares
/// against the flattened basis matrices.
fn coordinates(alg: &LieAlgebra, m: &Matrix<PolyScalar>) -> Result<Element<PolyScalar>, String> {
    let n = alg.matrix_size();
    let cols: Vec<Vec<Scalar>> = (0..alg.dim())
        .map(|k| {
            let b = alg.basis_matrix(k);
            (0..n * n).map(|e| b.get(e / n, e % n).clone()).collect()
        })
        .collect();
    let flat = Matrix::from_columns(n * n, &cols);
    let gram = ok(flat.transpose().mul(&flat))?;
    let inv = gram.inverse().ok_or("basis matrices are dependent")?;
    let left = ok(inv.mul(&flat.transpose()))?;
    let v: Vec<PolyScalar> = (0..n * n).map(|e| m.get(e / n, e % n).clone()).collect();
    let u = Element::from_coords(ok(left.lift::<PolyScalar>().mul_vec(&v))?);
    ensure!(&alg.to_matrix(&u) == m, "matrix is not in the algebra");
    Ok(u)
}

/// Polynomial elements of `z(y + h)` built as matrix powers of `y + h`:
/// traceless parts of `X^k` in type A, odd powers otherwise.
fn power_centraliser(
    alg: &LieAlgebra,
    p: &Principal,
    h: &Element<PolyScalar>,
) -> Result<Vec<Element<PolyScalar>>, String> {
    let xm = alg.to_matrix(&(&p.triple.y.lift() + h));
    let n = xm.rows();
    let l = alg.rank();
    let wanted: Vec<usize> = match alg.kind() {
        LieType::A => (1..=l).collect(),
        LieType::B | LieType::C => (1..=l).map(|k| 2 * k - 1).collect(),
        _ => (1..l).map(|k| 2 * k - 1).collect(),
    };
    let mut out = Vec::new();
    let mut power = xm.clone();
    for k in 1..=*wanted.last().expect("rank at least one") {
        if wanted.contains(&k) {
            let mut m = power.clone();
            if alg.kind() == LieType::A {
                let t = m.trace().scale(&ok(Scalar::ratio(1, n as i64))?);
                for i in 0..n {
                    let d = m.get(i, i).clone() - t.clone();
                    m.set(i, i, d);
                }
            }
            out.push(coordinates(alg, &m)?);
        }
        power = ok(power.mul(&xm))?;
    }
    Ok(out)
}

fn round_trip() -> Check {
    let mut vectors = 0;
    for label in REQUIRED {
        let (alg, p) = setup(label)?;
        let r = ok(generic_verify(&alg, &p, 2, SEED))?;
        for name in ["phi_gamma", "gamma_phi", "maurer_cartan"] {
            let id = r
                .identities
                .iter()
                .find(|i| i.name == name)
                .ok_or(format!("{label}: no {name}"))?;
            ensure!(id.passed, "{label}: {name} failed: {}", id.detail);
        }

        let (names, t) = ok(generic_point(&p))?;
        let us = power_centraliser(&alg, &p, &t.h)?;
        let point: std::collections::BTreeMap<String, Scalar> = names
            .iter()
            .cloned()
            .zip(sample_vector(SEED, 0, names.len()))
            .collect();
        let mut span = SpanBasis::new();
        for u in &us {
            ensure!(
                alg.bracket(&(&p.triple.y.lift() + &t.h), u).is_zero(),
                "{label}: power is not central"
            );
            let pt = CentraliserPoint {
                h: t.h.clone(),
                u: u.clone(),
            };
            let back = ok(gamma(&alg, &p, &ok(phi(&alg, &p, &pt))?))?;
            ensure!(back == pt, "{label}: Gamma(Phi(h, u)) differs from (h, u)");
            span.insert(ok(u.evaluate(&point))?.coords());
        }
        ensure!(
            span.dim() == us.len(),
            "{label}: power elements are dependent"
        );
        vectors += us.len();

        for (i, a) in p.decomposition.components.iter().enumerate() {
            for b in &p.decomposition.components[i + 1..] {
                for u in a.weights() {
                    for v in b.weights() {
                        ensure!(
                            alg.killing(u, v).is_zero(),
                            "{label}: components are not Killing-orthogonal"
                        );
                    }
                }
            }
        }
    }
    Ok(format!(
        "8 algebras, 2l generic coordinates, {vectors} independent power centraliser elements"
    ))
}

fn lemma_inclusion() -> Check {
    let mut total = 0;
    for label in REQUIRED {
        let (alg, p) = setup(label)?;
        let r = ok(lemma_inclusion_check(&alg, &p))?;
        let l = alg.rank();
        let cox = p.coxeter();
        ensure!(r.passed(), "{label}: {} failures", r.failures);
        ensure!(
            r.entries.len() == l * l * (cox as usize + 1),
            "{label}: wrong number of cases"
        );

        let ady = alg.ad(&p.triple.y);
        let image = SpanBasis::from_vectors(&ady.columns());
        for h in &p.decomposition.zx_basis {
            for v in &p.decomposition.zy_basis {
                let mut w = v.clone();
                for k in 0..=cox {
                    let b = alg.bracket(h, &w);
                    ensure!(
                        image.contains(b.coords()),
                        "{label}: k = {k} escapes Im ad_y"
                    );
                    let pw = ok(p.splitting.apply_p(&b))?;
                    ensure!(
                        alg.bracket(&p.triple.y, &pw) == b,
                        "{label}: P is not a right inverse"
                    );
                    w = pw;
                    total += 1;
                }
            }
        }
    }
    Ok(format!("{total} cases, rank oracle agrees"))
}

fn symplectic() -> Check {
    let mut detail = Vec::new();
    for label in REQUIRED {
        let (alg, p) = setup(label)?;
        let symbolic = alg.kind() == LieType::A && alg.rank() <= 3;
        let mode = if symbolic {
            PointMode::Generic
        } else {
            PointMode::Numeric {
                samples: SAMPLES,
                seed: SEED,
            }
        };
        let r = ok(symplectic_pullback_check(&alg, &p, mode))?;
        ensure!(r.passed(), "{label}: {} failing pairs", r.failures.len());
        ensure!(r.pairs > 0, "{label}: nothing compared");
        if !symbolic {
            ensure!(r.points >= SAMPLES, "{label}: only {} points", r.points);
        }
        detail.push(format!(
            "{label}:{}",
            if symbolic { "jets" } else { "points" }
        ));
    }
    Ok(detail.join(" "))
}

fn kostant() -> Check {
    for label in REQUIRED {
        let (alg, p) = setup(label)?;
        let chart = SliceChart::new(&p);
        let (n, l) = (alg.dim(), alg.rank());

        let r = ok(regularity_scan(&alg, &chart, SAMPLES, SEED))?;
        ensure!(
            r.passed() && r.samples.len() >= SAMPLES,
            "{label}: regularity scan failed"
        );
        for s in &r.samples {
            let u = ok(chart.slice_point(&s.coordinates))?;
            ensure!(
                alg.ad(&u).rank() == n - l,
                "{label}: sample {} is not regular",
                s.index
            );
        }

        let g = ok(generic_slice_rank(&alg, &p, &chart, SEED))?;
        ensure!(
            g.exact() == Some(n - l),
            "{label}: generic rank in [{}, {}]",
            g.lower,
            g.upper
        );

        let c = ok(verify_slice_chart(&alg, &chart, p.coxeter() + 1, SEED))?;
        ensure!(c.passed, "{label}: slice chart");
        if alg.kind() == LieType::A && l <= 3 {
            ensure!(
                c.triangular == Some(true),
                "{label}: not weighted-triangular"
            );
        }

        let cvar = PolyScalar::var("c");
        let cpow = |k: u32| (0..k).fold(PolyScalar::one(), |acc, _| &acc * &cvar);
        let a = chart.symbolic();
        let scaled: Vec<PolyScalar> = a
            .iter()
            .zip(chart.weights())
            .map(|(x, w)| x * &cpow(w))
            .collect();
        let q = ok(adjoint_quotient(&alg, &ok(chart.slice_point(&a))?))?;
        let qs = ok(adjoint_quotient(&alg, &ok(chart.slice_point(&scaled))?))?;
        for ((f, fs), d) in q.iter().zip(&qs).zip(ok(invariant_degrees(&alg))?) {
            ensure!(
                *fs == f * &cpow(d),
                "{label}: chi is not C*-equivariant in degree {d}"
            );
        }
    }
    Ok(
        "20 regular samples each, generic rank dim g - l, triangular chart A1-A3, C*-equivariance"
            .into(),
    )
}

/// Multiplicities of the `ad_h` eigenvalues give the exponents.
fn spectral_exponents(alg: &LieAlgebra, p: &Principal) -> Vec<u32> {
    let adh = alg.ad(&p.triple.h);
    let n = alg.dim();
    let mut at_least = Vec::new();
    for m in 0i64.. {
        let shifted = adh
            .sub(&Matrix::identity(n).scale(&int(2 * m)))
            .expect("square");
        let k = n - shifted.rank();
        if k == 0 {
            break;
        }
        at_least.push(k);
    }
    let mut exps = Vec::new();
    for m in 1..at_least.len() {
        let next = at_least.get(m + 1).copied().unwrap_or(0);
        exps.extend(std::iter::repeat_n(m as u32, at_least[m] - next));
    }
    exps
}

fn table_exponents(kind: LieType, l: u32) -> Vec<u32> {
    let mut v: Vec<u32> = match kind {
        LieType::A => (1..=l).collect(),
        LieType::B | LieType::C => (1..=l).map(|k| 2 * k - 1).collect(),
        _ => (1..l).map(|k| 2 * k - 1).chain([l - 1]).collect(),
    };
    v.sort_unstable();
    v
}

fn exponents() -> Check {
    let mut detail = Vec::new();
    for label in REQUIRED {
        let (alg, p) = setup(label)?;
        let exps = p.exponents();
        ensure!(
            exps == table_exponents(alg.kind(), alg.rank() as u32),
            "{label}: exponents {exps:?}"
        );
        ensure!(
            spectral_exponents(&alg, &p) == exps,
            "{label}: spectral oracle disagrees"
        );
        ensure!(
            exps.iter().map(|&m| 2 * m as usize + 1).sum::<usize>() == alg.dim(),
            "{label}: dimension sum"
        );
        ensure!(
            Some(&p.coxeter()) == exps.iter().max(),
            "{label}: Coxeter number"
        );

        let weights: Vec<(usize, &Element<Scalar>)> = p
            .decomposition
            .components
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.weights().iter().map(move |w| (i, w)))
            .collect();
        let mut gram = Matrix::zeros(weights.len(), weights.len());
        for (a, (i, u)) in weights.iter().enumerate() {
            for (b, (j, v)) in weights.iter().enumerate() {
                let hp = alg.hermitian_product(u, v);
                ensure!(
                    i == j || hp.is_zero(),
                    "{label}: W_{i} and W_{j} are not orthogonal"
                );
                gram.set(a, b, hp);
            }
        }
        ensure!(
            gram.rank() == alg.dim(),
            "{label}: Gram matrix is degenerate"
        );
        detail.push(format!("{label}:{exps:?}"));
    }
    Ok(detail.join(" "))
}

fn vadd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn vsign(a: &[Scalar], odd: bool) -> Vec<Scalar> {
    if odd {
        a.iter().map(|x| -x.clone()).collect()
    } else {
        a.to_vec()
    }
}

/// Spot checks of graded Jacobi and Leibniz on seeded elements.
fn dgla_axioms(dg: &Dgla, seed: u64) -> Result<(), String> {
    let sample = |deg: usize, k: u64| sample_vector(seed, 100 + 10 * k + deg as u64, dg.dim(deg));
    for (p, q, r) in [(0, 0, 0), (0, 0, 1), (0, 1, 1), (0, 0, 2), (1, 0, 1)] {
        let (a, b, c) = (sample(p, 1), sample(q, 2), sample(r, 3));
        let t1 = vsign(
            &dg.bracket(p, &a, q + r, &dg.bracket(q, &b, r, &c)),
            p * r % 2 == 1,
        );
        let t2 = vsign(
            &dg.bracket(q, &b, r + p, &dg.bracket(r, &c, p, &a)),
            p * q % 2 == 1,
        );
        let t3 = vsign(
            &dg.bracket(r, &c, p + q, &dg.bracket(p, &a, q, &b)),
            q * r % 2 == 1,
        );
        ensure!(
            vadd(&vadd(&t1, &t2), &t3).iter().all(Zero::is_zero),
            "Jacobi fails in degrees {p},{q},{r}"
        );
    }
    for (p, q) in [(0, 0), (0, 1), (1, 0), (0, 2)] {
        let (a, b) = (sample(p, 4), sample(q, 5));
        let lhs = dg.differential(p + q, &dg.bracket(p, &a, q, &b));
        let rhs = vadd(
            &dg.bracket(p + 1, &dg.differential(p, &a), q, &b),
            &vsign(
                &dg.bracket(p, &a, q + 1, &dg.differential(q, &b)),
                p % 2 == 1,
            ),
        );
        ensure!(lhs == rhs, "Leibniz fails in degrees {p},{q}");
    }
    Ok(())
}

fn toy_dgla() -> Check {
    for label in REQUIRED {
        let (alg, p) = setup(label)?;
        let l = alg.rank();
        let order = p.coxeter() + 2;
        let dg = ok(toy_from_lie(&alg, &p))?;
        for i in 0..2 {
            let dd = ok(dg.differential_matrix(i + 1).mul(dg.differential_matrix(i)))?;
            ensure!(dd.is_zero(), "{label}: d^2 != 0 on degree {i}");
        }
        dgla_axioms(&dg, SEED).map_err(|e| format!("{label}: {e}"))?;

        let rank = |i: usize| {
            if i < 3 {
                dg.differential_matrix(i).rank()
            } else {
                0
            }
        };
        let cohom: Vec<usize> = (0..3)
            .map(|i| dg.dim(i) - rank(i) - if i > 0 { rank(i - 1) } else { 0 })
            .collect();
        ensure!(cohom == [l, 2 * l, l], "{label}: cohomology dims {cohom:?}");
        let split = ok(hodge_split(&dg))?;
        ensure!(
            split.harmonic_dims()[..3] == cohom[..],
            "{label}: harmonic dims"
        );

        let r = ok(check_section3(&dg, &split, order))?;
        for name in [
            "isotropic",
            "ad_l0_invariant",
            "harmonic_decomposition",
            "phi_gamma_inverse",
            "slice_membership",
        ] {
            let id = r.identity(name).ok_or(format!("{label}: no {name}"))?;
            ensure!(id.passed, "{label}: {name}: {}", id.detail);
        }
        ensure!(r.passed(), "{label}: slice suite");
    }
    Ok("d^2 = 0, Jacobi, Leibniz; H = (l, 2l, l); isotropy, invariance, harmonic splitting; Phi_A Gamma_A inverse at N = h + 2".into())
}

fn delta_one_vanishes(split: &lietriv::dgla::HodgeSplitting, u: &FormalElement) -> bool {
    split.delta(1, u.coeffs()).iter().all(Zero::is_zero)
}

fn kuranishi_series() -> Check {
    let mut last = Vec::new();
    for label in REQUIRED {
        let (alg, p) = setup(label)?;
        let bound = p.coxeter() + 1;
        let order = bound + 1;
        let dg = ok(toy_from_lie(&alg, &p))?;
        let split = ok(hodge_split(&dg))?;
        let x = ok(harmonic_generic(&dg, &split, order))?;
        let s = ok(series_consistency(&dg, &split, &x, order))?;
        ensure!(
            s.termwise_equal,
            "{label}: series differs from the closed form"
        );
        ensure!(
            s.last_nonzero <= bound,
            "{label}: term {} is nonzero",
            s.last_nonzero
        );
        let r = ok(kuranishi_gauge_suite(&dg, &split, order, SEED))?;
        ensure!(
            r.passed(),
            "{label}: {:?}",
            r.identities
                .iter()
                .filter(|i| !i.passed)
                .collect::<Vec<_>>()
        );
        last.push(format!("{label}:{}", s.last_nonzero));
    }

    for label in ["A1", "A2"] {
        let (alg, p) = setup(label)?;
        let n = 6;
        let dg = ok(toy_from_lie(&alg, &p))?;
        let split = ok(hodge_split(&dg))?;
        let x = ok(harmonic_generic(&dg, &split, n))?;
        let full = ok(kuranishi(&dg, &split, &x, n, SeriesChoice::FullDelta))?;
        ensure!(
            ok(mc_residual_formal(&dg, &full))?.is_zero(),
            "{label}: full-delta series is not MC"
        );

        let vars: Vec<PolyScalar> = split
            .harmonic_names()
            .iter()
            .map(|v| PolyScalar::var(v))
            .collect();
        let parts: Vec<(PolyScalar, Vec<Scalar>)> = vars
            .iter()
            .enumerate()
            .map(|(k, v)| (v.clone(), sample_vector(SEED, 200 + k as u64, dg.dim(0))))
            .collect();
        let lambda = ok(FormalElement::linear(0, &parts, dg.dim(0), n))?;
        let moved = ok(gauge_act(&dg, &lambda, &full))?;
        ensure!(
            ok(mc_residual_formal(&dg, &moved))?.is_zero(),
            "{label}: gauge action leaves MC"
        );
        let (mu, fixed) = ok(gauge_fix(&dg, &split, &moved))?;
        ensure!(
            delta_one_vanishes(&split, &fixed),
            "{label}: gauge-fixed element not in ker delta"
        );
        ensure!(
            ok(gauge_act(&dg, &mu, &moved))? == fixed,
            "{label}: returned gauge does not reach the fixed element"
        );
        ensure!(
            ok(mc_residual_formal(&dg, &fixed))?.is_zero(),
            "{label}: gauge-fixed element not MC"
        );
    }
    Ok(format!(
        "last nonzero term {}; full delta MC at N = 6 for A1, A2",
        last.join(" ")
    ))
}

fn full_report() -> Check {
    let config = RunConfig {
        command: "report all".into(),
        algebras: REQUIRED.iter().map(|s| s.to_string()).collect(),
        checks: Module::ALL.to_vec(),
        order: None,
        samples: SAMPLES,
        seed: SEED,
        format: Format::Json,
        output: None,
    };
    let start = Instant::now();
    let first = ok(build_report(&config, false))?;
    let elapsed = start.elapsed();
    let second = ok(build_report(&config, false))?;
    ensure!(elapsed < LIMIT_REPORT, "took {elapsed:?}");
    ensure!(
        first.to_json() == second.to_json(),
        "reports differ between runs"
    );
    let failing: Vec<String> = first
        .results
        .iter()
        .filter(|r| r.status != lietriv::report::Status::Pass)
        .map(|r| format!("{}/{}/{}", r.algebra, r.module, r.check))
        .collect();
    ensure!(failing.is_empty(), "failing checks: {failing:?}");
    Ok(format!(
        "{} checks pass, byte-identical, {:.1}s",
        first.results.len(),
        elapsed.as_secs_f64()
    ))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Check, Option<Duration>); 9] = [
        (1, "sl(2) example", sl2_example, Some(LIMIT_SL2)),
        (2, "round trip", round_trip, Some(LIMIT_ROUND_TRIP)),
        (3, "lemma inclusion", lemma_inclusion, None),
        (4, "symplectic pullback", symplectic, None),
        (5, "Kostant slice", kostant, None),
        (6, "exponents", exponents, None),
        (7, "toy dgla", toy_dgla, None),
        (8, "Kuranishi series", kuranishi_series, None),
        (9, "report all", full_report, Some(LIMIT_REPORT)),
    ];
    let mut failed = 0;
    for (n, name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if elapsed >= l => Err(format!("exceeded {l:?}")),
            (o, _) => o,
        };
        let secs = elapsed.as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {n} PASS  {name} ({secs:.2}s): {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n} FAIL  {name} ({secs:.2}s): {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 9 criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria pass");
}
