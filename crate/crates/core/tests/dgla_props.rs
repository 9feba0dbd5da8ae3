use std::sync::OnceLock;

use lietriv::dgla::{
    gamma_a, gauge_act, gauge_fix, harmonic_generic, hodge_split, in_slice, kuranishi,
    mc_residual_formal, phi_a, slice_criterion, toy_from_lie, Dgla, FormalElement, HodgeSplitting,
    SeriesChoice,
};
use lietriv::exactalg::{PolyScalar, Scalar};
use lietriv::liecore::{build_algebra, parse_label};
use lietriv::principal::Principal;
use lietriv::sampling::sample_vector;
use num_traits::Zero;
use proptest::prelude::*;

const LABELS: [&str; 4] = ["A1", "A2", "B2", "A3"];

fn toys() -> &'static [(Dgla, HodgeSplitting)] {
    static CACHE: OnceLock<Vec<(Dgla, HodgeSplitting)>> = OnceLock::new();
    CACHE.get_or_init(|| {
        LABELS
            .iter()
            .map(|l| {
                let (k, r) = parse_label(l).unwrap();
                let alg = build_algebra(k, r).unwrap();
                let dg = toy_from_lie(&alg, &Principal::new(&alg).unwrap()).unwrap();
                let split = hodge_split(&dg).unwrap();
                (dg, split)
            })
            .collect()
    })
}

fn sign(v: Vec<Scalar>, odd: bool) -> Vec<Scalar> {
    if odd {
        v.into_iter().map(|x| -x).collect()
    } else {
        v
    }
}

fn sum(vs: &[Vec<Scalar>]) -> Vec<Scalar> {
    let mut out = vs[0].clone();
    for v in &vs[1..] {
        for (a, b) in out.iter_mut().zip(v) {
            *a += b;
        }
    }
    out
}

#[test]
fn axioms_on_basis_tuples() {
    for (dg, _) in &toys()[..3] {
        for i in 0..2 {
            let dd = dg
                .differential_matrix(i + 1)
                .mul(dg.differential_matrix(i))
                .unwrap();
            assert!(dd.is_zero(), "{}", dg.label());
        }
        for (p, q) in [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1)] {
            for a in 0..dg.dim(p) {
                for b in 0..dg.dim(q) {
                    let (x, y) = (dg.basis(p, a), dg.basis(q, b));
                    let anti = sign(dg.bracket(q, &y, p, &x), (p * q) % 2 == 0);
                    assert_eq!(dg.bracket(p, &x, q, &y), anti, "antisymmetry {p},{q}");
                    if p + q < 3 {
                        let lhs = dg.differential(p + q, &dg.bracket(p, &x, q, &y));
                        let rhs = sum(&[
                            dg.bracket(p + 1, &dg.differential(p, &x), q, &y),
                            sign(
                                dg.bracket(p, &x, q + 1, &dg.differential(q, &y)),
                                p % 2 == 1,
                            ),
                        ]);
                        assert_eq!(lhs, rhs, "Leibniz {p},{q}");
                    }
                }
            }
        }
        for (p, q, r) in [(0, 0, 0), (0, 0, 1), (0, 1, 1), (0, 0, 2)] {
            for a in 0..dg.dim(p) {
                for b in 0..dg.dim(q) {
                    for c in 0..dg.dim(r) {
                        let (x, y, z) = (dg.basis(p, a), dg.basis(q, b), dg.basis(r, c));
                        let s = sum(&[
                            sign(
                                dg.bracket(p, &x, q + r, &dg.bracket(q, &y, r, &z)),
                                (p * r) % 2 == 1,
                            ),
                            sign(
                                dg.bracket(q, &y, r + p, &dg.bracket(r, &z, p, &x)),
                                (p * q) % 2 == 1,
                            ),
                            sign(
                                dg.bracket(r, &z, p + q, &dg.bracket(p, &x, q, &y)),
                                (q * r) % 2 == 1,
                            ),
                        ]);
                        assert!(s.iter().all(Zero::is_zero), "Jacobi {p},{q},{r}");
                    }
                }
            }
        }
    }
}

#[test]
fn toy_cohomology_dims() {
    for ((dg, split), label) in toys().iter().zip(LABELS) {
        let l: usize = label[1..].parse().unwrap();
        assert_eq!(split.harmonic_dims(), [l, 2 * l, l, 0], "{}", dg.label());
    }
}

#[test]
fn json_round_trips() {
    let (dg, split) = &toys()[0];
    let text = serde_json::to_string(dg).unwrap();
    let back: Dgla = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&back).unwrap(), text);
    let x = harmonic_generic(dg, split, 3).unwrap();
    let text = serde_json::to_string(&x).unwrap();
    assert_eq!(serde_json::from_str::<FormalElement>(&text).unwrap(), x);
}

/// A random element of `L^1 ⊗ m` linear in `tau1, tau2` plus a `tau1 tau2` term.
fn random_element(
    dg: &Dgla,
    seed: u64,
    harmonic: Option<&HodgeSplitting>,
    n: u32,
) -> FormalElement {
    let (t1, t2) = (PolyScalar::var("tau1"), PolyScalar::var("tau2"));
    let vec = |k: u64| match harmonic {
        Some(split) => {
            let basis = split.harmonic_basis(1);
            let c = sample_vector(seed, k, basis.len());
            sum(&basis
                .iter()
                .zip(&c)
                .map(|(b, x)| b.iter().map(|e| e * x).collect())
                .collect::<Vec<_>>())
        }
        None => sample_vector(seed, k, dg.dim(1)),
    };
    let parts = [
        (t1.clone(), vec(0)),
        (t2.clone(), vec(1)),
        (&t1 * &t2, vec(2)),
    ];
    FormalElement::linear(1, &parts, dg.dim(1), n).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn phi_and_gamma_invert(idx in 0usize..4, seed in any::<u64>(), n in 2u32..6) {
        let (dg, split) = &toys()[idx];
        for w in [random_element(dg, seed, Some(split), n), random_element(dg, seed, None, n)] {
            let g = gamma_a(dg, split, &w).unwrap();
            prop_assert_eq!(&phi_a(dg, split, &g).unwrap(), &w);
            prop_assert_eq!(&gamma_a(dg, split, &phi_a(dg, split, &w).unwrap()).unwrap(), &w);
        }
    }

    #[test]
    fn slice_criterion_matches_definition(idx in 0usize..3, seed in any::<u64>()) {
        let (dg, split) = &toys()[idx];
        let n = 4;
        let w = random_element(dg, seed, Some(split), n);
        let g = gamma_a(dg, split, &w).unwrap();
        prop_assert!(in_slice(dg, split, &g).unwrap());
        prop_assert!(slice_criterion(dg, split, &g).unwrap());
        let off = random_element(dg, seed ^ 1, None, n);
        prop_assert_eq!(in_slice(dg, split, &off).unwrap(), slice_criterion(dg, split, &off).unwrap());
    }

    #[test]
    fn gauge_action_preserves_mc(idx in 0usize..2, seed in any::<u64>()) {
        let (dg, split) = &toys()[idx];
        let n = 4;
        let tau = PolyScalar::var("tau");
        let line = random_element(dg, seed, Some(split), n);
        let u = kuranishi(dg, split, &line, n, SeriesChoice::FullDelta).unwrap();
        prop_assert!(mc_residual_formal(dg, &u).unwrap().is_zero());
        let parts = [(tau.clone(), sample_vector(seed, 3, dg.dim(0))), (&tau * &tau, sample_vector(seed, 4, dg.dim(0)))];
        let lambda = FormalElement::linear(0, &parts, dg.dim(0), n).unwrap();
        let moved = gauge_act(dg, &lambda, &u).unwrap();
        prop_assert!(mc_residual_formal(dg, &moved).unwrap().is_zero());
        let (_, fixed) = gauge_fix(dg, split, &moved).unwrap();
        prop_assert!(split.delta(1, fixed.coeffs()).iter().all(Zero::is_zero));
        prop_assert!(mc_residual_formal(dg, &fixed).unwrap().is_zero());
    }
}
