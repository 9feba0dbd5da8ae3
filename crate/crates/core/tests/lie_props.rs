use std::sync::OnceLock;

use lietriv::exactalg::{Coeff, Matrix, PolyScalar, Scalar};
use lietriv::kostant::{adjoint_quotient, conjugation_invariance, weighted_rescale, SliceChart};
use lietriv::liecore::{build_algebra, parse_label, Element, LieAlgebra};
use lietriv::principal::Principal;
use lietriv::sampling::sample_vector;
use lietriv::slice_triv::{
    degree_bookkeeping, equivariance_check, gamma, gamma_terms, lemma_inclusion_check, phi,
    trivialized_point, CentraliserPoint,
};
use num_traits::Zero;
use proptest::prelude::*;

const LABELS: [&str; 8] = ["A1", "A2", "A3", "A4", "B2", "C2", "C3", "D4"];

fn algebras() -> &'static [(LieAlgebra, Principal)] {
    static CACHE: OnceLock<Vec<(LieAlgebra, Principal)>> = OnceLock::new();
    CACHE.get_or_init(|| {
        LABELS
            .iter()
            .map(|l| {
                let (k, r) = parse_label(l).unwrap();
                let alg = build_algebra(k, r).unwrap();
                let p = Principal::new(&alg).unwrap();
                (alg, p)
            })
            .collect()
    })
}

fn element(alg: &LieAlgebra, seed: u64, index: u64) -> Element<Scalar> {
    Element::from_coords(sample_vector(seed, index, alg.dim()))
}

fn combination(basis: &[Element<Scalar>], coeffs: &[Scalar]) -> Element<Scalar> {
    let mut out = Element::zero(basis[0].dim());
    for (b, c) in basis.iter().zip(coeffs) {
        out.add_scaled(b, c);
    }
    out
}

fn degree_of(alg: &LieAlgebra, p: &Principal, u: &Element<Scalar>) -> Option<i64> {
    if u.is_zero() {
        return None;
    }
    let hu = alg.bracket(&p.triple.h, u);
    (-20..=20).find(|m| hu == u.scale(&Scalar::from_int(2 * m)))
}

#[test]
fn jacobi_and_commutator_on_basis() {
    for (alg, _) in algebras() {
        let n = alg.dim();
        let b: Vec<Element<Scalar>> = (0..n).map(|i| alg.basis_element(i)).collect();
        for i in 0..n {
            for j in 0..n {
                let bij = alg.bracket(&b[i], &b[j]);
                assert_eq!(bij, -alg.bracket(&b[j], &b[i]));
                let (mi, mj) = (alg.basis_matrix(i), alg.basis_matrix(j));
                let comm = mi.mul(mj).unwrap().sub(&mj.mul(mi).unwrap()).unwrap();
                assert_eq!(alg.to_matrix(&bij), comm, "{} [{i},{j}]", alg.label());
                for k in j + 1..n {
                    let s = &(&alg.bracket(&bij, &b[k])
                        + &alg.bracket(&alg.bracket(&b[j], &b[k]), &b[i]))
                        + &alg.bracket(&alg.bracket(&b[k], &b[i]), &b[j]);
                    assert!(s.is_zero(), "{} Jacobi on {i},{j},{k}", alg.label());
                }
            }
        }
    }
}

#[test]
fn killing_form_is_symmetric_nondegenerate() {
    for (alg, _) in algebras() {
        let k = alg.killing_matrix();
        assert_eq!(k, &k.transpose());
        assert_eq!(k.rank(), alg.dim());
        for i in 0..alg.rank() {
            assert_eq!(alg.killing(&alg.e(i), &alg.f(i)).real_signum(), Some(1));
        }
    }
}

#[test]
fn ad_y_nilpotency_order() {
    for (alg, p) in algebras() {
        let ady = alg.ad(&p.triple.y);
        let mut pow = Matrix::identity(alg.dim());
        let h = p.coxeter();
        for _ in 0..2 * h {
            pow = pow.mul(&ady).unwrap();
        }
        assert!(!pow.is_zero(), "{}", alg.label());
        assert!(pow.mul(&ady).unwrap().is_zero(), "{}", alg.label());
    }
}

#[test]
fn lemma_formulations_agree_and_degrees_match() {
    for (alg, p) in algebras() {
        let r = lemma_inclusion_check(alg, p).unwrap();
        assert!(
            r.entries.iter().all(|e| e.formulations_agree && e.in_image),
            "{}",
            alg.label()
        );
        assert!(
            degree_bookkeeping(alg, p).unwrap().passed(),
            "{}",
            alg.label()
        );
        assert!(
            equivariance_check(alg, p).unwrap().passed(),
            "{}",
            alg.label()
        );
    }
}

#[test]
fn quotient_conjugation_invariant() {
    for (alg, p) in algebras() {
        assert_eq!(
            conjugation_invariance(alg, p, 20, 3).unwrap(),
            0,
            "{}",
            alg.label()
        );
    }
}

#[test]
fn quotient_weighted_homogeneous() {
    for (alg, p) in algebras() {
        let chart = SliceChart::new(p);
        let a = chart.symbolic();
        let c = PolyScalar::var("c");
        let u = chart.slice_point(&a).unwrap();
        let q = adjoint_quotient(alg, &u).unwrap();
        let qc = adjoint_quotient(alg, &weighted_rescale(p, &c, &u).unwrap()).unwrap();
        for ((f, fc), m) in q.iter().zip(&qc).zip(p.exponents()) {
            assert_eq!(fc, &f.mul_ref(&c.pow(m + 1)), "{}", alg.label());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn killing_invariant(idx in 0usize..LABELS.len(), seed in any::<u64>()) {
        let (alg, _) = &algebras()[idx];
        let (u, v, w) = (element(alg, seed, 0), element(alg, seed, 1), element(alg, seed, 2));
        let s = alg.killing(&alg.bracket(&u, &v), &w) + alg.killing(&v, &alg.bracket(&u, &w));
        prop_assert!(s.is_zero());
    }

    #[test]
    fn hermitian_adjoint(idx in 0usize..LABELS.len(), seed in any::<u64>(), im in -5i64..5) {
        let (alg, _) = &algebras()[idx];
        let i = Scalar::gaussian(Scalar::zero(), Scalar::from_int(im));
        let mut u = element(alg, seed, 0);
        u.add_scaled(&element(alg, seed, 3), &i);
        let (v, w) = (element(alg, seed, 1), element(alg, seed, 2));
        let left = alg.hermitian_product(&alg.bracket(&u, &v), &w);
        let right = alg.hermitian_product(&v, &alg.bracket(&alg.compact_conjugate(&u), &w));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn eta_antilinear(idx in 0usize..LABELS.len(), seed in any::<u64>(), re in -5i64..5, im in -5i64..5) {
        let (alg, _) = &algebras()[idx];
        let c = Scalar::gaussian(Scalar::from_int(re), Scalar::from_int(im));
        let u = element(alg, seed, 0);
        prop_assert_eq!(alg.eta(&u.scale(&c)), alg.eta(&u).scale(&c.conj()));
        prop_assert_eq!(alg.eta(&alg.eta(&u)), u);
    }

    #[test]
    fn splitting_is_a_graded_right_inverse(idx in 0usize..LABELS.len(), seed in any::<u64>()) {
        let (alg, p) = &algebras()[idx];
        let s = &p.splitting;
        let w = element(alg, seed, 0);
        let pw = s.apply_pi(&w);
        prop_assert_eq!(s.apply_pi(&pw), pw.clone());
        prop_assert_eq!(alg.bracket(&p.triple.y, &s.apply_p_pi(&w)), pw);
        let xw = alg.bracket(&p.triple.x, &w);
        prop_assert_eq!(alg.bracket(&p.triple.x, &s.apply_q(&xw)), xw);
    }

    #[test]
    fn p_pi_ad_raises_degree(idx in 0usize..LABELS.len(), seed in any::<u64>()) {
        let (alg, p) = &algebras()[idx];
        let zx = &p.decomposition.zx_basis;
        for (comp, h) in p.decomposition.components.iter().zip(zx) {
            for (m, piece) in &p.grading.pieces {
                let v = combination(piece, &sample_vector(seed, (*m + 50) as u64, piece.len()));
                let out = p.splitting.apply_p_pi(&alg.bracket(h, &v));
                if let Some(d) = degree_of(alg, p, &out) {
                    prop_assert_eq!(d, *m as i64 + comp.exponent as i64 + 1);
                } else {
                    prop_assert!(out.is_zero());
                }
            }
        }
        let h = combination(zx, &sample_vector(seed, 1, zx.len()));
        let cols: Vec<Vec<Scalar>> = (0..alg.dim())
            .map(|k| p.splitting.apply_p_pi(&alg.bracket(&h, &alg.basis_element(k))).into_coords())
            .collect();
        let op = Matrix::from_columns(alg.dim(), &cols);
        let mut m = Matrix::identity(alg.dim());
        for _ in 0..=p.coxeter() {
            m = op.mul(&m).unwrap();
        }
        prop_assert!(m.is_zero());
    }

    #[test]
    fn phi_gamma_round_trip(idx in 0usize..LABELS.len(), seed in any::<u64>()) {
        let (alg, p) = &algebras()[idx];
        let l = alg.rank();
        let t = trivialized_point(p, &sample_vector(seed, 0, l), &sample_vector(seed, 1, l)).unwrap();
        prop_assert!(gamma_terms(alg, p, &t.h, &t.v).len() <= p.coxeter() as usize + 1);
        let c = gamma(alg, p, &t).unwrap();
        prop_assert!(alg.bracket(&c.slice_point(&p.triple.y), &c.u).is_zero());
        prop_assert_eq!(phi(alg, p, &c).unwrap(), t);
    }

    #[test]
    fn gamma_phi_round_trip(idx in 0usize..LABELS.len(), seed in any::<u64>()) {
        let (alg, p) = &algebras()[idx];
        let l = alg.rank();
        let h = trivialized_point(p, &sample_vector(seed, 0, l), &vec![Scalar::zero(); l]).unwrap().h;
        let y_h = &p.triple.y + &h;
        let basis = alg.centraliser(&y_h).unwrap().basis;
        prop_assert_eq!(basis.len(), l);
        let u = combination(&basis, &sample_vector(seed, 2, l));
        let pt = CentraliserPoint { h, u };
        prop_assert_eq!(gamma(alg, p, &phi(alg, p, &pt).unwrap()).unwrap(), pt);
    }
}
