use std::collections::BTreeMap;

use lietriv::exactalg::{kernel_image, solve_linear, Coeff, Jet, Matrix, PolyScalar, Scalar};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Scalar> {
    (-12i64..=12, 1i64..=9).prop_map(|(p, q)| Scalar::ratio(p, q).unwrap())
}

fn gaussian() -> impl Strategy<Value = Scalar> {
    (rational(), rational()).prop_map(|(a, b)| Scalar::gaussian(a, b))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<Scalar>> {
    proptest::collection::vec(proptest::collection::vec(rational(), cols), rows)
        .prop_map(|r| Matrix::from_rows(r).unwrap())
}

fn shaped_matrix() -> impl Strategy<Value = Matrix<Scalar>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| matrix(r, c))
}

#[derive(Clone, Debug)]
enum Expr {
    Var(usize),
    Const(i64),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0usize..3).prop_map(Expr::Var),
        (-4i64..=4).prop_map(Expr::Const)
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
        ]
    })
}

fn eval<R: Coeff>(e: &Expr, vars: &[R]) -> R {
    match e {
        Expr::Var(i) => vars[*i].clone(),
        Expr::Const(c) => R::from_scalar(&Scalar::from_int(*c)),
        Expr::Add(a, b) => eval(a, vars).add_ref(&eval(b, vars)),
        Expr::Sub(a, b) => eval(a, vars).sub_ref(&eval(b, vars)),
        Expr::Mul(a, b) => eval(a, vars).mul_ref(&eval(b, vars)),
    }
}

const NAMES: [&str; 3] = ["x0", "x1", "x2"];

fn poly() -> impl Strategy<Value = PolyScalar> {
    expr().prop_map(|e| eval(&e, &NAMES.map(PolyScalar::var)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms(a in gaussian(), b in gaussian(), c in gaussian()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            let q = a.checked_div(&b).unwrap();
            prop_assert_eq!(&q * &b, a.clone());
        } else {
            prop_assert!(a.checked_div(&b).is_err());
        }
    }

    #[test]
    fn scalar_string_round_trip(a in gaussian()) {
        let s = a.to_string();
        prop_assert!(!s.contains(' '));
        prop_assert_eq!(s.parse::<Scalar>().unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Scalar>(&json).unwrap(), a);
    }

    #[test]
    fn canonical_form(p in -30i64..30, q in 1i64..30, k in 1i64..6) {
        prop_assert_eq!(Scalar::ratio(p * k, q * k).unwrap(), Scalar::ratio(p, q).unwrap());
        prop_assert_eq!(Scalar::ratio(p * k, q * k).unwrap().to_string(), Scalar::ratio(p, q).unwrap().to_string());
    }

    #[test]
    fn jets_match_formal_derivatives(e in expr(), point in proptest::collection::vec(rational(), 3), dir in 0usize..3) {
        let p = eval(&e, &NAMES.map(PolyScalar::var));
        let at: BTreeMap<String, Scalar> = NAMES.iter().map(|s| s.to_string()).zip(point.iter().cloned()).collect();
        let jets: Vec<Jet<Scalar>> = point
            .iter()
            .enumerate()
            .map(|(i, v)| if i == dir { Jet::with_tangent(v.clone(), 0, Scalar::one()) } else { Jet::constant(v.clone()) })
            .collect();
        let j = eval(&e, &jets);
        prop_assert_eq!(j.value(), &p.evaluate(&at).unwrap());
        prop_assert_eq!(j.derivative(0), p.derivative(NAMES[dir]).evaluate(&at).unwrap());
    }

    #[test]
    fn jet_leibniz(a in expr(), b in expr(), point in proptest::collection::vec(rational(), 3)) {
        let jets: Vec<Jet<Scalar>> = point.iter().enumerate().map(|(i, v)| Jet::with_tangent(v.clone(), i, Scalar::one())).collect();
        let (f, g) = (eval(&a, &jets), eval(&b, &jets));
        let fg = f.mul_ref(&g);
        for d in 0..3 {
            prop_assert_eq!(fg.derivative(d), &(f.value() * &g.derivative(d)) + &(g.value() * &f.derivative(d)));
        }
    }

    #[test]
    fn truncated_multiplication(p in poly(), q in poly(), r in poly(), n in 0u32..5) {
        let (p, q, r) = (p.truncated(n), q.truncated(n), r.truncated(n));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        let pq = &p * &q;
        prop_assert!(pq.total_degree().is_none_or(|d| d <= n));
    }

    #[test]
    fn truncation_discards_exactly_high_degrees(p in poly(), q in poly(), n in 0u32..5) {
        let full = &p.clone().untruncated() * &q.clone().untruncated();
        let cut = &p.truncated(n) * &q.truncated(n);
        let mut expected = PolyScalar::zero();
        for k in 0..=n {
            expected = expected + full.homogeneous_part(k);
        }
        prop_assert_eq!(cut.untruncated(), expected);
    }

    #[test]
    fn kernel_and_image(m in shaped_matrix()) {
        let ki = kernel_image(&m).unwrap();
        prop_assert_eq!(ki.kernel.len() + ki.rank, m.cols());
        prop_assert_eq!(ki.image.len(), ki.rank);
        for k in &ki.kernel {
            prop_assert!(m.mul_vec(k).unwrap().iter().all(Zero::is_zero));
        }
        let cols = m.columns();
        let base = Matrix::from_columns(m.rows(), &cols).rank();
        for v in &ki.image {
            let mut ext = cols.clone();
            ext.push(v.clone());
            prop_assert_eq!(Matrix::from_columns(m.rows(), &ext).rank(), base);
        }
    }

    #[test]
    fn solutions_solve(m in shaped_matrix(), x in proptest::collection::vec(rational(), 4), b in proptest::collection::vec(rational(), 4)) {
        let x = &x[..m.cols()];
        let reachable = m.mul_vec(x).unwrap();
        let s = solve_linear(&m, &reachable).unwrap().expect("consistent system");
        prop_assert_eq!(m.mul_vec(&s).unwrap(), reachable);
        let b = &b[..m.rows()];
        if let Some(s) = solve_linear(&m, b).unwrap() {
            prop_assert_eq!(m.mul_vec(&s).unwrap(), b.to_vec());
        }
    }
}

#[test]
fn worked_examples() {
    let half = Scalar::ratio(1, 2).unwrap();
    let z = Scalar::gaussian(half.clone(), Scalar::one());
    assert_eq!(&z * &z.conj(), Scalar::ratio(5, 4).unwrap());
    assert_eq!(Scalar::ratio(2, 4).unwrap(), half);
    assert!(Scalar::one().checked_div(&Scalar::zero()).is_err());

    let t = PolyScalar::var("t");
    assert!((&t.clone().truncated(1) * &t.clone().truncated(1)).is_zero());
    let one = PolyScalar::one();
    assert_eq!(&(&one + &t) * &(&one - &t), &one - &(&t * &t));
    let (t1, t2) = (
        PolyScalar::var("t1").truncated(2),
        PolyScalar::var("t2").truncated(2),
    );
    assert_eq!(
        (&t1 * &t2).untruncated(),
        &PolyScalar::var("t1") * &PolyScalar::var("t2")
    );

    let id: Matrix<Scalar> = Matrix::identity(3);
    assert!(kernel_image(&id).unwrap().kernel.is_empty());
    assert_eq!(
        kernel_image(&Matrix::<Scalar>::zeros(2, 2))
            .unwrap()
            .kernel
            .len(),
        2
    );
    let b = vec![Scalar::from_int(1), Scalar::zero()];
    assert_eq!(solve_linear(&Matrix::zeros(2, 2), &b).unwrap(), None);
}

#[test]
fn polynomial_matrix_rejected_by_kernel() {
    let m = Matrix::from_rows(vec![vec![PolyScalar::var("t")]]).unwrap();
    assert!(kernel_image(&m).is_err());
}
