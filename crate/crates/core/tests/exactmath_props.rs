use dhsep::exactmath::{
    integrate_once, iterated_integrate, laurent_residue_with_order, q, Bound, MultiPoly, Rational,
    SymbolicReal,
};
use proptest::prelude::*;

const ARITY: usize = 3;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
}

/// Random polynomial in 3 variables of total degree at most `max_deg`.
fn poly(max_deg: u32) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0..=max_deg, 0..=max_deg, 0..=max_deg), rational()), 0..8).prop_map(
        move |terms| {
            MultiPoly::from_terms(
                ARITY,
                terms
                    .into_iter()
                    .filter(|((a, b, c), _)| a + b + c <= max_deg)
                    .map(|((a, b, c), r)| (vec![a, b, c], r)),
            )
            .unwrap()
        },
    )
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), ARITY)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ring_axioms(a in poly(4), b in poly(4), c in poly(4)) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(4), b in poly(4), x in point()) {
        let ab = (&a * &b).eval(&x).unwrap();
        prop_assert_eq!(ab, &a.eval(&x).unwrap() * &b.eval(&x).unwrap());
    }

    #[test]
    fn integration_is_linear(a in poly(6), b in poly(6), s in rational(), lo in rational(), hi in rational()) {
        let (lo, hi) = (MultiPoly::constant(ARITY, lo), MultiPoly::constant(ARITY, hi));
        let lhs = integrate_once(&(&a.scale(&s) + &b), 0, &lo, &hi).unwrap();
        let rhs = &integrate_once(&a, 0, &lo, &hi).unwrap().scale(&s)
            + &integrate_once(&b, 0, &lo, &hi).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fundamental_theorem(p in poly(6), var in 0usize..ARITY) {
        prop_assert_eq!(p.antiderivative(var).derivative(var), p.clone());
        // ∫_0^{x_var} ∂p = p − p|_{x_var=0}
        let y = MultiPoly::var(ARITY, var);
        let dp = p.derivative(var);
        let anti = dp.antiderivative(var);
        let integral = &anti.substitute(var, &y).unwrap()
            - &anti.substitute(var, &MultiPoly::zero(ARITY)).unwrap();
        let expected = &p - &p.substitute(var, &MultiPoly::zero(ARITY)).unwrap();
        prop_assert_eq!(integral, expected);
    }

    #[test]
    fn integral_splits_at_midpoint(p in poly(5), a in rational(), m in rational(), b in rational()) {
        let c = |r: &Rational| MultiPoly::constant(ARITY, r.clone());
        let whole = integrate_once(&p, 1, &c(&a), &c(&b)).unwrap();
        let split = &integrate_once(&p, 1, &c(&a), &c(&m)).unwrap()
            + &integrate_once(&p, 1, &c(&m), &c(&b)).unwrap();
        prop_assert_eq!(whole, split);
    }

    #[test]
    fn laurent_truncation_insensitive(
        l in poly(1),
        regular in prop::collection::vec((1i64..=5, -5i64..=5), 0..3),
        poles in prop::collection::vec(prop_oneof![Just(-2i64), Just(-1), Just(1), Just(2), Just(3)], 1..4),
        k in 0i32..4,
    ) {
        let mut factors: Vec<(Rational, Rational)> =
            poles.iter().map(|&d| (q(0, 1), q(d, 1))).collect();
        factors.extend(regular.iter().map(|&(c, d)| (q(c, 1), q(d, 1))));
        let order = poles.len() as i32 + k;
        let a = laurent_residue_with_order(&l, &factors, order).unwrap();
        let b = laurent_residue_with_order(&l, &factors, order + 4).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn sqrt_absorption(n in 1u64..200, r in rational(), k in 0u32..4) {
        let s = SymbolicReal::sqrt(n);
        let square = &s * &s;
        prop_assert_eq!(square.clone(), SymbolicReal::rational(q(n as i64, 1)));
        prop_assert_eq!(square.radicand(), 1);
        let x = SymbolicReal::pi_pow(k).scale(&r);
        let y = &x * &SymbolicReal::sqrt(n);
        prop_assert!((y.to_f64() - x.to_f64() * (n as f64).sqrt()).abs() <= 1e-12 * (1.0 + y.to_f64().abs()));
    }
}

/// `∫∫_{Δ} xʲ yᵏ` over the standard triangle against the beta-function value
/// `j! k! / (j + k + 2)!`.
#[test]
fn triangle_monomials_match_beta_function() {
    let fact = |n: u32| (1..=n as i64).fold(1i64, |a, b| a * b);
    let x = MultiPoly::var(2, 0);
    let y = MultiPoly::var(2, 1);
    let one = MultiPoly::one(2);
    for j in 0..6u32 {
        for k in 0..6u32 {
            let f = &x.pow(j) * &y.pow(k);
            let bounds = [
                Bound::new(1, MultiPoly::zero(2), &one - &x),
                Bound::new(0, MultiPoly::zero(2), one.clone()),
            ];
            let v = iterated_integrate(&f, &bounds).unwrap();
            let expected = Rational::new(fact(j) * fact(k), fact(j + k + 2));
            assert_eq!(v.as_constant(), Some(expected), "j={j} k={k}");
        }
    }
}

/// Integration order over a tetrahedron does not matter.
#[test]
fn tetrahedron_integration_order() {
    let v = |i| MultiPoly::var(3, i);
    let one = MultiPoly::one(3);
    let zero = MultiPoly::zero(3);
    let f = &(&v(0).pow(2) * &v(1)) + &v(2).pow(3).scale(&q(5, 1));
    let xyz = [
        Bound::new(2, zero.clone(), &(&one - &v(0)) - &v(1)),
        Bound::new(1, zero.clone(), &one - &v(0)),
        Bound::new(0, zero.clone(), one.clone()),
    ];
    let zyx = [
        Bound::new(0, zero.clone(), &(&one - &v(2)) - &v(1)),
        Bound::new(1, zero.clone(), &one - &v(2)),
        Bound::new(2, zero.clone(), one.clone()),
    ];
    assert_eq!(
        iterated_integrate(&f, &xyz).unwrap(),
        iterated_integrate(&f, &zyx).unwrap()
    );
}
