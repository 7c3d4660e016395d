use dhsep::exactmath::{iterated_integrate, q, Bound, MultiPoly, Rational, SymbolicReal};
use dhsep::sampling::stream_rng;
use dhsep::sep_integral::{region, RegionName};
use dhsep::volumes::{
    flag_volume_hs, hs_symp_relation_check, random_simple_centered, simplex_vandermonde_integral,
    state_space_volume_hs, vandermonde,
};
use rand::Rng;

#[test]
fn hs_symplectic_relation_on_random_spectra() {
    let mut rng = stream_rng(42, 7);
    for _ in 0..50 {
        let n = rng.random_range(2..=6);
        let lam = random_simple_centered(&mut rng, n, 1000);
        assert!(hs_symp_relation_check(&lam).unwrap(), "{:?}", lam.entries());
    }
}

/// `vol(U(N)/T) · ∫ V² over the ordered simplex · √N`. The whole simplex
/// is N! copies of the ordered chamber, each carrying the same `V²` mass.
#[test]
fn state_space_volume_from_iterated_simplex_integral() {
    for n in 2..=3usize {
        let d = n - 1;
        let vars: Vec<MultiPoly> = (0..d).map(|i| MultiPoly::var(d, i)).collect();
        let one = MultiPoly::one(d);
        let last = vars.iter().fold(one.clone(), |acc, v| &acc - v);
        let mut all = vars.clone();
        all.push(last);
        let mut v = MultiPoly::one(d);
        for i in 0..n {
            for j in i + 1..n {
                v = &v * &(&all[i] - &all[j]);
            }
        }
        let integrand = &v * &v;
        // x_{d-1} ∈ [0, 1 − Σ_{i<d-1} x_i], …, x_0 ∈ [0, 1]
        let bounds: Vec<Bound> = (0..d)
            .rev()
            .map(|k| {
                let upper = vars[..k].iter().fold(one.clone(), |acc, v| &acc - v);
                Bound::new(k, MultiPoly::zero(d), upper)
            })
            .collect();
        let whole = iterated_integrate(&integrand, &bounds).unwrap().as_constant().unwrap();
        let simplex = whole / Rational::factorial(n as u32);
        assert_eq!(simplex, simplex_vandermonde_integral(n).unwrap(), "n={n}");
        let expected = &SymbolicReal::sqrt(n as u64) * &flag_volume_hs(n).unwrap().scale(&simplex);
        assert_eq!(state_space_volume_hs(n).unwrap(), expected);
    }
}

#[test]
fn two_qubit_state_space_volume() {
    let fact = |n: i64| (1..=n).fold(Rational::one(), |a, b| &a * &q(b, 1));
    let expected = &(&q(2, 1) * &q(64, 1)) * &(&fact(2) * &fact(3)) / fact(15);
    assert_eq!(state_space_volume_hs(4).unwrap(), SymbolicReal::pi_pow(6).scale(&expected));
}

#[test]
fn vandermonde_sign_and_zeros() {
    assert_eq!(vandermonde(&[q(3, 1), q(2, 1), q(1, 1)]), q(2, 1));
    assert_eq!(vandermonde(&[q(1, 1), q(2, 1), q(3, 1)]), q(-2, 1));
    assert!(vandermonde(&[q(1, 2), q(1, 2)]).is_zero());
}

/// The simplex in `t` integrates the same in either variable order.
#[test]
fn delta3_integration_order() {
    let t = |i| MultiPoly::var(4, i);
    let one = MultiPoly::one(4);
    let zero = MultiPoly::zero(4);
    let f = &(&(&t(1) * &t(2).pow(2)) + &t(3).pow(3)) + &(&t(0) * &t(1));
    let reversed = [
        Bound::new(3, zero.clone(), &(&one - &t(1)) - &t(2)),
        Bound::new(2, zero.clone(), &one - &t(1)),
        Bound::new(1, zero.clone(), one.clone()),
    ];
    let a = region(RegionName::Delta3).integrate(&f).unwrap();
    let b = iterated_integrate(&f, &reversed).unwrap();
    assert_eq!(a, b);
    assert_eq!(
        region(RegionName::Delta3).integrate(&one).unwrap().as_constant(),
        Some(q(1, 6))
    );
}
