//! Closed forms the exact pipeline is checked against at run time, and a
//! coefficient-by-coefficient comparison helper.

use serde::Serialize;

use crate::exactmath::{MultiPoly, Rational};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn x() -> MultiPoly {
    MultiPoly::var(1, 0)
}

fn one() -> MultiPoly {
    MultiPoly::one(1)
}

/// `Σ c·x^e` from `(e, c)` pairs.
pub fn from_powers(terms: &[(u32, Rational)]) -> MultiPoly {
    terms
        .iter()
        .fold(MultiPoly::zero(1), |acc, (e, c)| &acc + &x().pow(*e).scale(c))
}

fn int_poly(coeffs_high_to_low: &[i64]) -> MultiPoly {
    let deg = coeffs_high_to_low.len() as u32 - 1;
    let terms: Vec<(u32, Rational)> = coeffs_high_to_low
        .iter()
        .enumerate()
        .map(|(i, &c)| (deg - i as u32, Rational::integer(c)))
        .collect();
    from_powers(&terms)
}

/// `x(3x−1)⁹(567x⁴−3564x³+5526x²−3152x−1345)/387370509926400`.
pub fn m1() -> MultiPoly {
    let lin = int_poly(&[3, -1]);
    let quartic = int_poly(&[567, -3564, 5526, -3152, -1345]);
    (&(&x() * &lin.pow(9)) * &quartic).scale(&q(1, 387_370_509_926_400))
}

pub fn m2() -> MultiPoly {
    from_powers(&[
        (14, q(-499, 17_712_414_720)),
        (13, q(41, 151_388_160)),
        (12, q(-1061, 1_135_411_200)),
        (11, q(653, 371_589_120)),
        (10, q(-163, 82_575_360)),
        (9, q(557, 412_876_800)),
        (8, q(-11, 20_643_840)),
        (7, q(1, 10_321_920)),
        (3, q(-90533, 84_757_991_915_520)),
        (2, q(3_677_549, 7_628_219_272_396_800)),
        (1, q(-613_427, 9_916_685_054_115_840)),
    ])
}

pub fn m3() -> MultiPoly {
    from_powers(&[
        (14, q(-1, 691_891_200)),
        (3, q(15013, 84_757_991_915_520)),
        (2, q(-1_531_501, 7_628_219_272_396_800)),
        (1, q(115_799, 1_983_337_010_823_168)),
    ])
}

/// `(1−x)⁹x²(33x³+162x²+72x+8)/40874803200`.
pub fn m_sum() -> MultiPoly {
    let cubic = int_poly(&[33, 162, 72, 8]);
    (&(&(&one() - &x()).pow(9) * &x().pow(2)) * &cubic).scale(&q(1, 40_874_803_200))
}

/// `(1−a)⁹(33a³+162a²+72a+8)`.
pub fn f_poly() -> MultiPoly {
    &(&one() - &x()).pow(9) * &int_poly(&[33, 162, 72, 8])
}

pub fn f_prefactor() -> Rational {
    q(1, 319_334_400)
}

/// `f(0) = π⁵/39916800`, coefficient of `π⁵`.
pub fn f_at_zero() -> Rational {
    q(1, 39_916_800)
}

pub fn separability_probability() -> Rational {
    q(8, 33)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientDiff {
    pub power: u32,
    pub computed: Rational,
    pub expected: Rational,
    pub matches: bool,
}

/// Every power of `x` where either polynomial has a nonzero coefficient.
pub fn coefficient_report(computed: &MultiPoly, expected: &MultiPoly) -> Vec<CoefficientDiff> {
    let deg = computed.total_degree().max(expected.total_degree());
    (0..=deg)
        .filter_map(|e| {
            let c = computed.coeff(&[e]);
            let x = expected.coeff(&[e]);
            if c.is_zero() && x.is_zero() {
                return None;
            }
            Some(CoefficientDiff {
                power: e,
                matches: c == x,
                computed: c,
                expected: x,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms_are_consistent() {
        assert_eq!(&(&m1() + &m2()) + &m3(), m_sum());
        let (pre, prim) = f_poly().primitive_split();
        assert_eq!(pre, q(1, 1));
        assert_eq!(prim, f_poly());
        assert_eq!(f_prefactor() * Rational::integer(8), f_at_zero());
    }

    #[test]
    fn report_flags_mismatch() {
        let a = from_powers(&[(1, q(1, 2)), (3, q(1, 1))]);
        let b = from_powers(&[(1, q(1, 2)), (2, q(1, 1))]);
        let r = coefficient_report(&a, &b);
        assert_eq!(r.len(), 3);
        assert_eq!(r.iter().filter(|d| !d.matches).count(), 2);
    }
}
