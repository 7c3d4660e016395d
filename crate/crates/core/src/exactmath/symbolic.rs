//! Exact reals of the form `coeff · π^k · √m`.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use super::{ExactError, Rational};

/// `coeff · π^pi_power · √radicand` with `radicand` square-free.
///
/// Zero is always `0 · π^0 · √1`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymbolicReal {
    coeff: Rational,
    #[serde(rename = "pi_pow")]
    pi_power: u32,
    #[serde(rename = "sqrt")]
    radicand: u64,
}

/// Split `n` into `(s, f)` with `n = s²·f` and `f` square-free.
fn square_free_split(mut n: u64) -> (u64, u64) {
    let mut outside = 1u64;
    let mut inside = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        outside *= p.pow(e / 2);
        if e % 2 == 1 {
            inside *= p;
        }
        p += 1;
    }
    inside *= n;
    (outside, inside)
}

impl SymbolicReal {
    pub fn new(coeff: Rational, pi_power: u32, radicand: u64) -> Result<Self, ExactError> {
        if radicand == 0 {
            return Ok(SymbolicReal::zero());
        }
        let (out, inside) = square_free_split(radicand);
        Ok(SymbolicReal::canonical(
            coeff * Rational::integer(out as i64),
            pi_power,
            inside,
        ))
    }

    fn canonical(coeff: Rational, pi_power: u32, radicand: u64) -> Self {
        if coeff.is_zero() {
            SymbolicReal::zero()
        } else {
            SymbolicReal {
                coeff,
                pi_power,
                radicand,
            }
        }
    }

    pub fn zero() -> Self {
        SymbolicReal {
            coeff: Rational::zero(),
            pi_power: 0,
            radicand: 1,
        }
    }

    pub fn one() -> Self {
        SymbolicReal::rational(Rational::one())
    }

    pub fn rational(r: Rational) -> Self {
        SymbolicReal::canonical(r, 0, 1)
    }

    pub fn pi_pow(k: u32) -> Self {
        SymbolicReal::canonical(Rational::one(), k, 1)
    }

    pub fn sqrt(n: u64) -> Self {
        SymbolicReal::new(Rational::one(), 0, n).expect("valid radicand")
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn pi_power(&self) -> u32 {
        self.pi_power
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// The value as a plain rational, if it has no π or root factor.
    pub fn as_rational(&self) -> Option<Rational> {
        (self.pi_power == 0 && self.radicand == 1).then(|| self.coeff.clone())
    }

    pub fn scale(&self, r: &Rational) -> SymbolicReal {
        SymbolicReal::canonical(&self.coeff * r, self.pi_power, self.radicand)
    }

    pub fn pow(&self, exp: u32) -> SymbolicReal {
        (0..exp).fold(SymbolicReal::one(), |acc, _| &acc * self)
    }

    /// Exact quotient. Fails on a zero divisor or when π would end up with a
    /// negative exponent.
    pub fn checked_div(&self, rhs: &SymbolicReal) -> Result<SymbolicReal, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(SymbolicReal::zero());
        }
        if rhs.pi_power > self.pi_power {
            return Err(ExactError::NegativePiPower);
        }
        // 1/√m = √m / m
        let inv = SymbolicReal::canonical(
            rhs.coeff.recip()? / Rational::integer(rhs.radicand as i64),
            0,
            rhs.radicand,
        );
        let mut out = self * &inv;
        out.pi_power -= rhs.pi_power;
        if out.is_zero() {
            out = SymbolicReal::zero();
        }
        Ok(out)
    }

    /// Sum of two like terms (same π power and radicand, or one of them zero).
    pub fn checked_add(&self, rhs: &SymbolicReal) -> Result<SymbolicReal, ExactError> {
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        if self.pi_power != rhs.pi_power || self.radicand != rhs.radicand {
            return Err(ExactError::UnlikeTerms);
        }
        Ok(SymbolicReal::canonical(
            &self.coeff + &rhs.coeff,
            self.pi_power,
            self.radicand,
        ))
    }

    pub fn to_f64(&self) -> f64 {
        self.coeff.to_f64()
            * std::f64::consts::PI.powi(self.pi_power as i32)
            * (self.radicand as f64).sqrt()
    }

    /// 17-significant-digit decimal rendering.
    pub fn decimal(&self) -> String {
        format!("{:.16e}", self.to_f64())
    }
}

impl<'a> Mul<&'a SymbolicReal> for &'a SymbolicReal {
    type Output = SymbolicReal;
    fn mul(self, rhs: &SymbolicReal) -> SymbolicReal {
        let (out, inside) = square_free_split(self.radicand * rhs.radicand);
        SymbolicReal::canonical(
            &self.coeff * &rhs.coeff * Rational::integer(out as i64),
            self.pi_power + rhs.pi_power,
            inside,
        )
    }
}

impl Mul for SymbolicReal {
    type Output = SymbolicReal;
    fn mul(self, rhs: SymbolicReal) -> SymbolicReal {
        &self * &rhs
    }
}

impl fmt::Display for SymbolicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        match self.pi_power {
            0 => {}
            1 => write!(f, "·π")?,
            k => write!(f, "·π^{k}")?,
        }
        if self.radicand != 1 {
            write!(f, "·√{}", self.radicand)?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymbolicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::q;

    #[test]
    fn sqrt_two_squared_is_rational() {
        let r2 = SymbolicReal::sqrt(2);
        let p = &r2 * &r2;
        assert_eq!(p, SymbolicReal::rational(q(2, 1)));
        assert_eq!(p.radicand(), 1);
    }

    #[test]
    fn radicand_is_reduced() {
        let s = SymbolicReal::sqrt(12);
        assert_eq!(s.radicand(), 3);
        assert_eq!(*s.coeff(), q(2, 1));
        let p = &SymbolicReal::sqrt(6) * &SymbolicReal::sqrt(10);
        assert_eq!(p.radicand(), 15);
        assert_eq!(*p.coeff(), q(2, 1));
    }

    #[test]
    fn zero_is_canonical() {
        let z = SymbolicReal::new(q(0, 1), 5, 7).unwrap();
        assert_eq!(z, SymbolicReal::zero());
        assert_eq!(z.pi_power(), 0);
        assert_eq!(z.radicand(), 1);
        let z2 = SymbolicReal::pi_pow(3).scale(&q(0, 1));
        assert_eq!(z2, SymbolicReal::zero());
    }

    #[test]
    fn division_cancels_pi_and_roots() {
        let a = SymbolicReal::new(q(1, 39916800), 5, 1).unwrap();
        let b = SymbolicReal::new(q(1, 9676800), 5, 1).unwrap();
        assert_eq!(a.checked_div(&b).unwrap().as_rational(), Some(q(8, 33)));
        let c = SymbolicReal::new(q(3, 1), 1, 2).unwrap();
        let d = SymbolicReal::new(q(1, 1), 0, 2).unwrap();
        assert_eq!(c.checked_div(&d).unwrap(), SymbolicReal::pi_pow(1).scale(&q(3, 1)));
        assert!(matches!(
            d.checked_div(&c),
            Err(ExactError::NegativePiPower)
        ));
    }

    #[test]
    fn serialization_shape() {
        let v = SymbolicReal::new(q(1, 3), 1, 2).unwrap();
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j, serde_json::json!({"coeff": "1/3", "pi_pow": 1, "sqrt": 2}));
    }

    #[test]
    fn like_terms_add() {
        let a = SymbolicReal::pi_pow(2).scale(&q(1, 2));
        let b = SymbolicReal::pi_pow(2).scale(&q(1, 3));
        assert_eq!(a.checked_add(&b).unwrap(), SymbolicReal::pi_pow(2).scale(&q(5, 6)));
        assert!(a.checked_add(&SymbolicReal::sqrt(2)).is_err());
    }
}
