//! Truncated Laurent series in one formal variable `z` whose coefficients
//! are polynomials in some outer variables.
//!
//! Enough machinery to take `Res_{z=0}` of
//! `exp(L·z) / Π (c_k + d_k·z)` with `L` a polynomial in the outer variables,
//! which is all the wall-crossing computation needs.

use super::{ExactError, MultiPoly, Rational};

/// Default highest retained power of `z`.
pub const DEFAULT_TRUNCATION: i32 = 8;

/// `Σ_{k=min_degree}^{truncation_order} coefficients[k - min_degree] · z^k`,
/// with everything above `truncation_order` unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    min_degree: i32,
    truncation_order: i32,
    coefficients: Vec<MultiPoly>,
}

impl LaurentSeries {
    fn zeros(arity: usize, min_degree: i32, truncation_order: i32) -> Self {
        let len = (truncation_order - min_degree + 1).max(0) as usize;
        LaurentSeries {
            min_degree,
            truncation_order,
            coefficients: vec![MultiPoly::zero(arity); len],
        }
    }

    pub fn min_degree(&self) -> i32 {
        self.min_degree
    }

    pub fn truncation_order(&self) -> i32 {
        self.truncation_order
    }

    /// Coefficient of `z^k`; zero below `min_degree`, error above the truncation.
    pub fn coeff(&self, k: i32) -> Result<MultiPoly, ExactError> {
        if k > self.truncation_order {
            return Err(ExactError::Truncated {
                wanted: k,
                order: self.truncation_order,
            });
        }
        if k < self.min_degree {
            return Ok(MultiPoly::zero(self.arity()));
        }
        Ok(self.coefficients[(k - self.min_degree) as usize].clone())
    }

    fn arity(&self) -> usize {
        self.coefficients.first().map(MultiPoly::arity).unwrap_or(0)
    }

    /// `exp(L·z) = Σ L^k z^k / k!` up to `order`.
    pub fn exp_linear(exponent: &MultiPoly, order: i32) -> Self {
        let arity = exponent.arity();
        let mut s = LaurentSeries::zeros(arity, 0, order);
        let mut term = MultiPoly::one(arity);
        for k in 0..=order {
            if k > 0 {
                term = (&term * exponent).scale(&Rational::new(1, k as i64));
            }
            s.coefficients[k as usize] = term.clone();
        }
        s
    }

    /// Expansion of `1 / (c + d·z)` around `z = 0`.
    pub fn reciprocal_linear(
        arity: usize,
        constant: &Rational,
        z_coeff: &Rational,
        order: i32,
    ) -> Result<Self, ExactError> {
        if constant.is_zero() {
            if z_coeff.is_zero() {
                return Err(ExactError::DegenerateFactor);
            }
            // simple pole: (1/d) z^{-1}
            let mut s = LaurentSeries::zeros(arity, -1, order);
            s.coefficients[0] = MultiPoly::constant(arity, z_coeff.recip()?);
            return Ok(s);
        }
        // (1/c) Σ (-d/c)^k z^k
        let inv_c = constant.recip()?;
        let ratio = -(z_coeff * &inv_c);
        let mut s = LaurentSeries::zeros(arity, 0, order);
        let mut c = inv_c;
        for k in 0..=order {
            s.coefficients[k as usize] = MultiPoly::constant(arity, c.clone());
            c = &c * &ratio;
        }
        Ok(s)
    }

    /// Product, truncated to the range where both factors are known.
    pub fn mul(&self, other: &LaurentSeries) -> LaurentSeries {
        let min = self.min_degree + other.min_degree;
        let top = (self.truncation_order + other.min_degree)
            .min(other.truncation_order + self.min_degree);
        let mut out = LaurentSeries::zeros(self.arity().max(other.arity()), min, top);
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients.iter().enumerate() {
                let k = self.min_degree + i as i32 + other.min_degree + j as i32;
                if k > top {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                let idx = (k - min) as usize;
                out.coefficients[idx] = &out.coefficients[idx] + &(a * b);
            }
        }
        out
    }

    /// Coefficient of `z^{-1}`.
    pub fn residue(&self) -> Result<MultiPoly, ExactError> {
        if self.min_degree > -1 {
            return Ok(MultiPoly::zero(self.arity()));
        }
        if self.truncation_order < -1 {
            return Err(ExactError::Truncated {
                wanted: -1,
                order: self.truncation_order,
            });
        }
        self.coeff(-1)
    }
}

/// `Res_{z=0}[ exp(L·z) / Π_k (c_k + d_k·z) ]` for a polynomial `L` in the
/// outer variables and rational factor data `(c_k, d_k)`.
pub fn laurent_residue(
    exponent: &MultiPoly,
    factors: &[(Rational, Rational)],
) -> Result<MultiPoly, ExactError> {
    laurent_residue_with_order(exponent, factors, DEFAULT_TRUNCATION)
}

/// As [`laurent_residue`] with an explicit truncation order (raised to the
/// pole order if it is smaller).
pub fn laurent_residue_with_order(
    exponent: &MultiPoly,
    factors: &[(Rational, Rational)],
    order: i32,
) -> Result<MultiPoly, ExactError> {
    let arity = exponent.arity();
    let poles = factors.iter().filter(|(c, _)| c.is_zero()).count() as i32;
    if poles == 0 {
        return Ok(MultiPoly::zero(arity));
    }
    let order = order.max(poles);
    let mut series = LaurentSeries::exp_linear(exponent, order);
    for (c, d) in factors {
        series = series.mul(&LaurentSeries::reciprocal_linear(arity, c, d, order)?);
    }
    series.residue()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::q;

    fn rs() -> (MultiPoly, MultiPoly) {
        (MultiPoly::var(2, 0), MultiPoly::var(2, 1))
    }

    fn triple_pole() -> Vec<(Rational, Rational)> {
        vec![(q(0, 1), q(1, 1)); 3]
    }

    #[test]
    fn triple_pole_with_sum_exponent() {
        let (r, s) = rs();
        let l = -(&r + &s);
        let res = laurent_residue(&l, &triple_pole()).unwrap();
        assert_eq!(res, (&r + &s).pow(2).scale(&q(1, 2)));
    }

    #[test]
    fn triple_pole_with_difference_exponent() {
        let (r, s) = rs();
        let res = laurent_residue(&(&r - &s), &triple_pole()).unwrap();
        assert_eq!(res, (&r - &s).pow(2).scale(&q(1, 2)));
    }

    #[test]
    fn simple_pole_zero_exponent() {
        let res = laurent_residue(&MultiPoly::zero(2), &[(q(0, 1), q(1, 1))]).unwrap();
        assert_eq!(res, MultiPoly::one(2));
    }

    #[test]
    fn no_pole_gives_zero() {
        let (r, _) = rs();
        let res = laurent_residue(&r, &[(q(2, 1), q(1, 1)), (q(-1, 1), q(3, 1))]).unwrap();
        assert!(res.is_zero());
    }

    #[test]
    fn regular_factor_shifts_residue() {
        // Res e^{0}/(z^2 (1+z)) = coefficient of z in 1/(1+z) = -1
        let f = vec![(q(0, 1), q(1, 1)), (q(0, 1), q(1, 1)), (q(1, 1), q(1, 1))];
        let res = laurent_residue(&MultiPoly::zero(1), &f).unwrap();
        assert_eq!(res.as_constant(), Some(q(-1, 1)));
    }

    #[test]
    fn degenerate_factor_rejected() {
        assert!(matches!(
            laurent_residue(&MultiPoly::zero(1), &[(q(0, 1), q(0, 1))]),
            Err(ExactError::DegenerateFactor)
        ));
    }

    #[test]
    fn truncation_insensitive() {
        let (r, s) = rs();
        let l = &r.scale(&q(3, 2)) - &s;
        let f = vec![
            (q(0, 1), q(2, 1)),
            (q(0, 1), q(-4, 1)),
            (q(1, 3), q(1, 1)),
            (q(0, 1), q(5, 1)),
        ];
        let a = laurent_residue_with_order(&l, &f, 3).unwrap();
        let b = laurent_residue_with_order(&l, &f, 7).unwrap();
        assert_eq!(a, b);
    }
}
