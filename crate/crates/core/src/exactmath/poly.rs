//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are positional indices `0..arity`; names live only at the
//! display/serialization edge. Terms are kept in a `BTreeMap` keyed by
//! [`Monomial`], whose ordering is graded lexicographic, so two polynomials
//! are equal exactly when their term maps are equal.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{ExactError, Rational};

/// Exponent vector of a single term.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    // graded lex: total degree first, then the exponent vector lexicographically
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Binary operation selector for [`MultiPoly::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Polynomial in `arity` variables with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    arity: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(arity: usize) -> Self {
        MultiPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: Rational) -> Self {
        let mut p = MultiPoly::zero(arity);
        p.add_term(Monomial::one(arity), c);
        p
    }

    pub fn one(arity: usize) -> Self {
        MultiPoly::constant(arity, Rational::one())
    }

    /// The coordinate function `x_index`.
    pub fn var(arity: usize, index: usize) -> Self {
        assert!(index < arity, "variable {index} out of range for arity {arity}");
        let mut e = vec![0; arity];
        e[index] = 1;
        let mut p = MultiPoly::zero(arity);
        p.add_term(Monomial(e), Rational::one());
        p
    }

    /// Affine form `c0 + Σ coeffs[i]·x_i`.
    pub fn linear(constant: Rational, coeffs: &[Rational]) -> Self {
        let arity = coeffs.len();
        let mut p = MultiPoly::constant(arity, constant);
        for (i, c) in coeffs.iter().enumerate() {
            p = p + MultiPoly::var(arity, i).scale(c);
        }
        p
    }

    pub fn from_terms<I>(arity: usize, terms: I) -> Result<Self, ExactError>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = MultiPoly::zero(arity);
        for (exps, c) in terms {
            if exps.len() != arity {
                return Err(ExactError::ArityMismatch {
                    left: arity,
                    right: exps.len(),
                });
            }
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        var < self.arity && self.terms.keys().any(|m| m.0[var] > 0)
    }

    /// Constant term value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_arity(&self, other: &MultiPoly) -> Result<(), ExactError> {
        if self.arity != other.arity {
            return Err(ExactError::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        Ok(())
    }

    /// Checked ring operation; fails on arity mismatch instead of panicking.
    pub fn arith(&self, other: &MultiPoly, op: PolyOp) -> Result<MultiPoly, ExactError> {
        self.check_arity(other)?;
        Ok(match op {
            PolyOp::Add => self.add_ref(other),
            PolyOp::Sub => self.add_ref(&other.neg_ref()),
            PolyOp::Mul => self.mul_ref(other),
        })
    }

    fn add_ref(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn neg_ref(&self) -> MultiPoly {
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    fn mul_ref(&self, other: &MultiPoly) -> MultiPoly {
        let mut acc: std::collections::HashMap<Monomial, Rational> =
            std::collections::HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                acc.entry(m)
                    .and_modify(|e| *e += &c)
                    .or_insert(c);
            }
        }
        MultiPoly {
            arity: self.arity,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.arity);
        }
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        let mut result = MultiPoly::one(self.arity);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        result
    }

    /// Replace variable `var` by the polynomial `value` (same arity).
    pub fn substitute(&self, var: usize, value: &MultiPoly) -> Result<MultiPoly, ExactError> {
        if var >= self.arity {
            return Err(ExactError::VariableOutOfRange {
                index: var,
                arity: self.arity,
            });
        }
        self.check_arity(value)?;
        // group by the exponent of `var`
        let mut by_power: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut rest = m.0.clone();
            rest[var] = 0;
            by_power
                .entry(e)
                .or_insert_with(|| MultiPoly::zero(self.arity))
                .add_term(Monomial(rest), c.clone());
        }
        let mut out = MultiPoly::zero(self.arity);
        let mut power = MultiPoly::one(self.arity);
        let mut current = 0u32;
        for (e, coeff) in by_power {
            while current < e {
                power = power.mul_ref(value);
                current += 1;
            }
            out = out.add_ref(&coeff.mul_ref(&power));
        }
        Ok(out)
    }

    /// Substitute a rational constant for `var`.
    pub fn substitute_value(&self, var: usize, value: &Rational) -> Result<MultiPoly, ExactError> {
        self.substitute(var, &MultiPoly::constant(self.arity, value.clone()))
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational, ExactError> {
        if point.len() != self.arity {
            return Err(ExactError::ArityMismatch {
                left: self.arity,
                right: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= &v.pow(e as i32);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Floating-point evaluation; panics on arity mismatch.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.arity, "evaluation point has wrong arity");
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(point)
                    .fold(c.to_f64(), |acc, (&e, &v)| acc * v.powi(e as i32))
            })
            .sum()
    }

    pub fn derivative(&self, var: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.arity);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            out.add_term(Monomial(exps), c * Rational::integer(e as i64));
        }
        out
    }

    /// Antiderivative in `var` with zero constant of integration.
    pub fn antiderivative(&self, var: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.arity);
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            exps[var] += 1;
            let d = Rational::integer(exps[var] as i64);
            out.add_term(Monomial(exps), c / d);
        }
        out
    }

    /// Re-express the polynomial over a subset of its variables, in the
    /// given order. Fails if a dropped variable actually occurs.
    pub fn select_vars(&self, keep: &[usize]) -> Result<MultiPoly, ExactError> {
        for v in 0..self.arity {
            if !keep.contains(&v) && self.involves(v) {
                return Err(ExactError::UnexpectedVariable(v));
            }
        }
        let mut out = MultiPoly::zero(keep.len());
        for (m, c) in &self.terms {
            out.add_term(Monomial(keep.iter().map(|&v| m.0[v]).collect()), c.clone());
        }
        Ok(out)
    }

    /// Embed into a larger variable space: variable `i` becomes `map[i]`.
    pub fn embed(&self, new_arity: usize, map: &[usize]) -> MultiPoly {
        assert_eq!(map.len(), self.arity);
        let mut out = MultiPoly::zero(new_arity);
        for (m, c) in &self.terms {
            let mut exps = vec![0; new_arity];
            for (i, &e) in m.0.iter().enumerate() {
                exps[map[i]] += e;
            }
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Dense coefficient list `[c0, c1, ...]` of a univariate polynomial.
    pub fn univariate_coeffs(&self) -> Result<Vec<Rational>, ExactError> {
        if self.arity != 1 {
            return Err(ExactError::ArityMismatch {
                left: 1,
                right: self.arity,
            });
        }
        let deg = self.total_degree() as usize;
        let mut out = vec![Rational::zero(); deg + 1];
        for (m, c) in &self.terms {
            out[m.0[0] as usize] = c.clone();
        }
        Ok(out)
    }

    pub fn from_univariate(coeffs: &[Rational]) -> MultiPoly {
        let mut p = MultiPoly::zero(1);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial(vec![i as u32]), c.clone());
        }
        p
    }

    /// Divide a univariate-in-`var` factor `var^k` out of every term.
    pub fn divide_by_var_power(&self, var: usize, k: u32) -> Result<MultiPoly, ExactError> {
        let mut out = MultiPoly::zero(self.arity);
        for (m, c) in &self.terms {
            if m.0[var] < k {
                return Err(ExactError::NotDivisible { var, power: k });
            }
            let mut exps = m.0.clone();
            exps[var] -= k;
            out.add_term(Monomial(exps), c.clone());
        }
        Ok(out)
    }

    /// Positive rational `c` with `self = c · q`, `q` having coprime integer
    /// coefficients. Zero for the zero polynomial.
    pub fn content(&self) -> Rational {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return Rational::zero();
        }
        Rational::from_bigints(num_gcd.abs(), den_lcm).expect("nonzero lcm")
    }

    /// Write `self = prefactor · primitive` with a primitive integer
    /// polynomial whose lowest-order coefficient is positive.
    pub fn primitive_split(&self) -> (Rational, MultiPoly) {
        let content = self.content();
        if content.is_zero() {
            return (Rational::zero(), self.clone());
        }
        let sign_neg = self
            .terms
            .values()
            .next()
            .map(|c| c.is_negative())
            .unwrap_or(false);
        let pre = if sign_neg { -content } else { content };
        let prim = self.scale(&pre.recip().expect("nonzero content"));
        (pre, prim)
    }

    /// Human-readable rendering with the supplied variable names.
    pub fn display_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    let name = names.get(v).copied().unwrap_or("?");
                    if e == 1 {
                        name.to_string()
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            let coeff = if abs.is_integer() {
                abs.numer().to_string()
            } else {
                format!("({abs})")
            };
            if mono.is_empty() {
                s.push_str(&coeff);
            } else if abs.is_one() {
                s.push_str(&mono.join("*"));
            } else {
                s.push_str(&format!("{coeff}*{}", mono.join("*")));
            }
        }
        s
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.arity).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        write!(f, "{}", self.display_with(&refs))
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        self.arith(&rhs, PolyOp::Add).expect("arity mismatch in +")
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.arith(rhs, PolyOp::Add).expect("arity mismatch in +")
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        self.arith(&rhs, PolyOp::Sub).expect("arity mismatch in -")
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.arith(rhs, PolyOp::Sub).expect("arity mismatch in -")
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        self.arith(&rhs, PolyOp::Mul).expect("arity mismatch in *")
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.arith(rhs, PolyOp::Mul).expect("arity mismatch in *")
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.neg_ref()
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exps: Vec<u32>,
    coeff: Rational,
}

impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            seq.serialize_element(&TermRepr {
                exps: m.0.clone(),
                coeff: c.clone(),
            })?;
        }
        seq.end()
    }
}

impl MultiPoly {
    /// Inverse of the `[{"exps": [..], "coeff": "p/q"}]` serialization.
    /// Arity cannot be recovered from an empty list, so it is passed in.
    pub fn from_json_terms(arity: usize, value: &serde_json::Value) -> Result<MultiPoly, ExactError> {
        let terms: Vec<TermRepr> = serde_json::from_value(value.clone())
            .map_err(|e| ExactError::Parse(e.to_string()))?;
        MultiPoly::from_terms(arity, terms.into_iter().map(|t| (t.exps, t.coeff)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::q;

    fn x() -> MultiPoly {
        MultiPoly::var(2, 0)
    }
    fn y() -> MultiPoly {
        MultiPoly::var(2, 1)
    }
    fn c(v: i64) -> MultiPoly {
        MultiPoly::constant(2, Rational::integer(v))
    }

    #[test]
    fn difference_of_squares() {
        let p = (x() + c(1)) * (x() - c(1));
        let expected = x().pow(2) - c(1);
        assert_eq!(p, expected);
    }

    #[test]
    fn additive_identity() {
        let p = x() * y() + c(3);
        assert_eq!(p.clone() + MultiPoly::zero(2), p);
    }

    #[test]
    fn binomial_square() {
        let p = (x() + y()).pow(2);
        let expected = x().pow(2) + (x() * y()).scale(&q(2, 1)) + y().pow(2);
        assert_eq!(p, expected);
        assert_eq!(p.num_terms(), 3);
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let a = MultiPoly::var(2, 0);
        let b = MultiPoly::var(3, 0);
        assert!(matches!(
            a.arith(&b, PolyOp::Add),
            Err(ExactError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn substitute_examples() {
        let p = x().pow(2);
        assert_eq!(p.substitute_value(0, &q(3, 1)).unwrap(), c(9));

        let s = (x() + y()).substitute(0, &(c(1) - y())).unwrap();
        assert_eq!(s, c(1));

        // t1 - t3/3 with t1 := x + t3/3 gives x; variables (x, t1, t3)
        let xv = MultiPoly::var(3, 0);
        let t1 = MultiPoly::var(3, 1);
        let t3 = MultiPoly::var(3, 2);
        let third = q(1, 3);
        let expr = &t1 - &t3.scale(&third);
        let out = expr.substitute(1, &(&xv + &t3.scale(&third))).unwrap();
        assert_eq!(out, xv);
    }

    #[test]
    fn substitute_rejects_bad_index() {
        assert!(matches!(
            x().substitute(5, &c(1)),
            Err(ExactError::VariableOutOfRange { .. })
        ));
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = x() - x();
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn grlex_ordering() {
        let lo = Monomial::new(vec![2, 0]);
        let hi = Monomial::new(vec![0, 3]);
        assert!(lo < hi);
        assert!(Monomial::new(vec![1, 1]) < Monomial::new(vec![2, 0]));
    }

    #[test]
    fn content_and_primitive_part() {
        let p = (x().scale(&q(2, 3)) - c(4)).scale(&q(-1, 5));
        let (pre, prim) = p.primitive_split();
        assert_eq!(prim.coeff(&[0, 0]), q(6, 1));
        assert_eq!(prim.coeff(&[1, 0]), q(-1, 1));
        assert_eq!(pre, q(2, 15));
        assert_eq!(prim.scale(&pre), p);
    }

    #[test]
    fn json_terms_roundtrip() {
        let p = x().pow(3).scale(&q(-2, 7)) + y();
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v[0]["coeff"], "1/1");
        assert_eq!(MultiPoly::from_json_terms(2, &v).unwrap(), p);
    }

    #[test]
    fn select_vars_rejects_live_variable() {
        let p = x() * y();
        assert!(p.select_vars(&[0]).is_err());
        let p = x().pow(2);
        assert_eq!(p.select_vars(&[0]).unwrap(), MultiPoly::var(1, 0).pow(2));
    }
}
