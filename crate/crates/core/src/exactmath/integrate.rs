//! Exact iterated integration of polynomials between polynomial bounds.

use serde::Serialize;

use super::{ExactError, MultiPoly};

/// One layer of an iterated integral: `∫_{lower}^{upper} d(var)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub var: usize,
    pub lower: MultiPoly,
    pub upper: MultiPoly,
}

impl Bound {
    pub fn new(var: usize, lower: MultiPoly, upper: MultiPoly) -> Self {
        Bound { var, lower, upper }
    }
}

/// `∫_{lower}^{upper} p d(var)`, exact.
pub fn integrate_once(
    p: &MultiPoly,
    var: usize,
    lower: &MultiPoly,
    upper: &MultiPoly,
) -> Result<MultiPoly, ExactError> {
    if var >= p.arity() {
        return Err(ExactError::VariableOutOfRange {
            index: var,
            arity: p.arity(),
        });
    }
    if lower.involves(var) || upper.involves(var) {
        return Err(ExactError::BoundDependsOnVariable(var));
    }
    let anti = p.antiderivative(var);
    let hi = anti.substitute(var, upper)?;
    let lo = anti.substitute(var, lower)?;
    Ok(&hi - &lo)
}

/// Nested integral, innermost bound first. Each bound may only mention
/// variables that are still free at that point.
pub fn iterated_integrate(p: &MultiPoly, bounds: &[Bound]) -> Result<MultiPoly, ExactError> {
    for (i, b) in bounds.iter().enumerate() {
        // an inner variable must not reappear in an outer bound
        for inner in &bounds[..i] {
            if b.lower.involves(inner.var) || b.upper.involves(inner.var) {
                return Err(ExactError::BoundDependsOnVariable(inner.var));
            }
        }
    }
    bounds.iter().try_fold(p.clone(), |acc, b| {
        integrate_once(&acc, b.var, &b.lower, &b.upper)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{q, Rational};

    fn k(arity: usize, v: Rational) -> MultiPoly {
        MultiPoly::constant(arity, v)
    }

    #[test]
    fn x_squared_on_unit_interval() {
        let x = MultiPoly::var(1, 0);
        let r = integrate_once(&x.pow(2), 0, &k(1, q(0, 1)), &k(1, q(1, 1))).unwrap();
        assert_eq!(r.as_constant(), Some(q(1, 3)));
    }

    #[test]
    fn variable_upper_bound() {
        let y = MultiPoly::var(2, 1);
        let r = integrate_once(
            &MultiPoly::one(2),
            0,
            &MultiPoly::zero(2),
            &(&MultiPoly::one(2) - &y),
        )
        .unwrap();
        assert_eq!(r, &MultiPoly::one(2) - &y);
    }

    #[test]
    fn radial_weight_integral() {
        // ∫₀¹ a²(1−a²)⁶ da
        let a = MultiPoly::var(1, 0);
        let one = MultiPoly::one(1);
        let p = &a.pow(2) * &(&one - &a.pow(2)).pow(6);
        let r = integrate_once(&p, 0, &MultiPoly::zero(1), &one).unwrap();
        assert_eq!(r.as_constant(), Some(q(1024, 45045)));
    }

    #[test]
    fn simplex_volume_and_first_moment() {
        let one = MultiPoly::one(3);
        let t = |i| MultiPoly::var(3, i);
        let bounds = vec![
            Bound::new(0, MultiPoly::zero(3), &(&one - &t(1)) - &t(2)),
            Bound::new(1, MultiPoly::zero(3), &one - &t(2)),
            Bound::new(2, MultiPoly::zero(3), one.clone()),
        ];
        let vol = iterated_integrate(&one, &bounds).unwrap();
        assert_eq!(vol.as_constant(), Some(q(1, 6)));
        let m1 = iterated_integrate(&t(0), &bounds).unwrap();
        assert_eq!(m1.as_constant(), Some(q(1, 24)));
    }

    #[test]
    fn self_dependent_bound_rejected() {
        let x = MultiPoly::var(1, 0);
        assert!(matches!(
            integrate_once(&x, 0, &MultiPoly::zero(1), &x),
            Err(ExactError::BoundDependsOnVariable(0))
        ));
    }

    #[test]
    fn outer_bound_using_inner_variable_rejected() {
        let t = |i| MultiPoly::var(2, i);
        let bounds = vec![
            Bound::new(0, MultiPoly::zero(2), t(1)),
            Bound::new(1, MultiPoly::zero(2), t(0)),
        ];
        assert!(iterated_integrate(&MultiPoly::one(2), &bounds).is_err());
    }
}
