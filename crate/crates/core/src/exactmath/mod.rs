//! Exact arithmetic substrate: rationals, multivariate polynomials,
//! truncated Laurent series and `q·π^k·√m` constants.
//!
//! Everything here is immutable value types and pure functions.

mod integrate;
mod laurent;
mod poly;
mod rational;
mod symbolic;

pub use integrate::{integrate_once, iterated_integrate, Bound};
pub use laurent::{laurent_residue, laurent_residue_with_order, LaurentSeries, DEFAULT_TRUNCATION};
pub use poly::{Monomial, MultiPoly, PolyOp};
pub use rational::{q, Rational};
pub use symbolic::SymbolicReal;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("variable index {index} out of range for arity {arity}")]
    VariableOutOfRange { index: usize, arity: usize },
    #[error("integration bound depends on variable {0}")]
    BoundDependsOnVariable(usize),
    #[error("variable {0} still occurs in the polynomial")]
    UnexpectedVariable(usize),
    #[error("polynomial is not divisible by x{var}^{power}")]
    NotDivisible { var: usize, power: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("result would carry a negative power of pi")]
    NegativePiPower,
    #[error("cannot add unlike symbolic terms")]
    UnlikeTerms,
    #[error("factor 0 + 0·z has no Laurent expansion")]
    DegenerateFactor,
    #[error("coefficient of z^{wanted} is beyond truncation order {order}")]
    Truncated { wanted: i32, order: i32 },
    #[error("cannot parse {0:?} as a rational")]
    Parse(String),
}
