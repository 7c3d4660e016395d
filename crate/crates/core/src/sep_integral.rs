//! The exact separability pipeline: spectra in simplex coordinates `t`,
//! integration regions, the three `M_k(x)` polynomials, the conditioned
//! volume function `f(a)` and the probability `8/33`.
//!
//! Polynomials in this module use the variable order `(x, t₁, t₂, t₃)`.

use serde::Serialize;
use thiserror::Error;

use crate::dh_density::{i_component, DensityError};
use crate::exactmath::{
    integrate_once, iterated_integrate, Bound, ExactError, MultiPoly, Rational, SymbolicReal,
};
use crate::volumes::{vandermonde, VolumeError};

pub const X: usize = 0;
pub const T1: usize = 1;
pub const T2: usize = 2;
pub const T3: usize = 3;
const ARITY: usize = 4;

pub const VARIABLE_NAMES: [&str; 4] = ["x", "t1", "t2", "t3"];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SepError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Density(#[from] DensityError),
    #[error(transparent)]
    Volume(#[from] VolumeError),
    #[error("M₁+M₂+M₃ is not divisible by x²; the a⁻² factor does not cancel")]
    NonCancellation,
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("region {region}: lower bound exceeds upper bound for t{var} at x = {x}")]
    BoundOrder {
        region: RegionName,
        var: usize,
        x: Rational,
    },
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// `c + cx·x + c1·t₁ + c2·t₂ + c3·t₃`.
fn aff(c: Rational, x: Rational, t1: Rational, t2: Rational, t3: Rational) -> MultiPoly {
    MultiPoly::linear(c, &[x, t1, t2, t3])
}

fn zero() -> MultiPoly {
    MultiPoly::zero(ARITY)
}

fn var(i: usize) -> MultiPoly {
    MultiPoly::var(ARITY, i)
}

/// Exact affine maps between `λ̂` and `t`, with the Jacobian of
/// `(t₁,t₂,t₃) ↦ (λ̂₁,λ̂₂,λ̂₃)`.
#[derive(Clone, Debug, Serialize)]
pub struct ChangeOfVariables {
    /// `λ̂₁..λ̂₄` as polynomials in `(t₁,t₂,t₃)`, using `t₄ = 1 − t₁ − t₂ − t₃`.
    pub forward: Vec<MultiPoly>,
    /// `t₁..t₃` as polynomials in `(λ̂₁,…,λ̂₄)`.
    pub inverse: Vec<MultiPoly>,
    pub jacobian: Rational,
}

pub fn lambda_t_change_of_variables() -> ChangeOfVariables {
    let t = |i| MultiPoly::var(3, i);
    let one = MultiPoly::one(3);
    let t4 = &(&(&one - &t(0)) - &t(1)) - &t(2);
    let shift = MultiPoly::constant(3, q(-1, 4));
    // λ_k = Σ_{j ≥ k} t_j / j
    let weights = [q(1, 1), q(1, 2), q(1, 3), q(1, 4)];
    let ts = [t(0), t(1), t(2), t4];
    let forward: Vec<MultiPoly> = (0..4)
        .map(|k| {
            (k..4).fold(shift.clone(), |acc, j| &acc + &ts[j].scale(&weights[j]))
        })
        .collect();
    let l = |i| MultiPoly::var(4, i);
    let inverse = vec![
        &l(0) - &l(1),
        (&l(1) - &l(2)).scale(&q(2, 1)),
        (&l(2) - &l(3)).scale(&q(3, 1)),
    ];
    let jac: Vec<Vec<Rational>> = forward[..3]
        .iter()
        .map(|f| (0..3).map(|j| f.derivative(j).as_constant().unwrap_or_default()).collect())
        .collect();
    ChangeOfVariables {
        forward,
        inverse,
        jacobian: det3(&jac),
    }
}

fn det3(m: &[Vec<Rational>]) -> Rational {
    let minor = |a: usize, b: usize| &(&m[1][a] * &m[2][b]) - &(&m[1][b] * &m[2][a]);
    &(&(&m[0][0] * &minor(1, 2)) - &(&m[0][1] * &minor(0, 2))) + &(&m[0][2] * &minor(0, 1))
}

/// `c₁, c₂, c₃` in `(x, t₁, t₂, t₃)`, with `c₁ = t₁ − t₃/3` on the upper
/// branch and `t₃/3 − t₁` on the lower one.
pub fn c_coeffs_t(branch: C1Branch) -> [MultiPoly; 3] {
    let c1 = aff(q(0, 1), q(0, 1), q(1, 1), q(0, 1), q(-1, 3));
    let c1 = match branch {
        C1Branch::Upper => c1,
        C1Branch::Lower => -c1,
    };
    [
        c1,
        aff(q(0, 1), q(0, 1), q(1, 1), q(0, 1), q(1, 3)),
        aff(q(0, 1), q(0, 1), q(1, 1), q(1, 1), q(1, 3)),
    ]
}

/// Sign choice for `|t₁ − t₃/3|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum C1Branch {
    /// `t₁ ≥ t₃/3`
    Upper,
    /// `t₁ ≤ t₃/3`
    Lower,
}

/// `V(t) = t₁t₂t₃(2t₁+t₂)(3t₂+2t₃)(6t₁+3t₂+2t₃)/432` in `(x, t₁, t₂, t₃)`.
pub fn vandermonde_t() -> MultiPoly {
    let factors = [
        var(T1),
        var(T2),
        var(T3),
        aff(q(0, 1), q(0, 1), q(2, 1), q(1, 1), q(0, 1)),
        aff(q(0, 1), q(0, 1), q(0, 1), q(3, 1), q(2, 1)),
        aff(q(0, 1), q(0, 1), q(6, 1), q(3, 1), q(2, 1)),
    ];
    factors
        .iter()
        .fold(MultiPoly::one(ARITY), |acc, f| &acc * f)
        .scale(&q(1, 432))
}

/// `∏_{i<j}(λ̂_i − λ̂_j)` composed with the change of variables, in
/// `(x, t₁, t₂, t₃)`.
pub fn vandermonde_from_lambda() -> MultiPoly {
    let cov = lambda_t_change_of_variables();
    let l: Vec<MultiPoly> = cov.forward.iter().map(|p| p.embed(ARITY, &[T1, T2, T3])).collect();
    let mut v = MultiPoly::one(ARITY);
    for i in 0..4 {
        for j in i + 1..4 {
            v = &v * &(&l[i] - &l[j]);
        }
    }
    v
}

/// `Ĩ_k`: the component `I_k` with the `c`'s written in `t`.
pub fn i_tilde(k: usize, branch: C1Branch) -> Result<MultiPoly, SepError> {
    if !(1..=3).contains(&k) {
        return Err(SepError::OutOfRange(format!("component {k}")));
    }
    // (x, c1, c2, c3) -> slots (0, 4, 5, 6) of (x, t1, t2, t3, c1, c2, c3)
    let mut p = i_component(k).embed(7, &[0, 4, 5, 6]);
    for (slot, c) in (4..7).zip(c_coeffs_t(branch)) {
        p = p.substitute(slot, &c.embed(7, &[0, 1, 2, 3]))?;
    }
    Ok(p.select_vars(&[0, 1, 2, 3])?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RegionName {
    R,
    R1a,
    R1b,
    R2a,
    R2b,
    R2ab,
    R3a,
    R3b,
    Delta3,
}

impl std::fmt::Display for RegionName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

/// A signed sum of iterated-integration domains (innermost bound first).
#[derive(Clone, Debug, Serialize)]
pub struct TRegion {
    pub name: RegionName,
    pub parts: Vec<(i64, Vec<Bound>)>,
}

impl TRegion {
    fn simple(name: RegionName, bounds: Vec<Bound>) -> Self {
        TRegion {
            name,
            parts: vec![(1, bounds)],
        }
    }

    /// `∫ p` over the region; a polynomial in whatever variables are not
    /// integrated out.
    pub fn integrate(&self, p: &MultiPoly) -> Result<MultiPoly, SepError> {
        let mut total = MultiPoly::zero(p.arity());
        for (sign, bounds) in &self.parts {
            let v = iterated_integrate(p, bounds)?;
            total = &total + &v.scale(&Rational::integer(*sign));
        }
        Ok(total)
    }

    /// Check `lower ≤ upper` for every bound at points spread through the
    /// region, with `x` fixed.
    pub fn check_bounds(&self, x: &Rational) -> Result<(), SepError> {
        let fractions = [q(1, 4), q(1, 2), q(3, 4)];
        for (_, bounds) in &self.parts {
            // walk outermost-first, fixing each variable at a fraction of its range
            for frac in &fractions {
                let mut point = vec![x.clone(), Rational::zero(), Rational::zero(), Rational::zero()];
                for b in bounds.iter().rev() {
                    let lo = b.lower.eval(&point)?;
                    let hi = b.upper.eval(&point)?;
                    if lo > hi {
                        return Err(SepError::BoundOrder {
                            region: self.name,
                            var: b.var,
                            x: x.clone(),
                        });
                    }
                    point[b.var] = &lo + &(&(&hi - &lo) * frac);
                }
            }
        }
        Ok(())
    }
}

fn b(v: usize, lower: MultiPoly, upper: MultiPoly) -> Bound {
    Bound::new(v, lower, upper)
}

fn delta3_bounds() -> Vec<Bound> {
    vec![
        b(T1, zero(), aff(q(1, 1), q(0, 1), q(0, 1), q(-1, 1), q(-1, 1))),
        b(T2, zero(), aff(q(1, 1), q(0, 1), q(0, 1), q(0, 1), q(-1, 1))),
        b(T3, zero(), MultiPoly::one(ARITY)),
    ]
}

fn r2a_bounds() -> Vec<Bound> {
    vec![
        b(
            T1,
            aff(q(1, 3), q(0, 1), q(0, 1), q(-1, 3), q(-1, 9)),
            aff(q(1, 1), q(0, 1), q(0, 1), q(-1, 1), q(-1, 1)),
        ),
        b(T2, zero(), aff(q(1, 1), q(0, 1), q(0, 1), q(0, 1), q(-4, 3))),
        b(T3, zero(), MultiPoly::constant(ARITY, q(3, 4))),
    ]
}

pub fn region(name: RegionName) -> TRegion {
    use RegionName::*;
    match name {
        Delta3 => TRegion::simple(name, delta3_bounds()),
        // λ₁ ≤ 1/2 inside the simplex
        R => TRegion {
            name,
            parts: vec![(1, delta3_bounds()), (-1, r2a_bounds())],
        },
        R1a => TRegion::simple(
            name,
            vec![
                b(
                    T1,
                    aff(q(0, 1), q(1, 1), q(0, 1), q(0, 1), q(1, 3)),
                    aff(q(1, 3), q(0, 1), q(0, 1), q(-1, 3), q(-1, 9)),
                ),
                b(T2, zero(), aff(q(1, 1), q(-3, 1), q(0, 1), q(0, 1), q(-4, 3))),
                b(T3, zero(), aff(q(3, 4), q(-9, 4), q(0, 1), q(0, 1), q(0, 1))),
            ],
        ),
        R1b => TRegion::simple(
            name,
            vec![
                b(
                    T3,
                    aff(q(0, 1), q(3, 1), q(3, 1), q(0, 1), q(0, 1)),
                    aff(q(1, 1), q(0, 1), q(-1, 1), q(-1, 1), q(0, 1)),
                ),
                b(T1, zero(), aff(q(1, 4), q(-3, 4), q(0, 1), q(-1, 4), q(0, 1))),
                b(T2, zero(), aff(q(1, 1), q(-3, 1), q(0, 1), q(0, 1), q(0, 1))),
            ],
        ),
        R2a | R3a => TRegion::simple(name, r2a_bounds()),
        R2b => TRegion::simple(
            name,
            vec![
                b(T2, zero(), aff(q(1, 1), q(0, 1), q(-1, 1), q(0, 1), q(-1, 1))),
                b(T1, zero(), aff(q(0, 1), q(1, 1), q(0, 1), q(0, 1), q(-1, 3))),
                b(T3, zero(), aff(q(0, 1), q(3, 1), q(0, 1), q(0, 1), q(0, 1))),
            ],
        ),
        R2ab => TRegion::simple(
            name,
            vec![
                b(
                    T2,
                    aff(q(1, 1), q(0, 1), q(-3, 1), q(0, 1), q(-1, 3)),
                    aff(q(1, 1), q(0, 1), q(-1, 1), q(0, 1), q(-1, 1)),
                ),
                b(
                    T1,
                    aff(q(0, 1), q(0, 1), q(0, 1), q(0, 1), q(1, 3)),
                    aff(q(0, 1), q(1, 1), q(0, 1), q(0, 1), q(-1, 3)),
                ),
                b(T3, zero(), aff(q(0, 1), q(3, 2), q(0, 1), q(0, 1), q(0, 1))),
            ],
        ),
        R3b => TRegion::simple(
            name,
            vec![
                b(T1, zero(), aff(q(0, 1), q(1, 1), q(0, 1), q(-1, 1), q(-1, 3))),
                b(T2, zero(), aff(q(0, 1), q(1, 1), q(0, 1), q(0, 1), q(-1, 3))),
                b(T3, zero(), aff(q(0, 1), q(3, 1), q(0, 1), q(0, 1), q(0, 1))),
            ],
        ),
    }
}

pub fn all_regions() -> Vec<TRegion> {
    use RegionName::*;
    [R, R1a, R1b, R2a, R2b, R2ab, R3a, R3b, Delta3]
        .into_iter()
        .map(region)
        .collect()
}

/// One signed term `sign · ∫_region V·Ĩ_k`.
#[derive(Clone, Debug)]
pub struct MTerm {
    pub sign: i64,
    pub region: RegionName,
    pub branch: C1Branch,
}

/// The region decomposition defining `M_k`.
pub fn m_terms(k: usize) -> Result<Vec<MTerm>, SepError> {
    use RegionName::*;
    let t = |sign, region, branch| MTerm {
        sign,
        region,
        branch,
    };
    Ok(match k {
        1 => vec![t(1, R1a, C1Branch::Upper), t(1, R1b, C1Branch::Lower)],
        2 => vec![
            t(1, Delta3, C1Branch::Upper),
            t(1, R2ab, C1Branch::Upper),
            t(-1, R2a, C1Branch::Upper),
            t(-1, R2b, C1Branch::Upper),
        ],
        3 => vec![
            t(1, Delta3, C1Branch::Upper),
            t(-1, R3a, C1Branch::Upper),
            t(-1, R3b, C1Branch::Upper),
        ],
        _ => return Err(SepError::OutOfRange(format!("M index {k}"))),
    })
}

/// `2 · (1/4!)`: the normalization of the eigenvalue measure times the
/// Jacobian.
pub fn m_prefactor() -> Rational {
    q(2, 1) * lambda_t_change_of_variables().jacobian
}

/// `prefactor · ∫_region V·Ĩ_k` as a polynomial in `x`.
pub fn m_term_value(k: usize, term: &MTerm) -> Result<MultiPoly, SepError> {
    let integrand = &vandermonde_t() * &i_tilde(k, term.branch)?;
    let v = region(term.region).integrate(&integrand)?;
    Ok(v.select_vars(&[X])?
        .scale(&(m_prefactor() * Rational::integer(term.sign))))
}

/// `M_k(x)`, exact, valid for `x ∈ (0, 1/3)`.
#[allow(non_snake_case)]
pub fn compute_M(k: usize) -> Result<MultiPoly, SepError> {
    let mut total = MultiPoly::zero(1);
    for term in m_terms(k)? {
        total = &total + &m_term_value(k, &term)?;
    }
    Ok(total)
}

/// `M₁ + M₂ + M₃`.
#[allow(non_snake_case)]
pub fn compute_M_sum() -> Result<MultiPoly, SepError> {
    let mut total = MultiPoly::zero(1);
    for k in 1..=3 {
        total = &total + &compute_M(k)?;
    }
    Ok(total)
}

/// `f(a) = prefactor · poly(a)` with a primitive integer polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FPoly {
    pub prefactor: SymbolicReal,
    pub poly: MultiPoly,
}

impl FPoly {
    pub fn eval_exact(&self, a: &Rational) -> Result<SymbolicReal, SepError> {
        Ok(self.prefactor.scale(&self.poly.eval(std::slice::from_ref(a))?))
    }

    pub fn eval_f64(&self, a: f64) -> f64 {
        self.prefactor.to_f64() * self.poly.eval_f64(&[a])
    }
}

/// `f(a) = (2/π)·a⁻²·(2π)⁶·(M₁+M₂+M₃)(a)`.
pub fn compute_f() -> Result<FPoly, SepError> {
    f_from_m_sum(&compute_M_sum()?)
}

pub fn f_from_m_sum(sum: &MultiPoly) -> Result<FPoly, SepError> {
    let reduced = sum
        .divide_by_var_power(0, 2)
        .map_err(|_| SepError::NonCancellation)?;
    // (2/π)(2π)⁶ = 128 π⁵
    let (content, poly) = reduced.scale(&q(128, 1)).primitive_split();
    Ok(FPoly {
        prefactor: SymbolicReal::pi_pow(5).scale(&content),
        poly,
    })
}

/// `vol_HS(D⁰) = π⁵/9676800`.
pub fn zero_conditioned_volume() -> SymbolicReal {
    SymbolicReal::pi_pow(5).scale(&q(1, 9_676_800))
}

/// `vol_HS(D^a) = vol_HS(D⁰)·(1−a²)⁶`.
pub fn conditioned_volume(a: &Rational) -> Result<SymbolicReal, SepError> {
    if a.is_negative() || *a >= 1 {
        return Err(SepError::OutOfRange(format!("a = {a} must lie in [0, 1)")));
    }
    let base = Rational::one() - a * a;
    Ok(zero_conditioned_volume().scale(&base.pow(6)))
}

/// `(π/2)·∫₀¹ a²·vol(D⁰)(1−a²)^exponent da` compared with the state-space
/// volume for `N = 4`.
pub fn radial_volume_check_with(vol_d0: &SymbolicReal, exponent: u32) -> Result<bool, SepError> {
    let a = MultiPoly::var(1, 0);
    let one = MultiPoly::one(1);
    let weight = &a.pow(2) * &(&one - &a.pow(2)).pow(exponent);
    let radial = integrate_once(&weight, 0, &MultiPoly::zero(1), &one)?
        .as_constant()
        .unwrap_or_default();
    let lhs = (&SymbolicReal::pi_pow(1) * vol_d0).scale(&(radial * q(1, 2)));
    Ok(lhs == crate::volumes::state_space_volume_hs(4)?)
}

pub fn radial_volume_check() -> Result<bool, SepError> {
    radial_volume_check_with(&zero_conditioned_volume(), 6)
}

/// `f(0) / vol_HS(D⁰)`.
pub fn separability_probability() -> Result<Rational, SepError> {
    probability_from_f(&compute_f()?)
}

pub fn probability_from_f(f: &FPoly) -> Result<Rational, SepError> {
    let ratio = f
        .eval_exact(&Rational::zero())?
        .checked_div(&zero_conditioned_volume())?;
    ratio
        .as_rational()
        .ok_or_else(|| SepError::OutOfRange(format!("ratio {ratio} is not rational")))
}

/// `∏(λ̂_i − λ̂_j)` for a centered spectrum given in `t` coordinates.
pub fn vandermonde_at_t(t: [Rational; 3]) -> Result<Rational, SepError> {
    let cov = lambda_t_change_of_variables();
    let lam: Vec<Rational> = cov
        .forward
        .iter()
        .map(|p| p.eval(&t))
        .collect::<Result<_, _>>()?;
    Ok(vandermonde(&lam))
}
