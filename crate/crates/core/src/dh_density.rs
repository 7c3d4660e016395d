//! Duistermaat-Heckman densities for `SU(2)×SU(2)` acting on a regular
//! `SU(4)` coadjoint orbit.
//!
//! The torus density `p(r,s)` is built three ways: the closed form, a
//! wall-crossing walk C0 → C1 → C2 → C3 using residues, and a direct
//! fiber-volume computation. The one-variable marginal `I(x|λ̂)` lives here
//! too, with a quadrature oracle built from nine shifted copies of `p`.

use serde::Serialize;
use thiserror::Error;

use crate::exactmath::{integrate_once, laurent_residue, ExactError, MultiPoly, Rational};
use crate::volumes::{CenteredSpectrum, Spectrum, VolumeError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DensityError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Volume(#[from] VolumeError),
    #[error("expected a two-qubit spectrum of length 4, got {0}")]
    WrongDimension(usize),
    #[error("spectrum is not simple")]
    NotSimple,
    #[error("quadrature did not converge, achieved error {achieved:e}")]
    Quadrature { achieved: f64 },
}

/// Integer weight in the `(r, s)` plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Weight(pub [i64; 2]);

impl Weight {
    pub fn pair(&self, v: [i64; 2]) -> i64 {
        self.0[0] * v[0] + self.0[1] * v[1]
    }
}

/// `π(λ̂) = 2(λ̂₁+λ̂₂, λ̂₁+λ̂₃)` on the Cartan of `su(4)`.
fn project(v: [i64; 4]) -> [i64; 2] {
    [2 * (v[0] + v[1]), 2 * (v[0] + v[2])]
}

/// `−π(α)` for the six positive roots `e_i − e_j`, `i < j`, as a multiset.
pub fn weights_from_roots() -> Vec<Weight> {
    let mut out = Vec::with_capacity(6);
    for i in 0..4 {
        for j in i + 1..4 {
            let mut alpha = [0i64; 4];
            alpha[i] = 1;
            alpha[j] = -1;
            let p = project(alpha);
            out.push(Weight([-p[0], -p[1]]));
        }
    }
    out.sort();
    out
}

/// The weights without repetition, in the order
/// `(−2,2), (−2,0), (−2,−2), (0,−2)`.
pub fn distinct_weights() -> Vec<Weight> {
    vec![
        Weight([-2, 2]),
        Weight([-2, 0]),
        Weight([-2, -2]),
        Weight([0, -2]),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ChamberLabel {
    C0,
    C1,
    C2,
    C3,
}

/// A closed chamber `{v : n·v ≥ 0 for each normal n}`. `C0` is the
/// complement of the other three and carries no normals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chamber {
    pub label: ChamberLabel,
    pub normals: Vec<[i64; 2]>,
}

impl Chamber {
    pub fn new(label: ChamberLabel) -> Self {
        let normals = match label {
            ChamberLabel::C0 => vec![],
            // 0 ≤ s ≤ −r
            ChamberLabel::C1 => vec![[0, 1], [-1, -1]],
            // r ≤ s ≤ 0
            ChamberLabel::C2 => vec![[-1, 1], [0, -1]],
            // s ≤ r ≤ 0
            ChamberLabel::C3 => vec![[1, -1], [-1, 0]],
        };
        Chamber { label, normals }
    }

    fn in_closure(&self, r: f64, s: f64) -> bool {
        self.normals
            .iter()
            .all(|n| n[0] as f64 * r + n[1] as f64 * s >= 0.0)
    }

    fn in_closure_exact(&self, r: &Rational, s: &Rational) -> bool {
        self.normals.iter().all(|n| {
            let v = r * &Rational::integer(n[0]) + s * &Rational::integer(n[1]);
            !v.is_negative()
        })
    }

    pub fn contains(&self, r: f64, s: f64) -> bool {
        match self.label {
            ChamberLabel::C0 => ![ChamberLabel::C1, ChamberLabel::C2, ChamberLabel::C3]
                .iter()
                .any(|&l| Chamber::new(l).in_closure(r, s)),
            _ => self.in_closure(r, s),
        }
    }

    pub fn contains_exact(&self, r: &Rational, s: &Rational) -> bool {
        match self.label {
            ChamberLabel::C0 => ![ChamberLabel::C1, ChamberLabel::C2, ChamberLabel::C3]
                .iter()
                .any(|&l| Chamber::new(l).in_closure_exact(r, s)),
            _ => self.in_closure_exact(r, s),
        }
    }
}

/// Where a piece of a piecewise density lives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Support {
    Chamber(Chamber),
    /// Closed interval `[lo, hi]` in the single variable.
    Interval { lo: Rational, hi: Rational },
}

impl Support {
    fn contains(&self, point: &[f64]) -> bool {
        match self {
            Support::Chamber(c) => c.contains(point[0], point[1]),
            Support::Interval { lo, hi } => lo.to_f64() <= point[0] && point[0] <= hi.to_f64(),
        }
    }

    fn contains_exact(&self, point: &[Rational]) -> bool {
        match self {
            Support::Chamber(c) => c.contains_exact(&point[0], &point[1]),
            Support::Interval { lo, hi } => lo <= &point[0] && &point[0] <= hi,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub support: Support,
    pub poly: MultiPoly,
}

/// A density given by one polynomial per piece. Evaluation uses the first
/// piece containing the point, and zero outside all of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiecewiseDensity {
    pub arity: usize,
    pub pieces: Vec<Piece>,
}

impl PiecewiseDensity {
    pub fn piece(&self, label: ChamberLabel) -> Option<&MultiPoly> {
        self.pieces.iter().find_map(|p| match &p.support {
            Support::Chamber(c) if c.label == label => Some(&p.poly),
            _ => None,
        })
    }

    pub fn locate(&self, point: &[f64]) -> Option<&Piece> {
        self.pieces.iter().find(|p| p.support.contains(point))
    }

    pub fn eval(&self, point: &[f64]) -> f64 {
        self.locate(point)
            .map(|p| p.poly.eval_f64(point) + 0.0)
            .unwrap_or(0.0)
    }

    pub fn eval_exact(&self, point: &[Rational]) -> Result<Rational, DensityError> {
        match self.pieces.iter().find(|p| p.support.contains_exact(point)) {
            Some(p) => Ok(p.poly.eval(point)?),
            None => Ok(Rational::zero()),
        }
    }

    /// Total mass of a one-variable interval density.
    pub fn integral(&self) -> Result<Rational, DensityError> {
        let mut total = Rational::zero();
        for p in &self.pieces {
            if let Support::Interval { lo, hi } = &p.support {
                let v = integrate_once(
                    &p.poly,
                    0,
                    &MultiPoly::constant(1, lo.clone()),
                    &MultiPoly::constant(1, hi.clone()),
                )?;
                total += v.as_constant().unwrap_or_default();
            }
        }
        Ok(total)
    }

    /// `∫_lo^hi` of a one-variable interval density.
    pub fn integral_between(&self, lo: &Rational, hi: &Rational) -> Result<Rational, DensityError> {
        let mut total = Rational::zero();
        for p in &self.pieces {
            if let Support::Interval { lo: a, hi: b } = &p.support {
                let from = a.clone().max(lo.clone());
                let to = b.clone().min(hi.clone());
                if from >= to {
                    continue;
                }
                let v = integrate_once(
                    &p.poly,
                    0,
                    &MultiPoly::constant(1, from),
                    &MultiPoly::constant(1, to),
                )?;
                total += v.as_constant().unwrap_or_default();
            }
        }
        Ok(total)
    }

    /// Breakpoints of a one-variable interval density, ascending.
    pub fn breakpoints(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::new();
        for p in &self.pieces {
            if let Support::Interval { lo, hi } = &p.support {
                out.push(lo.clone());
                out.push(hi.clone());
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

fn rs_vars() -> (MultiPoly, MultiPoly) {
    (MultiPoly::var(2, 0), MultiPoly::var(2, 1))
}

fn chamber_piece(label: ChamberLabel, poly: MultiPoly) -> Piece {
    Piece {
        support: Support::Chamber(Chamber::new(label)),
        poly,
    }
}

/// `p(r,s)`: `(r+s)²/64` on C1, `(r²+2rs−s²)/64` on C2, `r²/32` on C3,
/// zero on C0.
pub fn convolution_density_closed() -> PiecewiseDensity {
    let (r, s) = rs_vars();
    let p1 = (&r + &s).pow(2).scale(&Rational::new(1, 64));
    let p2 = (&(&r.pow(2) + &(&r * &s).scale(&Rational::integer(2))) - &s.pow(2))
        .scale(&Rational::new(1, 64));
    let p3 = r.pow(2).scale(&Rational::new(1, 32));
    PiecewiseDensity {
        arity: 2,
        pieces: vec![
            chamber_piece(ChamberLabel::C1, p1),
            chamber_piece(ChamberLabel::C2, p2),
            chamber_piece(ChamberLabel::C3, p3),
            chamber_piece(ChamberLabel::C0, MultiPoly::zero(2)),
        ],
    }
}

/// A wall crossed in the walk, with `normal` pointing into `to`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Wall {
    pub name: &'static str,
    pub from: ChamberLabel,
    pub to: ChamberLabel,
    pub normal: [i64; 2],
    pub prefactor: Rational,
}

pub fn walls() -> Vec<Wall> {
    vec![
        Wall {
            name: "W01",
            from: ChamberLabel::C0,
            to: ChamberLabel::C1,
            normal: [-1, -1],
            prefactor: Rational::new(1, 2),
        },
        Wall {
            name: "W12",
            from: ChamberLabel::C1,
            to: ChamberLabel::C2,
            normal: [0, -1],
            prefactor: Rational::new(1, 2),
        },
        Wall {
            name: "W23",
            from: ChamberLabel::C2,
            to: ChamberLabel::C3,
            normal: [1, -1],
            prefactor: Rational::new(1, 2),
        },
    ]
}

/// `p_to − p_from` across `wall`:
/// `prefactor · Res_{z=0} e^{⟨μ,ξ⟩z} / ∏_{ψ ∉ W} ⟨ψ,ξ⟩z`.
pub fn wall_jump(wall: &Wall) -> Result<MultiPoly, DensityError> {
    let (r, s) = rs_vars();
    let exponent = &r.scale(&Rational::integer(wall.normal[0]))
        + &s.scale(&Rational::integer(wall.normal[1]));
    let factors: Vec<(Rational, Rational)> = distinct_weights()
        .iter()
        .map(|w| w.pair(wall.normal))
        .filter(|&d| d != 0)
        .map(|d| (Rational::zero(), Rational::integer(d)))
        .collect();
    let res = laurent_residue(&exponent, &factors)?;
    Ok(res.scale(&wall.prefactor))
}

/// `p(r,s)` rebuilt from zero on C0 by adding wall jumps.
pub fn convolution_density_jump() -> Result<PiecewiseDensity, DensityError> {
    let mut current = MultiPoly::zero(2);
    let mut pieces = Vec::new();
    for wall in walls() {
        current = &current + &wall_jump(&wall)?;
        pieces.push(chamber_piece(wall.to, current.clone()));
    }
    pieces.push(chamber_piece(ChamberLabel::C0, MultiPoly::zero(2)));
    Ok(PiecewiseDensity { arity: 2, pieces })
}

/// Density at `y` of the push-forward of Lebesgue measure on `R⁴₊` along
/// the matrix whose columns are the distinct weights: fiber area over
/// `√det(AAᵀ) = 12`.
pub fn fiber_polytope_density(y: [f64; 2]) -> f64 {
    let cols: Vec<[f64; 2]> = distinct_weights()
        .iter()
        .map(|w| [w.0[0] as f64, w.0[1] as f64])
        .collect();
    // AAᵀ = 12·I, so Aᵀ(AAᵀ)⁻¹y = Aᵀy/12.
    let u0: Vec<f64> = cols
        .iter()
        .map(|c| (c[0] * y[0] + c[1] * y[1]) / 12.0)
        .collect();
    let kernel = orthonormal_kernel(&cols);
    // u0 + K w ≥ 0, one half-plane per coordinate.
    let half_planes: Vec<([f64; 2], f64)> = (0..4)
        .map(|i| ([kernel[0][i], kernel[1][i]], u0[i]))
        .collect();
    let mut verts: Vec<[f64; 2]> = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let (a, ca) = half_planes[i];
            let (b, cb) = half_planes[j];
            let det = a[0] * b[1] - a[1] * b[0];
            if det.abs() < 1e-14 {
                continue;
            }
            // a·w = −ca, b·w = −cb
            let w = [(-ca * b[1] + cb * a[1]) / det, (-a[0] * cb + b[0] * ca) / det];
            let feasible = half_planes
                .iter()
                .all(|(n, c)| n[0] * w[0] + n[1] * w[1] + c >= -1e-12);
            if feasible && !verts.iter().any(|v| (v[0] - w[0]).hypot(v[1] - w[1]) < 1e-12) {
                verts.push(w);
            }
        }
    }
    polygon_area(&mut verts) / 12.0
}

/// Orthonormal basis (as two length-4 rows) of the kernel of the 2×4 matrix
/// with the given columns.
fn orthonormal_kernel(cols: &[[f64; 2]]) -> [[f64; 4]; 2] {
    // Gram-Schmidt on the projections of e_1..e_4 onto ker A.
    let proj = |e: usize| -> [f64; 4] {
        let mut v = [0.0; 4];
        v[e] = 1.0;
        // subtract Aᵀ(AAᵀ)⁻¹A e = Aᵀ A e / 12
        let ae = cols[e];
        for (k, c) in cols.iter().enumerate() {
            v[k] -= (c[0] * ae[0] + c[1] * ae[1]) / 12.0;
        }
        v
    };
    let mut basis: Vec<[f64; 4]> = Vec::new();
    for e in 0..4 {
        let mut v = proj(e);
        for b in &basis {
            let d: f64 = (0..4).map(|k| v[k] * b[k]).sum();
            for k in 0..4 {
                v[k] -= d * b[k];
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            basis.push(v.map(|x| x / norm));
        }
        if basis.len() == 2 {
            break;
        }
    }
    [basis[0], basis[1]]
}

fn polygon_area(verts: &mut [[f64; 2]]) -> f64 {
    if verts.len() < 3 {
        return 0.0;
    }
    let n = verts.len() as f64;
    let cx = verts.iter().map(|v| v[0]).sum::<f64>() / n;
    let cy = verts.iter().map(|v| v[1]).sum::<f64>() / n;
    verts.sort_by(|a, b| {
        let ta = (a[1] - cy).atan2(a[0] - cx);
        let tb = (b[1] - cy).atan2(b[0] - cx);
        ta.total_cmp(&tb)
    });
    let mut area = 0.0;
    for i in 0..verts.len() {
        let a = verts[i];
        let b = verts[(i + 1) % verts.len()];
        area += a[0] * b[1] - a[1] * b[0];
    }
    area.abs() / 2.0
}

/// `c₃ ≥ c₂ ≥ c₁ ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CCoeffs {
    pub c1: Rational,
    pub c2: Rational,
    pub c3: Rational,
}

impl CCoeffs {
    pub fn to_f64(&self) -> [f64; 3] {
        [self.c1.to_f64(), self.c2.to_f64(), self.c3.to_f64()]
    }
}

fn require_four(lam: &CenteredSpectrum) -> Result<&[Rational], DensityError> {
    match lam.dimension() {
        4 => Ok(lam.entries()),
        n => Err(DensityError::WrongDimension(n)),
    }
}

/// `c₃ = 2(λ̂₁+λ̂₂)`, `c₂ = 2(λ̂₁+λ̂₃)`, `c₁ = 2|λ̂₁+λ̂₄|`.
pub fn c_coeffs(lam: &CenteredSpectrum) -> Result<CCoeffs, DensityError> {
    let l = require_four(lam)?;
    let two = Rational::integer(2);
    Ok(CCoeffs {
        c1: (&two * &(&l[0] + &l[3])).abs(),
        c2: &two * &(&l[0] + &l[2]),
        c3: &two * &(&l[0] + &l[1]),
    })
}

/// `{(x,y) ∈ [0,c₃]² : x+y ≤ c₂+c₃, |x−y| ≤ c₃−c₁}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MomentPolytope2Q {
    pub c: CCoeffs,
}

impl MomentPolytope2Q {
    pub fn contains(&self, x: f64, y: f64, tol: f64) -> bool {
        let [c1, c2, c3] = self.c.to_f64();
        x >= -tol
            && y >= -tol
            && x <= c3 + tol
            && y <= c3 + tol
            && x + y <= c2 + c3 + tol
            && (x - y).abs() <= c3 - c1 + tol
    }

    pub fn contains_exact(&self, x: &Rational, y: &Rational) -> bool {
        let CCoeffs { c1, c2, c3 } = &self.c;
        !x.is_negative()
            && !y.is_negative()
            && x <= c3
            && y <= c3
            && &(x + y) <= &(c2 + c3)
            && (x - y).abs() <= c3 - c1
    }
}

pub fn moment_polytope(c: CCoeffs) -> MomentPolytope2Q {
    MomentPolytope2Q { c }
}

/// Whether marginals with smallest eigenvalues `lam_min_a`, `lam_min_b` are
/// compatible with the global spectrum.
pub fn bravyi_compatible(
    global: &Spectrum,
    lam_min_a: f64,
    lam_min_b: f64,
) -> Result<bool, DensityError> {
    if global.dimension() != 4 {
        return Err(DensityError::WrongDimension(global.dimension()));
    }
    let poly = moment_polytope(c_coeffs(&global.centered())?);
    Ok(poly.contains(1.0 - 2.0 * lam_min_a, 1.0 - 2.0 * lam_min_b, 1e-12))
}

/// `I_k` as a polynomial in `(x, c₁, c₂, c₃)`:
/// `I₁ = (c₃²−c₂²)/64·x(x−c₁)²`, `I₂ = (c₁²−c₃²)/64·x(x−c₂)²`,
/// `I₃ = (c₂²−c₁²)/64·x(x−c₃)²`.
pub fn i_component(k: usize) -> MultiPoly {
    assert!((1..=3).contains(&k), "component index must be 1, 2 or 3");
    let v = |i| MultiPoly::var(4, i);
    let x = v(0);
    let c = [v(1), v(2), v(3)];
    let (a, b) = match k {
        1 => (2, 1),
        2 => (0, 2),
        _ => (1, 0),
    };
    let weight = (&c[a].pow(2) - &c[b].pow(2)).scale(&Rational::new(1, 64));
    &(&weight * &x) * &(&x - &c[k - 1]).pow(2)
}

/// `I(x|λ̂) = I₁ + I₂ + I₃` on the breakpoint grid `0 ≤ c₁ ≤ c₂ ≤ c₃`.
#[allow(non_snake_case)]
pub fn marginal_density_I(lam: &CenteredSpectrum) -> Result<PiecewiseDensity, DensityError> {
    require_four(lam)?;
    if !lam.is_simple() {
        return Err(DensityError::NotSimple);
    }
    let c = c_coeffs(lam)?;
    let point = |cs: &CCoeffs| [cs.c1.clone(), cs.c2.clone(), cs.c3.clone()];
    let comps: Vec<MultiPoly> = (1..=3)
        .map(|k| -> Result<MultiPoly, ExactError> {
            let mut p = i_component(k);
            for (idx, val) in point(&c).iter().enumerate() {
                p = p.substitute_value(idx + 1, val)?;
            }
            p.select_vars(&[0])
        })
        .collect::<Result<_, _>>()?;
    let grid = [Rational::zero(), c.c1.clone(), c.c2.clone(), c.c3.clone()];
    let mut pieces = Vec::new();
    for i in 0..3 {
        if grid[i] == grid[i + 1] {
            continue;
        }
        let poly = comps[i..]
            .iter()
            .fold(MultiPoly::zero(1), |acc, p| &acc + p);
        pieces.push(Piece {
            support: Support::Interval {
                lo: grid[i].clone(),
                hi: grid[i + 1].clone(),
            },
            poly,
        });
    }
    Ok(PiecewiseDensity { arity: 1, pieces })
}

/// Nine `(sign, a, b)` shifts; `I(x)` is the signed sum of
/// `∫_{y≥0} x·y·p(x−a, y−b) dy`.
pub fn nine_delta_terms(c: &CCoeffs) -> Vec<(f64, f64, f64)> {
    let [c1, c2, c3] = c.to_f64();
    vec![
        (1.0, c1, c3),
        (-1.0, c1, c2),
        (-1.0, c2, c3),
        (1.0, c2, c1),
        (1.0, c2, -c1),
        (1.0, c3, c2),
        (1.0, c3, -c2),
        (-1.0, c3, c1),
        (-1.0, c3, -c1),
    ]
}

fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (f(a) + 4.0 * f((a + b) / 2.0) + f(b))
}

fn adaptive_simpson(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64, f64> {
    let m = (a + b) / 2.0;
    let left = simpson(f, a, m);
    let right = simpson(f, m, b);
    let err = (left + right - whole).abs();
    if err <= 15.0 * tol {
        return Ok(left + right + (left + right - whole) / 15.0);
    }
    if depth == 0 {
        return Err(err);
    }
    let l = adaptive_simpson(f, a, m, left, tol / 2.0, depth - 1)?;
    let r = adaptive_simpson(f, m, b, right, tol / 2.0, depth - 1)?;
    Ok(l + r)
}

/// `I(x|λ̂)` by quadrature over the nine shifted copies of `p`, splitting
/// each `y`-integral at the shifted chamber walls.
pub fn marginal_density_oracle(lam: &CenteredSpectrum, x: f64) -> Result<f64, DensityError> {
    let c = c_coeffs(lam)?;
    let c3 = c.c3.to_f64();
    if x <= 0.0 || x >= c3 {
        return Ok(0.0);
    }
    let p = convolution_density_closed();
    let tol = 1e-9;
    let mut total = 0.0;
    let terms = nine_delta_terms(&c);
    for &(sign, a, b) in &terms {
        let r = x - a;
        if r > 0.0 {
            continue;
        }
        // support in s is s ≤ −r, so y ≤ b − r
        let top = b - r;
        if top <= 0.0 {
            continue;
        }
        let mut cuts: Vec<f64> = [0.0, b, b - r, b + r, top]
            .into_iter()
            .filter(|&t| (0.0..=top).contains(&t))
            .collect();
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let f = |y: f64| x * y * p.eval(&[r, y - b]);
        for w in cuts.windows(2) {
            let whole = simpson(&f, w[0], w[1]);
            let piece = adaptive_simpson(&f, w[0], w[1], whole, tol / 64.0, 40)
                .map_err(|achieved| DensityError::Quadrature { achieved })?;
            total += sign * piece;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::q;

    fn lam(xs: [(i64, i64); 4]) -> CenteredSpectrum {
        CenteredSpectrum::new(xs.iter().map(|&(a, b)| q(a, b)).collect()).unwrap()
    }

    #[test]
    fn root_weights() {
        let w = weights_from_roots();
        assert_eq!(w.len(), 6);
        assert_eq!(w.iter().filter(|x| x.0 == [-2, 0]).count(), 2);
        assert_eq!(w.iter().filter(|x| x.0 == [0, -2]).count(), 2);
        assert_eq!(project([0, 1, -1, 0]).map(|v| -v), [-2, 2]);
        let mut d = distinct_weights();
        d.sort();
        let mut from_roots = w.clone();
        from_roots.dedup();
        assert_eq!(d, from_roots);
    }

    #[test]
    fn closed_form_values() {
        let p = convolution_density_closed();
        assert_eq!(p.eval_exact(&[q(-2, 1), q(-1, 1)]).unwrap(), q(7, 64));
        assert!(p.eval_exact(&[q(-1, 1), q(1, 1)]).unwrap().is_zero());
        assert!(p.eval_exact(&[q(1, 1), q(1, 1)]).unwrap().is_zero());
    }

    #[test]
    fn jump_walk_matches_closed_form() {
        let closed = convolution_density_closed();
        let jump = convolution_density_jump().unwrap();
        for label in [ChamberLabel::C1, ChamberLabel::C2, ChamberLabel::C3] {
            assert_eq!(closed.piece(label), jump.piece(label), "{label:?}");
        }
        let (r, s) = rs_vars();
        assert_eq!(
            wall_jump(&walls()[1]).unwrap(),
            -s.pow(2).scale(&q(1, 32))
        );
        assert_eq!(
            wall_jump(&walls()[2]).unwrap(),
            (&r - &s).pow(2).scale(&q(1, 64))
        );
    }

    #[test]
    fn wall_continuity() {
        let p = convolution_density_closed();
        let (p1, p2, p3) = (
            p.piece(ChamberLabel::C1).unwrap(),
            p.piece(ChamberLabel::C2).unwrap(),
            p.piece(ChamberLabel::C3).unwrap(),
        );
        let r = MultiPoly::var(2, 0);
        let zero = MultiPoly::zero(2);
        assert_eq!(p1.substitute(1, &zero).unwrap(), p2.substitute(1, &zero).unwrap());
        assert_eq!(p2.substitute(1, &r).unwrap(), p3.substitute(1, &r).unwrap());
        assert!(p1.substitute(1, &-r.clone()).unwrap().is_zero());
        assert!(p3.substitute(0, &zero).unwrap().is_zero());
    }

    #[test]
    fn fiber_oracle_examples() {
        assert!((fiber_polytope_density([-2.0, -1.0]) - 7.0 / 64.0).abs() < 1e-9);
        assert!(fiber_polytope_density([1.0, 1.0]).abs() < 1e-12);
        assert!(fiber_polytope_density([-1.0, 1.0]).abs() < 1e-9);
        assert!((fiber_polytope_density([-1.0, 0.5]) - 0.25 / 64.0).abs() < 1e-9);
        assert!((fiber_polytope_density([-1.0, -3.0]) - 1.0 / 32.0).abs() < 1e-9);
    }

    #[test]
    fn c_coefficient_examples() {
        let c = c_coeffs(&lam([(1, 5), (1, 50), (-7, 100), (-3, 20)])).unwrap();
        assert_eq!((c.c1, c.c2, c.c3), (q(1, 10), q(13, 50), q(11, 25)));
        let c = c_coeffs(&lam([(3, 20), (1, 20), (-1, 20), (-3, 20)])).unwrap();
        assert!(c.c1.is_zero());
        let c = c_coeffs(&lam([(3, 8), (-1, 8), (-1, 8), (-1, 8)])).unwrap();
        assert_eq!(c.c2, q(1, 2));
        assert_eq!(c.c3, q(1, 2));
    }

    #[test]
    fn polytope_membership() {
        let c = c_coeffs(&lam([(1, 5), (1, 50), (-7, 100), (-3, 20)])).unwrap();
        let poly = moment_polytope(c.clone());
        assert!(poly.contains_exact(&c.c2, &c.c1));
        assert!(!poly.contains_exact(&(&c.c3 + &q(1, 1000)), &q(0, 1)));
        assert!(poly.contains_exact(&q(0, 1), &q(0, 1)));
    }

    #[test]
    fn bravyi_examples() {
        let s = |xs: [(i64, i64); 4]| {
            Spectrum::new(xs.iter().map(|&(a, b)| q(a, b)).collect()).unwrap()
        };
        let mixed = s([(1, 4), (1, 4), (1, 4), (1, 4)]);
        assert!(bravyi_compatible(&mixed, 0.5, 0.5).unwrap());
        let pure = s([(1, 1), (0, 1), (0, 1), (0, 1)]);
        assert!(bravyi_compatible(&pure, 0.5, 0.5).unwrap());
        assert!(!bravyi_compatible(&pure, 0.5, 0.0).unwrap());
    }

    #[test]
    fn marginal_density_examples() {
        let l = lam([(1, 5), (1, 50), (-7, 100), (-3, 20)]);
        let i = marginal_density_I(&l).unwrap();
        assert!(i.eval_exact(&[q(0, 1)]).unwrap().is_zero());
        assert!(i.eval_exact(&[q(11, 25)]).unwrap().is_zero());
        let v4 = crate::volumes::vandermonde(l.entries());
        assert_eq!(i.integral().unwrap(), v4 / q(12, 1));
        assert_eq!(
            i.breakpoints(),
            vec![q(0, 1), q(1, 10), q(13, 50), q(11, 25)]
        );
    }

    #[test]
    fn oracle_matches_closed_form() {
        let l = lam([(1, 5), (1, 50), (-7, 100), (-3, 20)]);
        let i = marginal_density_I(&l).unwrap();
        for k in 1..44 {
            let x = k as f64 / 100.0;
            let o = marginal_density_oracle(&l, x).unwrap();
            assert!((o - i.eval(&[x])).abs() < 1e-8, "x = {x}");
        }
        assert!(marginal_density_oracle(&l, 0.44 - 1e-6).unwrap().abs() < 1e-6);
        assert_eq!(marginal_density_oracle(&l, 0.5).unwrap(), 0.0);
    }
}
