//! Monte Carlo cross-checks: Hilbert-Schmidt random states, fixed-spectrum
//! orbits, PPT and `λ_max ≤ 1/2` tests, marginal-gap histograms and a
//! hit-and-run walk on states with a fixed first marginal.
//!
//! Independent samples are drawn in blocks of [`BLOCK_SIZE`], block `b`
//! using ChaCha8 stream `b` under the configured seed, so results depend
//! only on the seed and count, never on the thread count.

mod hitandrun;
mod matrix;

pub use hitandrun::{
    conditioned_estimate, hitandrun_conditioned, ConditionedReport, HitAndRun, HALF_BOUND_BAND,
};
pub use matrix::{
    eigh, ginibre, haar_unitary, hermitian_eigs, ComplexMatrix, JACOBI_TOLERANCE,
};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::dh_density::{c_coeffs, marginal_density_I, DensityError};
use crate::exactmath::Rational;
use crate::volumes::Spectrum;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SamplingError {
    #[error("matrix is not Hermitian (defect {0:e})")]
    NotHermitian(f64),
    #[error("Jacobi iteration did not converge (off-diagonal norm {0:e})")]
    NoConvergence(f64),
    #[error("invalid density matrix: {0}")]
    InvalidState(String),
    #[error("expected a {expected}×{expected} matrix, got {got}×{got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("invalid sampler configuration: {0}")]
    InvalidConfig(String),
    #[error("no usable chord after {0} direction draws")]
    ChordFailure(usize),
    #[error(transparent)]
    Density(#[from] DensityError),
}

pub const BLOCK_SIZE: usize = 1024;
pub const DEFAULT_PPT_TOLERANCE: f64 = 1e-10;

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Checks Hermiticity (1e-12), trace (1e-12) and positivity (−1e-10).
    pub fn new(matrix: ComplexMatrix) -> Result<Self, SamplingError> {
        let rho = DensityMatrix::checked_basic(matrix)?;
        let min = *hermitian_eigs(&rho.matrix)?.last().expect("nonempty");
        if min < -1e-10 {
            return Err(SamplingError::InvalidState(format!("min eigenvalue {min:e}")));
        }
        Ok(rho)
    }

    fn checked_basic(matrix: ComplexMatrix) -> Result<Self, SamplingError> {
        if !matrix.is_finite() {
            return Err(SamplingError::InvalidState("non-finite entry".into()));
        }
        let defect = matrix.hermitian_defect();
        if defect > 1e-12 {
            return Err(SamplingError::NotHermitian(defect));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > 1e-12 || tr.im.abs() > 1e-12 {
            return Err(SamplingError::InvalidState(format!("trace {tr}")));
        }
        Ok(DensityMatrix {
            matrix: matrix.hermitian_part(),
        })
    }

    pub fn maximally_mixed(n: usize) -> Self {
        DensityMatrix {
            matrix: ComplexMatrix::identity(n).scale(1.0 / n as f64),
        }
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalized) vector.
    pub fn pure(psi: &[Complex64]) -> Self {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        let m = ComplexMatrix::from_fn(psi.len(), |i, j| psi[i] * psi[j].conj() / norm);
        DensityMatrix {
            matrix: m.hermitian_part(),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>, SamplingError> {
        hermitian_eigs(&self.matrix)
    }

    pub fn kron(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix {
            matrix: self.matrix.kron(&other.matrix),
        }
    }

    /// `UρU†`.
    pub fn conjugate(&self, u: &ComplexMatrix) -> DensityMatrix {
        let m = u.matmul(&self.matrix).matmul(&u.adjoint());
        DensityMatrix {
            matrix: m.hermitian_part(),
        }
    }

    /// The invariants as a single boolean.
    pub fn is_valid(&self) -> bool {
        DensityMatrix::new(self.matrix.clone()).is_ok()
    }
}

/// Seed, sample count and walk parameters.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SamplerConfig {
    pub seed: u64,
    pub count: usize,
    pub burn_in: usize,
    pub thinning: usize,
    pub tolerance: f64,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl SamplerConfig {
    pub fn new(seed: u64, count: usize) -> Self {
        SamplerConfig {
            seed,
            count,
            burn_in: 1000,
            thinning: 10,
            tolerance: DEFAULT_PPT_TOLERANCE,
            threads: None,
        }
    }

    pub fn validate(&self) -> Result<(), SamplingError> {
        if self.count == 0 {
            return Err(SamplingError::InvalidConfig("count must be at least 1".into()));
        }
        if self.thinning == 0 {
            return Err(SamplingError::InvalidConfig("thinning must be at least 1".into()));
        }
        if !(self.tolerance >= 0.0) {
            return Err(SamplingError::InvalidConfig("tolerance must be nonnegative".into()));
        }
        if self.threads == Some(0) {
            return Err(SamplingError::InvalidConfig("threads must be at least 1".into()));
        }
        Ok(())
    }
}

/// ChaCha8 generator for `(seed, stream)`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Run `f(rng, len)` on every block and return results in block order.
fn par_blocks<T, F>(seed: u64, count: usize, threads: Option<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, usize) -> T + Sync,
{
    let blocks = count.div_ceil(BLOCK_SIZE);
    let run = || {
        (0..blocks)
            .into_par_iter()
            .map(|b| {
                let len = BLOCK_SIZE.min(count - b * BLOCK_SIZE);
                f(&mut stream_rng(seed, b as u64), len)
            })
            .collect()
    };
    match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    }
}

/// `GG†/Tr(GG†)` for a square Ginibre `G`.
pub fn hs_random_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DensityMatrix {
    let g = ginibre(n, rng);
    let w = g.matmul(&g.adjoint());
    let tr = w.trace().re;
    DensityMatrix {
        matrix: w.scale(1.0 / tr).hermitian_part(),
    }
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<(), SamplingError> {
    if rho.dim() != 4 {
        return Err(SamplingError::WrongDimension {
            expected: 4,
            got: rho.dim(),
        });
    }
    Ok(())
}

/// Reduced state of subsystem `keep` (1 or 2). For `ρ = [[A, C], [C†, B]]`
/// the first marginal is `[[TrA, TrC], [TrC†, TrB]]` and the second `A + B`.
pub fn partial_trace(rho: &DensityMatrix, keep: u8) -> Result<DensityMatrix, SamplingError> {
    require_two_qubits(rho)?;
    let m = rho.matrix();
    let out = match keep {
        1 => ComplexMatrix::from_fn(2, |i, j| m[(2 * i, 2 * j)] + m[(2 * i + 1, 2 * j + 1)]),
        2 => ComplexMatrix::from_fn(2, |i, j| m[(i, j)] + m[(i + 2, j + 2)]),
        _ => return Err(SamplingError::InvalidConfig(format!("keep must be 1 or 2, got {keep}"))),
    };
    Ok(DensityMatrix {
        matrix: out.hermitian_part(),
    })
}

/// Transpose of each 2×2 block of `ρ`.
pub fn partial_transpose(rho: &DensityMatrix) -> Result<ComplexMatrix, SamplingError> {
    require_two_qubits(rho)?;
    let m = rho.matrix();
    Ok(ComplexMatrix::from_fn(4, |i, j| {
        let (bi, bj) = (i / 2, j / 2);
        m[(2 * bi + j % 2, 2 * bj + i % 2)]
    }))
}

/// Smallest eigenvalue of the partial transpose.
pub fn ppt_min_eigenvalue(rho: &DensityMatrix) -> Result<f64, SamplingError> {
    let e = hermitian_eigs(&partial_transpose(rho)?)?;
    Ok(*e.last().expect("nonempty"))
}

pub fn is_ppt(rho: &DensityMatrix, tol: f64) -> Result<bool, SamplingError> {
    Ok(ppt_min_eigenvalue(rho)? >= -tol)
}

pub fn is_half_bounded(rho: &DensityMatrix, tol: f64) -> Result<bool, SamplingError> {
    Ok(rho.eigenvalues()?[0] <= 0.5 + tol)
}

/// Result of the global separability estimate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SepEstimate {
    pub n: usize,
    pub ppt_count: usize,
    pub fraction: f64,
    pub stderr: f64,
    /// Samples whose partial transpose has its smallest eigenvalue within
    /// the tolerance of zero.
    pub indeterminate: usize,
}

/// Fraction of Hilbert-Schmidt random two-qubit states that are PPT.
pub fn estimate_sep_prob(config: &SamplerConfig) -> Result<SepEstimate, SamplingError> {
    config.validate()?;
    let tol = config.tolerance;
    let blocks = par_blocks(config.seed, config.count, config.threads, |rng, len| {
        let mut ppt = 0usize;
        let mut band = 0usize;
        for _ in 0..len {
            let rho = hs_random_state(4, rng);
            let min = ppt_min_eigenvalue(&rho)?;
            if min >= -tol {
                ppt += 1;
            }
            if min.abs() < tol {
                band += 1;
            }
        }
        Ok::<_, SamplingError>((ppt, band))
    });
    let mut ppt_count = 0;
    let mut indeterminate = 0;
    for b in blocks {
        let (p, i) = b?;
        ppt_count += p;
        indeterminate += i;
    }
    let n = config.count;
    let fraction = ppt_count as f64 / n as f64;
    Ok(SepEstimate {
        n,
        ppt_count,
        fraction,
        stderr: (fraction * (1.0 - fraction) / n as f64).sqrt(),
        indeterminate,
    })
}

/// `UΛU†` with Haar `U`.
pub fn sample_fixed_spectrum<R: Rng + ?Sized>(lambda: &Spectrum, rng: &mut R) -> DensityMatrix {
    sample_fixed_spectrum_f64(&lambda.to_f64(), rng)
}

pub fn sample_fixed_spectrum_f64<R: Rng + ?Sized>(lambda: &[f64], rng: &mut R) -> DensityMatrix {
    let u = haar_unitary(lambda.len(), rng);
    DensityMatrix {
        matrix: ComplexMatrix::from_real_diagonal(lambda),
    }
    .conjugate(&u)
}

/// `1 − 2λ_min(ρ_A)`, the eigenvalue gap of the first marginal.
pub fn marginal_gap(rho: &DensityMatrix) -> Result<f64, SamplingError> {
    let a = partial_trace(rho, 1)?;
    let m = a.matrix();
    let half = (m[(0, 0)].re - m[(1, 1)].re) / 2.0;
    let gap = 2.0 * (half * half + m[(0, 1)].norm_sqr()).sqrt();
    Ok(gap.clamp(0.0, 1.0))
}

/// Binned marginal gaps of fixed-spectrum samples next to the bin averages
/// of the normalized density `I(x|λ̂)/∫I`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MarginalHistogram {
    pub samples: usize,
    pub edges: Vec<f64>,
    pub counts: Vec<usize>,
    pub empirical: Vec<f64>,
    pub analytic: Vec<f64>,
    pub sup_norm: f64,
    /// Samples whose gap fell outside `[0, c₃]` (beyond rounding).
    pub outside_support: usize,
}

pub fn marginal_histogram(
    lambda: &Spectrum,
    samples: usize,
    bins: usize,
    seed: u64,
    threads: Option<usize>,
) -> Result<MarginalHistogram, SamplingError> {
    if bins == 0 || samples == 0 {
        return Err(SamplingError::InvalidConfig("bins and samples must be positive".into()));
    }
    let lam_hat = lambda.centered();
    let density = marginal_density_I(&lam_hat)?;
    let c3 = c_coeffs(&lam_hat)?.c3;
    let total = density.integral()?;
    let width = &c3 / &Rational::integer(bins as i64);
    let edges_exact: Vec<Rational> = (0..=bins)
        .map(|k| &width * &Rational::integer(k as i64))
        .collect();
    let analytic: Vec<f64> = edges_exact
        .windows(2)
        .map(|w| {
            density
                .integral_between(&w[0], &w[1])
                .map(|m| (m / (&total * &width)).to_f64())
        })
        .collect::<Result<_, _>>()?;

    let lam = lambda.to_f64();
    let c3f = c3.to_f64();
    let blocks = par_blocks(seed, samples, threads, |rng, len| {
        let mut counts = vec![0usize; bins];
        let mut outside = 0usize;
        for _ in 0..len {
            let rho = sample_fixed_spectrum_f64(&lam, rng);
            let x = marginal_gap(&rho)?;
            if x > c3f + 1e-9 {
                outside += 1;
            }
            let k = ((x / c3f) * bins as f64).floor() as usize;
            counts[k.min(bins - 1)] += 1;
        }
        Ok::<_, SamplingError>((counts, outside))
    });
    let mut counts = vec![0usize; bins];
    let mut outside_support = 0;
    for b in blocks {
        let (c, o) = b?;
        outside_support += o;
        for (acc, v) in counts.iter_mut().zip(c) {
            *acc += v;
        }
    }
    let w = c3f / bins as f64;
    let empirical: Vec<f64> = counts
        .iter()
        .map(|&c| c as f64 / (samples as f64 * w))
        .collect();
    let sup_norm = empirical
        .iter()
        .zip(&analytic)
        .map(|(e, a)| (e - a).abs())
        .fold(0.0, f64::max);
    Ok(MarginalHistogram {
        samples,
        edges: edges_exact.iter().map(Rational::to_f64).collect(),
        counts,
        empirical,
        analytic,
        sup_norm,
        outside_support,
    })
}

/// Pauli matrices `σ₁, σ₂, σ₃`.
pub fn pauli() -> [ComplexMatrix; 3] {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    [
        ComplexMatrix::from_rows(&[&[z, one], &[one, z]]),
        ComplexMatrix::from_rows(&[&[z, -i], &[i, z]]),
        ComplexMatrix::from_rows(&[&[one, z], &[z, -one]]),
    ]
}

/// `(|00⟩ + |11⟩)/√2` as a density matrix.
pub fn bell_state() -> DensityMatrix {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    DensityMatrix::pure(&[one, z, z, one])
}

/// `(1−p)I/4 + p|Φ⁺⟩⟨Φ⁺|`.
pub fn werner_state(p: f64) -> DensityMatrix {
    let m = ComplexMatrix::identity(4)
        .scale((1.0 - p) / 4.0)
        .add(&bell_state().matrix().scale(p));
    DensityMatrix { matrix: m }
}
