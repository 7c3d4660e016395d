//! Hit-and-run on `D^a = {ρ ⪰ 0 : Tr₂ρ = (I + aσ₃)/2}`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use super::{
    eigh, hermitian_eigs, partial_trace, pauli, ppt_min_eigenvalue, stream_rng, ComplexMatrix,
    DensityMatrix, SamplerConfig, SamplingError,
};

const MAX_REDRAWS: usize = 100;

/// Width of the excluded band around `λ_max = 1/2`.
pub const HALF_BOUND_BAND: f64 = 1e-9;

/// The 12 HS-orthonormal directions `I⊗σⱼ/2` and `σᵢ⊗σⱼ/2`.
fn directions() -> Vec<ComplexMatrix> {
    let s = pauli();
    let id = ComplexMatrix::identity(2);
    let mut out = Vec::with_capacity(12);
    for sj in &s {
        out.push(id.kron(sj).scale(0.5));
    }
    for si in &s {
        for sj in &s {
            out.push(si.kron(sj).scale(0.5));
        }
    }
    out
}

fn first_marginal(a: f64) -> ComplexMatrix {
    ComplexMatrix::identity(2)
        .add(&pauli()[2].scale(a))
        .scale(0.5)
}

/// Markov chain over `D^a`, yielding every `thinning`-th state after
/// `burn_in` steps.
pub struct HitAndRun {
    rho: ComplexMatrix,
    target: ComplexMatrix,
    basis: Vec<ComplexMatrix>,
    rng: ChaCha8Rng,
    burn_in: usize,
    thinning: usize,
    burned: bool,
}

impl HitAndRun {
    pub fn new(a: f64, config: &SamplerConfig, chain: u64) -> Result<Self, SamplingError> {
        config.validate()?;
        if !(0.0..1.0).contains(&a) {
            return Err(SamplingError::InvalidConfig(format!("a = {a} must lie in [0, 1)")));
        }
        let target = first_marginal(a);
        let rho = target.kron(&ComplexMatrix::identity(2).scale(0.5));
        Ok(HitAndRun {
            rho,
            target,
            basis: directions(),
            rng: stream_rng(config.seed, chain),
            burn_in: config.burn_in,
            thinning: config.thinning,
            burned: false,
        })
    }

    fn random_direction(&mut self) -> ComplexMatrix {
        let g: Vec<f64> = (0..self.basis.len())
            .map(|_| self.rng.sample(StandardNormal))
            .collect();
        let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        self.basis
            .iter()
            .zip(&g)
            .fold(ComplexMatrix::zeros(4), |acc, (b, w)| acc.axpy(w / norm, b))
    }

    /// `[t_lo, t_hi]` with `ρ + tD ⪰ 0`, from the eigenvalues of
    /// `ρ^{-1/2} D ρ^{-1/2}`.
    fn chord(&self, inv_sqrt: &ComplexMatrix, d: &ComplexMatrix) -> Result<Option<(f64, f64)>, SamplingError> {
        let m = inv_sqrt.matmul(d).matmul(inv_sqrt).hermitian_part();
        let mu = hermitian_eigs(&m)?;
        let (max, min) = (mu[0], mu[mu.len() - 1]);
        if !(max > 0.0 && min < 0.0) || !max.is_finite() || !min.is_finite() {
            return Ok(None);
        }
        Ok(Some((-1.0 / max, -1.0 / min)))
    }

    pub fn step(&mut self) -> Result<(), SamplingError> {
        let (vals, vecs) = eigh(&self.rho)?;
        if vals[vals.len() - 1] <= 0.0 {
            return Err(SamplingError::InvalidState("walk reached the boundary".into()));
        }
        let inv_sqrt = vecs
            .matmul(&ComplexMatrix::from_real_diagonal(
                &vals.iter().map(|v| 1.0 / v.sqrt()).collect::<Vec<_>>(),
            ))
            .matmul(&vecs.adjoint());
        for _ in 0..MAX_REDRAWS {
            let d = self.random_direction();
            if let Some((lo, hi)) = self.chord(&inv_sqrt, &d)? {
                let t = self.rng.random_range(lo..hi);
                let next = self.rho.axpy(t, &d).hermitian_part();
                self.rho = self.reproject(next);
                return Ok(());
            }
        }
        Err(SamplingError::ChordFailure(MAX_REDRAWS))
    }

    /// Remove rounding drift in trace and first marginal.
    fn reproject(&self, m: ComplexMatrix) -> ComplexMatrix {
        let rho = DensityMatrix { matrix: m.clone() };
        let current = partial_trace(&rho, 1).expect("4x4").matrix().clone();
        let drift = current.sub(&self.target);
        m.sub(&drift.kron(&ComplexMatrix::identity(2).scale(0.5)))
    }

    pub fn state(&self) -> DensityMatrix {
        DensityMatrix {
            matrix: self.rho.clone(),
        }
    }

    pub fn next_sample(&mut self) -> Result<DensityMatrix, SamplingError> {
        if !self.burned {
            for _ in 0..self.burn_in {
                self.step()?;
            }
            self.burned = true;
        }
        for _ in 0..self.thinning {
            self.step()?;
        }
        Ok(self.state())
    }
}

impl Iterator for HitAndRun {
    type Item = Result<DensityMatrix, SamplingError>;
    fn next(&mut self) -> Option<Self::Item> {
        Some(self.next_sample())
    }
}

/// `count` samples from `chains` independent walks (chain `k` uses stream
/// `k`), concatenated in chain order.
pub fn hitandrun_conditioned(
    a: f64,
    config: &SamplerConfig,
    chains: usize,
) -> Result<Vec<DensityMatrix>, SamplingError> {
    let chains = chains.max(1).min(config.count);
    let per = config.count / chains;
    let extra = config.count % chains;
    let run = |k: usize| -> Result<Vec<DensityMatrix>, SamplingError> {
        let len = per + usize::from(k < extra);
        HitAndRun::new(a, config, k as u64)?.take(len).collect()
    };
    let parts: Vec<Result<Vec<DensityMatrix>, SamplingError>> = match config.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .expect("thread pool")
            .install(|| (0..chains).into_par_iter().map(run).collect()),
        None => (0..chains).into_par_iter().map(run).collect(),
    };
    let mut out = Vec::with_capacity(config.count);
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

/// PPT statistics on `D^a`, and agreement of PPT with `λ_max ≤ 1/2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionedReport {
    pub a: f64,
    pub n: usize,
    pub ppt_count: usize,
    pub fraction: f64,
    /// Fraction of samples outside both bands where PPT and `λ_max ≤ 1/2`
    /// agree.
    pub agreement_halfbound: f64,
    pub disagreements: usize,
    /// Samples with `|λ_max − 1/2| < 1e-9` or PPT minimum eigenvalue within
    /// the tolerance of zero.
    pub band_count: usize,
    /// Largest deviation of a sample's first marginal from the target.
    pub max_marginal_error: f64,
}

pub fn conditioned_estimate(
    a: f64,
    config: &SamplerConfig,
    chains: usize,
) -> Result<ConditionedReport, SamplingError> {
    let samples = hitandrun_conditioned(a, config, chains)?;
    let target = first_marginal(a);
    let mut ppt_count = 0;
    let mut band_count = 0;
    let mut compared = 0;
    let mut disagreements = 0;
    let mut max_marginal_error: f64 = 0.0;
    for rho in &samples {
        let marg = partial_trace(rho, 1)?;
        max_marginal_error = max_marginal_error.max(marg.matrix().max_abs_diff(&target));
        let min_pt = ppt_min_eigenvalue(rho)?;
        let ppt = min_pt >= -config.tolerance;
        if ppt {
            ppt_count += 1;
        }
        let lmax = rho.eigenvalues()?[0];
        if (lmax - 0.5).abs() < HALF_BOUND_BAND || min_pt.abs() < config.tolerance {
            band_count += 1;
            continue;
        }
        compared += 1;
        if ppt != (lmax <= 0.5) {
            disagreements += 1;
        }
    }
    let n = samples.len();
    Ok(ConditionedReport {
        a,
        n,
        ppt_count,
        fraction: ppt_count as f64 / n as f64,
        agreement_halfbound: if compared == 0 {
            1.0
        } else {
            1.0 - disagreements as f64 / compared as f64
        },
        disagreements,
        band_count,
        max_marginal_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn basis_is_orthonormal_and_traceless_on_second_factor() {
        let b = directions();
        for (i, x) in b.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                let ip = x.hs_inner(y);
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((ip - Complex64::new(want, 0.0)).norm() < 1e-14);
            }
            let tr2 = partial_trace(&DensityMatrix { matrix: x.clone() }, 1).unwrap();
            assert!(tr2.matrix().max_abs() < 1e-15);
        }
    }

    #[test]
    fn samples_keep_marginal_and_validity() {
        let mut cfg = SamplerConfig::new(9, 200);
        cfg.burn_in = 50;
        cfg.thinning = 2;
        let samples = hitandrun_conditioned(0.3, &cfg, 2).unwrap();
        assert_eq!(samples.len(), 200);
        let target = first_marginal(0.3);
        for rho in &samples {
            assert!(rho.is_valid());
            let m = partial_trace(rho, 1).unwrap();
            assert!(m.matrix().max_abs_diff(&target) < 1e-10);
        }
    }

    #[test]
    fn deterministic_streams() {
        let mut cfg = SamplerConfig::new(10, 20);
        cfg.burn_in = 10;
        let a = hitandrun_conditioned(0.0, &cfg, 2).unwrap();
        cfg.threads = Some(1);
        let b = hitandrun_conditioned(0.0, &cfg, 2).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_a_at_one() {
        assert!(HitAndRun::new(1.0, &SamplerConfig::new(1, 1), 0).is_err());
    }
}
